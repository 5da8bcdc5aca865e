//! Finite-dimensional algebras, coalgebras and bialgebras by structure
//! constants over an exact field: axiom checkers, dualization by tensor
//! transpose, brute-force homomorphism enumeration, and the base-change
//! determination checks for module homs and submodules.
//!
//! Structure constants follow the conventions
//! `e_i·e_j = Σ_k mult[i][j][k]·e_k` and `Δe_k = Σ_{i,j} comult[k][i][j]
//! e_i⊗e_j`. Constructors do not reject broken structures; validity is
//! what [`check_algebra`]/[`check_coalgebra`]/[`check_bialgebra`] certify,
//! so deliberately mutated structures can be fed to the checkers.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::guard::{GuardExceeded, Guards};
use crate::linalg::{in_span, stack, Matrix};
use crate::scalar::{FieldElem, FieldTag};
use crate::testalg::{QuotElem, TestAlgebra};

pub type Tensor3 = Vec<Vec<Vec<FieldElem>>>;

/// `e_i·e_j = Σ_k mult[i][j][k] e_k`, with unit vector `unit`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FdAlgebra {
    pub field: FieldTag,
    pub labels: Vec<String>,
    pub mult: Tensor3,
    pub unit: Vec<FieldElem>,
}

/// `Δe_k = Σ_{i,j} comult[k][i][j] e_i⊗e_j`, with counit covector `counit`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FdCoalgebra {
    pub field: FieldTag,
    pub labels: Vec<String>,
    pub comult: Tensor3,
    pub counit: Vec<FieldElem>,
}

/// An algebra and a coalgebra on the same labelled space.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FdBialgebra {
    pub algebra: FdAlgebra,
    pub coalgebra: FdCoalgebra,
}

impl FdAlgebra {
    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn m(&self, i: usize, j: usize, k: usize) -> &FieldElem {
        &self.mult[i][j][k]
    }

    /// Product of two coordinate vectors.
    pub fn product(&self, a: &[FieldElem], b: &[FieldElem]) -> Vec<FieldElem> {
        let n = self.dim();
        let mut out = alloc::vec![FieldElem::zero(self.field); n];
        for i in 0..n {
            if a[i].is_zero() {
                continue;
            }
            for j in 0..n {
                if b[j].is_zero() {
                    continue;
                }
                let c = a[i].mul(&b[j]).expect("same field");
                for k in 0..n {
                    if !self.mult[i][j][k].is_zero() {
                        let t = c.mul(&self.mult[i][j][k]).expect("same field");
                        out[k] = out[k].add(&t).expect("same field");
                    }
                }
            }
        }
        out
    }

    pub fn is_commutative(&self) -> bool {
        let n = self.dim();
        (0..n).all(|i| {
            (0..n).all(|j| (0..n).all(|k| self.mult[i][j][k] == self.mult[j][i][k]))
        })
    }

    /// Left-multiplication matrix of basis vector `i` on the algebra itself.
    pub fn left_mult_matrix(&self, i: usize) -> Matrix {
        let n = self.dim();
        let mut m = Matrix::zero(self.field, n, n);
        for j in 0..n {
            for k in 0..n {
                m.set(k, j, self.mult[i][j][k].clone());
            }
        }
        m
    }
}

impl FdCoalgebra {
    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn is_cocommutative(&self) -> bool {
        let n = self.dim();
        (0..n).all(|k| {
            (0..n).all(|i| (0..n).all(|j| self.comult[k][i][j] == self.comult[k][j][i]))
        })
    }
}

impl FdBialgebra {
    pub fn dim(&self) -> usize {
        self.algebra.dim()
    }

    pub fn field(&self) -> FieldTag {
        self.algebra.field
    }

    /// Whether every basis vector is grouplike: `Δe_k = e_k⊗e_k, ε(e_k)=1`.
    pub fn basis_is_grouplike(&self) -> bool {
        let n = self.dim();
        (0..n).all(|k| self.vector_is_grouplike(&unit_vector(self.field(), n, k)))
    }

    /// Whether a coordinate vector `v` satisfies `Δv = v⊗v` and `εv = 1`.
    pub fn vector_is_grouplike(&self, v: &[FieldElem]) -> bool {
        let n = self.dim();
        let field = self.field();
        let mut eps = FieldElem::zero(field);
        for k in 0..n {
            eps = eps
                .add(&v[k].mul(&self.coalgebra.counit[k]).expect("same field"))
                .expect("same field");
        }
        if !eps.is_one() {
            return false;
        }
        for i in 0..n {
            for j in 0..n {
                let mut lhs = FieldElem::zero(field);
                for k in 0..n {
                    lhs = lhs
                        .add(&v[k].mul(&self.coalgebra.comult[k][i][j]).expect("same field"))
                        .expect("same field");
                }
                let rhs = v[i].mul(&v[j]).expect("same field");
                if lhs != rhs {
                    return false;
                }
            }
        }
        true
    }
}

fn unit_vector(field: FieldTag, n: usize, k: usize) -> Vec<FieldElem> {
    let mut v = alloc::vec![FieldElem::zero(field); n];
    v[k] = FieldElem::one(field);
    v
}

fn zero3(field: FieldTag, n: usize) -> Tensor3 {
    alloc::vec![alloc::vec![alloc::vec![FieldElem::zero(field); n]; n]; n]
}

/// The laws reported by the axiom checkers.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Law {
    Assoc,
    Unit,
    Coassoc,
    Counit,
    ComultMultiplicative,
    CounitMultiplicative,
    UnitGrouplike,
}

impl fmt::Display for Law {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Law::Assoc => "assoc",
            Law::Unit => "unit",
            Law::Coassoc => "coassoc",
            Law::Counit => "counit",
            Law::ComultMultiplicative => "comult-multiplicative",
            Law::CounitMultiplicative => "counit-multiplicative",
            Law::UnitGrouplike => "unit-grouplike",
        };
        write!(f, "{s}")
    }
}

/// Outcome of one law, with a witness triple of basis indices on failure.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LawCheck {
    pub law: Law,
    pub pass: bool,
    pub witness: Option<[usize; 3]>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AxiomReport {
    pub checks: Vec<LawCheck>,
}

impl AxiomReport {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn failures(&self) -> Vec<&LawCheck> {
        self.checks.iter().filter(|c| !c.pass).collect()
    }
}

fn law_result(law: Law, witness: Option<[usize; 3]>) -> LawCheck {
    LawCheck { law, pass: witness.is_none(), witness }
}

pub fn check_algebra(a: &FdAlgebra) -> AxiomReport {
    AxiomReport { checks: alloc::vec![check_assoc(a), check_unit(a)] }
}

pub fn check_coalgebra(c: &FdCoalgebra) -> AxiomReport {
    AxiomReport { checks: alloc::vec![check_coassoc(c), check_counit(c)] }
}

pub fn check_bialgebra(b: &FdBialgebra) -> AxiomReport {
    let mut checks = alloc::vec![
        check_assoc(&b.algebra),
        check_unit(&b.algebra),
        check_coassoc(&b.coalgebra),
        check_counit(&b.coalgebra),
    ];
    checks.push(check_comult_multiplicative(b));
    checks.push(check_counit_multiplicative(b));
    checks.push(check_unit_grouplike(b));
    AxiomReport { checks }
}

fn check_assoc(a: &FdAlgebra) -> LawCheck {
    let n = a.dim();
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                for t in 0..n {
                    let mut lhs = FieldElem::zero(a.field);
                    let mut rhs = FieldElem::zero(a.field);
                    for s in 0..n {
                        lhs = lhs
                            .add(&a.mult[i][j][s].mul(&a.mult[s][k][t]).expect("field"))
                            .expect("field");
                        rhs = rhs
                            .add(&a.mult[j][k][s].mul(&a.mult[i][s][t]).expect("field"))
                            .expect("field");
                    }
                    if lhs != rhs {
                        return law_result(Law::Assoc, Some([i, j, k]));
                    }
                }
            }
        }
    }
    law_result(Law::Assoc, None)
}

fn check_unit(a: &FdAlgebra) -> LawCheck {
    let n = a.dim();
    for j in 0..n {
        let ej = unit_vector(a.field, n, j);
        let left = a.product(&a.unit, &ej);
        let right = a.product(&ej, &a.unit);
        if left != ej {
            return law_result(Law::Unit, Some([j, 0, 0]));
        }
        if right != ej {
            return law_result(Law::Unit, Some([j, 1, 0]));
        }
    }
    law_result(Law::Unit, None)
}

fn check_coassoc(c: &FdCoalgebra) -> LawCheck {
    let n = c.dim();
    for k in 0..n {
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    let mut lhs = FieldElem::zero(c.field);
                    let mut rhs = FieldElem::zero(c.field);
                    for i in 0..n {
                        lhs = lhs
                            .add(&c.comult[k][i][z].mul(&c.comult[i][x][y]).expect("field"))
                            .expect("field");
                        rhs = rhs
                            .add(&c.comult[k][x][i].mul(&c.comult[i][y][z]).expect("field"))
                            .expect("field");
                    }
                    if lhs != rhs {
                        return law_result(Law::Coassoc, Some([k, x, y]));
                    }
                }
            }
        }
    }
    law_result(Law::Coassoc, None)
}

fn check_counit(c: &FdCoalgebra) -> LawCheck {
    let n = c.dim();
    for k in 0..n {
        for j in 0..n {
            let mut left = FieldElem::zero(c.field);
            let mut right = FieldElem::zero(c.field);
            for i in 0..n {
                left = left
                    .add(&c.comult[k][i][j].mul(&c.counit[i]).expect("field"))
                    .expect("field");
                right = right
                    .add(&c.comult[k][j][i].mul(&c.counit[i]).expect("field"))
                    .expect("field");
            }
            let expected =
                if k == j { FieldElem::one(c.field) } else { FieldElem::zero(c.field) };
            if left != expected {
                return law_result(Law::Counit, Some([k, j, 0]));
            }
            if right != expected {
                return law_result(Law::Counit, Some([k, j, 1]));
            }
        }
    }
    law_result(Law::Counit, None)
}

fn check_comult_multiplicative(b: &FdBialgebra) -> LawCheck {
    let n = b.dim();
    let a = &b.algebra;
    let c = &b.coalgebra;
    for i in 0..n {
        for j in 0..n {
            for x in 0..n {
                for y in 0..n {
                    // Δ(e_i e_j) coefficient at e_x⊗e_y.
                    let mut lhs = FieldElem::zero(a.field);
                    for k in 0..n {
                        lhs = lhs
                            .add(&a.mult[i][j][k].mul(&c.comult[k][x][y]).expect("field"))
                            .expect("field");
                    }
                    // (Δe_i)(Δe_j) coefficient at e_x⊗e_y.
                    let mut rhs = FieldElem::zero(a.field);
                    for p in 0..n {
                        for q in 0..n {
                            for r in 0..n {
                                for s in 0..n {
                                    let t = c.comult[i][p][q]
                                        .mul(&c.comult[j][r][s])
                                        .expect("field")
                                        .mul(&a.mult[p][r][x])
                                        .expect("field")
                                        .mul(&a.mult[q][s][y])
                                        .expect("field");
                                    rhs = rhs.add(&t).expect("field");
                                }
                            }
                        }
                    }
                    if lhs != rhs {
                        return law_result(Law::ComultMultiplicative, Some([i, j, x]));
                    }
                }
            }
        }
    }
    law_result(Law::ComultMultiplicative, None)
}

fn check_counit_multiplicative(b: &FdBialgebra) -> LawCheck {
    let n = b.dim();
    let a = &b.algebra;
    let c = &b.coalgebra;
    for i in 0..n {
        for j in 0..n {
            let mut lhs = FieldElem::zero(a.field);
            for k in 0..n {
                lhs = lhs
                    .add(&a.mult[i][j][k].mul(&c.counit[k]).expect("field"))
                    .expect("field");
            }
            let rhs = c.counit[i].mul(&c.counit[j]).expect("field");
            if lhs != rhs {
                return law_result(Law::CounitMultiplicative, Some([i, j, 0]));
            }
        }
    }
    law_result(Law::CounitMultiplicative, None)
}

fn check_unit_grouplike(b: &FdBialgebra) -> LawCheck {
    if b.vector_is_grouplike(&b.algebra.unit) {
        law_result(Law::UnitGrouplike, None)
    } else {
        law_result(Law::UnitGrouplike, Some([0, 0, 0]))
    }
}

/// Label of the dual basis vector: append `*`, or strip it again so the
/// double dual lands back on the original labels.
fn dual_label(l: &str) -> String {
    match l.strip_suffix('*') {
        Some(base) => String::from(base),
        None => format!("{l}*"),
    }
}

fn dual_labels(labels: &[String]) -> Vec<String> {
    labels.iter().map(|l| dual_label(l)).collect()
}

/// Transpose coalgebra on the dual basis.
pub fn dualize_algebra(a: &FdAlgebra) -> FdCoalgebra {
    let n = a.dim();
    let mut comult = zero3(a.field, n);
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                comult[k][i][j] = a.mult[i][j][k].clone();
            }
        }
    }
    FdCoalgebra { field: a.field, labels: dual_labels(&a.labels), comult, counit: a.unit.clone() }
}

/// Transpose algebra on the dual basis.
pub fn dualize_coalgebra(c: &FdCoalgebra) -> FdAlgebra {
    let n = c.dim();
    let mut mult = zero3(c.field, n);
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                mult[i][j][k] = c.comult[k][i][j].clone();
            }
        }
    }
    FdAlgebra { field: c.field, labels: dual_labels(&c.labels), mult, unit: c.counit.clone() }
}

/// The dual bialgebra: multiplication and comultiplication swap roles.
pub fn dualize_bialgebra(b: &FdBialgebra) -> FdBialgebra {
    FdBialgebra {
        algebra: dualize_coalgebra(&b.coalgebra),
        coalgebra: dualize_algebra(&b.algebra),
    }
}

/// The transpose of a linear map on dual bases.
pub fn dual_morphism(f: &Matrix) -> Matrix {
    f.transpose()
}

pub fn is_algebra_morphism(f: &Matrix, a: &FdAlgebra, b: &FdAlgebra) -> bool {
    if f.rows() != b.dim() || f.cols() != a.dim() {
        return false;
    }
    if f.apply(&a.unit).expect("shape checked") != b.unit {
        return false;
    }
    let n = a.dim();
    for i in 0..n {
        for j in 0..n {
            // f(e_i e_j) vs f(e_i)·f(e_j).
            let mut prod_coords = alloc::vec![FieldElem::zero(a.field); n];
            for (k, slot) in prod_coords.iter_mut().enumerate() {
                *slot = a.mult[i][j][k].clone();
            }
            let lhs = f.apply(&prod_coords).expect("shape checked");
            let fi = f.col(i);
            let fj = f.col(j);
            let rhs = b.product(&fi, &fj);
            if lhs != rhs {
                return false;
            }
        }
    }
    true
}

pub fn is_coalgebra_morphism(f: &Matrix, c: &FdCoalgebra, d: &FdCoalgebra) -> bool {
    if f.rows() != d.dim() || f.cols() != c.dim() {
        return false;
    }
    let n = c.dim();
    let m = d.dim();
    for k in 0..n {
        // ε_D(f e_k) = ε_C(e_k).
        let fk = f.col(k);
        let mut eps = FieldElem::zero(c.field);
        for (r, v) in fk.iter().enumerate() {
            eps = eps.add(&v.mul(&d.counit[r]).expect("field")).expect("field");
        }
        if eps != c.counit[k] {
            return false;
        }
        // Δ_D(f e_k) = (f⊗f)(Δ_C e_k), coefficient at e_x⊗e_y.
        for x in 0..m {
            for y in 0..m {
                let mut lhs = FieldElem::zero(c.field);
                for (r, v) in fk.iter().enumerate() {
                    lhs = lhs.add(&v.mul(&d.comult[r][x][y]).expect("field")).expect("field");
                }
                let mut rhs = FieldElem::zero(c.field);
                for i in 0..n {
                    for j in 0..n {
                        let t = c.comult[k][i][j]
                            .mul(f.get(x, i))
                            .expect("field")
                            .mul(f.get(y, j))
                            .expect("field");
                        rhs = rhs.add(&t).expect("field");
                    }
                }
                if lhs != rhs {
                    return false;
                }
            }
        }
    }
    true
}

pub fn is_bialgebra_morphism(f: &Matrix, a: &FdBialgebra, b: &FdBialgebra) -> bool {
    is_algebra_morphism(f, &a.algebra, &b.algebra)
        && is_coalgebra_morphism(f, &a.coalgebra, &b.coalgebra)
}

/// All unit-preserving multiplicative linear maps `A → S`, each as the
/// `dim S × dim A` matrix of basis images, in canonical order.
pub fn enumerate_algebra_homs(
    a: &FdAlgebra,
    s: &TestAlgebra,
    guards: &Guards,
) -> Result<Vec<Matrix>, GuardExceeded> {
    let q = s.element_count().expect("enumerable probe algebra") as u128;
    let space = q.checked_pow(a.dim() as u32).unwrap_or(u128::MAX);
    guards.admit(space)?;
    let n = a.dim();
    let mut out = Vec::new();
    let mut digits = alloc::vec![0u64; n];
    loop {
        let images: Vec<QuotElem> = digits.iter().map(|d| s.element(*d)).collect();
        if hom_conditions_hold(a, s, &images) {
            out.push(images_to_matrix(a, s, &images));
        }
        // Next candidate in mixed radix.
        let mut pos = 0;
        loop {
            if pos == n {
                out.sort();
                out.dedup();
                return Ok(out);
            }
            digits[pos] += 1;
            if (digits[pos] as u128) < q {
                break;
            }
            digits[pos] = 0;
            pos += 1;
        }
    }
}

fn hom_conditions_hold(a: &FdAlgebra, s: &TestAlgebra, images: &[QuotElem]) -> bool {
    let n = a.dim();
    // f(1) = 1.
    let mut one = s.zero();
    for (i, u) in a.unit.iter().enumerate() {
        one = s.add(&one, &s.scale(u, &images[i]));
    }
    if one != s.one() {
        return false;
    }
    // f(e_i e_j) = f(e_i) f(e_j).
    for i in 0..n {
        for j in 0..n {
            let mut lhs = s.zero();
            for k in 0..n {
                lhs = s.add(&lhs, &s.scale(&a.mult[i][j][k], &images[k]));
            }
            if lhs != s.mul(&images[i], &images[j]) {
                return false;
            }
        }
    }
    true
}

fn images_to_matrix(a: &FdAlgebra, s: &TestAlgebra, images: &[QuotElem]) -> Matrix {
    let mut m = Matrix::zero(a.field, s.dim(), a.dim());
    for (j, img) in images.iter().enumerate() {
        for (r, v) in img.iter().enumerate() {
            m.set(r, j, v.clone());
        }
    }
    m
}

/// All linear maps `B → B'` that are simultaneously algebra and coalgebra
/// morphisms, in canonical order. When every basis vector of the source is
/// grouplike the search runs over maps into the grouplike locus of the
/// target (same answer set: a coalgebra morphism sends grouplikes to
/// grouplikes); otherwise the full matrix space is enumerated.
pub fn enumerate_bialgebra_homs(
    b: &FdBialgebra,
    b2: &FdBialgebra,
    guards: &Guards,
) -> Result<Vec<Matrix>, GuardExceeded> {
    let field = b.field();
    let q = match field.order() {
        Some(q) => q as u128,
        None => {
            // Only finite base fields are enumerable.
            return Err(GuardExceeded { needed: u128::MAX, cap: guards.max_search });
        }
    };
    let n = b.dim();
    let m = b2.dim();
    let mut out = Vec::new();
    if b.basis_is_grouplike() {
        let grouplikes = grouplike_vectors(b2, guards)?;
        let space = (grouplikes.len() as u128).checked_pow(n as u32).unwrap_or(u128::MAX);
        guards.admit(space)?;
        let mut digits = alloc::vec![0usize; n];
        loop {
            let mut f = Matrix::zero(field, m, n);
            for (j, d) in digits.iter().enumerate() {
                for (r, v) in grouplikes[*d].iter().enumerate() {
                    f.set(r, j, v.clone());
                }
            }
            if is_bialgebra_morphism(&f, b, b2) {
                out.push(f);
            }
            let mut pos = 0;
            loop {
                if pos == n {
                    out.sort();
                    out.dedup();
                    return Ok(out);
                }
                digits[pos] += 1;
                if digits[pos] < grouplikes.len() {
                    break;
                }
                digits[pos] = 0;
                pos += 1;
            }
        }
    }
    let space = q.checked_pow((n * m) as u32).unwrap_or(u128::MAX);
    guards.admit(space)?;
    let mut digits = alloc::vec![0u64; n * m];
    loop {
        let entries: Vec<FieldElem> =
            digits.iter().map(|d| FieldElem::from_enum_index(field, *d)).collect();
        let f = Matrix::new(field, m, n, entries).expect("sized");
        if is_bialgebra_morphism(&f, b, b2) {
            out.push(f);
        }
        let mut pos = 0;
        loop {
            if pos == n * m {
                out.sort();
                out.dedup();
                return Ok(out);
            }
            digits[pos] += 1;
            if (digits[pos] as u128) < q {
                break;
            }
            digits[pos] = 0;
            pos += 1;
        }
    }
}

/// The grouplike elements of a bialgebra over a finite field, by scan.
pub fn grouplike_vectors(
    b: &FdBialgebra,
    guards: &Guards,
) -> Result<Vec<Vec<FieldElem>>, GuardExceeded> {
    let field = b.field();
    let q = field.order().expect("finite field") as u128;
    let n = b.dim();
    let space = q.checked_pow(n as u32).unwrap_or(u128::MAX);
    guards.admit(space)?;
    let mut out = Vec::new();
    let mut digits = alloc::vec![0u64; n];
    loop {
        let v: Vec<FieldElem> =
            digits.iter().map(|d| FieldElem::from_enum_index(field, *d)).collect();
        if b.vector_is_grouplike(&v) {
            out.push(v);
        }
        let mut pos = 0;
        loop {
            if pos == n {
                out.sort();
                return Ok(out);
            }
            digits[pos] += 1;
            if (digits[pos] as u128) < q {
                break;
            }
            digits[pos] = 0;
            pos += 1;
        }
    }
}

/// Convolution product of two points of `Spec B` at a probe algebra:
/// `(φ∗ψ)(e_k) = Σ_{i,j} comult[k][i][j]·φ(e_i)ψ(e_j)`.
pub fn convolve_points(b: &FdBialgebra, s: &TestAlgebra, phi: &Matrix, psi: &Matrix) -> Matrix {
    let n = b.dim();
    let mut out = Matrix::zero(b.field(), s.dim(), n);
    for k in 0..n {
        let mut acc = s.zero();
        for i in 0..n {
            for j in 0..n {
                let c = &b.coalgebra.comult[k][i][j];
                if c.is_zero() {
                    continue;
                }
                let prod = s.mul(&phi.col(i), &psi.col(j));
                acc = s.add(&acc, &s.scale(c, &prod));
            }
        }
        for (r, v) in acc.iter().enumerate() {
            out.set(r, k, v.clone());
        }
    }
    out
}

/// Kronecker product of structure-constant algebras.
pub fn algebra_tensor(a: &FdAlgebra, b: &FdAlgebra) -> FdAlgebra {
    let na = a.dim();
    let nb = b.dim();
    let n = na * nb;
    let idx = |i: usize, j: usize| i * nb + j;
    let mut mult = zero3(a.field, n);
    for i1 in 0..na {
        for j1 in 0..nb {
            for i2 in 0..na {
                for j2 in 0..nb {
                    for k1 in 0..na {
                        for k2 in 0..nb {
                            mult[idx(i1, j1)][idx(i2, j2)][idx(k1, k2)] = a.mult[i1][i2][k1]
                                .mul(&b.mult[j1][j2][k2])
                                .expect("field");
                        }
                    }
                }
            }
        }
    }
    let mut unit = alloc::vec![FieldElem::zero(a.field); n];
    for i in 0..na {
        for j in 0..nb {
            unit[idx(i, j)] = a.unit[i].mul(&b.unit[j]).expect("field");
        }
    }
    let labels = (0..na)
        .flat_map(|i| (0..nb).map(move |j| (i, j)))
        .map(|(i, j)| format!("{}⊗{}", a.labels[i], b.labels[j]))
        .collect();
    FdAlgebra { field: a.field, labels, mult, unit }
}

/// An `A`-module by explicit action matrices per algebra basis vector.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FdModule {
    pub dim: usize,
    pub actions: Vec<Matrix>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ModuleError {
    WrongActionCount,
    WrongActionShape,
    UnitActsWrong,
    ActionNotMultiplicative(usize, usize),
}

impl fmt::Display for ModuleError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ModuleError::WrongActionCount => write!(f, "one action matrix per basis vector"),
            ModuleError::WrongActionShape => write!(f, "action matrices must be square of the module dimension"),
            ModuleError::UnitActsWrong => write!(f, "unit does not act as identity"),
            ModuleError::ActionNotMultiplicative(i, j) => {
                write!(f, "ρ(e_{i})ρ(e_{j}) ≠ ρ(e_{i}·e_{j})")
            }
        }
    }
}

impl FdModule {
    /// Validates the action axioms on construction.
    pub fn new(a: &FdAlgebra, actions: Vec<Matrix>) -> Result<FdModule, ModuleError> {
        let n = a.dim();
        if actions.len() != n {
            return Err(ModuleError::WrongActionCount);
        }
        let dim = actions.first().map_or(0, Matrix::rows);
        for act in &actions {
            if act.rows() != dim || act.cols() != dim {
                return Err(ModuleError::WrongActionShape);
            }
        }
        // ρ(1) = Id.
        let mut unit_action = Matrix::zero(a.field, dim, dim);
        for (i, u) in a.unit.iter().enumerate() {
            unit_action = unit_action.add(&actions[i].scale(u)).expect("shape");
        }
        if unit_action != Matrix::identity(a.field, dim) {
            return Err(ModuleError::UnitActsWrong);
        }
        // ρ(e_i)ρ(e_j) = Σ_k m[i][j][k] ρ(e_k).
        for i in 0..n {
            for j in 0..n {
                let lhs = actions[i].mul(&actions[j]).expect("shape");
                let mut rhs = Matrix::zero(a.field, dim, dim);
                for k in 0..n {
                    rhs = rhs.add(&actions[k].scale(&a.mult[i][j][k])).expect("shape");
                }
                if lhs != rhs {
                    return Err(ModuleError::ActionNotMultiplicative(i, j));
                }
            }
        }
        Ok(FdModule { dim, actions })
    }

    /// The regular module: the algebra acting on itself by left
    /// multiplication.
    pub fn regular(a: &FdAlgebra) -> FdModule {
        let actions = (0..a.dim()).map(|i| a.left_mult_matrix(i)).collect();
        FdModule::new(a, actions).expect("left regular action satisfies the axioms")
    }

    /// A one-dimensional module along a character `A → K` (a point matrix
    /// of shape `1 × dim A`).
    pub fn character(a: &FdAlgebra, point: &Matrix) -> FdModule {
        let actions = (0..a.dim())
            .map(|i| {
                Matrix::new(a.field, 1, 1, alloc::vec![point.get(0, i).clone()]).expect("1x1")
            })
            .collect();
        FdModule::new(a, actions).expect("a point is an algebra hom")
    }
}

/// Basis of `Hom_A(M, M')` as matrices, by exact kernel computation.
pub fn hom_module_basis(a: &FdAlgebra, m: &FdModule, m2: &FdModule) -> Vec<Matrix> {
    let field = a.field;
    let dm = m.dim;
    let dm2 = m2.dim;
    let unknowns = dm2 * dm;
    let mut rows: Vec<Vec<FieldElem>> = Vec::new();
    for act in 0..a.dim() {
        let rho = &m.actions[act];
        let rho2 = &m2.actions[act];
        for r in 0..dm2 {
            for c in 0..dm {
                let mut row = alloc::vec![FieldElem::zero(field); unknowns];
                // (X·ρ)[r][c] = Σ_k X[r][k]·ρ[k][c].
                for k in 0..dm {
                    row[r * dm + k] =
                        row[r * dm + k].add(rho.get(k, c)).expect("field");
                }
                // −(ρ'·X)[r][c] = −Σ_k ρ'[r][k]·X[k][c].
                for k in 0..dm2 {
                    row[k * dm + c] =
                        row[k * dm + c].sub(rho2.get(r, k)).expect("field");
                }
                rows.push(row);
            }
        }
    }
    let system = stack(field, &rows);
    system
        .kernel_basis()
        .into_iter()
        .map(|v| Matrix::new(field, dm2, dm, v).expect("sized"))
        .collect()
}

/// Report of the base-change determination check for module homs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomBaseChangeReport {
    pub base_hom_dim: usize,
    pub functor_hom_dim: usize,
    pub expected_functor_dim: usize,
    pub base_span_contained: bool,
    pub equal: bool,
}

/// Computes `Hom_A(M,M')` at the base and `Hom_{A⊗S}(M⊗S, M'⊗S)` by an
/// exact flattened solve over `K`, then verifies the latter is the `S`-span
/// of the former (dimension plus containment).
pub fn hom_base_change_check(
    a: &FdAlgebra,
    m: &FdModule,
    m2: &FdModule,
    s: &TestAlgebra,
) -> HomBaseChangeReport {
    let field = a.field;
    let dm = m.dim;
    let dm2 = m2.dim;
    let ds = s.dim();
    let base = hom_module_basis(a, m, m2);

    // Unknowns f_l[r][c] for the S-level map Σ_l f_l ⊗ t^l; index
    // ((l·dm2)+r)·dm + c. The actions of the generators e_i⊗1 have entries
    // in K, so each S-valued commutation equation splits by t-degree.
    let unknowns = ds * dm2 * dm;
    let mut rows: Vec<Vec<FieldElem>> = Vec::new();
    for act in 0..a.dim() {
        let rho = &m.actions[act];
        let rho2 = &m2.actions[act];
        for l in 0..ds {
            for r in 0..dm2 {
                for c in 0..dm {
                    let mut row = alloc::vec![FieldElem::zero(field); unknowns];
                    for k in 0..dm {
                        let idx = (l * dm2 + r) * dm + k;
                        row[idx] = row[idx].add(rho.get(k, c)).expect("field");
                    }
                    for k in 0..dm2 {
                        let idx = (l * dm2 + k) * dm + c;
                        row[idx] = row[idx].sub(rho2.get(r, k)).expect("field");
                    }
                    rows.push(row);
                }
            }
        }
    }
    let system = stack(field, &rows);
    let functor_kernel = system.kernel_basis();

    // Containment: every base hom placed at every t-level must satisfy the
    // S-level system.
    let mut contained = true;
    for h in &base {
        for l in 0..ds {
            let mut v = alloc::vec![FieldElem::zero(field); unknowns];
            for r in 0..dm2 {
                for c in 0..dm {
                    v[(l * dm2 + r) * dm + c] = h.get(r, c).clone();
                }
            }
            let image = system.apply(&v).expect("sized");
            if !image.iter().all(FieldElem::is_zero) {
                contained = false;
            }
        }
    }

    let expected = ds * base.len();
    HomBaseChangeReport {
        base_hom_dim: base.len(),
        functor_hom_dim: functor_kernel.len(),
        expected_functor_dim: expected,
        base_span_contained: contained,
        equal: contained && functor_kernel.len() == expected,
    }
}

/// Report of the submodule stability check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StabilityReport {
    pub base_stable: bool,
    pub base_witness: Option<(usize, usize)>,
    /// One outcome per probe algebra, in catalog order.
    pub probe_stable: Vec<bool>,
    /// Base stability holds iff stability holds at every probe.
    pub equivalence_holds: bool,
}

/// Checks that a subspace `W ⊆ M` is stable under the algebra action, and
/// that stability transfers to `W⊗S ⊆ M⊗S` for every probe algebra.
pub fn submodule_stability_check(
    a: &FdAlgebra,
    m: &FdModule,
    w: &[Vec<FieldElem>],
    probes: &[TestAlgebra],
) -> StabilityReport {
    let field = a.field;
    let mut base_witness = None;
    'outer: for (i, act) in m.actions.iter().enumerate() {
        for (j, wj) in w.iter().enumerate() {
            let img = act.apply(wj).expect("sized");
            if !in_span(field, w, &img) {
                base_witness = Some((i, j));
                break 'outer;
            }
        }
    }
    let base_stable = base_witness.is_none();

    let mut probe_stable = Vec::new();
    for s in probes {
        let ds = s.dim();
        // Flattened basis of W⊗S inside K^{dim·ds}: w_j ⊗ t^l.
        let flat_w: Vec<Vec<FieldElem>> = w
            .iter()
            .flat_map(|wj| {
                (0..ds).map(move |l| {
                    let mut v = alloc::vec![FieldElem::zero(field); m.dim * ds];
                    for (coord, x) in wj.iter().enumerate() {
                        v[coord * ds + l] = x.clone();
                    }
                    v
                })
            })
            .collect();
        let mut stable = true;
        'probe: for act in &m.actions {
            for wj in w {
                let img = act.apply(wj).expect("sized");
                for l in 0..ds {
                    let mut v = alloc::vec![FieldElem::zero(field); m.dim * ds];
                    for (coord, x) in img.iter().enumerate() {
                        v[coord * ds + l] = x.clone();
                    }
                    if !in_span(field, &flat_w, &v) {
                        stable = false;
                        break 'probe;
                    }
                }
            }
        }
        probe_stable.push(stable);
    }
    let all_probes = probe_stable.iter().all(|s| *s);
    StabilityReport {
        base_stable,
        base_witness,
        probe_stable,
        equivalence_holds: base_stable == all_probes,
    }
}

/// A finite abelian group as a product of cyclic factors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AbelianGroup {
    pub factors: Vec<u64>,
}

impl AbelianGroup {
    pub fn cyclic(n: u64) -> AbelianGroup {
        AbelianGroup { factors: alloc::vec![n] }
    }

    pub fn product(factors: &[u64]) -> AbelianGroup {
        AbelianGroup { factors: factors.to_vec() }
    }

    pub fn order(&self) -> u64 {
        self.factors.iter().product()
    }

    pub fn tuple(&self, mut i: u64) -> Vec<u64> {
        self.factors
            .iter()
            .map(|n| {
                let d = i % n;
                i /= n;
                d
            })
            .collect()
    }

    pub fn index(&self, tuple: &[u64]) -> u64 {
        let mut i = 0;
        let mut stride = 1;
        for (d, n) in tuple.iter().zip(&self.factors) {
            i += d * stride;
            stride *= n;
        }
        i
    }

    pub fn add(&self, a: u64, b: u64) -> u64 {
        let ta = self.tuple(a);
        let tb = self.tuple(b);
        let sum: Vec<u64> =
            ta.iter().zip(&tb).zip(&self.factors).map(|((x, y), n)| (x + y) % n).collect();
        self.index(&sum)
    }

    /// Brute-force count of group homomorphisms into another abelian group:
    /// independent choices of generator images killed by the factor orders.
    pub fn hom_count_into(&self, h: &AbelianGroup) -> u64 {
        self.factors
            .iter()
            .map(|n| {
                (0..h.order())
                    .filter(|x| {
                        let t = h.tuple(*x);
                        t.iter().zip(&h.factors).all(|(d, m)| (d * n) % m == 0)
                    })
                    .count() as u64
            })
            .product()
    }
}

/// The group bialgebra `K[G]`: grouplike basis, convolution multiplication.
pub fn group_algebra(field: FieldTag, g: &AbelianGroup) -> FdBialgebra {
    let n = g.order() as usize;
    let mut mult = zero3(field, n);
    for i in 0..n {
        for j in 0..n {
            let k = g.add(i as u64, j as u64) as usize;
            mult[i][j][k] = FieldElem::one(field);
        }
    }
    let mut comult = zero3(field, n);
    for (k, row) in comult.iter_mut().enumerate() {
        row[k][k] = FieldElem::one(field);
    }
    let labels = (0..n).map(|i| format!("g{i}")).collect();
    FdBialgebra {
        algebra: FdAlgebra { field, labels, mult, unit: unit_vector(field, n, 0) },
        coalgebra: FdCoalgebra {
            field,
            labels: (0..n).map(|i| format!("g{i}")).collect(),
            comult,
            counit: alloc::vec![FieldElem::one(field); n],
        },
    }
}

/// The function bialgebra `K^G` on the delta basis.
pub fn function_algebra(field: FieldTag, g: &AbelianGroup) -> FdBialgebra {
    let n = g.order() as usize;
    let mut mult = zero3(field, n);
    for (i, row) in mult.iter_mut().enumerate() {
        row[i][i] = FieldElem::one(field);
    }
    let mut comult = zero3(field, n);
    for i in 0..n {
        for j in 0..n {
            let k = g.add(i as u64, j as u64) as usize;
            comult[k][i][j] = FieldElem::one(field);
        }
    }
    let mut counit = alloc::vec![FieldElem::zero(field); n];
    counit[0] = FieldElem::one(field);
    let labels: Vec<String> = (0..n).map(|i| format!("d{i}")).collect();
    FdBialgebra {
        algebra: FdAlgebra {
            field,
            labels: labels.clone(),
            mult,
            unit: alloc::vec![FieldElem::one(field); n],
        },
        coalgebra: FdCoalgebra { field, labels, comult, counit },
    }
}

/// `μ_n = K[x]/(xⁿ-1)` with `Δx = x⊗x`, built by polynomial reduction.
pub fn mu_n(field: FieldTag, n: u64) -> FdBialgebra {
    let n = n as usize;
    let mut mult = zero3(field, n);
    for i in 0..n {
        for j in 0..n {
            // x^{i+j} reduces to x^{(i+j) mod n} modulo xⁿ-1.
            mult[i][j][(i + j) % n] = FieldElem::one(field);
        }
    }
    let mut comult = zero3(field, n);
    for (k, row) in comult.iter_mut().enumerate() {
        row[k][k] = FieldElem::one(field);
    }
    let labels: Vec<String> = (0..n).map(|i| format!("x{i}")).collect();
    FdBialgebra {
        algebra: FdAlgebra {
            field,
            labels: labels.clone(),
            mult,
            unit: unit_vector(field, n, 0),
        },
        coalgebra: FdCoalgebra {
            field,
            labels,
            comult,
            counit: alloc::vec![FieldElem::one(field); n],
        },
    }
}

/// `α_p = F_p[x]/(x^p)` with the additive comultiplication
/// `Δx = x⊗1 + 1⊗x`, so `Δ(x^k) = Σ C(k,i)·x^i⊗x^{k-i}`.
pub fn alpha_p(p: u64) -> FdBialgebra {
    let field = FieldTag::Fp(p);
    let n = p as usize;
    let mut mult = zero3(field, n);
    for i in 0..n {
        for j in 0..n {
            if i + j < n {
                mult[i][j][i + j] = FieldElem::one(field);
            }
        }
    }
    let binom = binomial_table(field, n);
    let mut comult = zero3(field, n);
    for k in 0..n {
        for i in 0..=k {
            comult[k][i][k - i] = binom[k][i].clone();
        }
    }
    let mut counit = alloc::vec![FieldElem::zero(field); n];
    counit[0] = FieldElem::one(field);
    let labels: Vec<String> = (0..n).map(|i| format!("x{i}")).collect();
    FdBialgebra {
        algebra: FdAlgebra {
            field,
            labels: labels.clone(),
            mult,
            unit: unit_vector(field, n, 0),
        },
        coalgebra: FdCoalgebra { field, labels, comult, counit },
    }
}

/// Pascal's triangle in the field.
pub fn binomial_table(field: FieldTag, rows: usize) -> Vec<Vec<FieldElem>> {
    let mut t: Vec<Vec<FieldElem>> = Vec::with_capacity(rows);
    for n in 0..rows {
        let mut row = alloc::vec![FieldElem::zero(field); n + 1];
        row[0] = FieldElem::one(field);
        row[n] = FieldElem::one(field);
        for k in 1..n {
            row[k] = t[n - 1][k - 1].add(&t[n - 1][k]).expect("field");
        }
        t.push(row);
    }
    t
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn group_algebra_z2_passes_all_axioms() {
        let b = group_algebra(FieldTag::Q, &AbelianGroup::cyclic(2));
        assert!(check_bialgebra(&b).all_pass());
        assert!(b.algebra.is_commutative());
        assert!(b.coalgebra.is_cocommutative());
        assert!(b.basis_is_grouplike());
    }

    #[test]
    fn broken_unit_fails_with_witness() {
        // e1·e1 = e2, e2·e1 = e1, everything else zero, "unit" = e1.
        let field = FieldTag::Q;
        let mut mult = zero3(field, 3);
        mult[1][1][2] = FieldElem::one(field);
        mult[2][1][1] = FieldElem::one(field);
        let a = FdAlgebra {
            field,
            labels: alloc::vec!["a".into(), "b".into(), "c".into()],
            mult,
            unit: unit_vector(field, 3, 1),
        };
        let report = check_algebra(&a);
        let unit_check = report.checks.iter().find(|c| c.law == Law::Unit).unwrap();
        assert!(!unit_check.pass);
        assert!(unit_check.witness.is_some());
    }

    #[test]
    fn alpha_p_over_f2_passes() {
        // Oracle for the key identity: (x⊗1 + 1⊗x)² = x²⊗1 + 1⊗x² = 0 in
        // characteristic 2, so the additive comultiplication respects x²=0.
        let b = alpha_p(2);
        assert!(check_bialgebra(&b).all_pass());
        assert!(!b.basis_is_grouplike());
    }

    #[test]
    fn dualize_function_algebra_gives_group_algebra() {
        let g = AbelianGroup::cyclic(2);
        let f = function_algebra(FieldTag::Q, &g);
        let dual = dualize_bialgebra(&f);
        let expected = group_algebra(FieldTag::Q, &g);
        assert_eq!(dual.algebra.mult, expected.algebra.mult);
        assert_eq!(dual.algebra.unit, expected.algebra.unit);
        assert_eq!(dual.coalgebra.comult, expected.coalgebra.comult);
        assert_eq!(dual.coalgebra.counit, expected.coalgebra.counit);
    }

    #[test]
    fn double_dual_is_bit_equal() {
        for b in [
            group_algebra(FieldTag::Fp(5), &AbelianGroup::cyclic(4)),
            function_algebra(FieldTag::Q, &AbelianGroup::product(&[2, 2])),
            alpha_p(3),
            mu_n(FieldTag::Fp(3), 5),
        ] {
            assert_eq!(dualize_bialgebra(&dualize_bialgebra(&b)), b);
        }
    }

    #[test]
    fn dualize_swaps_commutativity_flags() {
        let b = group_algebra(FieldTag::Fp(2), &AbelianGroup::cyclic(3));
        let d = dualize_bialgebra(&b);
        assert_eq!(b.algebra.is_commutative(), d.coalgebra.is_cocommutative());
        assert_eq!(b.coalgebra.is_cocommutative(), d.algebra.is_commutative());
    }

    #[test]
    fn enumerate_homs_f2x_to_dual_numbers() {
        // A = F_2[x]/(x²), S = F_2[ε]/(ε²): exactly x↦0 and x↦ε.
        // Oracle: the four candidates 0,1,ε,1+ε; squares are 0,1,0,1.
        let field = FieldTag::Fp(2);
        let mut mult = zero3(field, 2);
        mult[0][0][0] = FieldElem::one(field);
        mult[0][1][1] = FieldElem::one(field);
        mult[1][0][1] = FieldElem::one(field);
        let a = FdAlgebra {
            field,
            labels: alloc::vec!["1".into(), "x".into()],
            mult,
            unit: unit_vector(field, 2, 0),
        };
        assert!(check_algebra(&a).all_pass());
        let s = TestAlgebra::new(field, crate::scalar::Poly::monomial(field, 2)).unwrap();
        let homs = enumerate_algebra_homs(&a, &s, &Guards::default()).unwrap();
        assert_eq!(homs.len(), 2);
    }

    #[test]
    fn enumerate_homs_f3_quadratic() {
        // A = F_3[x]/(x²-1), S = F_3: solutions of s² = 1 are ±1.
        let field = FieldTag::Fp(3);
        let mut mult = zero3(field, 2);
        mult[0][0][0] = FieldElem::one(field);
        mult[0][1][1] = FieldElem::one(field);
        mult[1][0][1] = FieldElem::one(field);
        mult[1][1][0] = FieldElem::one(field);
        let a = FdAlgebra {
            field,
            labels: alloc::vec!["1".into(), "x".into()],
            mult,
            unit: unit_vector(field, 2, 0),
        };
        let s = TestAlgebra::base(field);
        let homs = enumerate_algebra_homs(&a, &s, &Guards::default()).unwrap();
        assert_eq!(homs.len(), 2);
    }

    #[test]
    fn one_dimensional_source_has_unique_hom() {
        let field = FieldTag::Fp(5);
        let a = FdAlgebra {
            field,
            labels: alloc::vec!["1".into()],
            mult: alloc::vec![alloc::vec![alloc::vec![FieldElem::one(field)]]],
            unit: alloc::vec![FieldElem::one(field)],
        };
        let s = TestAlgebra::new(field, crate::scalar::Poly::monomial(field, 3)).unwrap();
        assert_eq!(enumerate_algebra_homs(&a, &s, &Guards::default()).unwrap().len(), 1);
    }

    #[test]
    fn hom_count_multiplies_over_tensor() {
        // |Hom(A⊗B, S)| = |Hom(A,S)|·|Hom(B,S)|.
        let field = FieldTag::Fp(3);
        let g2 = group_algebra(field, &AbelianGroup::cyclic(2)).algebra;
        let g3 = group_algebra(field, &AbelianGroup::cyclic(3)).algebra;
        let s = TestAlgebra::base(field);
        let guards = Guards::default();
        let ab = algebra_tensor(&g2, &g3);
        assert!(check_algebra(&ab).all_pass());
        let na = enumerate_algebra_homs(&g2, &s, &guards).unwrap().len();
        let nb = enumerate_algebra_homs(&g3, &s, &guards).unwrap().len();
        let nab = enumerate_algebra_homs(&ab, &s, &guards).unwrap().len();
        assert_eq!(nab, na * nb);
    }

    #[test]
    fn bialgebra_homs_match_group_homs() {
        let field = FieldTag::Fp(3);
        let guards = Guards::default();
        // K[Z/2] → K[Z/2] over F_3: the two group endomorphisms.
        let b2 = group_algebra(field, &AbelianGroup::cyclic(2));
        let homs = enumerate_bialgebra_homs(&b2, &b2, &guards).unwrap();
        assert_eq!(homs.len(), 2);

        // K[Z/2] → K[Z/3] over F_7: only the trivial one.
        let field7 = FieldTag::Fp(7);
        let a = group_algebra(field7, &AbelianGroup::cyclic(2));
        let b = group_algebra(field7, &AbelianGroup::cyclic(3));
        let homs = enumerate_bialgebra_homs(&a, &b, &guards).unwrap();
        assert_eq!(homs.len(), 1);
    }

    #[test]
    fn hom_to_base_field_is_the_counit() {
        let field = FieldTag::Fp(3);
        let b = group_algebra(field, &AbelianGroup::cyclic(3));
        let k = FdBialgebra {
            algebra: FdAlgebra {
                field,
                labels: alloc::vec!["1".into()],
                mult: alloc::vec![alloc::vec![alloc::vec![FieldElem::one(field)]]],
                unit: alloc::vec![FieldElem::one(field)],
            },
            coalgebra: FdCoalgebra {
                field,
                labels: alloc::vec!["1".into()],
                comult: alloc::vec![alloc::vec![alloc::vec![FieldElem::one(field)]]],
                counit: alloc::vec![FieldElem::one(field)],
            },
        };
        let homs = enumerate_bialgebra_homs(&b, &k, &Guards::default()).unwrap();
        assert_eq!(homs.len(), 1);
        let counit_matrix = Matrix::new(field, 1, 3, b.coalgebra.counit.clone()).unwrap();
        assert_eq!(homs[0], counit_matrix);
    }

    #[test]
    fn dual_morphism_is_contravariant() {
        let f = Matrix::from_i64(FieldTag::Q, &[&[1, 2], &[0, 1]]);
        let g = Matrix::from_i64(FieldTag::Q, &[&[1, 1], &[1, 0]]);
        let gf = g.mul(&f).unwrap();
        assert_eq!(
            dual_morphism(&gf),
            dual_morphism(&f).mul(&dual_morphism(&g)).unwrap()
        );
        let id = Matrix::identity(FieldTag::Q, 2);
        assert_eq!(dual_morphism(&id), id);
    }

    #[test]
    fn regular_module_of_group_algebra() {
        let b = group_algebra(FieldTag::Fp(2), &AbelianGroup::cyclic(2));
        let m = FdModule::regular(&b.algebra);
        assert_eq!(m.dim, 2);
    }

    #[test]
    fn hom_base_change_on_regular_f2z2() {
        // A = F_2[Z/2], M = M' = A: End_A(A) ≅ A is 2-dimensional, and the
        // S-side for S = F_2[ε] has dimension 4 = 2·2.
        let field = FieldTag::Fp(2);
        let b = group_algebra(field, &AbelianGroup::cyclic(2));
        let m = FdModule::regular(&b.algebra);
        let s = TestAlgebra::new(field, crate::scalar::Poly::monomial(field, 2)).unwrap();
        let report = hom_base_change_check(&b.algebra, &m, &m, &s);
        assert_eq!(report.base_hom_dim, 2);
        assert_eq!(report.functor_hom_dim, 4);
        assert!(report.equal);
    }

    #[test]
    fn hom_base_change_base_field_gives_all_maps() {
        let field = FieldTag::Fp(3);
        let a = FdAlgebra {
            field,
            labels: alloc::vec!["1".into()],
            mult: alloc::vec![alloc::vec![alloc::vec![FieldElem::one(field)]]],
            unit: alloc::vec![FieldElem::one(field)],
        };
        let m = FdModule::new(
            &a,
            alloc::vec![Matrix::identity(field, 2)],
        )
        .unwrap();
        let s = TestAlgebra::new(field, crate::scalar::Poly::monomial(field, 2)).unwrap();
        let report = hom_base_change_check(&a, &m, &m, &s);
        assert_eq!(report.base_hom_dim, 4);
        assert!(report.equal);
    }

    #[test]
    fn hom_base_change_character_target() {
        // A = F_3[x]/(x²), M = A, M' = F_3 with x acting by zero: the
        // constraint f(x·v) = 0 leaves rank 1 on both sides.
        let field = FieldTag::Fp(3);
        let mut mult = zero3(field, 2);
        mult[0][0][0] = FieldElem::one(field);
        mult[0][1][1] = FieldElem::one(field);
        mult[1][0][1] = FieldElem::one(field);
        let a = FdAlgebra {
            field,
            labels: alloc::vec!["1".into(), "x".into()],
            mult,
            unit: unit_vector(field, 2, 0),
        };
        let m = FdModule::regular(&a);
        let point = Matrix::from_i64(field, &[&[1, 0]]);
        let m2 = FdModule::character(&a, &point);
        let s = TestAlgebra::new(field, crate::scalar::Poly::monomial(field, 2)).unwrap();
        let report = hom_base_change_check(&a, &m, &m2, &s);
        assert_eq!(report.base_hom_dim, 1);
        assert_eq!(report.functor_hom_dim, 2);
        assert!(report.equal);
    }

    #[test]
    fn submodule_stability_examples() {
        // A = F_2[x]/(x²): span{x} is stable, span{1} is not, 0 is.
        let field = FieldTag::Fp(2);
        let mut mult = zero3(field, 2);
        mult[0][0][0] = FieldElem::one(field);
        mult[0][1][1] = FieldElem::one(field);
        mult[1][0][1] = FieldElem::one(field);
        let a = FdAlgebra {
            field,
            labels: alloc::vec!["1".into(), "x".into()],
            mult,
            unit: unit_vector(field, 2, 0),
        };
        let m = FdModule::regular(&a);
        let probes = crate::testalg::probe_catalog(2);

        let w_x = alloc::vec![alloc::vec![
            FieldElem::zero(field),
            FieldElem::one(field)
        ]];
        let r = submodule_stability_check(&a, &m, &w_x, &probes);
        assert!(r.base_stable);
        assert!(r.probe_stable.iter().all(|s| *s));
        assert!(r.equivalence_holds);

        let w_1 = alloc::vec![alloc::vec![
            FieldElem::one(field),
            FieldElem::zero(field)
        ]];
        let r = submodule_stability_check(&a, &m, &w_1, &probes);
        assert!(!r.base_stable);
        assert_eq!(r.base_witness, Some((1, 0)));
        assert!(r.equivalence_holds);

        let r = submodule_stability_check(&a, &m, &[], &probes);
        assert!(r.base_stable);
        assert!(r.equivalence_holds);
    }

    #[test]
    fn group_hom_count_oracle() {
        let z2 = AbelianGroup::cyclic(2);
        let z3 = AbelianGroup::cyclic(3);
        let z4 = AbelianGroup::cyclic(4);
        let v4 = AbelianGroup::product(&[2, 2]);
        assert_eq!(z2.hom_count_into(&z2), 2);
        assert_eq!(z2.hom_count_into(&z3), 1);
        assert_eq!(z4.hom_count_into(&z2), 2);
        assert_eq!(v4.hom_count_into(&z2), 4);
        assert_eq!(z2.hom_count_into(&v4), 4);
    }
}
