//! Towers of finite-dimensional algebras with surjective transitions,
//! their point sets at probe algebras (direct limits of finite spectra),
//! finite duals, the dual of the polynomial bialgebra realized as linearly
//! recursive functionals, and the Cartier duality desk check.

use alloc::format;
use alloc::vec::Vec;
use core::fmt;

use crate::bialgebra::{
    binomial_table, check_algebra, dualize_algebra, dualize_bialgebra, enumerate_algebra_homs,
    group_algebra, AbelianGroup, FdAlgebra, FdCoalgebra,
};
use crate::guard::{GuardExceeded, Guards};
use crate::linalg::{stack, Matrix};
use crate::scalar::{FieldElem, FieldTag, Poly};
use crate::testalg::TestAlgebra;

/// Combined cap on `deg(f)·depth` for adic towers.
pub const MAX_TOWER_DIM: usize = 32;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TowerError {
    SizeGuard(usize),
    NotMonic,
    EmptyTower,
    TransitionCount,
    TransitionShape(usize),
    TransitionNotAlgebraMorphism(usize),
    TransitionNotSurjective(usize),
    LevelNotAlgebra(usize),
    Guard(GuardExceeded),
}

impl From<GuardExceeded> for TowerError {
    fn from(e: GuardExceeded) -> Self {
        TowerError::Guard(e)
    }
}

impl fmt::Display for TowerError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TowerError::SizeGuard(n) => {
                write!(f, "tower dimension {n} exceeds the cap of {MAX_TOWER_DIM}")
            }
            TowerError::NotMonic => write!(f, "generator polynomial must be monic of degree ≥ 1"),
            TowerError::EmptyTower => write!(f, "a tower needs at least one level"),
            TowerError::TransitionCount => write!(f, "need one transition per adjacent pair"),
            TowerError::TransitionShape(i) => write!(f, "transition {i} has the wrong shape"),
            TowerError::TransitionNotAlgebraMorphism(i) => {
                write!(f, "transition {i} is not an algebra morphism")
            }
            TowerError::TransitionNotSurjective(i) => {
                write!(f, "transition {i} is not surjective")
            }
            TowerError::LevelNotAlgebra(i) => write!(f, "level {i} fails the algebra axioms"),
            TowerError::Guard(e) => write!(f, "{e}"),
        }
    }
}

/// An inverse system of finite-dimensional algebras
/// `A_1 ↞ A_2 ↞ … ↞ A_n` with surjective algebra-morphism transitions
/// `π_i: A_{i+1} → A_i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlgebraTower {
    levels: Vec<FdAlgebra>,
    transitions: Vec<Matrix>,
}

impl AlgebraTower {
    /// Validates every invariant on construction: levels satisfy the
    /// algebra axioms and each transition is a surjective algebra morphism.
    pub fn new(levels: Vec<FdAlgebra>, transitions: Vec<Matrix>) -> Result<AlgebraTower, TowerError> {
        if levels.is_empty() {
            return Err(TowerError::EmptyTower);
        }
        if transitions.len() + 1 != levels.len() {
            return Err(TowerError::TransitionCount);
        }
        for (i, a) in levels.iter().enumerate() {
            if !check_algebra(a).all_pass() {
                return Err(TowerError::LevelNotAlgebra(i));
            }
        }
        for (i, t) in transitions.iter().enumerate() {
            let source = &levels[i + 1];
            let target = &levels[i];
            if t.rows() != target.dim() || t.cols() != source.dim() {
                return Err(TowerError::TransitionShape(i));
            }
            if !crate::bialgebra::is_algebra_morphism(t, source, target) {
                return Err(TowerError::TransitionNotAlgebraMorphism(i));
            }
            if t.rank() != target.dim() {
                return Err(TowerError::TransitionNotSurjective(i));
            }
        }
        Ok(AlgebraTower { levels, transitions })
    }

    pub fn levels(&self) -> &[FdAlgebra] {
        &self.levels
    }

    pub fn transitions(&self) -> &[Matrix] {
        &self.transitions
    }

    pub fn depth(&self) -> usize {
        self.levels.len()
    }

    pub fn top(&self) -> &FdAlgebra {
        self.levels.last().expect("nonempty")
    }

    /// The composite `A_top → A_i`.
    pub fn down_map(&self, i: usize) -> Matrix {
        let mut m = Matrix::identity(self.top().field, self.top().dim());
        for t in self.transitions[i..].iter().rev() {
            m = t.mul(&m).expect("tower shapes compose");
        }
        m
    }
}

/// The quotient algebra `K[x]/(f^level)` on the monomial basis.
fn poly_quotient_algebra(field: FieldTag, modulus: &Poly, label_prefix: &str) -> FdAlgebra {
    let dim = modulus.degree().expect("monic nonzero");
    let mut mult =
        alloc::vec![alloc::vec![alloc::vec![FieldElem::zero(field); dim]; dim]; dim];
    for i in 0..dim {
        for j in 0..dim {
            let prod = Poly::monomial(field, i + j).rem_monic(modulus);
            for k in 0..dim {
                mult[i][j][k] = prod.coeff(k);
            }
        }
    }
    let mut unit = alloc::vec![FieldElem::zero(field); dim];
    unit[0] = FieldElem::one(field);
    FdAlgebra {
        field,
        labels: (0..dim).map(|i| format!("{label_prefix}{i}")).collect(),
        mult,
        unit,
    }
}

/// The `f`-adic tower `K[x]/(f), K[x]/(f²), …, K[x]/(f^depth)` with the
/// canonical truncation transitions.
pub fn adic_tower(field: FieldTag, f: &Poly, depth: usize) -> Result<AlgebraTower, TowerError> {
    if !f.is_monic() || f.degree() == Some(0) {
        return Err(TowerError::NotMonic);
    }
    let d = f.degree().expect("monic");
    if depth == 0 || d * depth > MAX_TOWER_DIM {
        return Err(TowerError::SizeGuard(d * depth));
    }
    let mut levels = Vec::with_capacity(depth);
    let mut transitions = Vec::new();
    for n in 1..=depth {
        let modulus = f.pow(n as u64);
        levels.push(poly_quotient_algebra(field, &modulus, "x"));
        if n > 1 {
            // Reduce the basis monomials of K[x]/(f^n) modulo f^{n-1}.
            let target_mod = f.pow(n as u64 - 1);
            let target_dim = d * (n - 1);
            let source_dim = d * n;
            let mut t = Matrix::zero(field, target_dim, source_dim);
            for j in 0..source_dim {
                let reduced = Poly::monomial(field, j).rem_monic(&target_mod);
                for k in 0..target_dim {
                    t.set(k, j, reduced.coeff(k));
                }
            }
            transitions.push(t);
        }
    }
    AlgebraTower::new(levels, transitions)
}

/// Something `Spec` can be evaluated on.
#[derive(Debug, Clone, Copy)]
pub enum SpecTarget<'a> {
    Algebra(&'a FdAlgebra),
    Tower(&'a AlgebraTower),
}

/// Points of the spectrum at a probe algebra. For a tower this is the
/// direct limit of the finite level spectra: points are computed per level,
/// lifted to the top level through the transition composites, and
/// identified by exact matrix equality.
pub fn spec_points(
    target: SpecTarget<'_>,
    s: &TestAlgebra,
    guards: &Guards,
) -> Result<Vec<Matrix>, GuardExceeded> {
    match target {
        SpecTarget::Algebra(a) => enumerate_algebra_homs(a, s, guards),
        SpecTarget::Tower(tower) => {
            let mut points: Vec<Matrix> = Vec::new();
            for (i, level) in tower.levels().iter().enumerate() {
                let down = tower.down_map(i);
                for phi in enumerate_algebra_homs(level, s, guards)? {
                    points.push(phi.mul(&down).expect("tower shapes compose"));
                }
            }
            points.sort();
            points.dedup();
            Ok(points)
        }
    }
}

/// The transpose coalgebra of a finite-dimensional algebra (the finite
/// dual; for finite dimension the bar construction is the identity).
pub fn finite_dual(a: &FdAlgebra) -> FdCoalgebra {
    dualize_algebra(a)
}

/// All monic moduli of degree `1..=degree_bound` over a prime field: the
/// truncated family of finite-codimension quotients of `K[x]` that stands
/// in for the full inverse system. The bound is a declared truncation
/// parameter.
pub fn bar_moduli(field: FieldTag, degree_bound: usize) -> Vec<Poly> {
    let q = field.order().expect("finite field");
    let mut out = Vec::new();
    for d in 1..=degree_bound {
        let count = q.pow(d as u32);
        for mut i in 0..count {
            let mut coeffs = Vec::with_capacity(d + 1);
            for _ in 0..d {
                coeffs.push(FieldElem::from_enum_index(field, i % q));
                i /= q;
            }
            coeffs.push(FieldElem::one(field));
            out.push(Poly::new(field, coeffs));
        }
    }
    out
}

/// Which bialgebra structure on `K[x]` a functional is dual to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LinRecStructure {
    /// `Δx = x⊗1 + 1⊗x`; the dual product is the Hurwitz product.
    Additive,
    /// `Δx = x⊗x`; the dual product is pointwise.
    Multiplicative,
}

impl fmt::Display for LinRecStructure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LinRecStructure::Additive => write!(f, "additive"),
            LinRecStructure::Multiplicative => write!(f, "multiplicative"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LinRecError {
    InitLength { expected: usize, got: usize },
    NotMonic,
    StructureMismatch,
    FieldMismatch,
    ValidityFailed(usize),
}

impl fmt::Display for LinRecError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LinRecError::InitLength { expected, got } => {
                write!(f, "need {expected} initial values, got {got}")
            }
            LinRecError::NotMonic => write!(f, "recurrence modulus must be monic of degree ≥ 1"),
            LinRecError::StructureMismatch => write!(f, "structure tags differ"),
            LinRecError::FieldMismatch => write!(f, "base fields differ"),
            LinRecError::ValidityFailed(n) => {
                write!(f, "functional does not annihilate f·x^{n}")
            }
        }
    }
}

/// A functional on `K[x]` vanishing on the ideal `(f)`: the values
/// `w(x^n)` follow the linear recurrence with characteristic polynomial
/// `f`, seeded by the initial values. An element of the dual bialgebra.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinRecFunctional {
    field: FieldTag,
    modulus: Poly,
    init: Vec<FieldElem>,
    structure: LinRecStructure,
}

impl LinRecFunctional {
    pub fn new(
        modulus: Poly,
        init: Vec<FieldElem>,
        structure: LinRecStructure,
    ) -> Result<LinRecFunctional, LinRecError> {
        if !modulus.is_monic() || modulus.degree() == Some(0) {
            return Err(LinRecError::NotMonic);
        }
        let d = modulus.degree().expect("monic");
        if init.len() != d {
            return Err(LinRecError::InitLength { expected: d, got: init.len() });
        }
        let w = LinRecFunctional { field: modulus.field, modulus, init, structure };
        // Validity: w vanishes on (f)·x^n for small n. True by construction
        // of the recurrence; checked anyway as the membership certificate.
        for n in 0..=10 {
            if !w.annihilates_shifted_modulus(n) {
                return Err(LinRecError::ValidityFailed(n));
            }
        }
        Ok(w)
    }

    pub fn field(&self) -> FieldTag {
        self.field
    }

    pub fn modulus(&self) -> &Poly {
        &self.modulus
    }

    pub fn structure(&self) -> LinRecStructure {
        self.structure
    }

    pub fn degree(&self) -> usize {
        self.modulus.degree().expect("monic")
    }

    /// First `n` values `w(x^0), …, w(x^{n-1})`.
    pub fn values(&self, n: usize) -> Vec<FieldElem> {
        let d = self.degree();
        let mut vals = self.init.clone();
        vals.truncate(n);
        while vals.len() < n {
            let m = vals.len();
            // a_{m} = -Σ_{i<d} c_i·a_{m-d+i}.
            let mut next = FieldElem::zero(self.field);
            for i in 0..d {
                let c = self.modulus.coeff(i);
                let t = c.mul(&vals[m - d + i]).expect("field");
                next = next.sub(&t).expect("field");
            }
            vals.push(next);
        }
        vals
    }

    pub fn value(&self, n: usize) -> FieldElem {
        self.values(n + 1).pop().expect("nonempty")
    }

    /// `w(f·x^n) = 0`.
    pub fn annihilates_shifted_modulus(&self, n: usize) -> bool {
        let d = self.degree();
        let vals = self.values(n + d + 1);
        let mut acc = FieldElem::zero(self.field);
        for i in 0..=d {
            let c = self.modulus.coeff(i);
            acc = acc.add(&c.mul(&vals[n + i]).expect("field")).expect("field");
        }
        acc.is_zero()
    }

    /// Evaluation on an arbitrary polynomial.
    pub fn eval(&self, p: &Poly) -> FieldElem {
        let vals = self.values(p.coeffs.len());
        let mut acc = FieldElem::zero(self.field);
        for (n, c) in p.coeffs.iter().enumerate() {
            acc = acc.add(&c.mul(&vals[n]).expect("field")).expect("field");
        }
        acc
    }
}

/// Builds a functional from a recurrence: modulus, initial values, tag.
pub fn linrec_from_recurrence(
    modulus: Poly,
    init: Vec<FieldElem>,
    structure: LinRecStructure,
) -> Result<LinRecFunctional, LinRecError> {
    LinRecFunctional::new(modulus, init, structure)
}

/// Companion matrix acting on the state `(a_n, …, a_{n+d-1})`.
fn companion(modulus: &Poly) -> Matrix {
    let field = modulus.field;
    let d = modulus.degree().expect("monic");
    let mut c = Matrix::zero(field, d, d);
    for i in 0..d.saturating_sub(1) {
        c.set(i, i + 1, FieldElem::one(field));
    }
    for i in 0..d {
        c.set(d - 1, i, modulus.coeff(i).neg());
    }
    c
}

fn kronecker_product(a: &Matrix, b: &Matrix) -> Matrix {
    let field = a.field();
    let mut out = Matrix::zero(field, a.rows() * b.rows(), a.cols() * b.cols());
    for i in 0..a.rows() {
        for j in 0..a.cols() {
            for k in 0..b.rows() {
                for l in 0..b.cols() {
                    let v = a.get(i, j).mul(b.get(k, l)).expect("field");
                    out.set(i * b.rows() + k, j * b.cols() + l, v);
                }
            }
        }
    }
    out
}

/// Kronecker sum `A⊗I + I⊗B`.
fn kronecker_sum(a: &Matrix, b: &Matrix) -> Matrix {
    let field = a.field();
    let left = kronecker_product(a, &Matrix::identity(field, b.rows()));
    let right = kronecker_product(&Matrix::identity(field, a.rows()), b);
    left.add(&right).expect("same shape")
}

/// Minimal monic polynomial of a matrix, by Krylov kernel search on the
/// flattened powers `I, M, M², …`.
pub fn matrix_min_poly(m: &Matrix) -> Poly {
    let field = m.field();
    let d = m.rows();
    let flatten = |x: &Matrix| -> Vec<FieldElem> {
        (0..d).flat_map(|i| (0..d).map(move |j| x.get(i, j).clone())).collect()
    };
    let mut powers = alloc::vec![Matrix::identity(field, d)];
    for k in 1..=d {
        let next = powers[k - 1].mul(m).expect("square");
        powers.push(next);
    }
    for k in 1..=d {
        // Solve Σ_{i<k} c_i·M^i = -M^k.
        let cols: Vec<Vec<FieldElem>> = powers[..k].iter().map(|p| flatten(p)).collect();
        let a = stack(field, &cols).transpose();
        let rhs: Vec<FieldElem> = flatten(&powers[k]).iter().map(FieldElem::neg).collect();
        if let Some(sol) = a.solve(&rhs).expect("shapes agree") {
            let mut coeffs = sol;
            coeffs.push(FieldElem::one(field));
            return Poly::new(field, coeffs);
        }
    }
    unreachable!("Cayley-Hamilton bounds the minimal polynomial degree")
}

/// Minimal monic annihilator of a sequence known to satisfy a linear
/// recurrence of order ≤ `bound`. Needs `2·bound + 1` terms: a candidate
/// verified on the first `bound` windows annihilates a `bound`-recursive
/// sequence everywhere.
pub fn minimal_annihilator(field: FieldTag, terms: &[FieldElem], bound: usize) -> Poly {
    assert!(terms.len() > 2 * bound, "not enough terms for the degree bound");
    if terms.iter().all(FieldElem::is_zero) {
        return Poly::from_i64(field, &[1]);
    }
    let windows = bound.max(1);
    for t in 1..=bound {
        // Monic degree-t relation: Σ_{i<t} c_i·a_{n+i} = -a_{n+t}.
        let rows: Vec<Vec<FieldElem>> =
            (0..windows).map(|n| terms[n..n + t].to_vec()).collect();
        let rhs: Vec<FieldElem> = (0..windows).map(|n| terms[n + t].neg()).collect();
        let a = stack(field, &rows);
        if let Some(sol) = a.solve(&rhs).expect("shapes agree") {
            // The particular solution may not satisfy the remaining
            // windows when free variables exist; verify on all of them.
            let mut coeffs = sol;
            coeffs.push(FieldElem::one(field));
            let cand = Poly::new(field, coeffs);
            let ok = (0..terms.len() - t).all(|n| {
                let mut acc = FieldElem::zero(field);
                for i in 0..=t {
                    acc = acc
                        .add(&cand.coeff(i).mul(&terms[n + i]).expect("field"))
                        .expect("field");
                }
                acc.is_zero()
            });
            if ok {
                return cand;
            }
        }
    }
    unreachable!("the Kronecker modulus bounds the minimal annihilator")
}

/// Product of two functionals in the dual bialgebra: pointwise for the
/// multiplicative structure, Hurwitz (binomial convolution) for the
/// additive one. A valid annihilating modulus comes from the minimal
/// polynomial of the Kronecker product (resp. Kronecker sum) of the
/// companion matrices, then is minimized by Hankel kernel search on the
/// product sequence.
pub fn linrec_product(
    w: &LinRecFunctional,
    w2: &LinRecFunctional,
) -> Result<LinRecFunctional, LinRecError> {
    if w.structure != w2.structure {
        return Err(LinRecError::StructureMismatch);
    }
    if w.field != w2.field {
        return Err(LinRecError::FieldMismatch);
    }
    let field = w.field;
    let d1 = w.degree();
    let d2 = w2.degree();
    let bound = d1 * d2;
    let needed = 2 * bound + 1;
    let u = w.values(needed);
    let v = w2.values(needed);
    let product: Vec<FieldElem> = match w.structure {
        LinRecStructure::Multiplicative => {
            u.iter().zip(&v).map(|(a, b)| a.mul(b).expect("field")).collect()
        }
        LinRecStructure::Additive => {
            let binom = binomial_table(field, needed);
            (0..needed)
                .map(|n| {
                    let mut acc = FieldElem::zero(field);
                    for k in 0..=n {
                        let t = binom[n][k]
                            .mul(&u[k])
                            .expect("field")
                            .mul(&v[n - k])
                            .expect("field");
                        acc = acc.add(&t).expect("field");
                    }
                    acc
                })
                .collect()
        }
    };

    let c1 = companion(w.modulus());
    let c2 = companion(w2.modulus());
    let kron = match w.structure {
        LinRecStructure::Multiplicative => kronecker_product(&c1, &c2),
        LinRecStructure::Additive => kronecker_sum(&c1, &c2),
    };
    let kron_modulus = matrix_min_poly(&kron);
    debug_assert!(annihilates(&kron_modulus, &product));

    let minimal = minimal_annihilator(field, &product, bound);
    let d = minimal.degree().unwrap_or(0).max(1);
    let modulus = if minimal.degree() == Some(0) {
        // Zero sequence: any monic degree-1 modulus carries it; use x.
        Poly::monomial(field, 1)
    } else {
        minimal
    };
    let init = product[..d].to_vec();
    LinRecFunctional::new(modulus, init, w.structure)
}

/// Whether a polynomial annihilates a sequence prefix.
pub fn annihilates(p: &Poly, terms: &[FieldElem]) -> bool {
    let d = match p.degree() {
        Some(d) => d,
        None => return terms.iter().all(FieldElem::is_zero),
    };
    if terms.len() <= d {
        return true;
    }
    (0..terms.len() - d).all(|n| {
        let mut acc = FieldElem::zero(p.field);
        for i in 0..=d {
            acc = acc.add(&p.coeff(i).mul(&terms[n + i]).expect("field")).expect("field");
        }
        acc.is_zero()
    })
}

/// Report of the Cartier duality desk check for a finite abelian group.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CartierReport {
    /// `dualize(K[G])` has the structure constants of `K^G`.
    pub duality_constants_equal: bool,
    /// Number of points of the dual monoid at the probe.
    pub point_count: usize,
    /// Number of monoid homomorphisms `G → (S,·)` by brute force.
    pub monoid_hom_count: usize,
    /// The canonical bijection matches point sets exactly.
    pub points_match_monoid_homs: bool,
    /// Convolution of points agrees with pointwise product of characters.
    pub convolution_matches: bool,
    /// `dualize(dualize(K[G])) = K[G]` bit-equal.
    pub double_dual_equal: bool,
}

impl CartierReport {
    pub fn all_hold(&self) -> bool {
        self.duality_constants_equal
            && self.points_match_monoid_homs
            && self.convolution_matches
            && self.double_dual_equal
    }
}

/// Monoid homomorphisms `G → (S,·)` for an abelian group presented by
/// cyclic factors: independent choices of generator images `s` with
/// `s^{n_i} = 1`, extended multiplicatively.
fn monoid_homs_into(
    g: &AbelianGroup,
    s: &TestAlgebra,
    guards: &Guards,
) -> Result<Vec<Vec<crate::testalg::QuotElem>>, GuardExceeded> {
    let elements = s.elements();
    guards.admit(
        (elements.len() as u128)
            .checked_pow(g.factors.len() as u32)
            .unwrap_or(u128::MAX),
    )?;
    // Candidate images per generator.
    let per_gen: Vec<Vec<crate::testalg::QuotElem>> = g
        .factors
        .iter()
        .map(|n| {
            elements
                .iter()
                .filter(|e| s.pow(e, *n) == s.one())
                .cloned()
                .collect()
        })
        .collect();
    // Cartesian product of choices; each choice defines the character on
    // all of G.
    let mut homs = Vec::new();
    let mut idx = alloc::vec![0usize; g.factors.len()];
    loop {
        let images: Vec<crate::testalg::QuotElem> =
            idx.iter().zip(&per_gen).map(|(i, v)| v[*i].clone()).collect();
        let mut table = Vec::with_capacity(g.order() as usize);
        for e in 0..g.order() {
            let tuple = g.tuple(e);
            let mut val = s.one();
            for (a, img) in tuple.iter().zip(&images) {
                val = s.mul(&val, &s.pow(img, *a));
            }
            table.push(val);
        }
        homs.push(table);
        let mut pos = 0;
        loop {
            if pos == idx.len() {
                homs.sort();
                homs.dedup();
                return Ok(homs);
            }
            idx[pos] += 1;
            if idx[pos] < per_gen[pos].len() {
                break;
            }
            idx[pos] = 0;
            pos += 1;
        }
    }
}

/// Converts a character table to the point matrix of `Spec K[G]`.
fn character_to_point(
    field: FieldTag,
    s: &TestAlgebra,
    table: &[crate::testalg::QuotElem],
) -> Matrix {
    let mut m = Matrix::zero(field, s.dim(), table.len());
    for (j, val) in table.iter().enumerate() {
        for (r, c) in val.iter().enumerate() {
            m.set(r, j, c.clone());
        }
    }
    m
}

/// The Cartier duality desk check: builds `B = K[G]` and `B' = K^G`,
/// compares `dualize(B)` with `B'` constant-for-constant, matches the
/// point monoid of the dual (the algebra-hom points of `K[G]`, i.e. the
/// points of `Spec (K^G)^*`) against brute-force monoid homomorphisms
/// `G → (S,·)` including their products, and confirms the double dual.
pub fn cartier_check(
    g: &AbelianGroup,
    field: FieldTag,
    s: &TestAlgebra,
    guards: &Guards,
) -> Result<CartierReport, GuardExceeded> {
    let b = group_algebra(field, g);
    let b_fun = crate::bialgebra::function_algebra(field, g);

    let dual = dualize_bialgebra(&b);
    let duality_constants_equal = dual.algebra.mult == b_fun.algebra.mult
        && dual.algebra.unit == b_fun.algebra.unit
        && dual.coalgebra.comult == b_fun.coalgebra.comult
        && dual.coalgebra.counit == b_fun.coalgebra.counit;

    // Points of the dual monoid G^∨ at S: algebra homs K[G] → S.
    let points = enumerate_algebra_homs(&b.algebra, s, guards)?;
    let homs = monoid_homs_into(g, s, guards)?;
    let mapped: Vec<Matrix> = {
        let mut v: Vec<Matrix> =
            homs.iter().map(|t| character_to_point(field, s, t)).collect();
        v.sort();
        v.dedup();
        v
    };
    let points_match_monoid_homs = mapped == points;

    // Convolution of points corresponds to the pointwise product of
    // characters.
    let mut convolution_matches = true;
    for t1 in &homs {
        for t2 in &homs {
            let pointwise: Vec<crate::testalg::QuotElem> =
                t1.iter().zip(t2).map(|(a, b2)| s.mul(a, b2)).collect();
            let lhs = crate::bialgebra::convolve_points(
                &b,
                s,
                &character_to_point(field, s, t1),
                &character_to_point(field, s, t2),
            );
            if lhs != character_to_point(field, s, &pointwise) {
                convolution_matches = false;
            }
        }
    }

    let double_dual_equal = dualize_bialgebra(&dual) == b;

    Ok(CartierReport {
        duality_constants_equal,
        point_count: points.len(),
        monoid_hom_count: homs.len(),
        points_match_monoid_homs,
        convolution_matches,
        double_dual_equal,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testalg::probe_catalog;

    #[test]
    fn x_adic_tower_over_f2() {
        let field = FieldTag::Fp(2);
        let x = Poly::monomial(field, 1);
        let tower = adic_tower(field, &x, 3).unwrap();
        let dims: Vec<usize> = tower.levels().iter().map(FdAlgebra::dim).collect();
        assert_eq!(dims, alloc::vec![1, 2, 3]);
    }

    #[test]
    fn depth_one_tower() {
        let field = FieldTag::Fp(3);
        let x = Poly::monomial(field, 1);
        let tower = adic_tower(field, &x, 1).unwrap();
        assert_eq!(tower.depth(), 1);
    }

    #[test]
    fn adic_tower_of_composite_generator() {
        // f = x² + x over F_2: dims 2, 4.
        let field = FieldTag::Fp(2);
        let f = Poly::from_i64(field, &[0, 1, 1]);
        let tower = adic_tower(field, &f, 2).unwrap();
        let dims: Vec<usize> = tower.levels().iter().map(FdAlgebra::dim).collect();
        assert_eq!(dims, alloc::vec![2, 4]);
    }

    #[test]
    fn tower_size_guard() {
        let field = FieldTag::Fp(2);
        let x = Poly::monomial(field, 1);
        assert!(matches!(adic_tower(field, &x, 33), Err(TowerError::SizeGuard(_))));
    }

    #[test]
    fn x_adic_points_are_nilpotents() {
        let field = FieldTag::Fp(2);
        let x = Poly::monomial(field, 1);
        let tower = adic_tower(field, &x, 3).unwrap();
        let guards = Guards::default();
        for s in probe_catalog(2) {
            let points = spec_points(SpecTarget::Tower(&tower), &s, &guards).unwrap();
            // Oracle: direct nilpotency scan of S.
            assert_eq!(points.len(), s.nilpotents().len(), "probe {}", s.describe());
        }
        // Dual numbers: exactly the 2 points x↦0 and x↦ε.
        let eps = TestAlgebra::new(field, Poly::monomial(field, 2)).unwrap();
        let points = spec_points(SpecTarget::Tower(&tower), &eps, &guards).unwrap();
        assert_eq!(points.len(), 2);
        // Base field: one point.
        let base = TestAlgebra::base(field);
        let points = spec_points(SpecTarget::Tower(&tower), &base, &guards).unwrap();
        assert_eq!(points.len(), 1);
    }

    #[test]
    fn spec_points_of_mu2_algebra_over_f3() {
        // F_3[x]/(x²-1) has the two points x ↦ ±1.
        let field = FieldTag::Fp(3);
        let f = Poly::from_i64(field, &[-1, 0, 1]);
        let a = poly_quotient_algebra(field, &f, "x");
        let s = TestAlgebra::base(field);
        let points = spec_points(SpecTarget::Algebra(&a), &s, &Guards::default()).unwrap();
        assert_eq!(points.len(), 2);
    }

    #[test]
    fn depth_stability_of_point_sets() {
        // Once the level dimension passes the nilpotency bound of S the
        // point set stops growing: compare depth d against depth d+1.
        let field = FieldTag::Fp(2);
        let x = Poly::monomial(field, 1);
        let guards = Guards::default();
        for s in probe_catalog(2) {
            let shallow = adic_tower(field, &x, 4).unwrap();
            let deep = adic_tower(field, &x, 5).unwrap();
            let p1 = spec_points(SpecTarget::Tower(&shallow), &s, &guards).unwrap();
            let p2 = spec_points(SpecTarget::Tower(&deep), &s, &guards).unwrap();
            // Lift the shallow points through the extra transition.
            let lift = deep.transitions().last().unwrap();
            let mut lifted: Vec<Matrix> =
                p1.iter().map(|m| m.mul(lift).unwrap()).collect();
            lifted.sort();
            assert_eq!(lifted, p2, "probe {}", s.describe());
        }
    }

    #[test]
    fn finite_dual_roundtrip() {
        let b = group_algebra(FieldTag::Fp(5), &AbelianGroup::cyclic(2));
        let c = finite_dual(&b.algebra);
        let back = crate::bialgebra::dualize_coalgebra(&c);
        assert_eq!(back, b.algebra);
    }

    #[test]
    fn fibonacci_functional() {
        let field = FieldTag::Q;
        let f = Poly::from_i64(field, &[-1, -1, 1]);
        let w = linrec_from_recurrence(
            f,
            alloc::vec![FieldElem::from_i64(0, field), FieldElem::from_i64(1, field)],
            LinRecStructure::Additive,
        )
        .unwrap();
        let vals = w.values(7);
        let expected: Vec<FieldElem> =
            [0, 1, 1, 2, 3, 5, 8].iter().map(|n| FieldElem::from_i64(*n, field)).collect();
        assert_eq!(vals, expected);
        for n in 0..=10 {
            assert!(w.annihilates_shifted_modulus(n));
        }
    }

    #[test]
    fn constant_ones_functional() {
        let field = FieldTag::Q;
        let f = Poly::from_i64(field, &[-1, 1]);
        let w = linrec_from_recurrence(
            f,
            alloc::vec![FieldElem::one(field)],
            LinRecStructure::Additive,
        )
        .unwrap();
        assert!(w.values(5).iter().all(FieldElem::is_one));
    }

    #[test]
    fn hurwitz_square_of_ones_is_powers_of_two() {
        // Oracle: Σ_k C(n,k) = 2^n.
        let field = FieldTag::Q;
        let ones = linrec_from_recurrence(
            Poly::from_i64(field, &[-1, 1]),
            alloc::vec![FieldElem::one(field)],
            LinRecStructure::Additive,
        )
        .unwrap();
        let sq = linrec_product(&ones, &ones).unwrap();
        assert_eq!(sq.modulus(), &Poly::from_i64(field, &[-2, 1]));
        let vals = sq.values(8);
        for (n, v) in vals.iter().enumerate() {
            assert_eq!(v, &FieldElem::from_i64(1 << n, field));
        }
    }

    #[test]
    fn hurwitz_product_of_geometrics() {
        // geom(a)·geom(b) = geom(a+b) by the binomial theorem.
        let field = FieldTag::Q;
        let geom = |a: i64| {
            linrec_from_recurrence(
                Poly::new(
                    field,
                    alloc::vec![FieldElem::from_i64(-a, field), FieldElem::one(field)],
                ),
                alloc::vec![FieldElem::one(field)],
                LinRecStructure::Additive,
            )
            .unwrap()
        };
        let w = linrec_product(&geom(3), &geom(4)).unwrap();
        assert_eq!(w.modulus(), &Poly::from_i64(field, &[-7, 1]));
    }

    #[test]
    fn pointwise_ones_is_identity() {
        let field = FieldTag::Q;
        let ones = linrec_from_recurrence(
            Poly::from_i64(field, &[-1, 1]),
            alloc::vec![FieldElem::one(field)],
            LinRecStructure::Multiplicative,
        )
        .unwrap();
        let fib = linrec_from_recurrence(
            Poly::from_i64(field, &[-1, -1, 1]),
            alloc::vec![FieldElem::from_i64(0, field), FieldElem::from_i64(1, field)],
            LinRecStructure::Multiplicative,
        )
        .unwrap();
        let prod = linrec_product(&ones, &fib).unwrap();
        assert_eq!(prod.values(10), fib.values(10));
    }

    #[test]
    fn structure_tags_do_not_mix() {
        let field = FieldTag::Q;
        let a = linrec_from_recurrence(
            Poly::from_i64(field, &[-1, 1]),
            alloc::vec![FieldElem::one(field)],
            LinRecStructure::Additive,
        )
        .unwrap();
        let m = linrec_from_recurrence(
            Poly::from_i64(field, &[-1, 1]),
            alloc::vec![FieldElem::one(field)],
            LinRecStructure::Multiplicative,
        )
        .unwrap();
        assert_eq!(linrec_product(&a, &m).unwrap_err(), LinRecError::StructureMismatch);
    }

    #[test]
    fn product_moduli_annihilate_for_twenty_terms() {
        let field = FieldTag::Fp(7);
        let w = linrec_from_recurrence(
            Poly::from_i64(field, &[-1, -1, 1]),
            alloc::vec![FieldElem::from_i64(0, field), FieldElem::from_i64(1, field)],
            LinRecStructure::Additive,
        )
        .unwrap();
        let w2 = linrec_from_recurrence(
            Poly::from_i64(field, &[-2, 0, 1]),
            alloc::vec![FieldElem::from_i64(1, field), FieldElem::from_i64(3, field)],
            LinRecStructure::Additive,
        )
        .unwrap();
        let prod = linrec_product(&w, &w2).unwrap();
        assert!(prod.degree() <= 4);
        // Recompute the raw Hurwitz sequence and check annihilation.
        let binom = binomial_table(field, 25);
        let u = w.values(25);
        let v = w2.values(25);
        let seq: Vec<FieldElem> = (0..25)
            .map(|n| {
                let mut acc = FieldElem::zero(field);
                for k in 0..=n {
                    let t = binom[n][k].mul(&u[k]).unwrap().mul(&v[n - k]).unwrap();
                    acc = acc.add(&t).unwrap();
                }
                acc
            })
            .collect();
        assert!(annihilates(prod.modulus(), &seq[..21]));
        assert_eq!(prod.values(21), seq[..21].to_vec());
    }

    #[test]
    fn bar_moduli_counts() {
        // Monic polynomials of degree ≤ 2 over F_2: 2 + 4.
        let fam = bar_moduli(FieldTag::Fp(2), 2);
        assert_eq!(fam.len(), 6);
        for f in &fam {
            assert!(f.is_monic());
        }
    }

    #[test]
    fn cartier_z2_over_f3_and_f2() {
        let guards = Guards::default();
        let g = AbelianGroup::cyclic(2);

        // Over F_3 the dual monoid has 2 points (±1).
        let r3 = cartier_check(&g, FieldTag::Fp(3), &TestAlgebra::base(FieldTag::Fp(3)), &guards)
            .unwrap();
        assert!(r3.all_hold());
        assert_eq!(r3.point_count, 2);

        // Over F_2 only one square root of 1 exists.
        let r2 = cartier_check(&g, FieldTag::Fp(2), &TestAlgebra::base(FieldTag::Fp(2)), &guards)
            .unwrap();
        assert!(r2.all_hold());
        assert_eq!(r2.point_count, 1);
    }

    #[test]
    fn cartier_klein_four_group() {
        let guards = Guards::default();
        let g = AbelianGroup::product(&[2, 2]);
        let r = cartier_check(&g, FieldTag::Fp(3), &TestAlgebra::base(FieldTag::Fp(3)), &guards)
            .unwrap();
        assert!(r.all_hold());
        assert_eq!(r.point_count, 4);
    }

    #[test]
    fn matrix_min_poly_of_companion_is_modulus() {
        let field = FieldTag::Q;
        let f = Poly::from_i64(field, &[-1, -1, 1]);
        assert_eq!(matrix_min_poly(&companion(&f)), f);
    }
}
