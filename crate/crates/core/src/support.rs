//! Generator families of subsets, the polar operation and its rewrite
//! system, essentially-free module objects with duals, homs and tensors,
//! and the dual pairing on elements.
//!
//! A family `F` over an index term denotes the ideal `⟨F⟩` it generates
//! (downward closure plus finite unions); all derived notions depend only
//! on `⟨F⟩`. The polar `F°` is the family of subsets meeting every member
//! of `F` in a finite set. A module object with family `F` has as elements
//! the vectors whose support lies in `F°`, so `F°` is the semantic identity
//! of the module; the dual module is the one with family `F°`.
//!
//! Membership in `⟨F⟩`, `F°` and `F°°` is decided structurally, with the
//! product case of the double polar handled by an exact reduction: a subset
//! lies in `Rect(F₁,F₂)°°` iff all but finitely many of its points sit
//! inside `∪F₁ × ∪F₂` and both projections of that inner part lie in the
//! respective factor double polars.

use alloc::boxed::Box;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::index::{
    cardinality, complement_box, finiteness, intersect, project, DescribedSubset, Finiteness,
    IndexError, IndexTerm, ProdComponent,
};
use crate::rng::{case_seed, SplitMix64};
use crate::sample;
use crate::scalar::{Coeff, RingTag};

/// A generator family of subsets of an index term.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub enum GeneratorFamily {
    /// All finite subsets.
    Fin,
    /// The single-member family {I}.
    Full,
    /// The polar of the inner family.
    Polar(Box<GeneratorFamily>),
    /// `{α₁ ⊔ α₂ : αᵢ ∈ Fᵢ}` over a `Sum`.
    SumFam(Box<GeneratorFamily>, Box<GeneratorFamily>),
    /// `{α₁ × α₂ : αᵢ ∈ Fᵢ}` over a `Prod`.
    Rect(Box<GeneratorFamily>, Box<GeneratorFamily>),
}

use GeneratorFamily as GF;

impl GeneratorFamily {
    pub fn polar(f: GeneratorFamily) -> GeneratorFamily {
        GF::Polar(Box::new(f))
    }

    pub fn sumfam(a: GeneratorFamily, b: GeneratorFamily) -> GeneratorFamily {
        GF::SumFam(Box::new(a), Box::new(b))
    }

    pub fn rect(a: GeneratorFamily, b: GeneratorFamily) -> GeneratorFamily {
        GF::Rect(Box::new(a), Box::new(b))
    }

    /// Checks the family fits the shape of `term`.
    pub fn check_typed(&self, term: &IndexTerm) -> Result<(), SupportError> {
        match self {
            GF::Fin | GF::Full => Ok(()),
            GF::Polar(g) => g.check_typed(term),
            GF::SumFam(a, b) => match term {
                IndexTerm::Sum(l, r) => {
                    a.check_typed(l)?;
                    b.check_typed(r)
                }
                _ => Err(SupportError::IllTyped(format!(
                    "SUMFAM requires a Sum index, got {term}"
                ))),
            },
            GF::Rect(a, b) => match term {
                IndexTerm::Prod(l, r) => {
                    a.check_typed(l)?;
                    b.check_typed(r)
                }
                _ => Err(SupportError::IllTyped(format!(
                    "RECT requires a Prod index, got {term}"
                ))),
            },
        }
    }

    /// Depth of the family term (each constructor counts one level).
    pub fn depth(&self) -> usize {
        match self {
            GF::Fin | GF::Full => 1,
            GF::Polar(g) => 1 + g.depth(),
            GF::SumFam(a, b) | GF::Rect(a, b) => 1 + a.depth().max(b.depth()),
        }
    }
}

impl fmt::Display for GeneratorFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GF::Fin => write!(f, "FIN"),
            GF::Full => write!(f, "FULL"),
            GF::Polar(g) => write!(f, "POLAR({g})"),
            GF::SumFam(a, b) => write!(f, "SUMFAM({a}, {b})"),
            GF::Rect(a, b) => write!(f, "RECT({a}, {b})"),
        }
    }
}

/// Errors of the support calculus.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SupportError {
    IllTyped(String),
    Index(IndexError),
    /// Two modules with different index terms where identical ones are required.
    IndexMismatch,
    /// Two modules with different coefficient rings.
    CoefficientMismatch,
    /// An element's support escaped the module's support ideal.
    SupportViolation(DescribedSubset),
    /// The second pairing operand is not an element of the dual module.
    NotDual,
    /// A pairing hit an infinite intersection; indicates broken invariants.
    NonFiniteIntersection(DescribedSubset, DescribedSubset),
}

impl From<IndexError> for SupportError {
    fn from(e: IndexError) -> Self {
        SupportError::Index(e)
    }
}

impl fmt::Display for SupportError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SupportError::IllTyped(m) => write!(f, "{m}"),
            SupportError::Index(e) => write!(f, "{e}"),
            SupportError::IndexMismatch => write!(f, "index terms differ"),
            SupportError::CoefficientMismatch => write!(f, "coefficient rings differ"),
            SupportError::SupportViolation(d) => {
                write!(f, "support not admitted by the module: {d:?}")
            }
            SupportError::NotDual => write!(f, "element does not live in the dual module"),
            SupportError::NonFiniteIntersection(_, _) => {
                write!(f, "internal consistency failure: non-finite support intersection")
            }
        }
    }
}

/// Rewrites a family to normal form without changing the generated ideal's
/// polar behaviour: POLAR(FIN) → FULL, POLAR(FULL) → FIN,
/// POLAR(SUMFAM(a,b)) → SUMFAM(POLAR a, POLAR b), and triple polars
/// collapse; POLAR above RECT is a normal-form constructor.
pub fn normalize(f: &GeneratorFamily) -> GeneratorFamily {
    match f {
        GF::Fin => GF::Fin,
        GF::Full => GF::Full,
        GF::SumFam(a, b) => GF::sumfam(normalize(a), normalize(b)),
        GF::Rect(a, b) => GF::rect(normalize(a), normalize(b)),
        GF::Polar(g) => polar_of_normal(normalize(g)),
    }
}

/// One polar applied to an already-normal family, renormalized.
fn polar_of_normal(n: GeneratorFamily) -> GeneratorFamily {
    match n {
        GF::Fin => GF::Full,
        GF::Full => GF::Fin,
        GF::SumFam(a, b) => GF::sumfam(polar_of_normal(*a), polar_of_normal(*b)),
        GF::Rect(a, b) => GF::polar(GF::Rect(a, b)),
        GF::Polar(h) => match *h {
            // POLAR³ collapses to POLAR¹.
            GF::Polar(inner) => GF::Polar(inner),
            other => GF::polar(GF::polar(other)),
        },
    }
}

/// Over an atom the only ideals are the finite sets and everything; polar
/// swaps them.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum AtomClass {
    FinLike,
    FullLike,
}

fn atom_class(f: &GeneratorFamily) -> AtomClass {
    match f {
        GF::Fin => AtomClass::FinLike,
        GF::Full => AtomClass::FullLike,
        GF::Polar(g) => match atom_class(g) {
            AtomClass::FinLike => AtomClass::FullLike,
            AtomClass::FullLike => AtomClass::FinLike,
        },
        _ => unreachable!("SUMFAM/RECT cannot be typed by an atom"),
    }
}

/// The union of all members of `⟨F⟩`, as a described subset. Always a
/// graph-free "box": atoms/finsets at the leaves, `Pair` over sums, a single
/// `Rect` over products.
pub fn family_union(term: &IndexTerm, f: &GeneratorFamily) -> DescribedSubset {
    match f {
        GF::Fin | GF::Full | GF::Polar(_) => DescribedSubset::full(term),
        GF::SumFam(a, b) => match term {
            IndexTerm::Sum(l, r) => {
                DescribedSubset::pair(family_union(l, a), family_union(r, b))
            }
            _ => unreachable!("typed"),
        },
        GF::Rect(a, b) => match term {
            IndexTerm::Prod(l, r) => {
                DescribedSubset::rect(family_union(l, a), family_union(r, b))
            }
            _ => unreachable!("typed"),
        },
    }
}

/// Decides `β ∈ ⟨F⟩`: β is covered by finitely many members of F.
pub fn member_ideal(
    term: &IndexTerm,
    beta: &DescribedSubset,
    f: &GeneratorFamily,
) -> Result<bool, SupportError> {
    beta.check_typed(term)?;
    f.check_typed(term)?;
    Ok(ideal_raw(term, beta, f))
}

fn ideal_raw(term: &IndexTerm, beta: &DescribedSubset, f: &GeneratorFamily) -> bool {
    match f {
        GF::Fin => finiteness_of(term, beta).is_finite(),
        GF::Full => true,
        GF::SumFam(f1, f2) => {
            let (l, r, b1, b2) = split_sum(term, beta);
            ideal_raw(l, b1, f1) && ideal_raw(r, b2, f2)
        }
        GF::Rect(f1, f2) => {
            // β ⊆ a finite union of rectangles iff both projections are
            // covered componentwise.
            let (l, r) = split_prod(term);
            let p1 = project(term, beta, 1).expect("typed");
            let p2 = project(term, beta, 2).expect("typed");
            ideal_raw(l, &p1, f1) && ideal_raw(r, &p2, f2)
        }
        // ⟨G°⟩ = G° since polars are ideals.
        GF::Polar(g) => polar_raw(term, beta, g),
    }
}

/// Decides `β ∈ F°`: β meets every member of F in a finite set.
pub fn member_polar(
    term: &IndexTerm,
    beta: &DescribedSubset,
    f: &GeneratorFamily,
) -> Result<bool, SupportError> {
    beta.check_typed(term)?;
    f.check_typed(term)?;
    Ok(polar_raw(term, beta, f))
}

fn polar_raw(term: &IndexTerm, beta: &DescribedSubset, f: &GeneratorFamily) -> bool {
    match f {
        // Finite generators meet anything finitely.
        GF::Fin => true,
        GF::Full => finiteness_of(term, beta).is_finite(),
        GF::SumFam(f1, f2) => {
            let (l, r, b1, b2) = split_sum(term, beta);
            polar_raw(l, b1, f1) && polar_raw(r, b2, f2)
        }
        GF::Rect(f1, f2) => rect_polar(term, beta, f1, f2),
        GF::Polar(g) => double_polar_raw(term, beta, g),
    }
}

/// Decides `β ∈ G°°`.
fn double_polar_raw(term: &IndexTerm, beta: &DescribedSubset, g: &GeneratorFamily) -> bool {
    match g {
        // FIN°° = FIN.
        GF::Fin => finiteness_of(term, beta).is_finite(),
        // FULL°° is everything.
        GF::Full => true,
        GF::SumFam(g1, g2) => {
            let (l, r, b1, b2) = split_sum(term, beta);
            double_polar_raw(l, b1, g1) && double_polar_raw(r, b2, g2)
        }
        GF::Rect(g1, g2) => rect_double_polar(term, beta, g1, g2),
        // G°°° = G°.
        GF::Polar(h) => polar_raw(term, beta, h),
    }
}

/// `β ∈ Rect(F₁,F₂)°`, componentwise: a rectangle piece `D₁×D₂` meets every
/// `α₁×α₂` finitely iff (D₁ ∈ F₁° or D₂ misses ∪F₂) and symmetrically;
/// a graph piece over an atom meets every rectangle finitely unless both
/// factor families contain the whole atom.
fn rect_polar(
    term: &IndexTerm,
    beta: &DescribedSubset,
    f1: &GeneratorFamily,
    f2: &GeneratorFamily,
) -> bool {
    let (l, r) = split_prod(term);
    let comps = match beta {
        DescribedSubset::Union(cs) => cs,
        _ => unreachable!("typed as product"),
    };
    comps.iter().all(|c| match c {
        ProdComponent::Rect(d1, d2) => {
            let left_ok = polar_raw(l, d1, f1) || disjoint_from_union(r, d2, f2);
            let right_ok = polar_raw(r, d2, f2) || disjoint_from_union(l, d1, f1);
            left_ok && right_ok
        }
        ProdComponent::Graph { .. } => {
            !(atom_class(f1) == AtomClass::FullLike && atom_class(f2) == AtomClass::FullLike)
        }
    })
}

/// `β ∈ Rect(F₁,F₂)°°`. All but finitely many points of β must lie inside
/// `∪F₁ × ∪F₂`, and the projections of the inner part must lie in the
/// factor double polars.
fn rect_double_polar(
    term: &IndexTerm,
    beta: &DescribedSubset,
    f1: &GeneratorFamily,
    f2: &GeneratorFamily,
) -> bool {
    let (l, r) = split_prod(term);
    let u1 = family_union(l, f1);
    let u2 = family_union(r, f2);
    let ubox = DescribedSubset::rect(u1, u2);
    let outside = intersect(term, beta, &complement_box(term, &ubox)).expect("typed");
    if !finiteness_of(term, &outside).is_finite() {
        return false;
    }
    let inner = intersect(term, beta, &ubox).expect("typed");
    let p1 = project(term, &inner, 1).expect("typed");
    let p2 = project(term, &inner, 2).expect("typed");
    double_polar_raw(l, &p1, f1) && double_polar_raw(r, &p2, f2)
}

fn disjoint_from_union(term: &IndexTerm, d: &DescribedSubset, f: &GeneratorFamily) -> bool {
    let u = family_union(term, f);
    intersect(term, d, &u).expect("typed").is_empty()
}

fn finiteness_of(term: &IndexTerm, d: &DescribedSubset) -> Finiteness {
    finiteness(term, d).expect("typed")
}

fn split_sum<'a>(
    term: &'a IndexTerm,
    beta: &'a DescribedSubset,
) -> (&'a IndexTerm, &'a IndexTerm, &'a DescribedSubset, &'a DescribedSubset) {
    match (term, beta) {
        (IndexTerm::Sum(l, r), DescribedSubset::Pair(a, b)) => (l, r, a, b),
        _ => unreachable!("typed as sum"),
    }
}

fn split_prod(term: &IndexTerm) -> (&IndexTerm, &IndexTerm) {
    match term {
        IndexTerm::Prod(l, r) => (l, r),
        _ => unreachable!("typed as product"),
    }
}

/// An essentially-free module object: index term, normalized generator
/// family, and coefficient ring. Elements have supports in the family's
/// polar.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModuleObject {
    index: IndexTerm,
    family: GeneratorFamily,
    ring: RingTag,
}

impl ModuleObject {
    pub fn new(
        index: IndexTerm,
        family: GeneratorFamily,
        ring: RingTag,
    ) -> Result<ModuleObject, SupportError> {
        family.check_typed(&index)?;
        Ok(ModuleObject { family: normalize(&family), index, ring })
    }

    pub fn index(&self) -> &IndexTerm {
        &self.index
    }

    /// The normalized generator family.
    pub fn family(&self) -> &GeneratorFamily {
        &self.family
    }

    pub fn ring(&self) -> RingTag {
        self.ring
    }

    /// The dual module: same index, polar family.
    pub fn dual(&self) -> ModuleObject {
        ModuleObject {
            index: self.index.clone(),
            family: polar_of_normal(self.family.clone()),
            ring: self.ring,
        }
    }

    /// Whether a subset is an admissible element support.
    pub fn admits_support(&self, beta: &DescribedSubset) -> Result<bool, SupportError> {
        member_polar(&self.index, beta, &self.family)
    }
}

/// The binary constructions of the hom/tensor calculus.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BuildKind {
    /// `M × N`, indexed by the disjoint union.
    Product,
    /// `Hom(M, N)`.
    Hom,
    /// `(M ⊗ N)*`.
    DualTensor,
    /// `(M ⊗ N)**`.
    TensorReflexive,
    /// `(M* ⊗ N*)*`.
    TildeTensorOfDuals,
}

/// Builds a module object from two others by the index-family formulas.
pub fn build(
    kind: BuildKind,
    m: &ModuleObject,
    n: &ModuleObject,
) -> Result<ModuleObject, SupportError> {
    if m.ring != n.ring {
        return Err(SupportError::CoefficientMismatch);
    }
    let fm = m.family.clone();
    let fn_ = n.family.clone();
    let (index, family) = match kind {
        BuildKind::Product => (
            IndexTerm::sum(m.index.clone(), n.index.clone()),
            GF::sumfam(fm, fn_),
        ),
        BuildKind::Hom => (
            IndexTerm::prod(m.index.clone(), n.index.clone()),
            GF::rect(GF::polar(fm), fn_),
        ),
        BuildKind::DualTensor => (
            IndexTerm::prod(m.index.clone(), n.index.clone()),
            GF::rect(GF::polar(fm), GF::polar(fn_)),
        ),
        BuildKind::TensorReflexive => (
            IndexTerm::prod(m.index.clone(), n.index.clone()),
            GF::polar(GF::rect(GF::polar(fm), GF::polar(fn_))),
        ),
        BuildKind::TildeTensorOfDuals => (
            IndexTerm::prod(m.index.clone(), n.index.clone()),
            GF::rect(
                GF::polar(GF::polar(fm)),
                GF::polar(GF::polar(fn_)),
            ),
        ),
    };
    ModuleObject::new(index, family, m.ring)
}

/// Outcome of randomized extensional comparison.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Equivalence {
    Consistent,
    Counterexample(DescribedSubset),
}

/// Samples subsets and compares support-ideal membership on both modules.
/// The stream starts with the canonical probes (empty, full, and the main
/// diagonal over a square of one atom) and continues with seeded random
/// subsets; deterministic given `(seed, cases)`.
pub fn modules_equal_randomized(
    m: &ModuleObject,
    n: &ModuleObject,
    seed: u64,
    cases: u64,
) -> Result<Equivalence, SupportError> {
    if m.index != n.index {
        return Err(SupportError::IndexMismatch);
    }
    for beta in sample::canonical_probes(&m.index) {
        if let Some(cex) = probe(m, n, &beta)? {
            return Ok(Equivalence::Counterexample(cex));
        }
    }
    for i in 0..cases {
        let mut rng = SplitMix64::new(case_seed(seed, i));
        let beta = sample::gen_subset(&mut rng, &m.index);
        if let Some(cex) = probe(m, n, &beta)? {
            return Ok(Equivalence::Counterexample(cex));
        }
    }
    Ok(Equivalence::Consistent)
}

fn probe(
    m: &ModuleObject,
    n: &ModuleObject,
    beta: &DescribedSubset,
) -> Result<Option<DescribedSubset>, SupportError> {
    let a = member_polar(&m.index, beta, &m.family)?;
    let b = member_polar(&n.index, beta, &n.family)?;
    Ok(if a != b { Some(beta.clone()) } else { None })
}

/// A finite linear combination of indicator vectors of described subsets,
/// `Σ cₖ·χ_{βₖ}`, inside a module object.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModuleElement {
    owner: ModuleObject,
    terms: Vec<(DescribedSubset, Coeff)>,
}

impl ModuleElement {
    /// Builds an element, verifying every support against the owner.
    pub fn new(
        owner: ModuleObject,
        terms: Vec<(DescribedSubset, Coeff)>,
    ) -> Result<ModuleElement, SupportError> {
        for (beta, c) in &terms {
            if c.tag() != owner.ring {
                return Err(SupportError::CoefficientMismatch);
            }
            if !owner.admits_support(beta)? {
                return Err(SupportError::SupportViolation(beta.clone()));
            }
        }
        let mut el = ModuleElement { owner, terms: Vec::new() };
        for (beta, c) in terms {
            el.push_term(beta, c);
        }
        Ok(el)
    }

    pub fn zero(owner: ModuleObject) -> ModuleElement {
        ModuleElement { owner, terms: Vec::new() }
    }

    pub fn owner(&self) -> &ModuleObject {
        &self.owner
    }

    pub fn terms(&self) -> &[(DescribedSubset, Coeff)] {
        &self.terms
    }

    fn push_term(&mut self, beta: DescribedSubset, c: Coeff) {
        if c.is_zero() {
            return;
        }
        if let Some(slot) = self.terms.iter_mut().find(|(b, _)| *b == beta) {
            slot.1 = slot.1.add(&c);
        } else {
            self.terms.push((beta, c));
        }
        self.terms.retain(|(_, c)| !c.is_zero());
    }

    /// Sum inside one module; supports are unchanged so the invariant holds.
    pub fn add(&self, other: &ModuleElement) -> Result<ModuleElement, SupportError> {
        if self.owner != other.owner {
            return Err(SupportError::IndexMismatch);
        }
        let mut out = self.clone();
        for (beta, c) in &other.terms {
            out.push_term(beta.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Coeff) -> Result<ModuleElement, SupportError> {
        if c.tag() != self.owner.ring {
            return Err(SupportError::CoefficientMismatch);
        }
        let mut out = ModuleElement::zero(self.owner.clone());
        for (beta, d) in &self.terms {
            out.push_term(beta.clone(), d.mul(c));
        }
        Ok(out)
    }
}

/// The dual pairing `⟨x, w⟩ = Σ cₖ·dₗ·|βₖ ∩ γₗ|` for `x` in a module and
/// `w` in its dual. Every intersection is finite when the support
/// invariants hold; an infinite one is reported as an internal-consistency
/// failure.
pub fn pair(x: &ModuleElement, w: &ModuleElement) -> Result<Coeff, SupportError> {
    if x.owner.index != w.owner.index {
        return Err(SupportError::IndexMismatch);
    }
    if x.owner.ring != w.owner.ring {
        return Err(SupportError::CoefficientMismatch);
    }
    if w.owner.family != x.owner.dual().family {
        return Err(SupportError::NotDual);
    }
    let term = &x.owner.index;
    let mut total = Coeff::zero(x.owner.ring);
    for (beta, c) in &x.terms {
        for (gamma, d) in &w.terms {
            let meet = intersect(term, beta, gamma)?;
            match cardinality(term, &meet)? {
                Some(n) => {
                    let contribution = c.mul(d).mul(&Coeff::from_count(n, x.owner.ring));
                    total = total.add(&contribution);
                }
                None => {
                    return Err(SupportError::NonFiniteIntersection(beta.clone(), gamma.clone()))
                }
            }
        }
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::index::Point;

    fn atom() -> IndexTerm {
        IndexTerm::atom("A")
    }

    fn atom_b() -> IndexTerm {
        IndexTerm::atom("B")
    }

    // ⊕_ℕ: the module with family FULL, elements of finite support.
    fn oplus() -> ModuleObject {
        ModuleObject::new(atom(), GF::Full, RingTag::Rat).unwrap()
    }

    // ∏_ℕ: family FIN, every support admitted.
    fn oprod() -> ModuleObject {
        ModuleObject::new(atom(), GF::Fin, RingTag::Rat).unwrap()
    }

    #[test]
    fn normalize_examples() {
        // POLAR³(FULL) → FIN.
        let f = GF::polar(GF::polar(GF::polar(GF::Full)));
        assert_eq!(normalize(&f), GF::Fin);
        // POLAR(SUMFAM(FULL, FIN)) → SUMFAM(FIN, FULL).
        let g = GF::polar(GF::sumfam(GF::Full, GF::Fin));
        assert_eq!(normalize(&g), GF::sumfam(GF::Fin, GF::Full));
        // FIN is already normal.
        assert_eq!(normalize(&GF::Fin), GF::Fin);
        // POLAR(RECT) is a normal form; POLAR⁴ collapses to POLAR².
        let r = GF::rect(GF::Fin, GF::Full);
        let p4 = GF::polar(GF::polar(GF::polar(GF::polar(r.clone()))));
        assert_eq!(normalize(&p4), GF::polar(GF::polar(r)));
    }

    #[test]
    fn member_ideal_examples() {
        let t = atom();
        assert!(member_ideal(&t, &DescribedSubset::finite([3, 5]), &GF::Fin).unwrap());
        assert!(!member_ideal(&t, &DescribedSubset::cofinite([]), &GF::Fin).unwrap());
        let plane = IndexTerm::prod(atom(), atom());
        let band = DescribedSubset::rect(
            DescribedSubset::cofinite([]),
            DescribedSubset::finite([2]),
        );
        let fam = GF::rect(GF::Full, GF::Fin);
        assert!(member_ideal(&plane, &band, &fam).unwrap());
    }

    #[test]
    fn member_polar_examples() {
        let t = atom();
        assert!(member_polar(&t, &DescribedSubset::cofinite([]), &GF::Fin).unwrap());
        assert!(!member_polar(&t, &DescribedSubset::cofinite([]), &GF::Full).unwrap());
        let plane = IndexTerm::prod(atom(), atom());
        let diag = DescribedSubset::graph(0);
        assert!(member_polar(&plane, &diag, &GF::rect(GF::Fin, GF::Full)).unwrap());
        assert!(!member_polar(&plane, &diag, &GF::rect(GF::Full, GF::Full)).unwrap());
    }

    #[test]
    fn dual_swaps_oplus_and_oprod() {
        assert_eq!(oplus().dual(), oprod());
        assert_eq!(oprod().dual(), oplus());
        // Finite rank is self-dual extensionally.
        let fin3 = ModuleObject::new(IndexTerm::FinSet(3), GF::Full, RingTag::Rat).unwrap();
        let d = fin3.dual();
        assert_eq!(
            modules_equal_randomized(&fin3, &d, 7, 50).unwrap(),
            Equivalence::Consistent
        );
    }

    #[test]
    fn oplus_and_oprod_differ_at_cofinite() {
        let result = modules_equal_randomized(&oplus(), &oprod(), 1, 10).unwrap();
        assert_eq!(
            result,
            Equivalence::Counterexample(DescribedSubset::cofinite([]))
        );
    }

    #[test]
    fn hom_of_oplus_is_row_finite_matrices() {
        let m = oplus();
        let n = ModuleObject::new(atom_b(), GF::Full, RingTag::Rat).unwrap();
        let h = build(BuildKind::Hom, &m, &n).unwrap();
        assert_eq!(*h.family(), GF::rect(GF::Fin, GF::Full));
    }

    #[test]
    fn dual_tensor_of_oplus_is_full_product() {
        let m = oplus();
        let n = ModuleObject::new(atom_b(), GF::Full, RingTag::Rat).unwrap();
        let dt = build(BuildKind::DualTensor, &m, &n).unwrap();
        assert_eq!(*dt.family(), GF::rect(GF::Fin, GF::Fin));
        let everything = ModuleObject::new(
            IndexTerm::prod(atom(), atom_b()),
            GF::Fin,
            RingTag::Rat,
        )
        .unwrap();
        assert_eq!(
            modules_equal_randomized(&dt, &everything, 3, 100).unwrap(),
            Equivalence::Consistent
        );
    }

    #[test]
    fn double_dual_of_rect_full_full_consistent() {
        let plane = IndexTerm::prod(atom(), atom());
        let base = ModuleObject::new(plane.clone(), GF::rect(GF::Full, GF::Full), RingTag::Rat)
            .unwrap();
        let dd = base.dual().dual();
        assert_eq!(
            modules_equal_randomized(&dd, &base, 11, 200).unwrap(),
            Equivalence::Consistent
        );
    }

    #[test]
    fn pairing_examples() {
        // x = χ_{1,2} in ⊕, w = 3·χ_ℕ in ∏ = dual(⊕): ⟨x,w⟩ = 3·2 = 6.
        let x = ModuleElement::new(
            oplus(),
            alloc::vec![(DescribedSubset::finite([1, 2]), Coeff::from_i64(1, RingTag::Rat))],
        )
        .unwrap();
        let w = ModuleElement::new(
            oprod(),
            alloc::vec![(DescribedSubset::cofinite([]), Coeff::from_i64(3, RingTag::Rat))],
        )
        .unwrap();
        assert_eq!(pair(&x, &w).unwrap(), Coeff::from_i64(6, RingTag::Rat));

        // x = χ_{ℕ∖{0}} in ∏, w = 2·χ_{0,1} in ⊕ = dual(∏): overlap {1}.
        let x2 = ModuleElement::new(
            oprod(),
            alloc::vec![(DescribedSubset::cofinite([0]), Coeff::from_i64(1, RingTag::Rat))],
        )
        .unwrap();
        let w2 = ModuleElement::new(
            oplus(),
            alloc::vec![(DescribedSubset::finite([0, 1]), Coeff::from_i64(2, RingTag::Rat))],
        )
        .unwrap();
        assert_eq!(pair(&x2, &w2).unwrap(), Coeff::from_i64(2, RingTag::Rat));
    }

    #[test]
    fn pairing_diagonal_against_band() {
        // Oracle: diag ∩ ({2,3} × ℕ) = {(2,2), (3,3)}, two points.
        let plane = IndexTerm::prod(atom(), atom());
        let diag = DescribedSubset::graph(0);
        let band = DescribedSubset::rect(
            DescribedSubset::finite([2, 3]),
            DescribedSubset::cofinite([]),
        );
        let meet = intersect(&plane, &diag, &band).unwrap();
        match finiteness(&plane, &meet).unwrap() {
            Finiteness::Finite(pts) => assert_eq!(
                pts,
                alloc::vec![
                    Point::pair(Point::N(2), Point::N(2)),
                    Point::pair(Point::N(3), Point::N(3)),
                ]
            ),
            Finiteness::Infinite => panic!("expected finite"),
        }

        let m = ModuleObject::new(plane.clone(), GF::rect(GF::Fin, GF::Full), RingTag::Rat)
            .unwrap();
        let x = ModuleElement::new(
            m.clone(),
            alloc::vec![(diag, Coeff::from_i64(1, RingTag::Rat))],
        )
        .unwrap();
        let w = ModuleElement::new(
            m.dual(),
            alloc::vec![(band, Coeff::from_i64(1, RingTag::Rat))],
        )
        .unwrap();
        assert_eq!(pair(&x, &w).unwrap(), Coeff::from_i64(2, RingTag::Rat));
    }

    #[test]
    fn pairing_rejects_non_dual() {
        let x = ModuleElement::zero(oplus());
        let w = ModuleElement::zero(oplus());
        assert_eq!(pair(&x, &w).unwrap_err(), SupportError::NotDual);
    }

    #[test]
    fn element_supports_are_enforced() {
        // An infinite support is not admitted in ⊕.
        let err = ModuleElement::new(
            oplus(),
            alloc::vec![(DescribedSubset::cofinite([]), Coeff::from_i64(1, RingTag::Rat))],
        )
        .unwrap_err();
        assert!(matches!(err, SupportError::SupportViolation(_)));
    }

    #[test]
    fn rect_family_rejected_over_sum() {
        let t = IndexTerm::sum(atom(), atom_b());
        let f = GF::rect(GF::Fin, GF::Fin);
        assert!(f.check_typed(&t).is_err());
    }
}
