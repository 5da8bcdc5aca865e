//! Symbolic countable index sets and finitely-described subsets.
//!
//! An [`IndexTerm`] denotes a countable set built from copies of ℕ (atoms),
//! finite sets, disjoint unions and cartesian products. A [`DescribedSubset`]
//! is a finitely-described subset of such a set, with decidable emptiness,
//! finiteness, enumeration-if-finite, point membership, pairwise
//! intersection, union, and projection out of products.
//!
//! Over a product of two copies of the same atom the description language
//! has, besides finite unions of rectangles, the shifted diagonal
//! `{(n, n+k)}`. Internally a diagonal carries a finite excluded set so the
//! class stays closed under intersection; diagonals whose surviving domain
//! is finite are lowered to point rectangles eagerly.

use alloc::borrow::ToOwned;
use alloc::boxed::Box;
use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

/// A symbolic index set.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum IndexTerm {
    /// A named copy of ℕ. Equal names denote the same copy.
    Atom(String),
    /// The finite set `{0, …, n-1}`.
    FinSet(u64),
    /// Disjoint union.
    Sum(Box<IndexTerm>, Box<IndexTerm>),
    /// Cartesian product.
    Prod(Box<IndexTerm>, Box<IndexTerm>),
}

impl IndexTerm {
    pub fn atom(name: &str) -> Self {
        IndexTerm::Atom(name.to_owned())
    }

    pub fn sum(l: IndexTerm, r: IndexTerm) -> Self {
        IndexTerm::Sum(Box::new(l), Box::new(r))
    }

    pub fn prod(l: IndexTerm, r: IndexTerm) -> Self {
        IndexTerm::Prod(Box::new(l), Box::new(r))
    }

    /// True when the denoted set is finite.
    pub fn is_finite(&self) -> bool {
        match self {
            IndexTerm::Atom(_) => false,
            IndexTerm::FinSet(_) => true,
            IndexTerm::Sum(l, r) => l.is_finite() && r.is_finite(),
            IndexTerm::Prod(l, r) => {
                // An empty factor makes the product finite (empty).
                let le = l.is_empty_set();
                let re = r.is_empty_set();
                le || re || (l.is_finite() && r.is_finite())
            }
        }
    }

    pub fn is_empty_set(&self) -> bool {
        match self {
            IndexTerm::Atom(_) => false,
            IndexTerm::FinSet(n) => *n == 0,
            IndexTerm::Sum(l, r) => l.is_empty_set() && r.is_empty_set(),
            IndexTerm::Prod(l, r) => l.is_empty_set() || r.is_empty_set(),
        }
    }

    /// Both factors of a product are one and the same atom.
    fn diagonal_atom(&self) -> Option<&str> {
        match self {
            IndexTerm::Prod(l, r) => match (l.as_ref(), r.as_ref()) {
                (IndexTerm::Atom(a), IndexTerm::Atom(b)) if a == b => Some(a),
                _ => None,
            },
            _ => None,
        }
    }
}

impl fmt::Display for IndexTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IndexTerm::Atom(name) => write!(f, "Atom {name}"),
            IndexTerm::FinSet(n) => write!(f, "FinSet {n}"),
            IndexTerm::Sum(l, r) => write!(f, "Sum({l}, {r})"),
            IndexTerm::Prod(l, r) => write!(f, "Prod({l}, {r})"),
        }
    }
}

/// A concrete point of an index term.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub enum Point {
    N(u64),
    InL(Box<Point>),
    InR(Box<Point>),
    Pair(Box<Point>, Box<Point>),
}

impl Point {
    pub fn pair(a: Point, b: Point) -> Self {
        Point::Pair(Box::new(a), Box::new(b))
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Point::N(n) => write!(f, "{n}"),
            Point::InL(p) => write!(f, "inl {p}"),
            Point::InR(p) => write!(f, "inr {p}"),
            Point::Pair(a, b) => write!(f, "({a}, {b})"),
        }
    }
}

/// One component of a subset of a product.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub enum ProdComponent {
    /// `d1 × d2`.
    Rect(DescribedSubset, DescribedSubset),
    /// `{(n, n+offset) : n ≥ max(0, -offset), n ∉ excluded}`.
    ///
    /// Only valid over `Prod(Atom a, Atom a)`. The excluded list is sorted,
    /// deduplicated and clamped to the domain, and is always such that the
    /// remaining domain is infinite (finite remainders are lowered to point
    /// rectangles by the constructors).
    Graph { offset: i64, excluded: Vec<u64> },
}

/// A finitely-described subset, shaped by an [`IndexTerm`] held externally.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub enum DescribedSubset {
    /// Sorted explicit elements. Over atoms and finite sets.
    Finite(Vec<u64>),
    /// Complement of the sorted excluded list. Over atoms only.
    Cofinite(Vec<u64>),
    /// Componentwise description over a `Sum`.
    Pair(Box<DescribedSubset>, Box<DescribedSubset>),
    /// Finite union of components over a `Prod`.
    Union(Vec<ProdComponent>),
}

/// Classification returned by [`finiteness`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Finiteness {
    Finite(Vec<Point>),
    Infinite,
}

impl Finiteness {
    pub fn is_finite(&self) -> bool {
        matches!(self, Finiteness::Finite(_))
    }
}

/// Errors raised by typed subset operations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum IndexError {
    /// The subset does not conform to the index term.
    IllTyped(String),
    /// Projection axis other than 1 or 2, or projecting a non-product.
    BadAxis,
}

impl fmt::Display for IndexError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IndexError::IllTyped(msg) => write!(f, "ill-typed subset: {msg}"),
            IndexError::BadAxis => write!(f, "projection axis must be 1 or 2 on a product"),
        }
    }
}

fn sorted_dedup(mut v: Vec<u64>) -> Vec<u64> {
    v.sort_unstable();
    v.dedup();
    v
}

impl DescribedSubset {
    pub fn finite(elems: impl IntoIterator<Item = u64>) -> Self {
        DescribedSubset::Finite(sorted_dedup(elems.into_iter().collect()))
    }

    pub fn cofinite(excluded: impl IntoIterator<Item = u64>) -> Self {
        DescribedSubset::Cofinite(sorted_dedup(excluded.into_iter().collect()))
    }

    pub fn pair(a: DescribedSubset, b: DescribedSubset) -> Self {
        DescribedSubset::Pair(Box::new(a), Box::new(b))
    }

    pub fn rect(a: DescribedSubset, b: DescribedSubset) -> Self {
        DescribedSubset::union(vec![ProdComponent::Rect(a, b)])
    }

    /// The full shifted diagonal of the given offset.
    pub fn graph(offset: i64) -> Self {
        DescribedSubset::union(vec![ProdComponent::graph(offset, Vec::new())])
    }

    /// Canonicalizing union constructor: drops empty components, lowers
    /// finite graphs, sorts and deduplicates.
    pub fn union(components: Vec<ProdComponent>) -> Self {
        let mut out: Vec<ProdComponent> = Vec::new();
        for c in components {
            match c {
                ProdComponent::Rect(a, b) => {
                    if !a.is_empty() && !b.is_empty() {
                        out.push(ProdComponent::Rect(a, b));
                    }
                }
                ProdComponent::Graph { offset, excluded } => {
                    out.push(ProdComponent::graph(offset, excluded));
                }
            }
        }
        out.sort();
        out.dedup();
        DescribedSubset::Union(out)
    }

    /// The whole set denoted by `term`.
    pub fn full(term: &IndexTerm) -> Self {
        match term {
            IndexTerm::Atom(_) => DescribedSubset::Cofinite(Vec::new()),
            IndexTerm::FinSet(n) => DescribedSubset::Finite((0..*n).collect()),
            IndexTerm::Sum(l, r) => {
                DescribedSubset::pair(DescribedSubset::full(l), DescribedSubset::full(r))
            }
            IndexTerm::Prod(l, r) => {
                DescribedSubset::rect(DescribedSubset::full(l), DescribedSubset::full(r))
            }
        }
    }

    /// The empty subset of `term`.
    pub fn empty(term: &IndexTerm) -> Self {
        match term {
            IndexTerm::Atom(_) | IndexTerm::FinSet(_) => DescribedSubset::Finite(Vec::new()),
            IndexTerm::Sum(l, r) => {
                DescribedSubset::pair(DescribedSubset::empty(l), DescribedSubset::empty(r))
            }
            IndexTerm::Prod(_, _) => DescribedSubset::Union(Vec::new()),
        }
    }

    pub fn is_empty(&self) -> bool {
        match self {
            DescribedSubset::Finite(v) => v.is_empty(),
            DescribedSubset::Cofinite(_) => false,
            DescribedSubset::Pair(a, b) => a.is_empty() && b.is_empty(),
            DescribedSubset::Union(cs) => cs.iter().all(|c| match c {
                ProdComponent::Rect(a, b) => a.is_empty() || b.is_empty(),
                // Graph domains are infinite by construction.
                ProdComponent::Graph { .. } => false,
            }),
        }
    }

    /// Checks that the subset conforms to the shape of `term`.
    pub fn check_typed(&self, term: &IndexTerm) -> Result<(), IndexError> {
        match (self, term) {
            (DescribedSubset::Finite(v), IndexTerm::Atom(_)) => {
                let _ = v;
                Ok(())
            }
            (DescribedSubset::Finite(v), IndexTerm::FinSet(n)) => {
                if v.iter().all(|x| x < n) {
                    Ok(())
                } else {
                    Err(IndexError::IllTyped(format!(
                        "element out of range for FinSet {n}"
                    )))
                }
            }
            (DescribedSubset::Cofinite(_), IndexTerm::Atom(_)) => Ok(()),
            (DescribedSubset::Cofinite(_), IndexTerm::FinSet(_)) => Err(IndexError::IllTyped(
                "Cofin is not allowed over a FinSet; use the finite complement".to_owned(),
            )),
            (DescribedSubset::Pair(a, b), IndexTerm::Sum(l, r)) => {
                a.check_typed(l)?;
                b.check_typed(r)
            }
            (DescribedSubset::Union(cs), IndexTerm::Prod(l, r)) => {
                for c in cs {
                    match c {
                        ProdComponent::Rect(a, b) => {
                            a.check_typed(l)?;
                            b.check_typed(r)?;
                        }
                        ProdComponent::Graph { .. } => {
                            if term.diagonal_atom().is_none() {
                                return Err(IndexError::IllTyped(
                                    "Graph requires a product of one atom with itself".to_owned(),
                                ));
                            }
                        }
                    }
                }
                Ok(())
            }
            _ => Err(IndexError::IllTyped(format!(
                "subset shape does not match index term {term}"
            ))),
        }
    }

    /// Point membership. The point is assumed to be of the right shape.
    pub fn contains(&self, p: &Point) -> bool {
        match (self, p) {
            (DescribedSubset::Finite(v), Point::N(n)) => v.binary_search(n).is_ok(),
            (DescribedSubset::Cofinite(e), Point::N(n)) => e.binary_search(n).is_err(),
            (DescribedSubset::Pair(a, _), Point::InL(q)) => a.contains(q),
            (DescribedSubset::Pair(_, b), Point::InR(q)) => b.contains(q),
            (DescribedSubset::Union(cs), Point::Pair(x, y)) => cs.iter().any(|c| match c {
                ProdComponent::Rect(a, b) => a.contains(x) && b.contains(y),
                ProdComponent::Graph { offset, excluded } => match (x.as_ref(), y.as_ref()) {
                    (Point::N(n), Point::N(m)) => {
                        (*m as i128) == (*n as i128) + (*offset as i128)
                            && excluded.binary_search(n).is_err()
                    }
                    _ => false,
                },
            }),
            _ => false,
        }
    }
}

impl ProdComponent {
    /// Graph constructor clamping the excluded list to the domain.
    pub fn graph(offset: i64, excluded: Vec<u64>) -> Self {
        let lo = graph_domain_start(offset);
        let excluded = sorted_dedup(excluded.into_iter().filter(|x| *x >= lo).collect());
        ProdComponent::Graph { offset, excluded }
    }
}

/// First n in the domain of a graph of the given offset.
fn graph_domain_start(offset: i64) -> u64 {
    if offset < 0 {
        offset.unsigned_abs()
    } else {
        0
    }
}

/// Classification of a one-dimensional (atom-level) set.
#[derive(Debug, Clone, PartialEq, Eq)]
enum Line {
    Fin(Vec<u64>),
    Cof(Vec<u64>),
}

impl Line {
    fn of(d: &DescribedSubset) -> Line {
        match d {
            DescribedSubset::Finite(v) => Line::Fin(v.clone()),
            DescribedSubset::Cofinite(e) => Line::Cof(e.clone()),
            _ => unreachable!("graph factors are atom-level"),
        }
    }

    fn to_subset(&self) -> DescribedSubset {
        match self {
            Line::Fin(v) => DescribedSubset::Finite(v.clone()),
            Line::Cof(e) => DescribedSubset::Cofinite(e.clone()),
        }
    }

    fn intersect(&self, other: &Line) -> Line {
        match (self, other) {
            (Line::Fin(a), Line::Fin(b)) => {
                Line::Fin(a.iter().filter(|x| b.binary_search(x).is_ok()).copied().collect())
            }
            (Line::Fin(a), Line::Cof(e)) | (Line::Cof(e), Line::Fin(a)) => {
                Line::Fin(a.iter().filter(|x| e.binary_search(x).is_err()).copied().collect())
            }
            (Line::Cof(a), Line::Cof(b)) => {
                let mut e = a.clone();
                e.extend_from_slice(b);
                Line::Cof(sorted_dedup(e))
            }
        }
    }

    /// `{m : m - s ∈ self, m ≥ 0}` for a signed shift `s`.
    fn shift(&self, s: i64) -> Line {
        match self {
            Line::Fin(v) => Line::Fin(sorted_dedup(
                v.iter()
                    .filter_map(|x| {
                        let m = *x as i128 + s as i128;
                        if m >= 0 {
                            Some(m as u64)
                        } else {
                            None
                        }
                    })
                    .collect(),
            )),
            Line::Cof(e) => {
                // Complement of a cofinite set shifts to a cofinite set:
                // points below the shift fall out of ℕ and are excluded.
                let mut excl: Vec<u64> = if s > 0 { (0..s as u64).collect() } else { Vec::new() };
                for x in e {
                    let m = *x as i128 + s as i128;
                    if m >= 0 {
                        excl.push(m as u64);
                    }
                }
                Line::Cof(sorted_dedup(excl))
            }
        }
    }
}

/// Exact intersection of two subsets of the same index term.
pub fn intersect(
    term: &IndexTerm,
    a: &DescribedSubset,
    b: &DescribedSubset,
) -> Result<DescribedSubset, IndexError> {
    a.check_typed(term)?;
    b.check_typed(term)?;
    Ok(intersect_raw(term, a, b))
}

fn intersect_raw(term: &IndexTerm, a: &DescribedSubset, b: &DescribedSubset) -> DescribedSubset {
    match (a, b) {
        (DescribedSubset::Pair(a1, a2), DescribedSubset::Pair(b1, b2)) => {
            let (l, r) = match term {
                IndexTerm::Sum(l, r) => (l, r),
                _ => unreachable!(),
            };
            DescribedSubset::pair(intersect_raw(l, a1, b1), intersect_raw(r, a2, b2))
        }
        (DescribedSubset::Union(xs), DescribedSubset::Union(ys)) => {
            let (l, r) = match term {
                IndexTerm::Prod(l, r) => (l, r),
                _ => unreachable!(),
            };
            let mut comps = Vec::new();
            for x in xs {
                for y in ys {
                    comps.extend(intersect_components(l, r, x, y));
                }
            }
            DescribedSubset::union(comps)
        }
        _ => {
            // Atom / FinSet level.
            Line::of(a).intersect(&Line::of(b)).to_subset()
        }
    }
}

fn intersect_components(
    l: &IndexTerm,
    r: &IndexTerm,
    x: &ProdComponent,
    y: &ProdComponent,
) -> Vec<ProdComponent> {
    match (x, y) {
        (ProdComponent::Rect(a1, a2), ProdComponent::Rect(b1, b2)) => {
            vec![ProdComponent::Rect(intersect_raw(l, a1, b1), intersect_raw(r, a2, b2))]
        }
        (
            ProdComponent::Graph { offset: k1, excluded: e1 },
            ProdComponent::Graph { offset: k2, excluded: e2 },
        ) => {
            if k1 != k2 {
                // Distinct offsets are disjoint lines.
                Vec::new()
            } else {
                let mut e = e1.clone();
                e.extend_from_slice(e2);
                vec![ProdComponent::graph(*k1, e)]
            }
        }
        (ProdComponent::Graph { offset, excluded }, ProdComponent::Rect(a, b))
        | (ProdComponent::Rect(a, b), ProdComponent::Graph { offset, excluded }) => {
            graph_rect_intersect(*offset, excluded, a, b)
        }
    }
}

/// `Graph{k, excluded} ∩ (a × b)` expressed in the class.
fn graph_rect_intersect(
    k: i64,
    excluded: &[u64],
    a: &DescribedSubset,
    b: &DescribedSubset,
) -> Vec<ProdComponent> {
    // n-domain: n ∈ a, n+k ∈ b, n ≥ start, n ∉ excluded.
    let dom = Line::of(a)
        .intersect(&Line::of(b).shift(-k))
        .intersect(&Line::Cof(excluded.to_vec()))
        .intersect(&Line::Cof((0..graph_domain_start(k)).collect()));
    match dom {
        Line::Fin(ns) => ns
            .into_iter()
            .map(|n| {
                let m = (n as i128 + k as i128) as u64;
                ProdComponent::Rect(
                    DescribedSubset::Finite(vec![n]),
                    DescribedSubset::Finite(vec![m]),
                )
            })
            .collect(),
        Line::Cof(e) => vec![ProdComponent::graph(k, e)],
    }
}

/// Exact union of two subsets of the same index term (total on the class).
pub fn union_subsets(
    term: &IndexTerm,
    a: &DescribedSubset,
    b: &DescribedSubset,
) -> Result<DescribedSubset, IndexError> {
    a.check_typed(term)?;
    b.check_typed(term)?;
    Ok(union_raw(term, a, b))
}

fn union_raw(term: &IndexTerm, a: &DescribedSubset, b: &DescribedSubset) -> DescribedSubset {
    match (a, b) {
        (DescribedSubset::Pair(a1, a2), DescribedSubset::Pair(b1, b2)) => {
            let (l, r) = match term {
                IndexTerm::Sum(l, r) => (l, r),
                _ => unreachable!(),
            };
            DescribedSubset::pair(union_raw(l, a1, b1), union_raw(r, a2, b2))
        }
        (DescribedSubset::Union(xs), DescribedSubset::Union(ys)) => {
            let mut comps = xs.clone();
            comps.extend_from_slice(ys);
            DescribedSubset::union(comps)
        }
        _ => match (Line::of(a), Line::of(b)) {
            (Line::Fin(u), Line::Fin(v)) => {
                let mut w = u;
                w.extend_from_slice(&v);
                DescribedSubset::Finite(sorted_dedup(w))
            }
            (Line::Fin(v), Line::Cof(e)) | (Line::Cof(e), Line::Fin(v)) => DescribedSubset::Cofinite(
                e.into_iter().filter(|x| v.binary_search(x).is_err()).collect(),
            ),
            (Line::Cof(e1), Line::Cof(e2)) => DescribedSubset::Cofinite(
                e1.into_iter().filter(|x| e2.binary_search(x).is_ok()).collect(),
            ),
        },
    }
}

/// Decides finiteness; for finite subsets returns the exact sorted enumeration.
pub fn finiteness(term: &IndexTerm, d: &DescribedSubset) -> Result<Finiteness, IndexError> {
    d.check_typed(term)?;
    Ok(finiteness_raw(d))
}

fn finiteness_raw(d: &DescribedSubset) -> Finiteness {
    match d {
        DescribedSubset::Finite(v) => {
            Finiteness::Finite(v.iter().map(|n| Point::N(*n)).collect())
        }
        DescribedSubset::Cofinite(_) => Finiteness::Infinite,
        DescribedSubset::Pair(a, b) => match (finiteness_raw(a), finiteness_raw(b)) {
            (Finiteness::Finite(xs), Finiteness::Finite(ys)) => {
                let mut pts: Vec<Point> =
                    xs.into_iter().map(|p| Point::InL(Box::new(p))).collect();
                pts.extend(ys.into_iter().map(|p| Point::InR(Box::new(p))));
                Finiteness::Finite(pts)
            }
            _ => Finiteness::Infinite,
        },
        DescribedSubset::Union(cs) => {
            let mut pts: BTreeSet<Point> = BTreeSet::new();
            for c in cs {
                match c {
                    ProdComponent::Rect(a, b) => {
                        if a.is_empty() || b.is_empty() {
                            continue;
                        }
                        match (finiteness_raw(a), finiteness_raw(b)) {
                            (Finiteness::Finite(xs), Finiteness::Finite(ys)) => {
                                for x in &xs {
                                    for y in &ys {
                                        pts.insert(Point::pair(x.clone(), y.clone()));
                                    }
                                }
                            }
                            _ => return Finiteness::Infinite,
                        }
                    }
                    ProdComponent::Graph { .. } => return Finiteness::Infinite,
                }
            }
            Finiteness::Finite(pts.into_iter().collect())
        }
    }
}

/// Cardinality when finite.
pub fn cardinality(term: &IndexTerm, d: &DescribedSubset) -> Result<Option<u64>, IndexError> {
    Ok(match finiteness(term, d)? {
        Finiteness::Finite(pts) => Some(pts.len() as u64),
        Finiteness::Infinite => None,
    })
}

/// Exact projection of a subset of a product onto axis 1 or 2.
pub fn project(
    term: &IndexTerm,
    d: &DescribedSubset,
    axis: u8,
) -> Result<DescribedSubset, IndexError> {
    d.check_typed(term)?;
    let (l, r) = match term {
        IndexTerm::Prod(l, r) => (l.as_ref(), r.as_ref()),
        _ => return Err(IndexError::BadAxis),
    };
    if axis != 1 && axis != 2 {
        return Err(IndexError::BadAxis);
    }
    let target = if axis == 1 { l } else { r };
    let cs = match d {
        DescribedSubset::Union(cs) => cs,
        _ => unreachable!("typed as product"),
    };
    let mut acc = DescribedSubset::empty(target);
    for c in cs {
        let piece = match c {
            ProdComponent::Rect(a, b) => {
                let (this, other) = if axis == 1 { (a, b) } else { (b, a) };
                if other.is_empty() {
                    DescribedSubset::empty(target)
                } else {
                    this.clone()
                }
            }
            ProdComponent::Graph { offset, excluded } => {
                let mut e: Vec<u64> = (0..graph_domain_start(*offset)).collect();
                e.extend_from_slice(excluded);
                let domain = Line::Cof(sorted_dedup(e));
                if axis == 1 {
                    domain.to_subset()
                } else {
                    // m = n + offset over the domain.
                    domain.shift(*offset).to_subset()
                }
            }
        };
        acc = union_raw(target, &acc, &piece);
    }
    Ok(acc)
}

/// Complement of a "box" subset: one produced by [`DescribedSubset::full`]
/// or by family unions — atoms/finsets at the leaves, `Pair` over sums and a
/// single graph-free `Rect` over products. Total on that sublanguage.
pub fn complement_box(term: &IndexTerm, d: &DescribedSubset) -> DescribedSubset {
    match (term, d) {
        (IndexTerm::Atom(_), DescribedSubset::Finite(v)) => DescribedSubset::Cofinite(v.clone()),
        (IndexTerm::Atom(_), DescribedSubset::Cofinite(e)) => DescribedSubset::Finite(e.clone()),
        (IndexTerm::FinSet(n), DescribedSubset::Finite(v)) => {
            DescribedSubset::Finite((0..*n).filter(|x| v.binary_search(x).is_err()).collect())
        }
        (IndexTerm::Sum(l, r), DescribedSubset::Pair(a, b)) => {
            DescribedSubset::pair(complement_box(l, a), complement_box(r, b))
        }
        (IndexTerm::Prod(l, r), DescribedSubset::Union(cs)) => {
            // Complement of a union of rectangles: intersection of the
            // complements, each an L-shape of two rectangles.
            let mut acc = DescribedSubset::full(term);
            for c in cs {
                let (a, b) = match c {
                    ProdComponent::Rect(a, b) => (a, b),
                    ProdComponent::Graph { .. } => {
                        unreachable!("boxes are graph-free")
                    }
                };
                let lshape = DescribedSubset::union(vec![
                    ProdComponent::Rect(complement_box(l, a), DescribedSubset::full(r)),
                    ProdComponent::Rect(DescribedSubset::full(l), complement_box(r, b)),
                ]);
                acc = intersect_raw(term, &acc, &lshape);
            }
            acc
        }
        _ => unreachable!("not a box subset"),
    }
}
