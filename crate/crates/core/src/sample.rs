//! Seeded generators for index terms, described subsets, generator families
//! and module objects.
//!
//! The subset generator draws finite sets of size ≤ 8 with entries < 64,
//! cofinite sets with ≤ 8 exclusions, graphs with |offset| ≤ 4, and unions
//! of up to 3 product components. Small enough for exhaustive intersection
//! enumeration, rich enough to separate FIN from FULL from diagonal
//! behaviour.

use alloc::vec::Vec;

use crate::index::{DescribedSubset, IndexTerm, ProdComponent};
use crate::rng::SplitMix64;
use crate::scalar::RingTag;
use crate::support::{GeneratorFamily, ModuleObject};

const ATOM_NAMES: [&str; 3] = ["A", "B", "C"];

pub fn gen_index_term(rng: &mut SplitMix64, max_depth: usize) -> IndexTerm {
    if max_depth == 0 || rng.chance(2, 5) {
        if rng.chance(2, 3) {
            IndexTerm::atom(ATOM_NAMES[rng.below(ATOM_NAMES.len() as u64) as usize])
        } else {
            IndexTerm::FinSet(rng.below(5))
        }
    } else if rng.chance(1, 2) {
        IndexTerm::sum(gen_index_term(rng, max_depth - 1), gen_index_term(rng, max_depth - 1))
    } else {
        IndexTerm::prod(gen_index_term(rng, max_depth - 1), gen_index_term(rng, max_depth - 1))
    }
}

fn gen_small_set(rng: &mut SplitMix64, max_size: u64, bound: u64) -> Vec<u64> {
    let size = rng.below(max_size + 1);
    (0..size).map(|_| rng.below(bound)).collect()
}

pub fn gen_subset(rng: &mut SplitMix64, term: &IndexTerm) -> DescribedSubset {
    match term {
        IndexTerm::Atom(_) => {
            if rng.chance(1, 2) {
                DescribedSubset::finite(gen_small_set(rng, 8, 64))
            } else {
                DescribedSubset::cofinite(gen_small_set(rng, 8, 64))
            }
        }
        IndexTerm::FinSet(n) => {
            if *n == 0 {
                DescribedSubset::finite([])
            } else {
                DescribedSubset::finite(gen_small_set(rng, (*n).min(8), *n))
            }
        }
        IndexTerm::Sum(l, r) => {
            DescribedSubset::pair(gen_subset(rng, l), gen_subset(rng, r))
        }
        IndexTerm::Prod(l, r) => {
            let diagonal = matches!((l.as_ref(), r.as_ref()),
                (IndexTerm::Atom(a), IndexTerm::Atom(b)) if a == b);
            let count = 1 + rng.below(3);
            let mut comps = Vec::new();
            for _ in 0..count {
                if diagonal && rng.chance(1, 3) {
                    let offset = rng.below(9) as i64 - 4;
                    comps.push(ProdComponent::graph(offset, Vec::new()));
                } else {
                    comps.push(ProdComponent::Rect(gen_subset(rng, l), gen_subset(rng, r)));
                }
            }
            DescribedSubset::union(comps)
        }
    }
}

pub fn gen_family(rng: &mut SplitMix64, term: &IndexTerm, max_depth: usize) -> GeneratorFamily {
    if max_depth <= 1 {
        return if rng.chance(1, 2) { GeneratorFamily::Fin } else { GeneratorFamily::Full };
    }
    let compound_choice = match term {
        IndexTerm::Sum(_, _) | IndexTerm::Prod(_, _) => true,
        _ => false,
    };
    let pick = rng.below(if compound_choice { 4 } else { 3 });
    match pick {
        0 => GeneratorFamily::Fin,
        1 => GeneratorFamily::Full,
        2 => GeneratorFamily::polar(gen_family(rng, term, max_depth - 1)),
        _ => match term {
            IndexTerm::Sum(l, r) => GeneratorFamily::sumfam(
                gen_family(rng, l, max_depth - 1),
                gen_family(rng, r, max_depth - 1),
            ),
            IndexTerm::Prod(l, r) => GeneratorFamily::rect(
                gen_family(rng, l, max_depth - 1),
                gen_family(rng, r, max_depth - 1),
            ),
            _ => unreachable!(),
        },
    }
}

const RING_CHOICES: [RingTag; 5] =
    [RingTag::Int, RingTag::Rat, RingTag::Fp(2), RingTag::Fp(5), RingTag::DualFp(3)];

pub fn gen_ring(rng: &mut SplitMix64) -> RingTag {
    RING_CHOICES[rng.below(RING_CHOICES.len() as u64) as usize]
}

pub fn gen_module(rng: &mut SplitMix64, term_depth: usize, family_depth: usize) -> ModuleObject {
    let term = gen_index_term(rng, term_depth);
    let family = gen_family(rng, &term, family_depth);
    let ring = gen_ring(rng);
    ModuleObject::new(term, family, ring).expect("generated families are well-typed")
}

/// Deterministic probes run before any random sampling: the empty subset,
/// the full subset, and the main diagonal when the term is an atom squared.
pub fn canonical_probes(term: &IndexTerm) -> Vec<DescribedSubset> {
    let mut probes = alloc::vec![DescribedSubset::empty(term), DescribedSubset::full(term)];
    if let IndexTerm::Prod(l, r) = term {
        if matches!((l.as_ref(), r.as_ref()),
            (IndexTerm::Atom(a), IndexTerm::Atom(b)) if a == b)
        {
            probes.push(DescribedSubset::graph(0));
        }
    }
    probes
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generated_subsets_are_well_typed() {
        let mut rng = SplitMix64::new(5);
        for _ in 0..300 {
            let term = gen_index_term(&mut rng, 4);
            let subset = gen_subset(&mut rng, &term);
            subset.check_typed(&term).unwrap();
        }
    }

    #[test]
    fn generated_families_are_well_typed() {
        let mut rng = SplitMix64::new(9);
        for _ in 0..300 {
            let term = gen_index_term(&mut rng, 4);
            let family = gen_family(&mut rng, &term, 4);
            family.check_typed(&term).unwrap();
        }
    }
}
