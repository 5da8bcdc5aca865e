//! Named module objects exercised by the duality and pairing suites.

use alloc::string::String;
use alloc::vec::Vec;

use crate::index::IndexTerm;
use crate::scalar::RingTag;
use crate::support::{build, BuildKind, GeneratorFamily, ModuleObject};

fn atom_a() -> IndexTerm {
    IndexTerm::atom("A")
}

fn atom_b() -> IndexTerm {
    IndexTerm::atom("B")
}

/// The standard catalog: direct sums and products over one atom, finite
/// rank, mixed sums, and the hom/tensor constructions, across the
/// coefficient rings.
pub fn module_catalog() -> Vec<(String, ModuleObject)> {
    use GeneratorFamily as GF;
    let mut out: Vec<(String, ModuleObject)> = Vec::new();
    let rings = [RingTag::Rat, RingTag::Int, RingTag::Fp(5), RingTag::DualFp(2)];
    for ring in rings {
        let oplus = ModuleObject::new(atom_a(), GF::Full, ring).expect("typed");
        let oprod = ModuleObject::new(atom_a(), GF::Fin, ring).expect("typed");
        let rank3 = ModuleObject::new(IndexTerm::FinSet(3), GF::Full, ring).expect("typed");
        let oplus_b = ModuleObject::new(atom_b(), GF::Full, ring).expect("typed");
        let mixed = ModuleObject::new(
            IndexTerm::sum(atom_a(), atom_b()),
            GF::sumfam(GF::Full, GF::Fin),
            ring,
        )
        .expect("typed");
        let square_fin_full = ModuleObject::new(
            IndexTerm::prod(atom_a(), atom_a()),
            GF::rect(GF::Fin, GF::Full),
            ring,
        )
        .expect("typed");
        let hom = build(BuildKind::Hom, &oplus, &oplus_b).expect("same ring");
        let dual_tensor = build(BuildKind::DualTensor, &oplus, &oplus_b).expect("same ring");
        let tensor_reflexive =
            build(BuildKind::TensorReflexive, &oprod, &oplus_b).expect("same ring");
        let tilde = build(BuildKind::TildeTensorOfDuals, &oprod, &mixed.clone())
            .expect("same ring");
        let product = build(BuildKind::Product, &oplus, &oprod).expect("same ring");
        for (name, m) in [
            ("oplus", oplus),
            ("oprod", oprod),
            ("rank3", rank3),
            ("mixed-sum", mixed),
            ("square-fin-full", square_fin_full),
            ("hom-oplus-oplus", hom),
            ("dual-tensor", dual_tensor),
            ("tensor-reflexive", tensor_reflexive),
            ("tilde-tensor-of-duals", tilde),
            ("product", product),
        ] {
            out.push((alloc::format!("{name}@{ring}"), m));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::support::{modules_equal_randomized, Equivalence};

    #[test]
    fn catalog_members_are_reflexive() {
        for (name, m) in module_catalog() {
            let dd = m.dual().dual();
            assert_eq!(
                modules_equal_randomized(&dd, &m, 99, 60).unwrap(),
                Equivalence::Consistent,
                "catalog member {name}"
            );
        }
    }
}
