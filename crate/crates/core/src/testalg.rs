//! Small explicit commutative algebras `K[t]/(g)` used as probe points for
//! evaluating functors: enumeration, arithmetic in the quotient, and the
//! standard probe catalog `F_p`, `F_p[ε]`, `F_p[t]/(t²-t)`, `F_{p²}`.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::scalar::{is_prime, FieldElem, FieldTag, Poly, MAX_PRIME};

/// Caps on quotient degree and admissible primes.
pub const MAX_QUOT_DEGREE: usize = 4;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TestAlgError {
    NotMonic,
    DegreeOutOfRange(usize),
    BadPrime(u64),
}

impl fmt::Display for TestAlgError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TestAlgError::NotMonic => write!(f, "modulus must be monic"),
            TestAlgError::DegreeOutOfRange(d) => {
                write!(f, "modulus degree {d} outside 1..={MAX_QUOT_DEGREE}")
            }
            TestAlgError::BadPrime(p) => write!(f, "{p} is not a prime ≤ {MAX_PRIME}"),
        }
    }
}

/// The quotient algebra `K[t]/(g)` for monic `g` of small degree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TestAlgebra {
    field: FieldTag,
    modulus: Poly,
}

/// A residue class, represented by its coefficients below the modulus
/// degree.
pub type QuotElem = Vec<FieldElem>;

impl TestAlgebra {
    pub fn new(field: FieldTag, modulus: Poly) -> Result<TestAlgebra, TestAlgError> {
        if let FieldTag::Fp(p) = field {
            if !is_prime(p) || p > MAX_PRIME {
                return Err(TestAlgError::BadPrime(p));
            }
        }
        if !modulus.is_monic() {
            return Err(TestAlgError::NotMonic);
        }
        let d = modulus.degree().unwrap_or(0);
        if d == 0 || d > MAX_QUOT_DEGREE {
            return Err(TestAlgError::DegreeOutOfRange(d));
        }
        Ok(TestAlgebra { field, modulus })
    }

    /// The base field `K` itself, as `K[t]/(t)`.
    pub fn base(field: FieldTag) -> TestAlgebra {
        TestAlgebra::new(field, Poly::monomial(field, 1)).expect("t is monic of degree 1")
    }

    pub fn field(&self) -> FieldTag {
        self.field
    }

    pub fn modulus(&self) -> &Poly {
        &self.modulus
    }

    pub fn dim(&self) -> usize {
        self.modulus.degree().expect("monic nonzero")
    }

    pub fn enumerable(&self) -> bool {
        matches!(self.field, FieldTag::Fp(_))
    }

    pub fn element_count(&self) -> Option<u64> {
        self.field.order().map(|q| q.pow(self.dim() as u32))
    }

    pub fn zero(&self) -> QuotElem {
        alloc::vec![FieldElem::zero(self.field); self.dim()]
    }

    pub fn one(&self) -> QuotElem {
        let mut e = self.zero();
        e[0] = FieldElem::one(self.field);
        e
    }

    /// Class of the polynomial.
    pub fn project(&self, p: &Poly) -> QuotElem {
        let r = p.rem_monic(&self.modulus);
        let mut coeffs = r.coeffs;
        coeffs.resize(self.dim(), FieldElem::zero(self.field));
        coeffs
    }

    pub fn add(&self, a: &QuotElem, b: &QuotElem) -> QuotElem {
        a.iter().zip(b).map(|(x, y)| x.add(y).expect("same field")).collect()
    }

    pub fn mul(&self, a: &QuotElem, b: &QuotElem) -> QuotElem {
        let pa = Poly::new(self.field, a.clone());
        let pb = Poly::new(self.field, b.clone());
        self.project(&pa.mul(&pb))
    }

    pub fn scale(&self, c: &FieldElem, a: &QuotElem) -> QuotElem {
        a.iter().map(|x| x.mul(c).expect("same field")).collect()
    }

    pub fn pow(&self, a: &QuotElem, mut e: u64) -> QuotElem {
        let mut acc = self.one();
        let mut base = a.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    pub fn is_zero_el(&self, a: &QuotElem) -> bool {
        a.iter().all(FieldElem::is_zero)
    }

    /// Element at position `i` in the canonical enumeration (coefficient
    /// digits of `i` in base `|K|`, lowest degree first).
    pub fn element(&self, mut i: u64) -> QuotElem {
        let q = self.field.order().expect("enumerable");
        let mut coeffs = Vec::with_capacity(self.dim());
        for _ in 0..self.dim() {
            coeffs.push(FieldElem::from_enum_index(self.field, i % q));
            i /= q;
        }
        coeffs
    }

    /// All elements in canonical order. Caller guards the size.
    pub fn elements(&self) -> Vec<QuotElem> {
        let count = self.element_count().expect("enumerable");
        (0..count).map(|i| self.element(i)).collect()
    }

    /// Nilpotent elements, by direct scan: `s` with `s^dim = 0`.
    pub fn nilpotents(&self) -> Vec<QuotElem> {
        self.elements()
            .into_iter()
            .filter(|s| self.is_zero_el(&self.pow(s, self.dim() as u64)))
            .collect()
    }

    pub fn describe(&self) -> String {
        format!("{}[t]/({})", self.field, self.modulus.render().replace('x', "t"))
    }
}

/// A monic irreducible quadratic over `F_p`, by scan.
pub fn irreducible_quadratic(p: u64) -> Poly {
    let field = FieldTag::Fp(p);
    for b in 0..p {
        for c in 0..p {
            // t² + b t + c irreducible iff it has no root.
            let has_root = (0..p).any(|t| (t * t + b * t + c) % p == 0);
            if !has_root {
                return Poly::new(
                    field,
                    alloc::vec![
                        FieldElem::Fp { p, v: c },
                        FieldElem::Fp { p, v: b },
                        FieldElem::one(field)
                    ],
                );
            }
        }
    }
    unreachable!("irreducible quadratics exist over every prime field")
}

/// The probe catalog over `F_p`: the field itself, dual numbers, the split
/// quadratic `t²-t`, and the quadratic field extension.
pub fn probe_catalog(p: u64) -> Vec<TestAlgebra> {
    let field = FieldTag::Fp(p);
    let t = Poly::monomial(field, 1);
    let t2 = Poly::monomial(field, 2);
    let split = Poly::new(
        field,
        alloc::vec![
            FieldElem::zero(field),
            FieldElem::from_i64(-1, field),
            FieldElem::one(field)
        ],
    );
    alloc::vec![
        TestAlgebra::new(field, t).expect("base field"),
        TestAlgebra::new(field, t2).expect("dual numbers"),
        TestAlgebra::new(field, split).expect("split quadratic"),
        TestAlgebra::new(field, irreducible_quadratic(p)).expect("field extension"),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dual_numbers_arithmetic() {
        let field = FieldTag::Fp(2);
        let s = TestAlgebra::new(field, Poly::monomial(field, 2)).unwrap();
        let eps = s.element(2); // coefficients (0, 1)
        assert!(s.is_zero_el(&s.mul(&eps, &eps)));
        assert_eq!(s.element_count(), Some(4));
    }

    #[test]
    fn nilpotents_of_probe_catalog_f2() {
        let cat = probe_catalog(2);
        let counts: Vec<usize> = cat.iter().map(|s| s.nilpotents().len()).collect();
        // F_2: {0}; F_2[ε]: {0, ε}; F_2[t]/(t²-t): {0}; F_4: {0}.
        assert_eq!(counts, alloc::vec![1, 2, 1, 1]);
    }

    #[test]
    fn f9_is_a_field() {
        let s = TestAlgebra::new(FieldTag::Fp(3), irreducible_quadratic(3)).unwrap();
        // Every nonzero element has an inverse: s^(q-1) = 1 with q = 9.
        for e in s.elements() {
            if s.is_zero_el(&e) {
                continue;
            }
            assert_eq!(s.pow(&e, 8), s.one());
        }
    }

    #[test]
    fn quotient_reduces_canonically() {
        let field = FieldTag::Q;
        let s = TestAlgebra::new(field, Poly::from_i64(field, &[-1, 0, 1])).unwrap();
        // t² ≡ 1 in Q[t]/(t²-1).
        let t = s.project(&Poly::monomial(field, 1));
        assert_eq!(s.mul(&t, &t), s.one());
    }

    #[test]
    fn degree_guard() {
        let field = FieldTag::Q;
        assert!(TestAlgebra::new(field, Poly::monomial(field, 5)).is_err());
        assert!(TestAlgebra::new(field, Poly::from_i64(field, &[2, 0])).is_err());
    }
}
