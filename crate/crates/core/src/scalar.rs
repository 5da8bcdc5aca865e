//! Exact scalar arithmetic.
//!
//! Two tiers share this module. The support-calculus tier is
//! coefficient-generic: module elements carry [`Coeff`] values from one of
//! the rings named by [`RingTag`] (integers, rationals, a prime field, or
//! dual numbers over a prime field). The linear-algebra tier works over
//! exact fields only: [`FieldElem`] values tagged by [`FieldTag`].

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// Largest prime admitted for prime fields.
pub const MAX_PRIME: u64 = 97;

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Coefficient ring of a module object.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RingTag {
    Int,
    Rat,
    Fp(u64),
    /// `F_p[ε]/(ε²)`.
    DualFp(u64),
}

impl fmt::Display for RingTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RingTag::Int => write!(f, "Z"),
            RingTag::Rat => write!(f, "Q"),
            RingTag::Fp(p) => write!(f, "Fp:{p}"),
            RingTag::DualFp(p) => write!(f, "FpDual:{p}"),
        }
    }
}

/// An element of one of the coefficient rings.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Coeff {
    Int(BigInt),
    Rat(BigRational),
    Fp { p: u64, v: u64 },
    /// `a + b·ε` over `F_p`.
    Dual { p: u64, a: u64, b: u64 },
}

impl Coeff {
    pub fn tag(&self) -> RingTag {
        match self {
            Coeff::Int(_) => RingTag::Int,
            Coeff::Rat(_) => RingTag::Rat,
            Coeff::Fp { p, .. } => RingTag::Fp(*p),
            Coeff::Dual { p, .. } => RingTag::DualFp(*p),
        }
    }

    pub fn zero(tag: RingTag) -> Coeff {
        Coeff::from_i64(0, tag)
    }

    pub fn one(tag: RingTag) -> Coeff {
        Coeff::from_i64(1, tag)
    }

    pub fn from_i64(n: i64, tag: RingTag) -> Coeff {
        match tag {
            RingTag::Int => Coeff::Int(BigInt::from(n)),
            RingTag::Rat => Coeff::Rat(BigRational::from(BigInt::from(n))),
            RingTag::Fp(p) => Coeff::Fp { p, v: n.rem_euclid(p as i64) as u64 },
            RingTag::DualFp(p) => Coeff::Dual { p, a: n.rem_euclid(p as i64) as u64, b: 0 },
        }
    }

    /// Image of a set cardinality in the ring.
    pub fn from_count(n: u64, tag: RingTag) -> Coeff {
        match tag {
            RingTag::Int => Coeff::Int(BigInt::from(n)),
            RingTag::Rat => Coeff::Rat(BigRational::from(BigInt::from(n))),
            RingTag::Fp(p) => Coeff::Fp { p, v: n % p },
            RingTag::DualFp(p) => Coeff::Dual { p, a: n % p, b: 0 },
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Coeff::Int(x) => x.is_zero(),
            Coeff::Rat(x) => x.is_zero(),
            Coeff::Fp { v, .. } => *v == 0,
            Coeff::Dual { a, b, .. } => *a == 0 && *b == 0,
        }
    }

    pub fn add(&self, other: &Coeff) -> Coeff {
        match (self, other) {
            (Coeff::Int(x), Coeff::Int(y)) => Coeff::Int(x + y),
            (Coeff::Rat(x), Coeff::Rat(y)) => Coeff::Rat(x + y),
            (Coeff::Fp { p, v }, Coeff::Fp { p: q, v: w }) if p == q => {
                Coeff::Fp { p: *p, v: (v + w) % p }
            }
            (Coeff::Dual { p, a, b }, Coeff::Dual { p: q, a: c, b: d }) if p == q => {
                Coeff::Dual { p: *p, a: (a + c) % p, b: (b + d) % p }
            }
            _ => panic!("coefficient ring mismatch: {:?} vs {:?}", self.tag(), other.tag()),
        }
    }

    pub fn mul(&self, other: &Coeff) -> Coeff {
        match (self, other) {
            (Coeff::Int(x), Coeff::Int(y)) => Coeff::Int(x * y),
            (Coeff::Rat(x), Coeff::Rat(y)) => Coeff::Rat(x * y),
            (Coeff::Fp { p, v }, Coeff::Fp { p: q, v: w }) if p == q => {
                Coeff::Fp { p: *p, v: (v * w) % p }
            }
            (Coeff::Dual { p, a, b }, Coeff::Dual { p: q, a: c, b: d }) if p == q => Coeff::Dual {
                p: *p,
                a: (a * c) % p,
                b: (a * d + b * c) % p,
            },
            _ => panic!("coefficient ring mismatch: {:?} vs {:?}", self.tag(), other.tag()),
        }
    }

    pub fn neg(&self) -> Coeff {
        match self {
            Coeff::Int(x) => Coeff::Int(-x),
            Coeff::Rat(x) => Coeff::Rat(-x),
            Coeff::Fp { p, v } => Coeff::Fp { p: *p, v: (p - v) % p },
            Coeff::Dual { p, a, b } => Coeff::Dual { p: *p, a: (p - a) % p, b: (p - b) % p },
        }
    }

    pub fn sub(&self, other: &Coeff) -> Coeff {
        self.add(&other.neg())
    }
}

impl fmt::Display for Coeff {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Coeff::Int(x) => write!(f, "{x}"),
            Coeff::Rat(x) => write!(f, "{x}"),
            Coeff::Fp { v, .. } => write!(f, "{v}"),
            Coeff::Dual { a, b, .. } => write!(f, "{a}+{b}e"),
        }
    }
}

/// Base field of the linear-algebra tier.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum FieldTag {
    Q,
    Fp(u64),
}

impl FieldTag {
    /// Number of elements for finite fields.
    pub fn order(&self) -> Option<u64> {
        match self {
            FieldTag::Q => None,
            FieldTag::Fp(p) => Some(*p),
        }
    }
}

impl fmt::Display for FieldTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldTag::Q => write!(f, "Q"),
            FieldTag::Fp(p) => write!(f, "Fp:{p}"),
        }
    }
}

/// An exact field element.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum FieldElem {
    Q(BigRational),
    Fp { p: u64, v: u64 },
}

/// Mixed-domain operands.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DomainMismatch(pub String);

impl fmt::Display for DomainMismatch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "mixed scalar domains: {}", self.0)
    }
}

impl FieldElem {
    pub fn tag(&self) -> FieldTag {
        match self {
            FieldElem::Q(_) => FieldTag::Q,
            FieldElem::Fp { p, .. } => FieldTag::Fp(*p),
        }
    }

    pub fn zero(tag: FieldTag) -> FieldElem {
        FieldElem::from_i64(0, tag)
    }

    pub fn one(tag: FieldTag) -> FieldElem {
        FieldElem::from_i64(1, tag)
    }

    pub fn from_i64(n: i64, tag: FieldTag) -> FieldElem {
        match tag {
            FieldTag::Q => FieldElem::Q(BigRational::from(BigInt::from(n))),
            FieldTag::Fp(p) => FieldElem::Fp { p, v: n.rem_euclid(p as i64) as u64 },
        }
    }

    pub fn rational(num: i64, den: i64) -> FieldElem {
        FieldElem::Q(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn is_zero(&self) -> bool {
        match self {
            FieldElem::Q(x) => x.is_zero(),
            FieldElem::Fp { v, .. } => *v == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            FieldElem::Q(x) => x.is_one(),
            FieldElem::Fp { v, .. } => *v == 1,
        }
    }

    fn check(&self, other: &FieldElem) -> Result<(), DomainMismatch> {
        if self.tag() == other.tag() {
            Ok(())
        } else {
            Err(DomainMismatch(format!("{} vs {}", self.tag(), other.tag())))
        }
    }

    pub fn add(&self, other: &FieldElem) -> Result<FieldElem, DomainMismatch> {
        self.check(other)?;
        Ok(match (self, other) {
            (FieldElem::Q(x), FieldElem::Q(y)) => FieldElem::Q(x + y),
            (FieldElem::Fp { p, v }, FieldElem::Fp { v: w, .. }) => {
                FieldElem::Fp { p: *p, v: (v + w) % p }
            }
            _ => unreachable!(),
        })
    }

    pub fn sub(&self, other: &FieldElem) -> Result<FieldElem, DomainMismatch> {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &FieldElem) -> Result<FieldElem, DomainMismatch> {
        self.check(other)?;
        Ok(match (self, other) {
            (FieldElem::Q(x), FieldElem::Q(y)) => FieldElem::Q(x * y),
            (FieldElem::Fp { p, v }, FieldElem::Fp { v: w, .. }) => {
                FieldElem::Fp { p: *p, v: (v * w) % p }
            }
            _ => unreachable!(),
        })
    }

    pub fn neg(&self) -> FieldElem {
        match self {
            FieldElem::Q(x) => FieldElem::Q(-x),
            FieldElem::Fp { p, v } => FieldElem::Fp { p: *p, v: (p - v) % p },
        }
    }

    pub fn inv(&self) -> Option<FieldElem> {
        match self {
            FieldElem::Q(x) => {
                if x.is_zero() {
                    None
                } else {
                    Some(FieldElem::Q(x.recip()))
                }
            }
            FieldElem::Fp { p, v } => {
                if *v == 0 {
                    None
                } else {
                    // Fermat: v^(p-2) mod p.
                    let mut acc = 1u64;
                    let mut base = *v;
                    let mut e = p - 2;
                    while e > 0 {
                        if e & 1 == 1 {
                            acc = acc * base % p;
                        }
                        base = base * base % p;
                        e >>= 1;
                    }
                    Some(FieldElem::Fp { p: *p, v: acc })
                }
            }
        }
    }

    pub fn div(&self, other: &FieldElem) -> Result<FieldElem, DomainMismatch> {
        self.check(other)?;
        let inv = other.inv().expect("division by zero");
        self.mul(&inv)
    }

    /// Index of the element in the canonical enumeration of a finite field.
    pub fn enum_index(&self) -> Option<u64> {
        match self {
            FieldElem::Q(_) => None,
            FieldElem::Fp { v, .. } => Some(*v),
        }
    }

    /// Element with the given enumeration index.
    pub fn from_enum_index(tag: FieldTag, i: u64) -> FieldElem {
        match tag {
            FieldTag::Q => panic!("Q is not enumerable"),
            FieldTag::Fp(p) => FieldElem::Fp { p, v: i % p },
        }
    }

    /// Parses "a/b", "a", or "-a/b" in the given field.
    pub fn parse(text: &str, tag: FieldTag) -> Option<FieldElem> {
        let text = text.trim();
        let (num, den) = match text.split_once('/') {
            Some((n, d)) => (n.trim().parse::<i64>().ok()?, d.trim().parse::<i64>().ok()?),
            None => (text.parse::<i64>().ok()?, 1),
        };
        if den == 0 {
            return None;
        }
        match tag {
            FieldTag::Q => Some(FieldElem::Q(BigRational::new(
                BigInt::from(num),
                BigInt::from(den),
            ))),
            FieldTag::Fp(p) => {
                let d = FieldElem::from_i64(den, tag).inv()?;
                FieldElem::from_i64(num, FieldTag::Fp(p)).mul(&d).ok()
            }
        }
    }

    /// Renders in the model-file convention: rationals as "a/b" or "a".
    pub fn render(&self) -> String {
        match self {
            FieldElem::Q(x) => {
                if x.denom().is_one() {
                    format!("{}", x.numer())
                } else {
                    format!("{}/{}", x.numer(), x.denom())
                }
            }
            FieldElem::Fp { v, .. } => format!("{v}"),
        }
    }
}

impl fmt::Display for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render())
    }
}

/// Dense univariate polynomial, ascending coefficients, no trailing zeros.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Poly {
    pub field: FieldTag,
    pub coeffs: Vec<FieldElem>,
}

impl Poly {
    pub fn new(field: FieldTag, mut coeffs: Vec<FieldElem>) -> Poly {
        while coeffs.last().is_some_and(FieldElem::is_zero) {
            coeffs.pop();
        }
        Poly { field, coeffs }
    }

    pub fn zero(field: FieldTag) -> Poly {
        Poly { field, coeffs: Vec::new() }
    }

    pub fn from_i64(field: FieldTag, coeffs: &[i64]) -> Poly {
        Poly::new(field, coeffs.iter().map(|c| FieldElem::from_i64(*c, field)).collect())
    }

    /// x^n.
    pub fn monomial(field: FieldTag, n: usize) -> Poly {
        let mut coeffs = alloc::vec![FieldElem::zero(field); n + 1];
        coeffs[n] = FieldElem::one(field);
        Poly { field, coeffs }
    }

    pub fn degree(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().is_some_and(FieldElem::is_one)
    }

    pub fn coeff(&self, i: usize) -> FieldElem {
        self.coeffs.get(i).cloned().unwrap_or_else(|| FieldElem::zero(self.field))
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push(self.coeff(i).add(&other.coeff(i)).expect("same field"));
        }
        Poly::new(self.field, out)
    }

    pub fn scale(&self, c: &FieldElem) -> Poly {
        Poly::new(
            self.field,
            self.coeffs.iter().map(|x| x.mul(c).expect("same field")).collect(),
        )
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        if self.coeffs.is_empty() || other.coeffs.is_empty() {
            return Poly::zero(self.field);
        }
        let mut out =
            alloc::vec![FieldElem::zero(self.field); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = out[i + j]
                    .add(&a.mul(b).expect("same field"))
                    .expect("same field");
            }
        }
        Poly::new(self.field, out)
    }

    /// Remainder modulo a monic divisor.
    pub fn rem_monic(&self, divisor: &Poly) -> Poly {
        assert!(divisor.is_monic(), "divisor must be monic");
        let d = divisor.degree().expect("nonzero divisor");
        let mut rem = self.coeffs.clone();
        while rem.len() > d {
            let lead = rem.last().cloned().unwrap();
            let shift = rem.len() - 1 - d;
            if !lead.is_zero() {
                for (i, c) in divisor.coeffs.iter().enumerate() {
                    let t = c.mul(&lead).expect("same field");
                    rem[shift + i] = rem[shift + i].sub(&t).expect("same field");
                }
            }
            rem.pop();
        }
        Poly::new(self.field, rem)
    }

    pub fn pow(&self, mut e: u64) -> Poly {
        let mut acc = Poly::from_i64(self.field, &[1]);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    /// Renders as a human-readable polynomial in x.
    pub fn render(&self) -> String {
        if self.coeffs.is_empty() {
            return String::from("0");
        }
        let mut parts: Vec<String> = Vec::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let coeff_str = c.render();
            let part = match i {
                0 => coeff_str,
                1 => {
                    if c.is_one() {
                        String::from("x")
                    } else {
                        format!("{coeff_str}*x")
                    }
                }
                _ => {
                    if c.is_one() {
                        format!("x^{i}")
                    } else {
                        format!("{coeff_str}*x^{i}")
                    }
                }
            };
            parts.push(part);
        }
        let mut out = String::new();
        for (k, part) in parts.iter().enumerate() {
            if k == 0 {
                out.push_str(part);
            } else if let Some(rest) = part.strip_prefix('-') {
                out.push_str("- ");
                out.push_str(rest);
            } else {
                out.push_str("+ ");
                out.push_str(part);
            }
            if k + 1 != parts.len() {
                out.push(' ');
            }
        }
        out
    }
}
