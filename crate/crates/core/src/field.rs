//! Exact scalar fields.
//!
//! A [`Field`] is a small context object that owns the arithmetic; its
//! elements are plain values. This lets the prime of `F_p` be chosen at run
//! time while every algorithm above stays generic over the scalar type.

use std::cmp::Ordering;
use std::fmt::{self, Debug, Display};
use std::hash::Hash;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Runtime description of a field, used for reporting and file formats.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FieldDesc {
    Rationals,
    PrimeField(u64),
}

impl Display for FieldDesc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldDesc::Rationals => write!(f, "Q"),
            FieldDesc::PrimeField(p) => write!(f, "F_{p}"),
        }
    }
}

/// Exact field arithmetic over an element type `Elem`.
#[allow(clippy::wrong_self_convention)]
pub trait Field: Clone + Debug + PartialEq + Eq + Send + Sync + 'static {
    type Elem: Clone + Debug + PartialEq + Eq + Hash + Send + Sync + 'static;

    fn desc(&self) -> FieldDesc;

    /// 0 for `Q`, `p` for `F_p`.
    fn characteristic(&self) -> u64;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn from_i64(&self, v: i64) -> Self::Elem;
    fn from_bigint(&self, v: &BigInt) -> Self::Elem;

    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    /// Multiplicative inverse, `None` for zero.
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;

    fn is_zero(&self, a: &Self::Elem) -> bool;

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Option<Self::Elem> {
        self.inv(b).map(|bi| self.mul(a, &bi))
    }

    fn pow(&self, a: &Self::Elem, mut e: u64) -> Self::Elem {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }

    /// `num / den`, failing when `den` is not a unit.
    fn from_ratio(&self, num: &BigInt, den: &BigInt) -> Result<Self::Elem> {
        let d = self.from_bigint(den);
        self.div(&self.from_bigint(num), &d)
            .ok_or_else(|| Error::DivisorNotUnit(den.to_string()))
    }

    /// True when the canonical text of `a` starts with a minus sign.
    fn is_negative(&self, a: &Self::Elem) -> bool;

    /// Canonical text: `num/den` (or `num`) over `Q`, the residue over `F_p`.
    fn render(&self, a: &Self::Elem) -> String;

    /// Parses `[-]int[/posint]`.
    fn parse_scalar(&self, text: &str) -> Result<Self::Elem> {
        let t = text.trim();
        let bad = |msg: &str| Error::Syntax {
            offset: 1,
            message: format!("{msg}: {t:?}"),
        };
        let (num, den) = match t.split_once('/') {
            Some((n, d)) => (n.trim(), Some(d.trim())),
            None => (t, None),
        };
        let num: BigInt = num.parse().map_err(|_| bad("bad integer"))?;
        let den: BigInt = match den {
            Some(d) if !d.starts_with(['-', '+']) => d.parse().map_err(|_| bad("bad denominator"))?,
            Some(_) => return Err(bad("denominator must be a positive integer")),
            None => BigInt::one(),
        };
        self.from_ratio(&num, &den)
    }

    /// Total order used to make every search deterministic.
    fn canonical_cmp(&self, a: &Self::Elem, b: &Self::Elem) -> Ordering;

    /// All elements in canonical order, when the field is finite.
    fn elements(&self) -> Option<Vec<Self::Elem>>;

    /// Roots in the base field of the dense polynomial `coeffs[k] t^k`,
    /// without repetition, in canonical order. The zero polynomial yields
    /// an empty list; callers treat it separately.
    fn base_field_roots(&self, coeffs: &[Self::Elem]) -> Vec<Self::Elem>;

    fn same_as(&self, other: &Self) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::FieldMismatch {
                left: self.desc().to_string(),
                right: other.desc().to_string(),
            })
        }
    }
}

fn horner<F: Field>(field: &F, coeffs: &[F::Elem], x: &F::Elem) -> F::Elem {
    coeffs
        .iter()
        .rev()
        .fold(field.zero(), |acc, c| field.add(&field.mul(&acc, x), c))
}

/// The rational numbers with arbitrary-precision numerators and denominators.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash)]
pub struct Rationals;

impl Field for Rationals {
    type Elem = BigRational;

    fn desc(&self) -> FieldDesc {
        FieldDesc::Rationals
    }

    fn characteristic(&self) -> u64 {
        0
    }

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }

    fn one(&self) -> BigRational {
        BigRational::one()
    }

    fn from_i64(&self, v: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(v))
    }

    fn from_bigint(&self, v: &BigInt) -> BigRational {
        BigRational::from_integer(v.clone())
    }

    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }

    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }

    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }

    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }

    fn inv(&self, a: &BigRational) -> Option<BigRational> {
        if a.is_zero() {
            None
        } else {
            Some(a.recip())
        }
    }

    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }

    fn is_one(&self, a: &BigRational) -> bool {
        a.is_one()
    }

    fn is_negative(&self, a: &BigRational) -> bool {
        a.is_negative()
    }

    fn render(&self, a: &BigRational) -> String {
        if a.denom().is_one() {
            a.numer().to_string()
        } else {
            format!("{}/{}", a.numer(), a.denom())
        }
    }

    /// Orders by `(|num|, den, sign)` with the positive value first.
    fn canonical_cmp(&self, a: &BigRational, b: &BigRational) -> Ordering {
        a.numer()
            .abs()
            .cmp(&b.numer().abs())
            .then_with(|| a.denom().cmp(b.denom()))
            .then_with(|| b.numer().sign().cmp(&a.numer().sign()))
    }

    fn elements(&self) -> Option<Vec<BigRational>> {
        None
    }

    /// Rational root test on the primitive integer multiple of `coeffs`.
    fn base_field_roots(&self, coeffs: &[BigRational]) -> Vec<BigRational> {
        let Some(top) = coeffs.iter().rposition(|c| !c.is_zero()) else {
            return Vec::new();
        };
        let lcm = coeffs[..=top].iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let ints: Vec<BigInt> = coeffs[..=top]
            .iter()
            .map(|c| (c * BigRational::from_integer(lcm.clone())).to_integer())
            .collect();
        let low = ints.iter().position(|c| !c.is_zero()).unwrap_or(0);
        let mut roots = Vec::new();
        if low > 0 {
            roots.push(BigRational::zero());
        }
        let ints = &ints[low..];
        if ints.len() > 1 {
            let content = ints.iter().fold(BigInt::zero(), |g, c| g.gcd(c));
            let ints: Vec<BigInt> = ints.iter().map(|c| c / &content).collect();
            let numer_divs = divisors(&ints[0].abs());
            let denom_divs = divisors(&ints[ints.len() - 1].abs());
            let as_q: Vec<BigRational> = ints.iter().cloned().map(BigRational::from_integer).collect();
            for p in &numer_divs {
                for q in &denom_divs {
                    if !p.gcd(q).is_one() {
                        continue;
                    }
                    for sign in [1, -1] {
                        let cand = BigRational::new(p * BigInt::from(sign), q.clone());
                        if horner(self, &as_q, &cand).is_zero() {
                            roots.push(cand);
                        }
                    }
                }
            }
        }
        roots.sort_by(|a, b| self.canonical_cmp(a, b));
        roots.dedup();
        roots
    }
}

/// Positive divisors of a positive integer, ascending, by trial division.
fn divisors(n: &BigInt) -> Vec<BigInt> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    if let Some(v) = n.to_u64() {
        let mut d = 1u64;
        while d.saturating_mul(d) <= v {
            if v % d == 0 {
                small.push(BigInt::from(d));
                if d * d != v {
                    large.push(BigInt::from(v / d));
                }
            }
            d += 1;
        }
    } else {
        let mut d = BigInt::one();
        while &d * &d <= *n {
            if (n % &d).is_zero() {
                small.push(d.clone());
                if &d * &d != *n {
                    large.push(n / &d);
                }
            }
            d += 1;
        }
    }
    large.reverse();
    small.extend(large);
    small
}

/// The prime field `Z/pZ` with residues stored in `[0, p)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    /// Largest accepted modulus; keeps products inside `u64`.
    pub const MAX_MODULUS: u64 = u32::MAX as u64;

    pub fn new(p: u64) -> Result<Self> {
        if p > Self::MAX_MODULUS || !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(PrimeField { p })
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn elem(&self, v: u64) -> u64 {
        v % self.p
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

impl Field for PrimeField {
    type Elem = u64;

    fn desc(&self) -> FieldDesc {
        FieldDesc::PrimeField(self.p)
    }

    fn characteristic(&self) -> u64 {
        self.p
    }

    fn zero(&self) -> u64 {
        0
    }

    fn one(&self) -> u64 {
        1 % self.p
    }

    fn from_i64(&self, v: i64) -> u64 {
        v.rem_euclid(self.p as i64) as u64
    }

    fn from_bigint(&self, v: &BigInt) -> u64 {
        let r = v.mod_floor(&BigInt::from(self.p));
        debug_assert!(r.sign() != Sign::Minus);
        r.to_u64().expect("residue fits in u64")
    }

    fn add(&self, a: &u64, b: &u64) -> u64 {
        (a + b) % self.p
    }

    fn sub(&self, a: &u64, b: &u64) -> u64 {
        (a + self.p - b) % self.p
    }

    fn mul(&self, a: &u64, b: &u64) -> u64 {
        (a * b) % self.p
    }

    fn neg(&self, a: &u64) -> u64 {
        (self.p - a) % self.p
    }

    fn inv(&self, a: &u64) -> Option<u64> {
        if *a == 0 {
            return None;
        }
        // Fermat: a^(p-2)
        Some(self.pow(a, self.p - 2))
    }

    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }

    fn is_negative(&self, _a: &u64) -> bool {
        false
    }

    fn render(&self, a: &u64) -> String {
        a.to_string()
    }

    fn canonical_cmp(&self, a: &u64, b: &u64) -> Ordering {
        a.cmp(b)
    }

    fn elements(&self) -> Option<Vec<u64>> {
        Some((0..self.p).collect())
    }

    fn base_field_roots(&self, coeffs: &[u64]) -> Vec<u64> {
        if coeffs.iter().all(|c| *c == 0) {
            return Vec::new();
        }
        (0..self.p).filter(|x| horner(self, coeffs, x) == 0).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn rationals_are_reduced() {
        let a = q(2, 4);
        assert_eq!(a.numer(), &BigInt::from(1));
        assert_eq!(a.denom(), &BigInt::from(2));
        assert_eq!(Rationals.render(&q(-6, 4)), "-3/2");
        assert_eq!(Rationals.render(&q(0, 5)), "0");
    }

    #[test]
    fn rational_sum_two_ways() {
        // a/b + c/d = (ad + bc)/bd
        let (a, b, c, d) = (3i64, 7i64, -5i64, 12i64);
        let lhs = Rationals.add(&q(a, b), &q(c, d));
        assert_eq!(lhs, q(a * d + b * c, b * d));
    }

    #[test]
    fn prime_field_matches_integer_arithmetic() {
        let f = PrimeField::new(7).unwrap();
        for a in -20i64..20 {
            for b in -20i64..20 {
                assert_eq!(f.add(&f.from_i64(a), &f.from_i64(b)), f.from_i64(a + b));
                assert_eq!(f.mul(&f.from_i64(a), &f.from_i64(b)), f.from_i64(a * b));
                assert_eq!(f.sub(&f.from_i64(a), &f.from_i64(b)), f.from_i64(a - b));
            }
        }
        for a in 1..7 {
            assert_eq!(f.mul(&a, &f.inv(&a).unwrap()), 1);
        }
    }

    #[test]
    fn rejects_composites() {
        assert_eq!(PrimeField::new(1), Err(Error::NotPrime(1)));
        assert_eq!(PrimeField::new(9), Err(Error::NotPrime(9)));
        assert!(PrimeField::new(2).is_ok());
        assert!(PrimeField::new(7919).is_ok());
    }

    #[test]
    fn parse_scalars() {
        let f5 = PrimeField::new(5).unwrap();
        assert_eq!(f5.parse_scalar("1/2").unwrap(), 3);
        assert_eq!(f5.parse_scalar("-1").unwrap(), 4);
        assert!(matches!(f5.parse_scalar("1/5"), Err(Error::DivisorNotUnit(_))));
        assert_eq!(Rationals.parse_scalar("-3/6").unwrap(), q(-1, 2));
        assert!(Rationals.parse_scalar("1/-2").is_err());
        assert!(Rationals.parse_scalar("abc").is_err());
    }

    #[test]
    fn canonical_rational_order() {
        let mut v = vec![q(-1, 1), q(1, 2), q(0, 1), q(1, 1), q(-1, 2), q(2, 1)];
        v.sort_by(|a, b| Rationals.canonical_cmp(a, b));
        assert_eq!(v, vec![q(0, 1), q(1, 1), q(-1, 1), q(1, 2), q(-1, 2), q(2, 1)]);
    }

    #[test]
    fn rational_roots() {
        // 2t^2 - 3t + 1 = (2t - 1)(t - 1)
        let c = vec![q(1, 1), q(-3, 1), q(2, 1)];
        assert_eq!(Rationals.base_field_roots(&c), vec![q(1, 1), q(1, 2)]);
        // t^2 + 1: none
        assert!(Rationals.base_field_roots(&[q(1, 1), q(0, 1), q(1, 1)]).is_empty());
        // t^3 - t/4 = t (t - 1/2)(t + 1/2)
        let c = vec![q(0, 1), q(-1, 4), q(0, 1), q(1, 1)];
        assert_eq!(Rationals.base_field_roots(&c), vec![q(0, 1), q(1, 2), q(-1, 2)]);
    }

    #[test]
    fn prime_field_roots_are_exhaustive() {
        let f5 = PrimeField::new(5).unwrap();
        // 2t has the single root 0
        assert_eq!(f5.base_field_roots(&[0, 2]), vec![0]);
        // t^2 - 1
        assert_eq!(f5.base_field_roots(&[4, 0, 1]), vec![1, 4]);
        // nonzero constant
        assert!(f5.base_field_roots(&[3]).is_empty());
    }
}
