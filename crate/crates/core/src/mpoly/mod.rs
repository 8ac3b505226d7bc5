//! Sparse multivariate polynomials over an exact field.

mod monomial;
mod parse;
mod unipoly;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

pub use monomial::Monomial;
pub use parse::parse;
pub use unipoly::UniPoly;

use crate::error::{Error, Result};
use crate::field::Field;

/// A polynomial in `nvars` variables, stored as a map from monomials to
/// nonzero coefficients in graded-lex order.
///
/// Variable indices are 0-based in the API (`x1` in text is index 0).
#[derive(Clone, PartialEq, Eq)]
pub struct MPoly<F: Field> {
    field: F,
    nvars: usize,
    terms: BTreeMap<Monomial, F::Elem>,
}

impl<F: Field> fmt::Debug for MPoly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MPoly[{}; {}]({})", self.field.desc(), self.nvars, self.render())
    }
}

impl<F: Field> fmt::Display for MPoly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl<F: Field> MPoly<F> {
    pub fn zero(field: &F, nvars: usize) -> Self {
        MPoly {
            field: field.clone(),
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(field: &F, nvars: usize, c: F::Elem) -> Self {
        let mut p = Self::zero(field, nvars);
        p.add_term(Monomial::one(nvars), c);
        p
    }

    pub fn one(field: &F, nvars: usize) -> Self {
        Self::constant(field, nvars, field.one())
    }

    /// The variable `x_{i+1}`.
    pub fn var(field: &F, nvars: usize, i: usize) -> Self {
        let mut p = Self::zero(field, nvars);
        p.add_term(Monomial::var(nvars, i), field.one());
        p
    }

    pub fn from_terms(field: &F, nvars: usize, terms: impl IntoIterator<Item = (Monomial, F::Elem)>) -> Self {
        let mut p = Self::zero(field, nvars);
        for (m, c) in terms {
            assert_eq!(m.nvars(), nvars, "monomial arity");
            p.add_term(m, c);
        }
        p
    }

    /// Adds `c * m` in place, keeping the zero-free invariant.
    pub fn add_term(&mut self, m: Monomial, c: F::Elem) {
        if self.field.is_zero(&c) {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                let s = self.field.add(o.get(), &c);
                if self.field.is_zero(&s) {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    /// Terms in ascending graded-lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &F::Elem)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, m: &Monomial) -> F::Elem {
        self.terms.get(m).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn constant_term(&self) -> F::Elem {
        self.coeff(&Monomial::one(self.nvars))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// True for the zero polynomial and for nonzero constants.
    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Monomial::is_one)
    }

    /// Total degree; the zero polynomial has degree 0.
    pub fn degree(&self) -> u32 {
        self.terms.keys().next_back().map_or(0, Monomial::degree)
    }

    /// Smallest total degree of a term, `None` for zero.
    pub fn order(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).min()
    }

    /// Total degrees that occur among the terms.
    pub fn degree_support(&self) -> BTreeSet<u32> {
        self.terms.keys().map(Monomial::degree).collect()
    }

    pub fn depends_on(&self, i: usize) -> bool {
        self.terms.keys().any(|m| m.exponent(i) > 0)
    }

    pub fn is_homogeneous(&self) -> bool {
        self.degree_support().len() <= 1
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        self.field.same_as(&other.field)?;
        if self.nvars != other.nvars {
            return Err(Error::ArityMismatch {
                expected: self.nvars,
                found: other.nvars,
            });
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), self.field.neg(c));
        }
        Ok(out)
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        Ok(self.mul_truncated(other, None))
    }

    /// Product keeping only terms of total degree `<= max_deg`.
    pub fn mul_truncated(&self, other: &Self, max_deg: Option<u32>) -> Self {
        let f = &self.field;
        let mut acc: BTreeMap<Monomial, F::Elem> = BTreeMap::new();
        for (ma, ca) in &self.terms {
            let da = ma.degree();
            for (mb, cb) in &other.terms {
                if max_deg.is_some_and(|b| da + mb.degree() > b) {
                    continue;
                }
                let prod = f.mul(ca, cb);
                acc.entry(ma.mul(mb))
                    .and_modify(|c| *c = f.add(c, &prod))
                    .or_insert(prod);
            }
        }
        acc.retain(|_, c| !f.is_zero(c));
        MPoly {
            field: f.clone(),
            nvars: self.nvars,
            terms: acc,
        }
    }

    pub fn scale(&self, c: &F::Elem) -> Self {
        let f = &self.field;
        if f.is_zero(c) {
            return Self::zero(f, self.nvars);
        }
        MPoly {
            field: f.clone(),
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, v)| (m.clone(), f.mul(v, c))).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        self.pow_truncated(e, None)
    }

    /// Power by repeated squaring, optionally truncated above `max_deg`.
    pub fn pow_truncated(&self, mut e: u32, max_deg: Option<u32>) -> Self {
        let mut acc = Self::one(&self.field, self.nvars);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_truncated(&base, max_deg);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul_truncated(&base, max_deg);
            }
        }
        acc
    }

    /// Drops every term of total degree above `max_deg`.
    pub fn truncate(&self, max_deg: u32) -> Self {
        MPoly {
            field: self.field.clone(),
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree() <= max_deg)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Formal partial derivative with respect to variable `i` (0-based).
    pub fn derivative(&self, i: usize) -> Result<Self> {
        if i >= self.nvars {
            return Err(Error::BadIndex {
                index: i,
                nvars: self.nvars,
            });
        }
        let f = &self.field;
        let mut out = Self::zero(f, self.nvars);
        for (m, c) in &self.terms {
            let e = m.exponent(i);
            if e == 0 {
                continue;
            }
            let coeff = f.mul(c, &f.from_i64(i64::from(e)));
            out.add_term(m.with_exponent(i, e - 1), coeff);
        }
        Ok(out)
    }

    /// The polynomial `p(images)`. Every image must share one arity and this
    /// polynomial's field; `target_nvars` is that arity (needed when there
    /// are no images at all).
    pub fn substitute_into(&self, images: &[Self], target_nvars: usize) -> Result<Self> {
        self.substitute_impl(images, target_nvars, None)
    }

    /// `p(images)`; the arity of the result is that of the images.
    pub fn substitute(&self, images: &[Self]) -> Result<Self> {
        let target = images.first().map_or(0, |g| g.nvars);
        self.substitute_impl(images, target, None)
    }

    /// Like [`substitute`](Self::substitute), discarding terms above `max_deg`.
    pub fn substitute_truncated(&self, images: &[Self], max_deg: u32) -> Result<Self> {
        let target = images.first().map_or(0, |g| g.nvars);
        self.substitute_impl(images, target, Some(max_deg))
    }

    fn substitute_impl(&self, images: &[Self], target: usize, max_deg: Option<u32>) -> Result<Self> {
        if images.len() != self.nvars {
            return Err(Error::ArityMismatch {
                expected: self.nvars,
                found: images.len(),
            });
        }
        for g in images {
            self.field.same_as(&g.field)?;
            if g.nvars != target {
                return Err(Error::ArityMismatch {
                    expected: target,
                    found: g.nvars,
                });
            }
        }
        let f = &self.field;
        // Image of every monomial on the chain m -> m / x_j (j the last
        // variable present) down to 1; lower degrees sort first, so each
        // image is one multiplication by a single `images[j]` away.
        let mut needed: BTreeSet<Monomial> = BTreeSet::new();
        for m in self.terms.keys() {
            let mut cur = m.clone();
            while !cur.is_one() && needed.insert(cur.clone()) {
                cur = chain_predecessor(&cur).0;
            }
        }
        let mut image: BTreeMap<Monomial, Self> = BTreeMap::new();
        let one = Self::one(f, target);
        for m in &needed {
            let (pred, j) = chain_predecessor(m);
            let base = if pred.is_one() { &one } else { &image[&pred] };
            let img = base.mul_truncated(&images[j], max_deg);
            image.insert(m.clone(), img);
        }
        let mut acc: BTreeMap<Monomial, F::Elem> = BTreeMap::new();
        for (m, c) in &self.terms {
            let img = if m.is_one() { &one } else { &image[m] };
            for (tm, tc) in &img.terms {
                if max_deg.is_some_and(|b| tm.degree() > b) {
                    continue;
                }
                let v = f.mul(c, tc);
                acc.entry(tm.clone()).and_modify(|x| *x = f.add(x, &v)).or_insert(v);
            }
        }
        acc.retain(|_, c| !f.is_zero(c));
        Ok(MPoly {
            field: f.clone(),
            nvars: target,
            terms: acc,
        })
    }

    /// Sum of the terms of total degree exactly `k`.
    pub fn homogeneous_component(&self, k: u32) -> Self {
        MPoly {
            field: self.field.clone(),
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree() == k)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// All nonzero homogeneous components keyed by degree.
    pub fn homogeneous_components(&self) -> BTreeMap<u32, Self> {
        self.degree_support()
            .into_iter()
            .map(|k| (k, self.homogeneous_component(k)))
            .collect()
    }

    pub fn evaluate(&self, point: &[F::Elem]) -> Result<F::Elem> {
        if point.len() != self.nvars {
            return Err(Error::ArityMismatch {
                expected: self.nvars,
                found: point.len(),
            });
        }
        Ok(self.eval_unchecked(point))
    }

    pub(crate) fn eval_unchecked(&self, point: &[F::Elem]) -> F::Elem {
        let f = &self.field;
        let mut acc = f.zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (x, &e) in point.iter().zip(m.exponents()) {
                if e > 0 {
                    t = f.mul(&t, &f.pow(x, u64::from(e)));
                }
            }
            acc = f.add(&acc, &t);
        }
        acc
    }

    /// The univariate polynomial `t -> p(t b)`.
    pub fn restrict_to_line(&self, b: &[F::Elem]) -> Result<UniPoly<F>> {
        if b.len() != self.nvars {
            return Err(Error::ArityMismatch {
                expected: self.nvars,
                found: b.len(),
            });
        }
        let f = &self.field;
        let mut coeffs = vec![f.zero(); self.degree() as usize + 1];
        for (m, c) in &self.terms {
            let mut v = c.clone();
            for (x, &e) in b.iter().zip(m.exponents()) {
                if e > 0 {
                    v = f.mul(&v, &f.pow(x, u64::from(e)));
                }
            }
            let d = m.degree() as usize;
            coeffs[d] = f.add(&coeffs[d], &v);
        }
        Ok(UniPoly::new(f, coeffs))
    }

    /// Re-embeds into `nvars` variables: extra variables are appended, and
    /// dropping variables requires that the polynomial not depend on them.
    pub fn with_nvars(&self, nvars: usize) -> Result<Self> {
        if let Some(i) = (nvars..self.nvars).find(|&i| self.depends_on(i)) {
            return Err(Error::BadIndex { index: i, nvars });
        }
        let terms = self.terms.iter().map(|(m, c)| {
            let mut e = m.exponents().to_vec();
            e.resize(nvars, 0);
            (Monomial::new(e), c.clone())
        });
        Ok(Self::from_terms(&self.field, nvars, terms))
    }

    /// Exact quotient `self / divisor`, or `None` if the division leaves a
    /// remainder. Uses graded-lex leading-term division.
    pub fn div_exact(&self, divisor: &Self) -> Option<Self> {
        let f = &self.field;
        let (lm, lc) = divisor.terms.iter().next_back()?;
        let lc_inv = f.inv(lc)?;
        let mut rem = self.clone();
        let mut quot = Self::zero(f, self.nvars);
        while let Some((m, c)) = rem.terms.iter().next_back() {
            let qm = m.div(lm)?;
            let qc = f.mul(c, &lc_inv);
            let step = Self::from_terms(f, self.nvars, [(qm.clone(), qc.clone())]);
            rem = &rem - &(&step * divisor);
            quot.add_term(qm, qc);
        }
        Some(quot)
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $try:ident) => {
        impl<F: Field> $trait for &MPoly<F> {
            type Output = MPoly<F>;
            /// Panics on mismatched fields or arities; use the `try_` form
            /// to get an error instead.
            fn $method(self, rhs: &MPoly<F>) -> MPoly<F> {
                self.$try(rhs).expect("compatible polynomials")
            }
        }
        impl<F: Field> $trait for MPoly<F> {
            type Output = MPoly<F>;
            fn $method(self, rhs: MPoly<F>) -> MPoly<F> {
                (&self).$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, try_add);
forward_binop!(Sub, sub, try_sub);
forward_binop!(Mul, mul, try_mul);

/// `(m / x_j, j)` for the last variable `x_j` occurring in `m != 1`.
fn chain_predecessor(m: &Monomial) -> (Monomial, usize) {
    let j = m
        .exponents()
        .iter()
        .rposition(|&e| e > 0)
        .expect("non-constant monomial");
    (m.with_exponent(j, m.exponent(j) - 1), j)
}

impl<F: Field> Neg for &MPoly<F> {
    type Output = MPoly<F>;
    fn neg(self) -> MPoly<F> {
        self.scale(&self.field.neg(&self.field.one()))
    }
}

impl<F: Field> Neg for MPoly<F> {
    type Output = MPoly<F>;
    fn neg(self) -> MPoly<F> {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};

    fn qp(s: &str, n: usize) -> MPoly<Rationals> {
        parse(s, n, &Rationals).unwrap()
    }

    #[test]
    fn ring_op_examples() {
        assert_eq!(&qp("x1 + x2", 2) + &qp("x1 - x2", 2), qp("2*x1", 2));
        let f2 = PrimeField::new(2).unwrap();
        let s = parse("x1 + x2", 2, &f2).unwrap();
        assert_eq!(s.pow(2), parse("x1^2 + x2^2", 2, &f2).unwrap());
        assert!((&qp("x1", 1) * &MPoly::zero(&Rationals, 1)).is_zero());
    }

    #[test]
    fn mismatches_are_errors() {
        let f5 = PrimeField::new(5).unwrap();
        let f7 = PrimeField::new(7).unwrap();
        let a = MPoly::var(&f5, 1, 0);
        let b = MPoly::var(&f7, 1, 0);
        assert!(matches!(a.try_add(&b), Err(Error::FieldMismatch { .. })));
        let c = MPoly::var(&f5, 2, 0);
        assert!(matches!(a.try_mul(&c), Err(Error::ArityMismatch { .. })));
    }

    #[test]
    fn derivative_examples() {
        assert_eq!(qp("x1^2*x2", 2).derivative(0).unwrap(), qp("2*x1*x2", 2));
        assert!(qp("x1", 2).derivative(1).unwrap().is_zero());
        for p in [2u64, 3, 5, 7] {
            let f = PrimeField::new(p).unwrap();
            let xp = MPoly::var(&f, 1, 0).pow(p as u32);
            assert!(xp.derivative(0).unwrap().is_zero());
        }
        assert!(matches!(qp("x1", 1).derivative(1), Err(Error::BadIndex { .. })));
    }

    #[test]
    fn substitute_examples() {
        let img = [qp("x1 + x2", 2)];
        assert_eq!(qp("x1^2", 1).substitute(&img).unwrap(), qp("x1^2 + 2*x1*x2 + x2^2", 2));
        let swap = [qp("x2", 2), qp("x1", 2)];
        assert_eq!(qp("x1 + x2", 2).substitute(&swap).unwrap(), qp("x1 + x2", 2));
        let shear = [qp("x1", 2), qp("x2 - x1^2", 2)];
        assert_eq!(qp("x2 + x1^2", 2).substitute(&shear).unwrap(), qp("x2", 2));
    }

    #[test]
    fn homogeneous_component_examples() {
        let p = qp("3 + x1 + x1*x2", 2);
        assert_eq!(p.homogeneous_component(2), qp("x1*x2", 2));
        assert!(p.homogeneous_component(5).is_zero());
        assert_eq!(qp("(x1 + 1)^2", 1).homogeneous_component(1), qp("2*x1", 1));
    }

    #[test]
    fn evaluate_examples() {
        let f2 = PrimeField::new(2).unwrap();
        let p = parse("x1 - x1^2", 1, &f2).unwrap();
        assert_eq!(p.evaluate(&[1]).unwrap(), 0);
        let q = Rationals;
        let p = qp("7 + x1*x2 - 3*x2", 2);
        assert_eq!(p.evaluate(&[q.zero(), q.zero()]).unwrap(), q.from_i64(7));
        assert_eq!(
            qp("x1*x2", 2).evaluate(&[q.from_i64(2), q.from_i64(3)]).unwrap(),
            q.from_i64(6)
        );
    }

    #[test]
    fn restrict_examples() {
        let q = Rationals;
        let r = qp("x1^2", 2).restrict_to_line(&[q.one(), q.zero()]).unwrap();
        assert_eq!(r, UniPoly::new(&q, vec![q.zero(), q.zero(), q.one()]));
        let r = qp("x1 + x2", 2).restrict_to_line(&[q.one(), q.from_i64(-1)]).unwrap();
        assert!(r.is_zero());
        let r = qp("x1*x2", 2)
            .restrict_to_line(&[q.from_i64(2), q.from_i64(3)])
            .unwrap();
        assert_eq!(r, UniPoly::new(&q, vec![q.zero(), q.zero(), q.from_i64(6)]));
    }

    #[test]
    fn exact_division() {
        let a = qp("x1^2 - x2^2", 2);
        let b = qp("x1 + x2", 2);
        assert_eq!(a.div_exact(&b), Some(qp("x1 - x2", 2)));
        assert_eq!(qp("x1^2 + 1", 2).div_exact(&b), None);
    }

    #[test]
    fn truncated_substitution_matches_truncating_afterwards() {
        let p = qp("x1^3 + x1*x2 + x2", 2);
        let imgs = [qp("x1 + x2^2", 2), qp("x2 - x1^2 + 1", 2)];
        let full = p.substitute(&imgs).unwrap();
        for k in 0..8 {
            assert_eq!(p.substitute_truncated(&imgs, k).unwrap(), full.truncate(k));
        }
    }

    #[test]
    fn with_nvars_roundtrip() {
        let p = qp("x1*x2 + 1", 2);
        let wide = p.with_nvars(4).unwrap();
        assert_eq!(wide.nvars(), 4);
        assert_eq!(wide.with_nvars(2).unwrap(), p);
        assert!(p.with_nvars(1).is_err());
    }
}
