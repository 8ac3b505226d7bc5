use std::fmt;

use crate::field::Field;

/// Dense univariate polynomial, `coeffs[k]` is the coefficient of `t^k`.
/// Trailing zeros are trimmed, so the zero polynomial has no coefficients.
#[derive(Clone, PartialEq, Eq)]
pub struct UniPoly<F: Field> {
    field: F,
    coeffs: Vec<F::Elem>,
}

impl<F: Field> fmt::Debug for UniPoly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c: Vec<String> = self.coeffs.iter().map(|c| self.field.render(c)).collect();
        write!(f, "UniPoly{c:?}")
    }
}

impl<F: Field> UniPoly<F> {
    pub fn new(field: &F, mut coeffs: Vec<F::Elem>) -> Self {
        while coeffs.last().is_some_and(|c| field.is_zero(c)) {
            coeffs.pop();
        }
        UniPoly {
            field: field.clone(),
            coeffs,
        }
    }

    pub fn zero(field: &F) -> Self {
        Self::new(field, Vec::new())
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn coeffs(&self) -> &[F::Elem] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> F::Elem {
        self.coeffs.get(k).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&F::Elem> {
        self.coeffs.last()
    }

    pub fn eval(&self, t: &F::Elem) -> F::Elem {
        let f = &self.field;
        self.coeffs
            .iter()
            .rev()
            .fold(f.zero(), |acc, c| f.add(&f.mul(&acc, t), c))
    }

    pub fn derivative(&self) -> Self {
        let f = &self.field;
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, c)| f.mul(c, &f.from_i64(k as i64)))
            .collect();
        Self::new(f, coeffs)
    }

    pub fn sub(&self, other: &Self) -> Self {
        let f = &self.field;
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new(f, (0..n).map(|k| f.sub(&self.coeff(k), &other.coeff(k))).collect())
    }

    pub fn scale(&self, c: &F::Elem) -> Self {
        let f = &self.field;
        Self::new(f, self.coeffs.iter().map(|v| f.mul(v, c)).collect())
    }

    /// Remainder of division by a nonzero `divisor`.
    pub fn rem(&self, divisor: &Self) -> Self {
        let f = &self.field;
        let dd = divisor.degree().expect("nonzero divisor");
        let inv = f.inv(divisor.leading().unwrap()).unwrap();
        let mut r = self.coeffs.clone();
        while r.len() > dd && !r.is_empty() {
            let shift = r.len() - 1 - dd;
            let q = f.mul(r.last().unwrap(), &inv);
            for (k, c) in divisor.coeffs.iter().enumerate() {
                r[shift + k] = f.sub(&r[shift + k], &f.mul(&q, c));
            }
            while r.last().is_some_and(|c| f.is_zero(c)) {
                r.pop();
            }
        }
        Self::new(f, r)
    }

    /// Monic greatest common divisor; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn monic(&self) -> Self {
        match self.leading() {
            Some(l) => self.scale(&self.field.inv(l).unwrap()),
            None => self.clone(),
        }
    }

    /// Distinct roots in the base field, in canonical order.
    pub fn roots(&self) -> Vec<F::Elem> {
        self.field.base_field_roots(&self.coeffs)
    }

    /// Degrees carrying a nonzero coefficient.
    pub fn support(&self) -> Vec<u32> {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !self.field.is_zero(c))
            .map(|(k, _)| k as u32)
            .collect()
    }

    /// Same text form as [`MPoly::render`](super::MPoly::render) with `var`
    /// as the variable name.
    pub fn render(&self, var: &str) -> String {
        let f = &self.field;
        let mut out = String::new();
        for k in self.support().into_iter().rev() {
            let c = &self.coeffs[k as usize];
            let negative = f.is_negative(c);
            let mag = if negative { f.neg(c) } else { c.clone() };
            out.push_str(match (out.is_empty(), negative) {
                (true, true) => "-",
                (true, false) => "",
                (false, true) => " - ",
                (false, false) => " + ",
            });
            let power = match k {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{k}"),
            };
            if k == 0 {
                out.push_str(&f.render(&mag));
            } else if f.is_one(&mag) {
                out.push_str(&power);
            } else {
                out.push_str(&format!("{}*{power}", f.render(&mag)));
            }
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};

    #[test]
    fn trims_and_differentiates() {
        let q = Rationals;
        let p = UniPoly::new(&q, vec![q.one(), q.zero(), q.from_i64(3), q.zero()]);
        assert_eq!(p.degree(), Some(2));
        assert_eq!(p.derivative(), UniPoly::new(&q, vec![q.zero(), q.from_i64(6)]));
        assert_eq!(p.support(), vec![0, 2]);
    }

    #[test]
    fn render_matches_multivariate_form() {
        let q = Rationals;
        let p = UniPoly::new(&q, vec![q.from_i64(-3), q.one(), q.zero(), q.from_i64(-2)]);
        assert_eq!(p.render("t"), "-2*t^3 + t - 3");
        assert_eq!(UniPoly::zero(&q).render("t"), "0");
    }

    #[test]
    fn gcd_over_prime_field() {
        let f = PrimeField::new(7).unwrap();
        // (t - 1)(t - 2) and (t - 1)(t + 3)
        let a = UniPoly::new(&f, vec![2, 4, 1]);
        let b = UniPoly::new(&f, vec![4, 2, 1]);
        assert_eq!(a.gcd(&b), UniPoly::new(&f, vec![6, 1]));
    }

    #[test]
    fn derivative_of_p_th_power_vanishes() {
        let f = PrimeField::new(3).unwrap();
        let p = UniPoly::new(&f, vec![0, 1, 0, 2]);
        assert_eq!(p.derivative(), UniPoly::new(&f, vec![1]));
    }
}
