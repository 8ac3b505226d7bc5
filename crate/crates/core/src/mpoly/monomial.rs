use std::cmp::Ordering;

/// Exponent vector of a monomial `x_1^e_1 ... x_n^e_n`.
///
/// Ordered graded-lexicographically: by total degree first, then
/// lexicographically on the exponents, so `x1 > x2` within a degree.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn new(exponents: Vec<u32>) -> Self {
        Monomial(exponents)
    }

    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Monomial(e)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn exponent(&self, i: usize) -> u32 {
        self.0[i]
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// `self / other` when `other` divides `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a.checked_sub(*b))
            .collect::<Option<Vec<_>>>()
            .map(Monomial)
    }

    /// Returns `(e_i, self / x_i^e_i)`.
    pub fn split_var(&self, i: usize) -> (u32, Monomial) {
        let mut rest = self.0.clone();
        let e = std::mem::take(&mut rest[i]);
        (e, Monomial(rest))
    }

    pub(crate) fn with_exponent(&self, i: usize, e: u32) -> Monomial {
        let mut v = self.0.clone();
        v[i] = e;
        Monomial(v)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn graded_lex() {
        let m = |v: &[u32]| Monomial::new(v.to_vec());
        assert!(m(&[0, 0]) < m(&[0, 1]));
        assert!(m(&[0, 1]) < m(&[1, 0]));
        assert!(m(&[1, 0]) < m(&[0, 2]));
        assert!(m(&[1, 1]) < m(&[2, 0]));
        assert!(m(&[3, 0]) > m(&[0, 2]));
    }

    #[test]
    fn division() {
        let a = Monomial::new(vec![2, 1]);
        assert_eq!(a.div(&Monomial::new(vec![1, 1])), Some(Monomial::new(vec![1, 0])));
        assert_eq!(a.div(&Monomial::new(vec![0, 2])), None);
    }
}
