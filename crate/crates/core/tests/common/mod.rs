#![allow(dead_code)]

use kellerlab::{Field, MPoly, Matrix, Monomial, PolyMap, PrimeField, Rationals};
use proptest::prelude::*;
use rand::Rng;

/// `(exponents, numerator, denominator)` per term.
pub type RawTerms = Vec<(Vec<u32>, i64, i64)>;

pub fn raw_terms(nvars: usize, max_exp: u32, max_terms: usize) -> impl Strategy<Value = RawTerms> {
    prop::collection::vec(
        (prop::collection::vec(0..=max_exp, nvars), -9i64..=9, 1i64..=6),
        0..=max_terms,
    )
}

pub fn scalar<F: Field>(f: &F, num: i64, den: i64) -> F::Elem {
    let n = f.from_i64(num);
    f.div(&n, &f.from_i64(den)).unwrap_or(n)
}

pub fn build<F: Field>(f: &F, nvars: usize, raw: &RawTerms) -> MPoly<F> {
    let mut p = MPoly::zero(f, nvars);
    for (e, num, den) in raw {
        p = p + MPoly::from_terms(f, nvars, vec![(Monomial::new(e.clone()), scalar(f, *num, *den))]);
    }
    p
}

pub fn q() -> Rationals {
    Rationals
}

pub fn fp(p: u64) -> PrimeField {
    PrimeField::new(p).unwrap()
}

pub fn matrix<F: Field>(f: &F, rows: usize, cols: usize, raw: &[i64]) -> Matrix<F> {
    let data = (0..rows)
        .map(|i| (0..cols).map(|j| f.from_i64(raw[i * cols + j])).collect())
        .collect();
    Matrix::from_rows(f, data).unwrap()
}

// Seeded generators for the acceptance suite.

pub fn random_scalar<F: Field>(f: &F, rng: &mut impl Rng, height: i64) -> F::Elem {
    let num = rng.gen_range(-height..=height);
    let den = rng.gen_range(1..=height.max(1));
    scalar(f, num, den)
}

pub fn random_nonzero<F: Field>(f: &F, rng: &mut impl Rng, height: i64) -> F::Elem {
    loop {
        let v = random_scalar(f, rng, height);
        if !f.is_zero(&v) {
            return v;
        }
    }
}

pub fn random_poly<F: Field>(f: &F, rng: &mut impl Rng, nvars: usize, max_deg: u32, nterms: usize) -> MPoly<F> {
    let mut p = MPoly::zero(f, nvars);
    for _ in 0..nterms {
        let deg = rng.gen_range(0..=max_deg);
        let mut e = vec![0u32; nvars];
        for _ in 0..deg {
            if nvars > 0 {
                e[rng.gen_range(0..nvars)] += 1;
            }
        }
        p = p + MPoly::from_terms(f, nvars, vec![(Monomial::new(e), random_scalar(f, rng, 5))]);
    }
    p
}

/// Random homogeneous polynomial of degree `d` in `x_1..x_k` (0-based `< k`)
/// inside `nvars` variables.
pub fn random_homogeneous<F: Field>(
    f: &F,
    rng: &mut impl Rng,
    nvars: usize,
    k: usize,
    d: u32,
    nterms: usize,
) -> MPoly<F> {
    let mut p = MPoly::zero(f, nvars);
    if k == 0 {
        return p;
    }
    for _ in 0..nterms {
        let mut e = vec![0u32; nvars];
        for _ in 0..d {
            e[rng.gen_range(0..k)] += 1;
        }
        p = p + MPoly::from_terms(f, nvars, vec![(Monomial::new(e), random_scalar(f, rng, 5))]);
    }
    p
}

pub fn random_matrix<F: Field>(f: &F, rng: &mut impl Rng, rows: usize, cols: usize) -> Matrix<F> {
    let data = (0..rows)
        .map(|_| (0..cols).map(|_| random_scalar(f, rng, 4)).collect())
        .collect();
    Matrix::from_rows(f, data).unwrap()
}

/// Unit lower times unit upper triangular, so determinant one.
pub fn random_unimodular<F: Field>(f: &F, rng: &mut impl Rng, n: usize) -> Matrix<F> {
    let mut l = Matrix::identity(f, n);
    let mut u = Matrix::identity(f, n);
    for i in 0..n {
        for j in 0..i {
            l.set(i, j, random_scalar(f, rng, 2));
            u.set(j, i, random_scalar(f, rng, 2));
        }
    }
    l.mul(&u).unwrap()
}

/// `x + H` with `H_i` in `x_1..x_{i-1}` for `i <= r` and in `x_1..x_r`
/// beyond, every part of degree between 2 and `d`, with degree `d` attained.
pub fn triangular_in_first<F: Field>(f: &F, rng: &mut impl Rng, n: usize, r: usize, d: u32) -> PolyMap<F> {
    let comps = (0..n)
        .map(|i| {
            let k = i.min(r);
            let mut h = MPoly::zero(f, n);
            for deg in 2..=d {
                h = h + random_homogeneous(f, rng, n, k, deg, 2);
            }
            if k > 0 {
                let mut e = vec![0u32; n];
                e[k - 1] = d;
                h = h + MPoly::from_terms(f, n, vec![(Monomial::new(e), random_nonzero(f, rng, 3))]);
            }
            MPoly::var(f, n, i) + h
        })
        .collect();
    PolyMap::new(f, n, comps).unwrap()
}

/// `T^{-1} F(T x)`.
pub fn conjugate<F: Field>(fmap: &PolyMap<F>, t: &Matrix<F>) -> PolyMap<F> {
    let t_inv = t.inverse().unwrap().unwrap();
    fmap.compose(&PolyMap::linear(t)).unwrap().left_mul(&t_inv).unwrap()
}

/// Columns of `a` and `b` span the same subspace.
pub fn same_span<F: Field>(a: &Matrix<F>, b: &Matrix<F>) -> bool {
    if a.rows() != b.rows() {
        return false;
    }
    let ra = a.rank();
    if ra != b.rank() {
        return false;
    }
    let cols: Vec<Vec<F::Elem>> = (0..a.cols())
        .map(|j| a.column(j))
        .chain((0..b.cols()).map(|j| b.column(j)))
        .collect();
    if cols.is_empty() {
        return true;
    }
    Matrix::from_columns(a.field(), a.rows(), &cols).unwrap().rank() == ra
}
