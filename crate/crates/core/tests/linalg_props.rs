mod common;

use common::{fp, matrix, q};
use kellerlab::{generalized_vandermonde, Field, Matrix};
use proptest::prelude::*;

fn entries(n: usize, m: usize) -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(prop_oneof![3 => Just(0i64), 5 => -4i64..=4], n * m)
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out
}

fn sign(p: &[usize]) -> i64 {
    let mut s = 1;
    for i in 0..p.len() {
        for j in i + 1..p.len() {
            if p[i] > p[j] {
                s = -s;
            }
        }
    }
    s
}

/// Permutation expansion.
fn leibniz_det<F: Field>(m: &Matrix<F>) -> F::Elem {
    let f = m.field();
    let mut acc = f.zero();
    for p in permutations(m.rows()) {
        let mut term = f.from_i64(sign(&p));
        for (i, &j) in p.iter().enumerate() {
            term = f.mul(&term, m.get(i, j));
        }
        acc = f.add(&acc, &term);
    }
    acc
}

fn kernel_checks<F: Field>(f: &F, rows: usize, cols: usize, raw: &[i64]) -> Result<(), TestCaseError> {
    let a = matrix(f, rows, cols, raw);
    let rank = a.rank();
    prop_assert_eq!(rank, a.transpose().rank());
    let k = a.kernel_basis();
    prop_assert_eq!(k.rows(), cols);
    prop_assert_eq!(k.cols(), cols - rank);
    prop_assert_eq!(k.rank(), k.cols());
    if k.cols() > 0 {
        prop_assert!(a.mul(&k).unwrap().is_zero());
    }
    Ok(())
}

proptest! {
    #[test]
    fn rank_nullity_q(rows in 1usize..5, cols in 1usize..5, raw in entries(4, 4)) {
        kernel_checks(&q(), rows, cols, &raw)?;
    }

    #[test]
    fn rank_nullity_f3(rows in 1usize..5, cols in 1usize..5, raw in entries(4, 4)) {
        kernel_checks(&fp(3), rows, cols, &raw)?;
    }

    #[test]
    fn det_matches_permutation_expansion(n in 1usize..5, raw in entries(4, 4), p in prop::sample::select(vec![0u64, 2, 5, 13])) {
        if p == 0 {
            let a = matrix(&q(), n, n, &raw);
            prop_assert_eq!(a.det().unwrap(), leibniz_det(&a));
        } else {
            let a = matrix(&fp(p), n, n, &raw);
            prop_assert_eq!(a.det().unwrap(), leibniz_det(&a));
        }
    }

    #[test]
    fn det_is_multiplicative(n in 1usize..5, a in entries(4, 4), b in entries(4, 4)) {
        let f = q();
        let (a, b) = (matrix(&f, n, n, &a), matrix(&f, n, n, &b));
        prop_assert_eq!(a.mul(&b).unwrap().det().unwrap(), f.mul(&a.det().unwrap(), &b.det().unwrap()));
    }

    #[test]
    fn inverse_iff_nonzero_det(n in 1usize..5, raw in entries(4, 4)) {
        let f = fp(7);
        let a = matrix(&f, n, n, &raw);
        match a.inverse().unwrap() {
            Some(inv) => {
                prop_assert!(!f.is_zero(&a.det().unwrap()));
                prop_assert_eq!(a.mul(&inv).unwrap(), Matrix::identity(&f, n));
            }
            None => prop_assert!(f.is_zero(&a.det().unwrap())),
        }
    }

    #[test]
    fn complete_to_basis_invariants(n in 1usize..5, k in 0usize..4, raw in entries(4, 4)) {
        let f = q();
        let k = k.min(n);
        let v = matrix(&f, n, k, &raw);
        match v.complete_to_basis() {
            Ok(t) => {
                prop_assert_eq!(v.rank(), k);
                prop_assert_eq!(t.rank(), n);
                prop_assert_eq!(t.submatrix(0..n, n - k..n), v);
            }
            Err(kellerlab::Error::DependentInput) => prop_assert!(v.rank() < k),
            Err(e) => return Err(TestCaseError::fail(e.to_string())),
        }
    }

    #[test]
    fn vandermonde_det_is_product_of_differences(pts in prop::collection::vec(-6i64..=6, 1..5)) {
        let f = q();
        let r = pts.len();
        let points: Vec<_> = pts.iter().map(|&v| f.from_i64(v)).collect();
        let degrees: Vec<u32> = (0..r as u32).collect();
        let v = generalized_vandermonde(&f, &points, &degrees);
        let mut expected = f.one();
        for i in 0..r {
            for j in i + 1..r {
                expected = f.mul(&expected, &f.from_i64(pts[j] - pts[i]));
            }
        }
        prop_assert_eq!(v.det().unwrap(), expected);
    }

    #[test]
    fn generalized_vandermonde_entries(pts in prop::collection::vec(0u64..7, 1..4), degs in prop::collection::vec(0u32..9, 1..4)) {
        let f = fp(7);
        let v = generalized_vandermonde(&f, &pts, &degs);
        prop_assert_eq!((v.rows(), v.cols()), (degs.len(), pts.len()));
        for (i, &d) in degs.iter().enumerate() {
            for (j, &a) in pts.iter().enumerate() {
                let mut expected = 1u64;
                for _ in 0..d {
                    expected = expected * a % 7;
                }
                prop_assert_eq!(*v.get(i, j), expected);
            }
        }
    }
}
