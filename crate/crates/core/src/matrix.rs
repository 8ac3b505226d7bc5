//! Dense exact linear algebra over a [`Field`].

use std::fmt;

use crate::error::{Error, Result};
use crate::field::Field;

/// Row-major dense matrix over `F`.
#[derive(Clone, PartialEq, Eq)]
pub struct Matrix<F: Field> {
    field: F,
    rows: usize,
    cols: usize,
    entries: Vec<F::Elem>,
}

impl<F: Field> fmt::Debug for Matrix<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<Vec<String>> = (0..self.rows)
            .map(|i| self.row(i).iter().map(|e| self.field.render(e)).collect())
            .collect();
        write!(f, "Matrix[{}]{:?}", self.field.desc(), rows)
    }
}

impl<F: Field> Matrix<F> {
    pub fn zeros(field: &F, rows: usize, cols: usize) -> Self {
        Matrix {
            field: field.clone(),
            rows,
            cols,
            entries: vec![field.zero(); rows * cols],
        }
    }

    pub fn identity(field: &F, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    pub fn from_rows(field: &F, rows: Vec<Vec<F::Elem>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut entries = Vec::with_capacity(r * c);
        for row in rows {
            if row.len() != c {
                return Err(Error::ArityMismatch {
                    expected: c,
                    found: row.len(),
                });
            }
            entries.extend(row);
        }
        Ok(Matrix {
            field: field.clone(),
            rows: r,
            cols: c,
            entries,
        })
    }

    /// Convenience constructor from small integers.
    pub fn from_i64(field: &F, rows: &[&[i64]]) -> Result<Self> {
        Self::from_rows(
            field,
            rows.iter()
                .map(|r| r.iter().map(|&v| field.from_i64(v)).collect())
                .collect(),
        )
    }

    /// Builds an `n x k` matrix whose columns are the given vectors.
    pub fn from_columns(field: &F, n: usize, columns: &[Vec<F::Elem>]) -> Result<Self> {
        let mut m = Self::zeros(field, n, columns.len());
        for (j, col) in columns.iter().enumerate() {
            if col.len() != n {
                return Err(Error::ArityMismatch {
                    expected: n,
                    found: col.len(),
                });
            }
            for (i, v) in col.iter().enumerate() {
                m.set(i, j, v.clone());
            }
        }
        Ok(m)
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &F::Elem {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: F::Elem) {
        self.entries[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[F::Elem] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<F::Elem> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| self.field.is_zero(e))
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(&self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.field.same_as(&other.field)?;
        if self.cols != other.rows {
            return Err(Error::ArityMismatch {
                expected: self.cols,
                found: other.rows,
            });
        }
        let f = &self.field;
        let mut out = Self::zeros(f, self.rows, other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = f.zero();
                for k in 0..self.cols {
                    acc = f.add(&acc, &f.mul(self.get(i, k), other.get(k, j)));
                }
                out.set(i, j, acc);
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[F::Elem]) -> Result<Vec<F::Elem>> {
        if v.len() != self.cols {
            return Err(Error::ArityMismatch {
                expected: self.cols,
                found: v.len(),
            });
        }
        let f = &self.field;
        Ok((0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(f.zero(), |acc, (a, b)| f.add(&acc, &f.mul(a, b)))
            })
            .collect())
    }

    /// Sub-block of the given rows and columns (half-open ranges).
    pub fn submatrix(&self, rows: std::ops::Range<usize>, cols: std::ops::Range<usize>) -> Self {
        let mut m = Self::zeros(&self.field, rows.len(), cols.len());
        for (i, r) in rows.clone().enumerate() {
            for (j, c) in cols.clone().enumerate() {
                m.set(i, j, self.get(r, c).clone());
            }
        }
        m
    }

    /// Reduced row echelon form and the pivot column of each nonzero row.
    pub fn rref(&self) -> (Self, Vec<usize>) {
        let f = &self.field;
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..self.cols {
            if row == self.rows {
                break;
            }
            let Some(p) = (row..self.rows).find(|&i| !f.is_zero(m.get(i, col))) else {
                continue;
            };
            m.swap_rows(row, p);
            let inv = f.inv(m.get(row, col)).expect("pivot is nonzero");
            for j in col..self.cols {
                let v = f.mul(m.get(row, j), &inv);
                m.set(row, j, v);
            }
            for i in 0..self.rows {
                if i == row || f.is_zero(m.get(i, col)) {
                    continue;
                }
                let factor = m.get(i, col).clone();
                for j in col..self.cols {
                    let v = f.sub(m.get(i, j), &f.mul(&factor, m.get(row, j)));
                    m.set(i, j, v);
                }
            }
            pivots.push(col);
            row += 1;
        }
        (m, pivots)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.entries.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Columns form the canonical basis of the right kernel: one column per
    /// free variable of the RREF, with that variable set to 1 and the other
    /// free variables set to 0.
    pub fn kernel_basis(&self) -> Self {
        let f = &self.field;
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut k = Self::zeros(f, self.cols, free.len());
        for (j, &fc) in free.iter().enumerate() {
            k.set(fc, j, f.one());
            for (i, &pc) in pivots.iter().enumerate() {
                k.set(pc, j, f.neg(r.get(i, fc)));
            }
        }
        k
    }

    /// Determinant by Gaussian elimination; exact since every division is
    /// by a nonzero field element.
    pub fn det(&self) -> Result<F::Elem> {
        if !self.is_square() {
            return Err(Error::NonSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let f = &self.field;
        let n = self.rows;
        let mut m = self.clone();
        let mut det = f.one();
        for col in 0..n {
            let Some(p) = (col..n).find(|&i| !f.is_zero(m.get(i, col))) else {
                return Ok(f.zero());
            };
            if p != col {
                m.swap_rows(p, col);
                det = f.neg(&det);
            }
            let pivot = m.get(col, col).clone();
            det = f.mul(&det, &pivot);
            let inv = f.inv(&pivot).expect("pivot is nonzero");
            for i in col + 1..n {
                if f.is_zero(m.get(i, col)) {
                    continue;
                }
                let factor = f.mul(m.get(i, col), &inv);
                for j in col..n {
                    let v = f.sub(m.get(i, j), &f.mul(&factor, m.get(col, j)));
                    m.set(i, j, v);
                }
            }
        }
        Ok(det)
    }

    /// Inverse by Gauss-Jordan; `None` when singular.
    pub fn inverse(&self) -> Result<Option<Self>> {
        if !self.is_square() {
            return Err(Error::NonSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let n = self.rows;
        let mut aug = Self::zeros(&self.field, n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, n + i, self.field.one());
        }
        let (r, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return Ok(None);
        }
        Ok(Some(r.submatrix(0..n, n..2 * n)))
    }

    /// Completes the independent columns of `self` (an `n x k` matrix) to an
    /// invertible `n x n` matrix whose last `k` columns are `self` verbatim.
    /// The prepended columns are the first standard unit vectors `e_i`, in
    /// index order, that keep the set independent.
    pub fn complete_to_basis(&self) -> Result<Self> {
        let f = &self.field;
        let n = self.rows;
        if self.rank() < self.cols {
            return Err(Error::DependentInput);
        }
        let given: Vec<Vec<F::Elem>> = (0..self.cols).map(|j| self.column(j)).collect();
        let mut chosen: Vec<Vec<F::Elem>> = Vec::new();
        for i in 0..n {
            if chosen.len() + given.len() == n {
                break;
            }
            let mut e = vec![f.zero(); n];
            e[i] = f.one();
            let mut trial: Vec<Vec<F::Elem>> = chosen.clone();
            trial.push(e.clone());
            trial.extend(given.iter().cloned());
            if Self::from_columns(f, n, &trial)?.rank() == trial.len() {
                chosen.push(e);
            }
        }
        chosen.extend(given);
        Self::from_columns(f, n, &chosen)
    }
}

/// `s x r` matrix with entry `(i, j) = points[j]^degrees[i]`, and `0^0 = 1`.
pub fn generalized_vandermonde<F: Field>(field: &F, points: &[F::Elem], degrees: &[u32]) -> Matrix<F> {
    let mut m = Matrix::zeros(field, degrees.len(), points.len());
    for (i, &d) in degrees.iter().enumerate() {
        for (j, a) in points.iter().enumerate() {
            m.set(i, j, field.pow(a, u64::from(d)));
        }
    }
    m
}
