//! Polynomial maps `K^n -> K^m` and their Jacobians.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::matrix::Matrix;
use crate::mpoly::{parse, MPoly};

/// `F = (F_1, ..., F_m)` with every component in `K[x_1, ..., x_n]`.
#[derive(Clone, PartialEq, Eq)]
pub struct PolyMap<F: Field> {
    field: F,
    nvars: usize,
    components: Vec<MPoly<F>>,
}

impl<F: Field> fmt::Debug for PolyMap<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c: Vec<String> = self.components.iter().map(MPoly::render).collect();
        write!(f, "PolyMap[{}; {}]{:?}", self.field.desc(), self.nvars, c)
    }
}

impl<F: Field> PolyMap<F> {
    pub fn new(field: &F, nvars: usize, components: Vec<MPoly<F>>) -> Result<Self> {
        for c in &components {
            field.same_as(c.field())?;
            if c.nvars() != nvars {
                return Err(Error::ArityMismatch {
                    expected: nvars,
                    found: c.nvars(),
                });
            }
        }
        Ok(PolyMap {
            field: field.clone(),
            nvars,
            components,
        })
    }

    pub fn parse(field: &F, nvars: usize, polys: &[&str]) -> Result<Self> {
        let comps = polys
            .iter()
            .map(|s| parse(s, nvars, field))
            .collect::<Result<Vec<_>>>()?;
        Self::new(field, nvars, comps)
    }

    pub fn identity(field: &F, n: usize) -> Self {
        PolyMap {
            field: field.clone(),
            nvars: n,
            components: (0..n).map(|i| MPoly::var(field, n, i)).collect(),
        }
    }

    pub fn zero(field: &F, n: usize, m: usize) -> Self {
        PolyMap {
            field: field.clone(),
            nvars: n,
            components: vec![MPoly::zero(field, n); m],
        }
    }

    /// The linear map `x -> A x`.
    pub fn linear(a: &Matrix<F>) -> Self {
        let f = a.field();
        let n = a.cols();
        let components = (0..a.rows()).map(|i| linear_form(f, a.row(i))).collect();
        PolyMap {
            field: f.clone(),
            nvars: n,
            components,
        }
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    /// Source dimension.
    pub fn n(&self) -> usize {
        self.nvars
    }

    /// Target dimension.
    pub fn m(&self) -> usize {
        self.components.len()
    }

    pub fn components(&self) -> &[MPoly<F>] {
        &self.components
    }

    pub fn component(&self, i: usize) -> &MPoly<F> {
        &self.components[i]
    }

    pub fn into_components(self) -> Vec<MPoly<F>> {
        self.components
    }

    /// Largest component degree; the zero map has degree 0.
    pub fn degree(&self) -> u32 {
        self.components.iter().map(MPoly::degree).max().unwrap_or(0)
    }

    pub fn is_identity(&self) -> bool {
        self.m() == self.n() && *self == Self::identity(&self.field, self.nvars)
    }

    pub fn render(&self) -> Vec<String> {
        self.components.iter().map(MPoly::render).collect()
    }

    fn require_square(&self) -> Result<()> {
        if self.m() != self.n() {
            return Err(Error::NonSquare {
                rows: self.m(),
                cols: self.n(),
            });
        }
        Ok(())
    }

    fn check_same_shape(&self, other: &Self) -> Result<()> {
        self.field.same_as(&other.field)?;
        if self.nvars != other.nvars || self.m() != other.m() {
            return Err(Error::ArityMismatch {
                expected: self.m(),
                found: other.m(),
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_same_shape(other)?;
        let components = self
            .components
            .iter()
            .zip(&other.components)
            .map(|(a, b)| a + b)
            .collect();
        Self::new(&self.field, self.nvars, components)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_same_shape(other)?;
        let components = self
            .components
            .iter()
            .zip(&other.components)
            .map(|(a, b)| a - b)
            .collect();
        Self::new(&self.field, self.nvars, components)
    }

    /// `x -> M F(x)` for an `k x m` matrix `M`.
    pub fn left_mul(&self, mat: &Matrix<F>) -> Result<Self> {
        self.field.same_as(mat.field())?;
        if mat.cols() != self.m() {
            return Err(Error::ArityMismatch {
                expected: mat.cols(),
                found: self.m(),
            });
        }
        let f = &self.field;
        let components = (0..mat.rows())
            .map(|i| {
                let mut acc = MPoly::zero(f, self.nvars);
                for (j, c) in mat.row(i).iter().enumerate() {
                    if !f.is_zero(c) {
                        acc = &acc + &self.components[j].scale(c);
                    }
                }
                acc
            })
            .collect();
        Self::new(f, self.nvars, components)
    }

    /// `F ∘ G`, i.e. `x -> F(G(x))`.
    pub fn compose(&self, g: &Self) -> Result<Self> {
        self.field.same_as(&g.field)?;
        if g.m() != self.n() {
            return Err(Error::ArityMismatch {
                expected: self.n(),
                found: g.m(),
            });
        }
        let components = self
            .components
            .iter()
            .map(|c| c.substitute_into(&g.components, g.nvars))
            .collect::<Result<Vec<_>>>()?;
        Self::new(&self.field, g.nvars, components)
    }

    /// `F ∘ G` with every component truncated above `max_deg`.
    pub fn compose_truncated(&self, g: &Self, max_deg: u32) -> Result<Self> {
        if g.m() != self.n() {
            return Err(Error::ArityMismatch {
                expected: self.n(),
                found: g.m(),
            });
        }
        let components = self
            .components
            .iter()
            .map(|c| {
                if g.components.is_empty() {
                    c.substitute_into(&g.components, g.nvars).map(|p| p.truncate(max_deg))
                } else {
                    c.substitute_truncated(&g.components, max_deg)
                }
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(&self.field, g.nvars, components)
    }

    pub fn truncate(&self, max_deg: u32) -> Self {
        PolyMap {
            field: self.field.clone(),
            nvars: self.nvars,
            components: self.components.iter().map(|c| c.truncate(max_deg)).collect(),
        }
    }

    pub fn evaluate(&self, point: &[F::Elem]) -> Result<Vec<F::Elem>> {
        if point.len() != self.nvars {
            return Err(Error::ArityMismatch {
                expected: self.nvars,
                found: point.len(),
            });
        }
        Ok(self.components.iter().map(|c| c.eval_unchecked(point)).collect())
    }

    pub fn jacobian(&self) -> PolyMatrix<F> {
        let entries = self
            .components
            .iter()
            .map(|c| {
                (0..self.nvars)
                    .map(|j| c.derivative(j).expect("index in range"))
                    .collect()
            })
            .collect();
        PolyMatrix {
            field: self.field.clone(),
            nvars: self.nvars,
            cols: self.nvars,
            entries,
        }
    }

    pub fn det_jacobian(&self) -> Result<MPoly<F>> {
        self.require_square()?;
        self.jacobian().det()
    }

    /// True iff the Jacobian determinant is a nonzero constant.
    pub fn keller_check(&self) -> Result<bool> {
        let d = self.det_jacobian()?;
        Ok(!d.is_zero() && d.is_constant())
    }

    /// Splits `F` into homogeneous parts `F^(k)`.
    pub fn homogeneous_decomposition(&self) -> HomogeneousDecomposition<F> {
        let support: BTreeSet<u32> = self.components.iter().flat_map(MPoly::degree_support).collect();
        let parts = support
            .iter()
            .map(|&k| {
                let comps = self.components.iter().map(|c| c.homogeneous_component(k)).collect();
                (
                    k,
                    PolyMap {
                        field: self.field.clone(),
                        nvars: self.nvars,
                        components: comps,
                    },
                )
            })
            .collect();
        HomogeneousDecomposition { parts, support }
    }

    /// Re-embeds every component into `nvars` variables.
    pub fn with_nvars(&self, nvars: usize) -> Result<Self> {
        let components = self
            .components
            .iter()
            .map(|c| c.with_nvars(nvars))
            .collect::<Result<Vec<_>>>()?;
        Self::new(&self.field, nvars, components)
    }

    /// The map `x -> F(x + shift)`.
    pub fn translate(&self, shift: &[F::Elem]) -> Result<Self> {
        if shift.len() != self.nvars {
            return Err(Error::ArityMismatch {
                expected: self.nvars,
                found: shift.len(),
            });
        }
        let f = &self.field;
        let g = PolyMap {
            field: f.clone(),
            nvars: self.nvars,
            components: shift
                .iter()
                .enumerate()
                .map(|(i, s)| &MPoly::var(f, self.nvars, i) + &MPoly::constant(f, self.nvars, s.clone()))
                .collect(),
        };
        self.compose(&g)
    }
}

fn linear_form<F: Field>(f: &F, coeffs: &[F::Elem]) -> MPoly<F> {
    let n = coeffs.len();
    let mut p = MPoly::zero(f, n);
    for (j, c) in coeffs.iter().enumerate() {
        p.add_term(crate::mpoly::Monomial::var(n, j), c.clone());
    }
    p
}

/// The map `(Ax)^{*d}`: component `i` is the `d`-th power of row `i` of `A x`.
pub fn hadamard_power<F: Field>(a: &Matrix<F>, d: u32) -> Result<PolyMap<F>> {
    if !a.is_square() {
        return Err(Error::NonSquare {
            rows: a.rows(),
            cols: a.cols(),
        });
    }
    let f = a.field();
    let components = (0..a.rows()).map(|i| linear_form(f, a.row(i)).pow(d)).collect();
    PolyMap::new(f, a.cols(), components)
}

/// The power linear map `x + (Ax)^{*d}`.
pub fn power_linear<F: Field>(a: &Matrix<F>, d: u32) -> Result<PolyMap<F>> {
    let h = hadamard_power(a, d)?;
    PolyMap::identity(a.field(), a.cols()).add(&h)
}

/// Checks Euler's identity `sum_j x_j dh/dx_j = d h` for a homogeneous `h`.
pub fn euler_check<F: Field>(h: &MPoly<F>, d: u32) -> Result<bool> {
    let support = h.degree_support();
    if support.len() > 1 || support.iter().any(|&k| k != d) {
        return Err(Error::NotHomogeneous(d));
    }
    let f = h.field();
    let n = h.nvars();
    let mut lhs = MPoly::zero(f, n);
    for j in 0..n {
        lhs = &lhs + &(&MPoly::var(f, n, j) * &h.derivative(j)?);
    }
    Ok(lhs == h.scale(&f.from_i64(i64::from(d))))
}

/// `F = sum_k F^(k)` together with the set of degrees that occur.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomogeneousDecomposition<F: Field> {
    pub parts: BTreeMap<u32, PolyMap<F>>,
    pub support: BTreeSet<u32>,
}

/// A matrix with polynomial entries, e.g. a Jacobian.
#[derive(Clone, PartialEq, Eq)]
pub struct PolyMatrix<F: Field> {
    field: F,
    nvars: usize,
    cols: usize,
    entries: Vec<Vec<MPoly<F>>>,
}

impl<F: Field> fmt::Debug for PolyMatrix<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PolyMatrix{:?}", self.render())
    }
}

/// Below this size determinants use cofactor expansion, above it Bareiss.
const COFACTOR_LIMIT: usize = 5;

impl<F: Field> PolyMatrix<F> {
    pub fn new(field: &F, nvars: usize, entries: Vec<Vec<MPoly<F>>>) -> Result<Self> {
        let cols = entries.first().map_or(0, Vec::len);
        for row in &entries {
            if row.len() != cols {
                return Err(Error::ArityMismatch {
                    expected: cols,
                    found: row.len(),
                });
            }
            for e in row {
                field.same_as(e.field())?;
                if e.nvars() != nvars {
                    return Err(Error::ArityMismatch {
                        expected: nvars,
                        found: e.nvars(),
                    });
                }
            }
        }
        Ok(PolyMatrix {
            field: field.clone(),
            nvars,
            cols,
            entries,
        })
    }

    /// Constant matrix embedded as polynomials in `nvars` variables.
    pub fn from_matrix(m: &Matrix<F>, nvars: usize) -> Self {
        let f = m.field();
        let entries = (0..m.rows())
            .map(|i| m.row(i).iter().map(|c| MPoly::constant(f, nvars, c.clone())).collect())
            .collect();
        PolyMatrix {
            field: f.clone(),
            nvars,
            cols: m.cols(),
            entries,
        }
    }

    pub fn diagonal(field: &F, nvars: usize, diag: Vec<MPoly<F>>) -> Self {
        let n = diag.len();
        let mut entries = vec![vec![MPoly::zero(field, nvars); n]; n];
        for (i, d) in diag.into_iter().enumerate() {
            entries[i][i] = d;
        }
        PolyMatrix {
            field: field.clone(),
            nvars,
            cols: n,
            entries,
        }
    }

    pub fn rows(&self) -> usize {
        self.entries.len()
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &MPoly<F> {
        &self.entries[i][j]
    }

    pub fn render(&self) -> Vec<Vec<String>> {
        self.entries
            .iter()
            .map(|r| r.iter().map(MPoly::render).collect())
            .collect()
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows() {
            return Err(Error::ArityMismatch {
                expected: self.cols,
                found: other.rows(),
            });
        }
        let entries = (0..self.rows())
            .map(|i| {
                (0..other.cols)
                    .map(|j| {
                        (0..self.cols).fold(MPoly::zero(&self.field, self.nvars), |acc, k| {
                            &acc + &(&self.entries[i][k] * &other.entries[k][j])
                        })
                    })
                    .collect()
            })
            .collect();
        Self::new(&self.field, self.nvars, entries)
    }

    pub fn scale(&self, c: &F::Elem) -> Self {
        PolyMatrix {
            field: self.field.clone(),
            nvars: self.nvars,
            cols: self.cols,
            entries: self
                .entries
                .iter()
                .map(|r| r.iter().map(|e| e.scale(c)).collect())
                .collect(),
        }
    }

    /// Substitutes the map `g` into every entry.
    pub fn substitute(&self, g: &PolyMap<F>) -> Result<Self> {
        let entries = self
            .entries
            .iter()
            .map(|r| {
                r.iter()
                    .map(|e| e.substitute_into(g.components(), g.n()))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(&self.field, g.n(), entries)
    }

    /// Evaluates every entry at `point`.
    pub fn evaluate(&self, point: &[F::Elem]) -> Result<Matrix<F>> {
        let rows = self
            .entries
            .iter()
            .map(|r| r.iter().map(|e| e.evaluate(point)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        let mut m = Matrix::zeros(&self.field, self.rows(), self.cols);
        for (i, r) in rows.into_iter().enumerate() {
            for (j, v) in r.into_iter().enumerate() {
                m.set(i, j, v);
            }
        }
        Ok(m)
    }

    /// True iff column `j` is identically zero.
    pub fn column_is_zero(&self, j: usize) -> bool {
        self.entries.iter().all(|r| r[j].is_zero())
    }

    pub fn det(&self) -> Result<MPoly<F>> {
        if self.rows() != self.cols {
            return Err(Error::NonSquare {
                rows: self.rows(),
                cols: self.cols,
            });
        }
        if self.cols < COFACTOR_LIMIT {
            Ok(self.det_cofactor())
        } else {
            Ok(self.det_bareiss())
        }
    }

    pub(crate) fn det_cofactor(&self) -> MPoly<F> {
        let rows: Vec<usize> = (0..self.rows()).collect();
        let cols: Vec<usize> = (0..self.cols).collect();
        self.minor(&rows, &cols)
    }

    fn minor(&self, rows: &[usize], cols: &[usize]) -> MPoly<F> {
        match rows.len() {
            0 => MPoly::one(&self.field, self.nvars),
            1 => self.entries[rows[0]][cols[0]].clone(),
            _ => {
                let mut acc = MPoly::zero(&self.field, self.nvars);
                let r0 = rows[0];
                for (k, &c) in cols.iter().enumerate() {
                    let e = &self.entries[r0][c];
                    if e.is_zero() {
                        continue;
                    }
                    let rest_cols: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
                    let term = e * &self.minor(&rows[1..], &rest_cols);
                    acc = if k % 2 == 0 { &acc + &term } else { &acc - &term };
                }
                acc
            }
        }
    }

    /// Fraction-free Bareiss elimination; each division is exact.
    pub(crate) fn det_bareiss(&self) -> MPoly<F> {
        let n = self.cols;
        let f = &self.field;
        if n == 0 {
            return MPoly::one(f, self.nvars);
        }
        let mut m = self.entries.clone();
        let mut prev = MPoly::one(f, self.nvars);
        let mut negate = false;
        for k in 0..n - 1 {
            if m[k][k].is_zero() {
                let Some(p) = (k + 1..n).find(|&i| !m[i][k].is_zero()) else {
                    return MPoly::zero(f, self.nvars);
                };
                m.swap(k, p);
                negate = !negate;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = &(&m[k][k] * &m[i][j]) - &(&m[i][k] * &m[k][j]);
                    m[i][j] = num.div_exact(&prev).expect("Bareiss division is exact");
                }
            }
            prev = m[k][k].clone();
        }
        let d = m[n - 1][n - 1].clone();
        if negate {
            -d
        } else {
            d
        }
    }
}
