//! Linear conjugation by the constant kernel of `jac H` and the degree
//! bound `d^r` for inverses of `x + H`.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::inversion::{formal_inverse, gabber_bound, nonlinear_part, normalize_affine};
use crate::matrix::Matrix;
use crate::mpoly::{MPoly, Monomial};
use crate::polymap::PolyMap;

/// Columns span `{v in K^n : (jac H) v = 0}` as a polynomial identity.
///
/// Each pair (component `i`, monomial `m`) contributes the linear
/// constraint `sum_j coeff(dH_i/dx_j, m) v_j = 0`.
pub fn constant_kernel<F: Field>(h: &PolyMap<F>) -> Result<Matrix<F>> {
    if h.m() != h.n() {
        return Err(Error::NonSquare {
            rows: h.m(),
            cols: h.n(),
        });
    }
    let f = h.field();
    let n = h.n();
    let mut constraints: BTreeMap<(usize, Monomial), Vec<F::Elem>> = BTreeMap::new();
    for (i, hi) in h.components().iter().enumerate() {
        for j in 0..n {
            for (m, c) in hi.derivative(j)?.terms() {
                constraints.entry((i, m.clone())).or_insert_with(|| vec![f.zero(); n])[j] = c.clone();
            }
        }
    }
    let rows: Vec<Vec<F::Elem>> = constraints.into_values().collect();
    let system = if rows.is_empty() {
        Matrix::zeros(f, 0, n)
    } else {
        Matrix::from_rows(f, rows)?
    };
    Ok(system.kernel_basis())
}

/// `G = T^{-1} F(T x)` with the constant kernel of `jac(F - x)` moved onto
/// the last `n - r` coordinates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KernelReduction<F: Field> {
    pub t: Matrix<F>,
    pub t_inv: Matrix<F>,
    pub r: usize,
    pub conjugated: PolyMap<F>,
}

pub fn kernel_conjugate<F: Field>(fmap: &PolyMap<F>) -> Result<KernelReduction<F>> {
    let h = nonlinear_part(fmap)?;
    let n = fmap.n();
    let kernel = constant_kernel(&h)?;
    let r = n - kernel.cols();
    let t = kernel.complete_to_basis()?;
    let t_inv = t
        .inverse()?
        .ok_or_else(|| Error::TheoremViolation("basis completion is singular".into()))?;
    let conjugated = fmap.compose(&PolyMap::linear(&t))?.left_mul(&t_inv)?;
    let jac = nonlinear_part(&conjugated)?.jacobian();
    if let Some(j) = (r..n).find(|&j| !jac.column_is_zero(j)) {
        return Err(Error::TheoremViolation(format!(
            "column {} of jac(G - x) is nonzero after conjugation",
            j + 1
        )));
    }
    Ok(KernelReduction {
        t,
        t_inv,
        r,
        conjugated,
    })
}

/// The `r`-dimensional map `B F(C x~)`, where `B` is the first `r` rows of
/// `T^{-1}` and `C` the first `r` columns of `T`.
pub fn pair_reduction<F: Field>(fmap: &PolyMap<F>, red: &KernelReduction<F>) -> Result<PolyMap<F>> {
    let f = fmap.field();
    let n = fmap.n();
    let r = red.r;
    let b = red.t_inv.submatrix(0..r, 0..n);
    let c = red.t.submatrix(0..n, 0..r);
    if b.mul(&c)? != Matrix::identity(f, r) {
        return Err(Error::InconsistentReduction);
    }
    let paired = fmap.compose(&PolyMap::linear(&c))?.left_mul(&b)?;
    // leading r components of G with x_{r+1}, ..., x_n set to 0
    let restrict: Vec<MPoly<F>> = (0..n)
        .map(|i| if i < r { MPoly::var(f, r, i) } else { MPoly::zero(f, r) })
        .collect();
    let lead = red.conjugated.components()[..r]
        .iter()
        .map(|g| g.substitute_into(&restrict, r))
        .collect::<Result<Vec<_>>>()?;
    if paired.components() != lead.as_slice() {
        return Err(Error::InconsistentReduction);
    }
    Ok(paired)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegreeBoundReport {
    pub n: usize,
    pub d: u32,
    pub r: usize,
    /// `d^r`
    pub bound: u32,
    /// `d^(n-1)`
    pub gabber_bound: u32,
    pub actual_inverse_degree: Option<u32>,
    pub satisfied: bool,
    /// The inverse was found only after raising the bound to `d^(n-1)`.
    pub escalated: bool,
    /// False in positive characteristic, where `d^r` is not a theorem.
    pub bound_asserted: bool,
}

fn saturating_bound(d: u32, r: usize) -> u32 {
    u64::from(d).saturating_pow(r as u32).clamp(1, 1 << 16) as u32
}

/// Computes `r` from the constant kernel, inverts within `d^r`, and falls
/// back to `d^(n-1)` only if that fails. Over `Q` a map that needs the
/// fallback contradicts the `d^r` bound and is reported as
/// [`Error::TheoremViolation`].
pub fn degree_bound_report<F: Field>(fmap: &PolyMap<F>) -> Result<DegreeBoundReport> {
    let core = normalize_affine(fmap)?.core;
    let n = core.n();
    let d = core.degree().max(1);
    let kernel = constant_kernel(&nonlinear_part(&core)?)?;
    let r = n - kernel.cols();
    let bound = saturating_bound(d, r);
    let gabber = gabber_bound(d, n);
    let bound_asserted = fmap.field().characteristic() == 0;

    let mut escalated = false;
    let mut actual = formal_inverse(&core, Some(bound))?.inverse_degree;
    if actual.is_none() && gabber > bound {
        actual = formal_inverse(&core, Some(gabber))?.inverse_degree;
        escalated = actual.is_some();
    }
    if escalated && bound_asserted {
        return Err(Error::TheoremViolation(format!(
            "inverse degree {} exceeds d^r = {bound} (n = {n}, d = {d}, r = {r})",
            actual.unwrap()
        )));
    }
    Ok(DegreeBoundReport {
        n,
        d,
        r,
        bound,
        gabber_bound: gabber,
        actual_inverse_degree: actual,
        satisfied: actual.is_some_and(|a| a <= bound),
        escalated,
        bound_asserted,
    })
}
