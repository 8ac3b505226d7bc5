//! Polynomial inverses of maps `x + H`.
//!
//! The formal inverse of `F = x + H` with `ord(H) >= 2` is `x - G` where `G`
//! solves `G = H(x - G)`. Iterating that identity from `G = 0` with total
//! degree truncation gains one correct degree per step, so the truncated
//! series settles after at most `bound + 1` rounds. A candidate counts as a
//! polynomial inverse only after an exact, untruncated two-sided composition
//! check.

use crate::error::{Error, Result};
use crate::field::Field;
use crate::matrix::Matrix;
use crate::mpoly::{MPoly, Monomial};
use crate::polymap::{power_linear, PolyMap};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    PolynomialInverse,
    NotPolynomialUpToBound,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InverseResult<F: Field> {
    pub verdict: Verdict,
    /// The candidate `x - G`; a verified inverse when the verdict says so.
    pub inverse: PolyMap<F>,
    /// Degree of the inverse, present only for `PolynomialInverse`.
    pub inverse_degree: Option<u32>,
    pub bound_used: u32,
}

impl<F: Field> InverseResult<F> {
    pub fn is_invertible(&self) -> bool {
        self.verdict == Verdict::PolynomialInverse
    }
}

/// `F = L core + c` with `core - x` of order at least 2.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AffineNormalization<F: Field> {
    pub linear: Matrix<F>,
    pub constant: Vec<F::Elem>,
    pub core: PolyMap<F>,
}

impl<F: Field> AffineNormalization<F> {
    /// Recomputes `L core + c`.
    pub fn reconstruct(&self) -> Result<PolyMap<F>> {
        let f = self.core.field();
        let n = self.core.n();
        let lin = self.core.left_mul(&self.linear)?;
        let c = PolyMap::new(
            f,
            n,
            self.constant.iter().map(|v| MPoly::constant(f, n, v.clone())).collect(),
        )?;
        lin.add(&c)
    }
}

/// Largest degree accepted as an inversion bound.
const MAX_BOUND: u64 = 1 << 16;

/// `max(1, d^(n-1))`, the a-priori bound on the degree of an inverse.
pub fn gabber_bound(d: u32, n: usize) -> u32 {
    let b = (u64::from(d.max(1))).saturating_pow(n.saturating_sub(1) as u32);
    b.clamp(1, MAX_BOUND) as u32
}

fn linear_coefficients<F: Field>(fmap: &PolyMap<F>) -> Matrix<F> {
    let f = fmap.field();
    let n = fmap.n();
    let mut l = Matrix::zeros(f, fmap.m(), n);
    for (i, c) in fmap.components().iter().enumerate() {
        for j in 0..n {
            l.set(i, j, c.coeff(&Monomial::var(n, j)));
        }
    }
    l
}

pub fn normalize_affine<F: Field>(fmap: &PolyMap<F>) -> Result<AffineNormalization<F>> {
    if fmap.m() != fmap.n() {
        return Err(Error::NonSquare {
            rows: fmap.m(),
            cols: fmap.n(),
        });
    }
    let f = fmap.field();
    let n = fmap.n();
    let constant: Vec<F::Elem> = fmap.components().iter().map(MPoly::constant_term).collect();
    let linear = linear_coefficients(fmap);
    let linv = linear.inverse()?.ok_or(Error::SingularLinearPart)?;
    let shifted = PolyMap::new(
        f,
        n,
        fmap.components()
            .iter()
            .zip(&constant)
            .map(|(p, c)| p - &MPoly::constant(f, n, c.clone()))
            .collect(),
    )?;
    let core = shifted.left_mul(&linv)?;
    Ok(AffineNormalization { linear, constant, core })
}

/// True iff `F = x + H` with `H` free of constant and linear terms.
pub fn is_normalized<F: Field>(fmap: &PolyMap<F>) -> bool {
    fmap.m() == fmap.n()
        && fmap
            .components()
            .iter()
            .all(|c| c.constant_term() == fmap.field().zero())
        && linear_coefficients(fmap) == Matrix::identity(fmap.field(), fmap.n())
}

/// `H = F - x`.
pub fn nonlinear_part<F: Field>(fmap: &PolyMap<F>) -> Result<PolyMap<F>> {
    fmap.sub(&PolyMap::identity(fmap.field(), fmap.n()))
}

/// Exact two-sided check `F ∘ G = G ∘ F = x`.
pub fn verify_inverse<F: Field>(fmap: &PolyMap<F>, g: &PolyMap<F>) -> Result<bool> {
    let n = fmap.n();
    for map in [fmap, g] {
        if map.m() != map.n() {
            return Err(Error::NonSquare {
                rows: map.m(),
                cols: map.n(),
            });
        }
    }
    if g.n() != n {
        return Err(Error::ArityMismatch {
            expected: n,
            found: g.n(),
        });
    }
    Ok(fmap.compose(g)?.is_identity() && g.compose(fmap)?.is_identity())
}

/// Fixpoint inversion of a normalized `F = x + H`, truncated at `max_deg`
/// (default [`gabber_bound`] of `deg F` and `n`).
///
/// The inverse is `x - G` with `G = H(x - G)`. Since `ord H >= 2`, one
/// step of `G <- H(x - G)` truncated at degree `k` fixes the homogeneous
/// part of degree `k`, so the iterates only ever hold terms of the true
/// series. Whenever a step adds nothing the candidate is checked exactly.
pub fn formal_inverse<F: Field>(fmap: &PolyMap<F>, max_deg: Option<u32>) -> Result<InverseResult<F>> {
    if !is_normalized(fmap) {
        return Err(Error::NotNormalized);
    }
    let f = fmap.field();
    let n = fmap.n();
    let bound = max_deg.unwrap_or_else(|| gabber_bound(fmap.degree(), n)).max(1);
    let x = PolyMap::identity(f, n);
    let h = nonlinear_part(fmap)?;
    let mut g = PolyMap::zero(f, n, n);
    let mut ok = false;
    for k in 2..=bound {
        let next = h.compose_truncated(&x.sub(&g)?, k)?;
        let stalled = next == g;
        g = next;
        if stalled && verify_inverse(fmap, &x.sub(&g)?)? {
            ok = true;
            break;
        }
    }
    let candidate = x.sub(&g)?;
    let ok = ok || verify_inverse(fmap, &candidate)?;
    Ok(InverseResult {
        verdict: if ok {
            Verdict::PolynomialInverse
        } else {
            Verdict::NotPolynomialUpToBound
        },
        inverse_degree: ok.then(|| candidate.degree()),
        inverse: candidate,
        bound_used: bound,
    })
}

/// Inverts an arbitrary square map by normalizing its affine part first.
/// The returned inverse is that of `fmap` itself.
pub fn invert<F: Field>(fmap: &PolyMap<F>, max_deg: Option<u32>) -> Result<InverseResult<F>> {
    let norm = normalize_affine(fmap)?;
    let bound = max_deg.or_else(|| Some(gabber_bound(fmap.degree(), fmap.n())));
    let core_inv = formal_inverse(&norm.core, bound)?;
    if !core_inv.is_invertible() {
        return Ok(core_inv);
    }
    // F^{-1}(y) = core^{-1}(L^{-1}(y - c))
    let f = fmap.field();
    let n = fmap.n();
    let linv = norm.linear.inverse()?.ok_or(Error::SingularLinearPart)?;
    let shift = PolyMap::new(
        f,
        n,
        (0..n)
            .map(|i| &MPoly::var(f, n, i) - &MPoly::constant(f, n, norm.constant[i].clone()))
            .collect(),
    )?;
    let inner = shift.left_mul(&linv)?;
    let inverse = core_inv.inverse.compose(&inner)?;
    if !verify_inverse(fmap, &inverse)? {
        return Err(Error::TheoremViolation(
            "affine conjugate of a verified inverse failed verification".into(),
        ));
    }
    Ok(InverseResult {
        verdict: Verdict::PolynomialInverse,
        inverse_degree: Some(inverse.degree()),
        inverse,
        bound_used: core_inv.bound_used,
    })
}

/// Degree of the inverse of `fmap`, searched up to the default bound.
pub fn inverse_degree<F: Field>(fmap: &PolyMap<F>) -> Result<u32> {
    let res = invert(fmap, None)?;
    res.inverse_degree.ok_or(Error::NotInvertibleUpToBound {
        bound: u64::from(res.bound_used),
    })
}

/// Inverse of `x + (Ax)^{*d}` for strictly lower triangular `A`, built by
/// `G_i = x_i - (A_i1 G_1 + ... + A_i(i-1) G_(i-1))^d`.
pub fn triangular_inverse<F: Field>(a: &Matrix<F>, d: u32) -> Result<PolyMap<F>> {
    if !a.is_square() {
        return Err(Error::NonSquare {
            rows: a.rows(),
            cols: a.cols(),
        });
    }
    if d == 0 {
        return Err(Error::PreconditionFailed("power d must be positive".into()));
    }
    let f = a.field();
    let n = a.rows();
    for i in 0..n {
        if (i..n).any(|j| !f.is_zero(a.get(i, j))) {
            return Err(Error::NotStrictlyLowerTriangular);
        }
    }
    let mut g: Vec<MPoly<F>> = Vec::with_capacity(n);
    for i in 0..n {
        let mut form = MPoly::zero(f, n);
        for (j, gj) in g.iter().enumerate() {
            let c = a.get(i, j);
            if !f.is_zero(c) {
                form = &form + &gj.scale(c);
            }
        }
        g.push(&MPoly::var(f, n, i) - &form.pow(d));
    }
    let inverse = PolyMap::new(f, n, g)?;
    if !verify_inverse(&power_linear(a, d)?, &inverse)? {
        return Err(Error::TheoremViolation(
            "triangular inductive formula did not invert the power linear map".into(),
        ));
    }
    Ok(inverse)
}

/// Extends the inverse `x~ - G~` of the leading `r` components of
/// `F = x + H` (with every `H_i` in `K[x_1..x_r]`) to an inverse of `F`:
/// `G_i = G~_i` for `i <= r` and `G_i = H_i(x~ - G~)` beyond.
pub fn extend_inverse<F: Field>(fmap: &PolyMap<F>, r: usize, gtilde: &PolyMap<F>) -> Result<PolyMap<F>> {
    let n = fmap.n();
    if fmap.m() != n {
        return Err(Error::NonSquare {
            rows: fmap.m(),
            cols: n,
        });
    }
    if r > n || gtilde.n() != r || gtilde.m() != r {
        return Err(Error::ArityMismatch {
            expected: r,
            found: gtilde.m(),
        });
    }
    let f = fmap.field();
    let h = nonlinear_part(fmap)?;
    for (i, hi) in h.components().iter().enumerate() {
        if let Some(j) = (r..n).find(|&j| hi.depends_on(j)) {
            return Err(Error::DependenceViolation {
                component: i + 1,
                variable: j + 1,
                r,
            });
        }
    }
    let lead = PolyMap::new(f, n, fmap.components()[..r].to_vec())?.with_nvars(r)?;
    let sub_inverse = PolyMap::identity(f, r).sub(gtilde)?;
    if !verify_inverse(&lead, &sub_inverse)? {
        return Err(Error::BadSubInverse(r));
    }
    let sub_wide = sub_inverse.with_nvars(n)?;
    let mut comps: Vec<MPoly<F>> = sub_wide.components().to_vec();
    for i in r..n {
        let hi = h.component(i).with_nvars(r)?;
        let gi = hi.substitute_into(sub_wide.components(), n)?;
        comps.push(&MPoly::var(f, n, i) - &gi);
    }
    let inverse = PolyMap::new(f, n, comps)?;
    if !verify_inverse(fmap, &inverse)? {
        return Err(Error::TheoremViolation(
            "extended inverse failed the composition check".into(),
        ));
    }
    Ok(inverse)
}
