//! Polynomial maps that take one value at several points of a line.
//!
//! For a direction `b` and base parameter `a_1`, `G(t) = F(t b) - F(a_1 b)`
//! is written as `C (t^{d_1}, ..., t^{d_{r+1}})`. When `G` vanishes at `r`
//! parameters whose generalized Vandermonde matrix has full rank, `C` has
//! rank at most one with a nonzero last column, and a root of `G'` gives a
//! point of the line where `jac F` kills `b`.

use std::collections::{BTreeSet, HashMap};

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::matrix::{generalized_vandermonde, Matrix};
use crate::mpoly::UniPoly;
use crate::polymap::PolyMap;

/// Default number of point evaluations [`collision_search`] may spend.
pub const DEFAULT_BUDGET: u64 = 10_000_000;

/// `G(t) = F(t b) - F(a_1 b)` in coefficient form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LineData<F: Field> {
    pub b: Vec<F::Elem>,
    pub base: F::Elem,
    /// Strictly increasing exponents `d_1 < ... < d_{r+1}`.
    pub degrees: Vec<u32>,
    /// `m x (r+1)`, `G_i(t) = sum_k C[i][k] t^{d_k}`.
    pub c: Matrix<F>,
    pub g: Vec<UniPoly<F>>,
}

impl<F: Field> LineData<F> {
    /// Rebuilds `G_i` from `C` and the degree list.
    pub fn reconstruct(&self, i: usize) -> UniPoly<F> {
        let f = self.c.field();
        let top = self.degrees.last().map_or(0, |&d| d as usize + 1);
        let mut coeffs = vec![f.zero(); top];
        for (k, &d) in self.degrees.iter().enumerate() {
            coeffs[d as usize] = self.c.get(i, k).clone();
        }
        UniPoly::new(f, coeffs)
    }
}

fn check_direction<F: Field>(fmap: &PolyMap<F>, b: &[F::Elem]) -> Result<()> {
    if b.len() != fmap.n() {
        return Err(Error::ArityMismatch {
            expected: fmap.n(),
            found: b.len(),
        });
    }
    if b.iter().all(|v| fmap.field().is_zero(v)) {
        return Err(Error::ZeroDirection);
    }
    Ok(())
}

fn scaled<F: Field>(f: &F, t: &F::Elem, b: &[F::Elem]) -> Vec<F::Elem> {
    b.iter().map(|v| f.mul(t, v)).collect()
}

fn check_degree_list(degrees: &[u32]) -> Result<()> {
    if degrees.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::PreconditionFailed(format!(
            "degree list {degrees:?} must be strictly increasing"
        )));
    }
    Ok(())
}

/// Restricts `F` to the line `K b` relative to the value at `a_1 b`. The
/// degree list is the support of `G` unless `degrees` is given, in which
/// case it must cover that support.
pub fn line_restriction<F: Field>(
    fmap: &PolyMap<F>,
    b: &[F::Elem],
    a1: &F::Elem,
    degrees: Option<&[u32]>,
) -> Result<LineData<F>> {
    check_direction(fmap, b)?;
    let f = fmap.field();
    let at_base = fmap.evaluate(&scaled(f, a1, b))?;
    let mut g = Vec::with_capacity(fmap.m());
    for (comp, v) in fmap.components().iter().zip(&at_base) {
        let u = comp.restrict_to_line(b)?;
        g.push(u.sub(&UniPoly::new(f, vec![v.clone()])));
    }
    let support: BTreeSet<u32> = g.iter().flat_map(UniPoly::support).collect();
    let degrees: Vec<u32> = match degrees {
        Some(list) => {
            check_degree_list(list)?;
            if let Some(d) = support.iter().find(|d| !list.contains(d)) {
                return Err(Error::PreconditionFailed(format!(
                    "G has a term of degree {d} outside {list:?}"
                )));
            }
            list.to_vec()
        }
        None => support.into_iter().collect(),
    };
    let mut c = Matrix::zeros(f, g.len(), degrees.len());
    for (i, gi) in g.iter().enumerate() {
        for (k, &d) in degrees.iter().enumerate() {
            c.set(i, k, gi.coeff(d as usize));
        }
    }
    Ok(LineData {
        b: b.to_vec(),
        base: a1.clone(),
        degrees,
        c,
        g,
    })
}

fn vandermonde_rank<F: Field>(f: &F, params: &[F::Elem], degrees: &[u32]) -> usize {
    generalized_vandermonde(f, params, &degrees[..params.len()]).rank()
}

/// Checks `rank C <= 1` and that the last column of `C` is nonzero unless
/// `C = 0`. The hypotheses are verified first; a failure of the conclusion
/// under valid hypotheses is a [`Error::TheoremViolation`].
pub fn genlm_check<F: Field>(line: &LineData<F>, params: &[F::Elem]) -> Result<bool> {
    let f = line.c.field();
    let r = params.len();
    if r == 0 {
        return Err(Error::PreconditionFailed("need at least one parameter".into()));
    }
    if line.degrees.len() != r + 1 {
        return Err(Error::PreconditionFailed(format!(
            "degree list has length {}, expected r + 1 = {}",
            line.degrees.len(),
            r + 1
        )));
    }
    for a in params {
        if line.g.iter().any(|gi| !f.is_zero(&gi.eval(a))) {
            return Err(Error::PreconditionFailed(format!("G({}) != 0", f.render(a))));
        }
    }
    let rank = vandermonde_rank(f, params, &line.degrees);
    if rank != r {
        return Err(Error::PreconditionFailed(format!(
            "Vandermonde matrix has rank {rank} < r = {r}"
        )));
    }
    let last_nonzero = (0..line.c.rows()).any(|i| !f.is_zero(line.c.get(i, r)));
    if line.c.rank() <= 1 && (line.c.is_zero() || last_nonzero) {
        Ok(true)
    } else {
        Err(Error::TheoremViolation(format!(
            "coefficient matrix has rank {} with last column zero = {}",
            line.c.rank(),
            !last_nonzero
        )))
    }
}

/// Outcome of [`find_rank_drop`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RankDrop<F: Field> {
    /// `a_{r+1}` with `(jac F)(a_{r+1} b) b = 0`, if one lies in the base field.
    pub param: Option<F::Elem>,
    /// Derivative of the representative component of `G` that was searched
    /// (zero when `G' = 0`).
    pub derivative: UniPoly<F>,
}

fn check_collinear_hypotheses<F: Field>(
    fmap: &PolyMap<F>,
    b: &[F::Elem],
    params: &[F::Elem],
    degrees: &[u32],
) -> Result<()> {
    let f = fmap.field();
    check_direction(fmap, b)?;
    let r = params.len();
    if r == 0 {
        return Err(Error::PreconditionFailed("need at least one parameter".into()));
    }
    if degrees.len() != r + 1 {
        return Err(Error::PreconditionFailed(format!(
            "degree list has length {}, expected r + 1 = {}",
            degrees.len(),
            r + 1
        )));
    }
    check_degree_list(degrees)?;
    if !degrees.contains(&0) {
        return Err(Error::PreconditionFailed("degree list must contain 0".into()));
    }
    let support = fmap.homogeneous_decomposition().support;
    if let Some(d) = support.iter().find(|d| !degrees.contains(d)) {
        return Err(Error::PreconditionFailed(format!(
            "F has a term of degree {d} outside {degrees:?}"
        )));
    }
    let first = fmap.evaluate(&scaled(f, &params[0], b))?;
    for a in &params[1..] {
        if fmap.evaluate(&scaled(f, a, b))? != first {
            return Err(Error::PreconditionFailed(format!(
                "F({} b) differs from F({} b)",
                f.render(a),
                f.render(&params[0])
            )));
        }
    }
    let rank = vandermonde_rank(f, params, degrees);
    if rank != r {
        return Err(Error::PreconditionFailed(format!(
            "Vandermonde matrix has rank {rank} < r = {r}"
        )));
    }
    Ok(())
}

/// Finds `a_{r+1}` with `(jac F)|_{a_{r+1} b} b = 0` from a root of the
/// derivative of a nonzero component of `G`. Roots are searched in the base
/// field only: exhaustively over `F_p`, by the rational root test over `Q`;
/// the first root in canonical order is returned.
pub fn find_rank_drop<F: Field>(
    fmap: &PolyMap<F>,
    b: &[F::Elem],
    params: &[F::Elem],
    degrees: &[u32],
) -> Result<RankDrop<F>> {
    check_collinear_hypotheses(fmap, b, params, degrees)?;
    let f = fmap.field();
    let line = line_restriction(fmap, b, &params[0], Some(degrees))?;
    genlm_check(&line, params)?;
    let Some(derivative) = line.g.iter().map(UniPoly::derivative).find(|d| !d.is_zero()) else {
        return Ok(RankDrop {
            param: Some(f.zero()),
            derivative: UniPoly::zero(f),
        });
    };
    let param = derivative.roots().into_iter().next();
    if let Some(a) = &param {
        let kills = fmap.jacobian().evaluate(&scaled(f, a, b))?.mul_vec(b)?;
        if kills.iter().any(|v| !f.is_zero(v)) {
            return Err(Error::TheoremViolation(format!(
                "jac F at {} b does not annihilate b",
                f.render(a)
            )));
        }
    }
    Ok(RankDrop { param, derivative })
}

/// Points `base + a_i b` (`i = 1..r`) sharing one image under `F`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CollisionWitness<F: Field> {
    /// Translation taking the first colliding point to the origin.
    pub base_point: Vec<F::Elem>,
    pub b: Vec<F::Elem>,
    pub params: Vec<F::Elem>,
    pub degrees: Vec<u32>,
    pub vandermonde_rank: usize,
    pub rank_drop_param: Option<F::Elem>,
    pub det_jac_nonconstant: bool,
    /// Number of points on the line with this image (at least `params.len()`).
    pub multiplicity: usize,
    /// The hypotheses `r >= deg F` and `char K ∤ r != 1` hold.
    pub corollary_applies: bool,
}

fn det_not_unit<F: Field>(fmap: &PolyMap<F>) -> Result<bool> {
    let det = fmap.det_jacobian()?;
    Ok(det.is_zero() || !det.is_constant())
}

fn char_divides<F: Field>(f: &F, d: u32) -> bool {
    let p = f.characteristic();
    p != 0 && u64::from(d) % p == 0
}

/// Confirms that `det jac F` is not a nonzero constant for a valid
/// collinear witness with `char K ∤ d_{r+1} != 1`.
pub fn verify_gencr<F: Field>(fmap: &PolyMap<F>, w: &CollisionWitness<F>) -> Result<bool> {
    if fmap.m() != fmap.n() {
        return Err(Error::NonSquare {
            rows: fmap.m(),
            cols: fmap.n(),
        });
    }
    let f = fmap.field();
    for (i, a) in w.params.iter().enumerate() {
        if w.params[..i].contains(a) {
            return Err(Error::PreconditionFailed(format!("parameter {} repeated", f.render(a))));
        }
    }
    let shifted = fmap.translate(&w.base_point)?;
    check_collinear_hypotheses(&shifted, &w.b, &w.params, &w.degrees)?;
    let top = *w.degrees.last().unwrap();
    if top == 1 || char_divides(f, top) {
        return Err(Error::PreconditionFailed(format!(
            "need char K ∤ d_(r+1) != 1, got d_(r+1) = {top} in characteristic {}",
            f.characteristic()
        )));
    }
    if det_not_unit(fmap)? {
        Ok(true)
    } else {
        Err(Error::TheoremViolation(
            "collinear collision with constant nonzero Jacobian determinant".into(),
        ))
    }
}

/// Result of [`line_injectivity`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LineInjectivity<F: Field> {
    /// `certified` is false when only a bounded rational search was done.
    Injective { certified: bool },
    /// `F(lambda1 a) = F(lambda2 a)` with `lambda1 != lambda2`.
    Collision { lambda1: F::Elem, lambda2: F::Elem },
}

/// Height bound for the rational specialization search.
const RATIONAL_SEARCH_HEIGHT: i64 = 12;

fn rational_candidates<F: Field>(f: &F) -> Vec<F::Elem> {
    let mut out = vec![f.zero()];
    for den in 1..=RATIONAL_SEARCH_HEIGHT {
        for num in 1..=RATIONAL_SEARCH_HEIGHT {
            if num_integer::gcd(num, den) != 1 {
                continue;
            }
            let v = f.div(&f.from_i64(num), &f.from_i64(den)).unwrap();
            out.push(v.clone());
            out.push(f.neg(&v));
        }
    }
    out.sort_by(|a, b| f.canonical_cmp(a, b));
    out
}

/// `(u(s) - u(t)) / (s - t)` as a polynomial in `s`, by synthetic division.
fn difference_quotient<F: Field>(u: &UniPoly<F>, t: &F::Elem) -> UniPoly<F> {
    let f = u.field();
    let c = u.coeffs();
    if c.len() <= 1 {
        return UniPoly::zero(f);
    }
    let mut q = vec![f.zero(); c.len() - 1];
    let mut carry = f.zero();
    for k in (1..c.len()).rev() {
        carry = f.add(&f.mul(&carry, t), &c[k]);
        q[k - 1] = carry.clone();
    }
    UniPoly::new(f, q)
}

/// Decides whether `F` is injective on the line `K a`.
///
/// Over a finite field every point of the line is evaluated and the first
/// repeated image is reported. Over `Q` a component of degree one on the
/// line certifies injectivity; otherwise the parameters `t` of bounded
/// height are tried, and a rational `s != t` is searched among the common
/// roots of `(F_i(s a) - F_i(t a)) / (s - t)`. An empty search is reported
/// as uncertified injectivity.
pub fn line_injectivity<F: Field>(fmap: &PolyMap<F>, a: &[F::Elem]) -> Result<LineInjectivity<F>> {
    let f = fmap.field();
    if a.len() != fmap.n() {
        return Err(Error::ArityMismatch {
            expected: fmap.n(),
            found: a.len(),
        });
    }
    if a.iter().all(|v| f.is_zero(v)) {
        return Ok(LineInjectivity::Injective { certified: true });
    }
    if let Some(elements) = f.elements() {
        let mut seen: HashMap<Vec<F::Elem>, F::Elem> = HashMap::new();
        for lambda in elements {
            let image = fmap.evaluate(&scaled(f, &lambda, a))?;
            if let Some(prev) = seen.get(&image) {
                return Ok(LineInjectivity::Collision {
                    lambda1: prev.clone(),
                    lambda2: lambda,
                });
            }
            seen.insert(image, lambda);
        }
        return Ok(LineInjectivity::Injective { certified: true });
    }

    let restricted: Vec<UniPoly<F>> = fmap
        .components()
        .iter()
        .map(|c| c.restrict_to_line(a))
        .collect::<Result<_>>()?;
    if restricted.iter().any(|u| u.degree() == Some(1)) {
        return Ok(LineInjectivity::Injective { certified: true });
    }
    if restricted.iter().all(|u| u.degree().unwrap_or(0) == 0) {
        return Ok(LineInjectivity::Collision {
            lambda1: f.zero(),
            lambda2: f.one(),
        });
    }
    let candidates = rational_candidates(f);
    for t in &candidates {
        let common = restricted
            .iter()
            .map(|u| difference_quotient(u, t))
            .fold(UniPoly::zero(f), |g, q| g.gcd(&q));
        let s = if common.is_zero() {
            candidates.iter().find(|s| *s != t).cloned()
        } else {
            common.roots().into_iter().find(|s| s != t)
        };
        if let Some(s) = s {
            let (lambda1, lambda2) = match f.canonical_cmp(&s, t) {
                std::cmp::Ordering::Less => (s, t.clone()),
                _ => (t.clone(), s),
            };
            debug_assert_eq!(
                fmap.evaluate(&scaled(f, &lambda1, a))?,
                fmap.evaluate(&scaled(f, &lambda2, a))?
            );
            return Ok(LineInjectivity::Collision { lambda1, lambda2 });
        }
    }
    Ok(LineInjectivity::Injective { certified: false })
}

fn point_of_index(index: u64, n: usize, p: u64) -> Vec<u64> {
    let mut coords = vec![0; n];
    let mut rest = index;
    for c in coords.iter_mut().rev() {
        *c = rest % p;
        rest /= p;
    }
    coords
}

fn index_of_point(point: &[u64], p: u64) -> u64 {
    point.iter().fold(0, |acc, &c| acc * p + c)
}

/// Number of point evaluations needed to search `F_p^n`: `n p^n`.
pub fn search_cost(n: usize, p: u64) -> Option<u64> {
    p.checked_pow(n as u32)?.checked_mul(n as u64)
}

/// Exhaustively lists, over a finite field, every line on which some image
/// is attained at least `r` times.
///
/// Lines are enumerated by direction `b` (lexicographic, first nonzero
/// coordinate 1) and then by their lexicographically smallest point; on
/// each line the parameters run through the field in canonical order.
/// Witnesses are translated so that the first colliding point is the
/// origin, and use the degree list `0, 1, ..., r`. Work is split across
/// threads by direction and merged back in that order.
///
/// Whenever the hypotheses `r >= deg F`, `char K ∤ r` and `r != 1` hold, a
/// witness with constant nonzero Jacobian determinant is a
/// [`Error::TheoremViolation`].
pub fn collision_search(
    fmap: &PolyMap<crate::field::PrimeField>,
    r: usize,
    budget: u64,
) -> Result<Vec<CollisionWitness<crate::field::PrimeField>>> {
    let f = fmap.field();
    let p = f.modulus();
    let n = fmap.n();
    if fmap.m() != n {
        return Err(Error::NonSquare {
            rows: fmap.m(),
            cols: n,
        });
    }
    if r < 2 {
        return Err(Error::PreconditionFailed("collision search needs r >= 2".into()));
    }
    let required = search_cost(n, p).unwrap_or(u64::MAX);
    if required > budget {
        return Err(Error::BudgetExceeded { budget, required });
    }
    if n == 0 {
        return Ok(Vec::new());
    }
    let npoints = p.pow(n as u32);
    let images: Vec<Vec<u64>> = (0..npoints)
        .into_par_iter()
        .map(|i| fmap.evaluate(&point_of_index(i, n, p)))
        .collect::<Result<_>>()?;

    let det_nonconstant = det_not_unit(fmap)?;
    let degree = fmap.degree() as usize;
    let degrees: Vec<u32> = (0..=r as u32).collect();
    let corollary_applies = r >= degree && !char_divides(f, r as u32);

    let directions: Vec<Vec<u64>> = (0..npoints)
        .map(|i| point_of_index(i, n, p))
        .filter(|b| b.iter().find(|&&c| c != 0) == Some(&1))
        .collect();

    let per_direction: Vec<Vec<CollisionWitness<_>>> = directions
        .par_iter()
        .map(|b| -> Result<Vec<CollisionWitness<_>>> {
            let mut found = Vec::new();
            for start in 0..npoints {
                let p1 = point_of_index(start, n, p);
                let line: Vec<Vec<u64>> = (0..p)
                    .map(|t| p1.iter().zip(b).map(|(x, y)| (x + t * y) % p).collect())
                    .collect();
                if line.iter().any(|q| index_of_point(q, p) < start) {
                    continue;
                }
                let mut groups: Vec<(usize, Vec<u64>)> = Vec::new();
                let mut by_image: HashMap<&[u64], usize> = HashMap::new();
                for (t, q) in line.iter().enumerate() {
                    let img = images[index_of_point(q, p) as usize].as_slice();
                    match by_image.get(img) {
                        Some(&g) => groups[g].1.push(t as u64),
                        None => {
                            by_image.insert(img, groups.len());
                            groups.push((t, vec![t as u64]));
                        }
                    }
                }
                for (first, ts) in groups.into_iter().filter(|(_, ts)| ts.len() >= r) {
                    let base_point = line[first].clone();
                    let t1 = ts[0];
                    let params: Vec<u64> = ts[..r].iter().map(|t| (t + p - t1) % p).collect();
                    found.push(build_witness(
                        fmap,
                        base_point,
                        b.clone(),
                        params,
                        &degrees,
                        ts.len(),
                        det_nonconstant,
                        corollary_applies,
                    )?);
                }
            }
            Ok(found)
        })
        .collect::<Result<_>>()?;
    Ok(per_direction.into_iter().flatten().collect())
}

#[allow(clippy::too_many_arguments)]
fn build_witness(
    fmap: &PolyMap<crate::field::PrimeField>,
    base_point: Vec<u64>,
    b: Vec<u64>,
    params: Vec<u64>,
    degrees: &[u32],
    multiplicity: usize,
    det_jac_nonconstant: bool,
    corollary_applies: bool,
) -> Result<CollisionWitness<crate::field::PrimeField>> {
    let f = fmap.field();
    let r = params.len();
    let vandermonde_rank = vandermonde_rank(f, &params, degrees);
    let shifted = fmap.translate(&base_point)?;
    let rank_drop_param = match find_rank_drop(&shifted, &b, &params, degrees) {
        Ok(found) => found.param,
        Err(Error::PreconditionFailed(_)) => None,
        Err(e) => return Err(e),
    };
    if corollary_applies && vandermonde_rank == r && !det_jac_nonconstant {
        return Err(Error::TheoremViolation(format!(
            "{r} collinear points share an image but det jac F is a nonzero constant (base {base_point:?}, direction {b:?})"
        )));
    }
    Ok(CollisionWitness {
        base_point,
        b,
        params,
        degrees: degrees.to_vec(),
        vandermonde_rank,
        rank_drop_param,
        det_jac_nonconstant,
        multiplicity,
        corollary_applies,
    })
}
