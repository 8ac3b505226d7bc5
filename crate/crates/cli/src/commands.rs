use std::path::Path;

use kellerlab::collinear::{search_cost, DEFAULT_BUDGET};
use kellerlab::reduction::{degree_bound_report, kernel_conjugate, pair_reduction};
use kellerlab::{
    collision_search, find_rank_drop, generalized_vandermonde, inverse_degree as inv_degree, invert as invert_map,
    line_injectivity, normalize_affine, power_linear, Error, Field, LineInjectivity, Matrix, Verdict,
};
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use crate::input::{self, AnyField, AnyMap, FieldSpec, MapFile};
use crate::CliError;

pub const BUDGET_ENV: &str = "KELLERLAB_BUDGET";

macro_rules! dispatch {
    ($map:expr, $m:ident => $body:expr) => {
        match $map {
            AnyMap::Q($m) => $body,
            AnyMap::Fp($m) => $body,
        }
    };
}

/// SHA-256 of the primary input followed by one line per flag.
fn digest(bytes: &[u8], flags: &[String]) -> String {
    let mut h = Sha256::new();
    h.update(bytes);
    for flag in flags {
        h.update(b"\n");
        h.update(flag.as_bytes());
    }
    hex::encode(h.finalize())
}

fn report(command: &str, field: String, input_sha256: String, result: Value) -> Value {
    json!({
        "command": command,
        "field": field,
        "input_sha256": input_sha256,
        "result": result,
    })
}

pub fn on_map(
    command: &str,
    path: &Path,
    flags: &[String],
    body: impl FnOnce(&AnyMap) -> Result<Value, CliError>,
) -> Result<Value, CliError> {
    let bytes = input::read_input(path)?;
    let map = input::load_map(&bytes)?;
    let result = body(&map)?;
    Ok(report(command, map.field_name(), digest(&bytes, flags), result))
}

fn scalars<F: Field>(f: &F, v: &[F::Elem]) -> Vec<String> {
    v.iter().map(|x| f.render(x)).collect()
}

fn matrix_json<F: Field>(m: &Matrix<F>) -> Vec<Vec<String>> {
    (0..m.rows()).map(|i| scalars(m.field(), m.row(i))).collect()
}

fn opt_scalar<F: Field>(f: &F, v: Option<&F::Elem>) -> Value {
    v.map_or(Value::Null, |x| Value::String(f.render(x)))
}

pub fn jacobian(map: &AnyMap) -> Result<Value, CliError> {
    dispatch!(map, m => {
        let det = if m.m() == m.n() {
            Value::String(m.det_jacobian()?.render())
        } else {
            Value::Null
        };
        Ok(json!({ "det": det, "jacobian": m.jacobian().render() }))
    })
}

pub fn keller(map: &AnyMap) -> Result<Value, CliError> {
    dispatch!(map, m => {
        let det = m.det_jacobian()?;
        Ok(json!({ "det": det.render(), "keller": m.keller_check()? }))
    })
}

pub fn invert(map: &AnyMap, max_deg: Option<u32>) -> Result<Value, CliError> {
    dispatch!(map, m => {
        let res = invert_map(m, max_deg)?;
        let verdict = match res.verdict {
            Verdict::PolynomialInverse => "PolynomialInverse",
            Verdict::NotPolynomialUpToBound => "NotPolynomialUpToBound",
        };
        let inverse = if res.is_invertible() {
            json!(res.inverse.render())
        } else {
            Value::Null
        };
        Ok(json!({
            "bound": res.bound_used,
            "inverse": inverse,
            "inverse_degree": res.inverse_degree,
            "verdict": verdict,
        }))
    })
}

pub fn inverse_degree(map: &AnyMap) -> Result<Value, CliError> {
    dispatch!(map, m => Ok(json!({ "degree": inv_degree(m)? })))
}

pub fn druzkowski(matrix: &Path, deg: u32, field: &str) -> Result<Value, CliError> {
    let spec = FieldSpec::from_flag(field)?;
    let bytes = input::read_input(matrix)?;
    let file = match spec.resolve()? {
        AnyField::Q(f) => MapFile::from_map(spec, &power_linear(&input::load_matrix(&f, &bytes)?, deg)?),
        AnyField::Fp(f) => MapFile::from_map(spec, &power_linear(&input::load_matrix(&f, &bytes)?, deg)?),
    };
    Ok(serde_json::to_value(file).expect("serializable map file"))
}

pub fn reduce(map: &AnyMap) -> Result<Value, CliError> {
    dispatch!(map, m => {
        let core = normalize_affine(m)?.core;
        let red = kernel_conjugate(&core)?;
        let paired = pair_reduction(&core, &red)?;
        let rep = degree_bound_report(m)?;
        Ok(json!({
            "conjugated": red.conjugated.render(),
            "degree_bound": {
                "bound": rep.bound,
                "bound_asserted": rep.bound_asserted,
                "d": rep.d,
                "escalated": rep.escalated,
                "gabber_bound": rep.gabber_bound,
                "inverse_degree": rep.actual_inverse_degree,
                "n": rep.n,
                "r": rep.r,
                "satisfied": rep.satisfied,
            },
            "paired": paired.render(),
            "r": red.r,
            "t": matrix_json(&red.t),
            "t_inv": matrix_json(&red.t_inv),
        }))
    })
}

pub fn line_check(map: &AnyMap, point: &str) -> Result<Value, CliError> {
    dispatch!(map, m => {
        let f = m.field();
        let a = input::parse_vector(f, point)?;
        Ok(match line_injectivity(m, &a)? {
            LineInjectivity::Injective { certified } => json!({ "certified": certified, "injective": true }),
            LineInjectivity::Collision { lambda1, lambda2 } => json!({
                "certified": true,
                "collision": [f.render(&lambda1), f.render(&lambda2)],
                "injective": false,
            }),
        })
    })
}

pub fn rank_drop(map: &AnyMap, dir: &str, params: &str, degrees: Option<&str>) -> Result<Value, CliError> {
    dispatch!(map, m => {
        let f = m.field();
        let b = input::parse_vector(f, dir)?;
        let params = input::parse_vector(f, params)?;
        let degrees = match degrees {
            Some(d) => input::parse_degrees(d)?,
            None => (0..=params.len() as u32).collect(),
        };
        let found = find_rank_drop(m, &b, &params, &degrees)?;
        let rank = match &found.param {
            Some(a) => {
                let point: Vec<_> = b.iter().map(|v| f.mul(a, v)).collect();
                json!(m.jacobian().evaluate(&point)?.rank())
            }
            None => Value::Null,
        };
        Ok(json!({
            "degrees": degrees,
            "derivative": found.derivative.render("t"),
            "jacobian_rank": rank,
            "param": opt_scalar(f, found.param.as_ref()),
        }))
    })
}

/// `--budget`, then `KELLERLAB_BUDGET`, then the library default.
pub fn resolve_budget(flag: Option<u64>) -> Result<u64, CliError> {
    if let Some(b) = flag {
        return Ok(b);
    }
    match std::env::var(BUDGET_ENV) {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| CliError::usage(format!("{BUDGET_ENV} must be a nonnegative integer, got {v:?}"))),
        Err(_) => Ok(DEFAULT_BUDGET),
    }
}

pub fn collide(map: &AnyMap, r: usize, budget: u64) -> Result<Value, CliError> {
    let m = match map {
        AnyMap::Fp(m) => m,
        AnyMap::Q(_) => {
            return Err(Error::PreconditionFailed("collision search needs a prime field".into()).into());
        }
    };
    let f = m.field();
    let witnesses = collision_search(m, r, budget)?;
    let list: Vec<Value> = witnesses
        .iter()
        .map(|w| {
            json!({
                "b": scalars(f, &w.b),
                "base_point": scalars(f, &w.base_point),
                "corollary_applies": w.corollary_applies,
                "degrees": w.degrees,
                "det_jac_nonconstant": w.det_jac_nonconstant,
                "multiplicity": w.multiplicity,
                "params": scalars(f, &w.params),
                "rank_drop_param": opt_scalar(f, w.rank_drop_param.as_ref()),
                "vandermonde_rank": w.vandermonde_rank,
            })
        })
        .collect();
    Ok(json!({
        "count": list.len(),
        "evaluations": search_cost(m.n(), f.modulus()),
        "witnesses": list,
    }))
}

pub fn vandermonde(points: &str, degrees: &str, field: &str) -> Result<Value, CliError> {
    let spec = FieldSpec::from_flag(field)?;
    let degs = input::parse_degrees(degrees)?;
    let flags = [
        format!("--points={points}"),
        format!("--degrees={degrees}"),
        format!("--field={field}"),
    ];
    let (name, result) = match spec.resolve()? {
        AnyField::Q(f) => (f.desc().to_string(), vandermonde_in(&f, points, &degs)?),
        AnyField::Fp(f) => (f.desc().to_string(), vandermonde_in(&f, points, &degs)?),
    };
    Ok(report("vandermonde", name, digest(b"", &flags), result))
}

fn vandermonde_in<F: Field>(f: &F, points: &str, degrees: &[u32]) -> Result<Value, CliError> {
    let pts = input::parse_vector(f, points)?;
    let v = generalized_vandermonde(f, &pts, degrees);
    Ok(json!({ "matrix": matrix_json(&v), "rank": v.rank() }))
}
