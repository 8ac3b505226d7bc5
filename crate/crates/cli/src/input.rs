//! Map files, matrix files and vector flags.

use std::io::Read;
use std::path::Path;

use kellerlab::{Field, Matrix, PolyMap, PrimeField, Rationals};
use serde::{Deserialize, Serialize};

use crate::CliError;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum FieldSpec {
    Named(String),
    Prime {
        #[serde(rename = "Fp")]
        fp: u64,
    },
}

impl FieldSpec {
    pub fn rationals() -> Self {
        FieldSpec::Named("Q".into())
    }

    /// `Q` or a prime modulus, as given to `--field`.
    pub fn from_flag(text: &str) -> Result<Self, CliError> {
        let t = text.trim();
        if t == "Q" {
            return Ok(Self::rationals());
        }
        t.parse()
            .map(|fp| FieldSpec::Prime { fp })
            .map_err(|_| CliError::usage(format!("field must be Q or a prime, got {t:?}")))
    }

    pub fn resolve(&self) -> Result<AnyField, CliError> {
        match self {
            FieldSpec::Named(name) if name == "Q" => Ok(AnyField::Q(Rationals)),
            FieldSpec::Named(name) => Err(CliError::usage(format!("unknown field {name:?}"))),
            FieldSpec::Prime { fp } => Ok(AnyField::Fp(PrimeField::new(*fp)?)),
        }
    }
}

pub enum AnyField {
    Q(Rationals),
    Fp(PrimeField),
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MapFile {
    pub field: FieldSpec,
    pub nvars: usize,
    pub polys: Vec<String>,
}

impl MapFile {
    pub fn from_map<F: Field>(spec: FieldSpec, fmap: &PolyMap<F>) -> Self {
        MapFile {
            field: spec,
            nvars: fmap.n(),
            polys: fmap.render(),
        }
    }
}

pub enum AnyMap {
    Q(PolyMap<Rationals>),
    Fp(PolyMap<PrimeField>),
}

impl AnyMap {
    pub fn field_name(&self) -> String {
        match self {
            AnyMap::Q(m) => m.field().desc().to_string(),
            AnyMap::Fp(m) => m.field().desc().to_string(),
        }
    }
}

/// Reads a file, or standard input for `-`.
pub fn read_input(path: &Path) -> Result<Vec<u8>, CliError> {
    if path == Path::new("-") {
        let mut buf = Vec::new();
        std::io::stdin()
            .read_to_end(&mut buf)
            .map_err(|e| CliError::usage(format!("reading standard input: {e}")))?;
        return Ok(buf);
    }
    std::fs::read(path).map_err(|e| CliError::usage(format!("reading {}: {e}", path.display())))
}

fn parse_polys<F: Field>(field: &F, file: &MapFile) -> Result<PolyMap<F>, CliError> {
    let polys: Vec<&str> = file.polys.iter().map(String::as_str).collect();
    Ok(PolyMap::parse(field, file.nvars, &polys)?)
}

pub fn load_map(bytes: &[u8]) -> Result<AnyMap, CliError> {
    let file: MapFile = serde_json::from_slice(bytes).map_err(|e| CliError::usage(format!("invalid map file: {e}")))?;
    Ok(match file.field.resolve()? {
        AnyField::Q(f) => AnyMap::Q(parse_polys(&f, &file)?),
        AnyField::Fp(f) => AnyMap::Fp(parse_polys(&f, &file)?),
    })
}

/// JSON array of rows of scalar strings.
pub fn load_matrix<F: Field>(field: &F, bytes: &[u8]) -> Result<Matrix<F>, CliError> {
    let rows: Vec<Vec<String>> =
        serde_json::from_slice(bytes).map_err(|e| CliError::usage(format!("invalid matrix file: {e}")))?;
    let rows = rows
        .iter()
        .map(|r| r.iter().map(|s| field.parse_scalar(s)).collect::<Result<Vec<_>, _>>())
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Matrix::from_rows(field, rows)?)
}

/// Comma-separated scalars such as `1/2,0,-3`.
pub fn parse_vector<F: Field>(field: &F, text: &str) -> Result<Vec<F::Elem>, CliError> {
    if text.trim().is_empty() {
        return Ok(Vec::new());
    }
    Ok(text
        .split(',')
        .map(|s| field.parse_scalar(s.trim()))
        .collect::<Result<_, _>>()?)
}

pub fn parse_degrees(text: &str) -> Result<Vec<u32>, CliError> {
    text.split(',')
        .map(|s| {
            s.trim()
                .parse()
                .map_err(|_| CliError::usage(format!("invalid degree {s:?}")))
        })
        .collect()
}
