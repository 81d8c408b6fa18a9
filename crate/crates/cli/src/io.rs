//! JSON state files.
//!
//! A probability vector is a bare array of numbers. A matrix is
//! `{"dim": d, "re": [[...]], "im": [[...]]}` with row-major rows; `im` may be
//! omitted for real matrices.

use std::path::Path;

use entrobox::ensemble::{self, EnsembleKind, State};
use entrobox::linalg::CMatrix;
use entrobox::simplex::validate_prob_vec;
use entrobox::{DensityMatrix, ProbVec, UnitaryMatrix};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{CliError, Result};

/// Tolerance on negative entries and on the sum of an ingested vector.
pub const PROB_TOLERANCE: f64 = 1e-9;
/// Largest accepted `|rho_jk - conj(rho_kj)|` of an ingested matrix.
pub const HERMITICITY_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DensityFile {
    pub dim: usize,
    pub re: Vec<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub im: Option<Vec<Vec<f64>>>,
}

impl DensityFile {
    pub fn from_matrix(m: &CMatrix) -> Self {
        let rows = |f: fn(&Complex64) -> f64| -> Vec<Vec<f64>> {
            (0..m.nrows())
                .map(|j| (0..m.ncols()).map(|k| f(&m[(j, k)])).collect())
                .collect()
        };
        Self {
            dim: m.nrows(),
            re: rows(|z| z.re),
            im: Some(rows(|z| z.im)),
        }
    }

    pub fn to_matrix(&self) -> std::result::Result<CMatrix, String> {
        let d = self.dim;
        let check = |name: &str, rows: &[Vec<f64>]| {
            if rows.len() != d || rows.iter().any(|r| r.len() != d) {
                Err(format!("`{name}` must be a {d}x{d} array"))
            } else {
                Ok(())
            }
        };
        if d == 0 {
            return Err("`dim` must be positive".into());
        }
        check("re", &self.re)?;
        if let Some(im) = &self.im {
            check("im", im)?;
        }
        Ok(CMatrix::from_fn(d, d, |j, k| {
            Complex64::new(self.re[j][k], self.im.as_ref().map_or(0.0, |im| im[j][k]))
        }))
    }
}

/// A state read from disk: either kind of file is accepted where a state is
/// expected.
#[derive(Debug, Clone, PartialEq)]
pub enum InputState {
    Prob(ProbVec),
    Density(DensityMatrix),
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_owned(),
        source,
    })
}

fn parse_error(path: &Path, message: impl Into<String>) -> CliError {
    CliError::Parse {
        path: path.to_owned(),
        message: message.into(),
    }
}

fn prob_vec_from(path: &Path, value: serde_json::Value) -> Result<ProbVec> {
    let raw: Vec<f64> =
        serde_json::from_value(value).map_err(|e| parse_error(path, e.to_string()))?;
    Ok(validate_prob_vec(&raw, PROB_TOLERANCE)?)
}

fn density_from(path: &Path, value: serde_json::Value) -> Result<DensityMatrix> {
    let file: DensityFile =
        serde_json::from_value(value).map_err(|e| parse_error(path, e.to_string()))?;
    let m = file.to_matrix().map_err(|e| parse_error(path, e))?;
    Ok(DensityMatrix::new(m, HERMITICITY_TOLERANCE)?)
}

fn parse_json(path: &Path) -> Result<serde_json::Value> {
    serde_json::from_str(&read(path)?).map_err(|e| parse_error(path, e.to_string()))
}

pub fn ingest_prob_vec(path: &Path) -> Result<ProbVec> {
    prob_vec_from(path, parse_json(path)?)
}

pub fn ingest_density(path: &Path) -> Result<DensityMatrix> {
    density_from(path, parse_json(path)?)
}

/// Reads a probability vector (JSON array) or a density matrix (JSON object).
pub fn ingest_state(path: &Path) -> Result<InputState> {
    match parse_json(path)? {
        v @ serde_json::Value::Array(_) => Ok(InputState::Prob(prob_vec_from(path, v)?)),
        v @ serde_json::Value::Object(_) => Ok(InputState::Density(density_from(path, v)?)),
        _ => Err(parse_error(path, "expected a JSON array or object")),
    }
}

pub fn generate_ensemble(
    kind: EnsembleKind,
    dim: usize,
    count: usize,
    seed: u64,
) -> Result<Vec<State>> {
    if count == 0 {
        return Err(CliError::Config("count must be at least 1".into()));
    }
    Ok(ensemble::generate(kind, dim, count, seed)?)
}

/// JSON form of a generated state, in the same formats [`ingest_state`] reads.
pub fn state_to_json(state: &State) -> serde_json::Value {
    match state {
        State::Prob(p) => serde_json::json!(p.values()),
        State::Density(rho) => serde_json::json!(DensityFile::from_matrix(rho.matrix())),
        State::Unitary(u) => serde_json::json!(unitary_file(u)),
    }
}

pub fn unitary_file(u: &UnitaryMatrix) -> DensityFile {
    DensityFile::from_matrix(u.matrix())
}

pub fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<()> {
    let mut text = serde_json::to_string_pretty(value).expect("serializable report");
    text.push('\n');
    if path == Path::new("-") {
        print!("{text}");
        return Ok(());
    }
    std::fs::write(path, text).map_err(|source| CliError::Io {
        path: path.to_owned(),
        source,
    })
}
