//! Report model, witness serialization and rendering.

use std::fmt::Write as _;

use biquotient::algebra::{CMatrix, LieVector, Quaternion};
use biquotient::cheeger::{PairKind, SymmetricPairContext, Tolerances};
use biquotient::torus::TorusAction;
use biquotient::{bazaikin, eschenburg, torus, Complex64};
use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};

use crate::config::RunConfig;
use crate::CliError;

pub type Row = Map<String, Value>;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub command: String,
    pub config: RunConfig,
    #[serde(default, skip_serializing_if = "Map::is_empty")]
    pub summary: Map<String, Value>,
    pub results: Vec<Row>,
    pub witnesses: Vec<WitnessRecord>,
    /// Wall-clock seconds; the only field that varies between identical runs.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub timing: Option<f64>,
}

/// Matrices are flat row-major lists of `[re, im]`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum WitnessRecord {
    Eschenburg {
        p: [i64; 3],
        q: [i64; 3],
        kind: String,
        point: Vec<[f64; 2]>,
        x: Vec<[f64; 2]>,
        y: Vec<[f64; 2]>,
    },
    Bazaikin {
        q: [i64; 5],
        kind: String,
        point: Vec<[f64; 2]>,
        x: Vec<[f64; 2]>,
        y: Vec<[f64; 2]>,
    },
    Torus {
        action: TorusAction,
        q1: [f64; 4],
        q2: [f64; 4],
        v: [f64; 4],
    },
}

pub fn matrix_pairs(m: &CMatrix<f64>) -> Vec<[f64; 2]> {
    m.as_slice().iter().map(|z| [z.re, z.im]).collect()
}

fn pairs_matrix(pairs: &[[f64; 2]]) -> Result<CMatrix<f64>, String> {
    let n = (pairs.len() as f64).sqrt().round() as usize;
    if n * n != pairs.len() || n == 0 {
        return Err(format!(
            "{} entries do not form a square matrix",
            pairs.len()
        ));
    }
    CMatrix::from_rows(
        pairs
            .chunks(n)
            .map(|row| row.iter().map(|p| Complex64::new(p[0], p[1])).collect())
            .collect(),
    )
    .map_err(|e| e.to_string())
}

pub fn quat_array(q: &Quaternion<f64>) -> [f64; 4] {
    [q.w, q.x, q.y, q.z]
}

fn array_quat(a: &[f64; 4]) -> Quaternion<f64> {
    Quaternion::new(a[0], a[1], a[2], a[3])
}

fn lie_matrix(pairs: &[[f64; 2]]) -> Result<LieVector<f64>, String> {
    Ok(LieVector::Matrix(pairs_matrix(pairs)?))
}

impl WitnessRecord {
    /// Re-checks flatness and horizontality from the stored data alone.
    pub fn revalidate(&self, config: &RunConfig) -> Result<(), String> {
        let tol = Tolerances {
            bracket: config.tol_bracket,
            horiz: config.tol_horiz,
            margin: config.margin,
        };
        let ok = match self {
            WitnessRecord::Eschenburg {
                p, q, point, x, y, ..
            } => {
                let params = eschenburg::EschParams::new(*p, *q).map_err(|e| e.to_string())?;
                let ctx = SymmetricPairContext::new(PairKind::Su3U2, config.lambda)
                    .map_err(|e| e.to_string())?;
                let a = pairs_matrix(point)?;
                let v = eschenburg::vertical_vector(&params, &a).map_err(|e| e.to_string())?;
                eschenburg::validate_plane(&ctx, &lie_matrix(x)?, &lie_matrix(y)?, &v, &tol)
                    .map_err(|e| e.to_string())?
            }
            WitnessRecord::Bazaikin { q, point, x, y, .. } => {
                let params = bazaikin::BazParams::new(*q).map_err(|e| e.to_string())?;
                let ctx = SymmetricPairContext::new(PairKind::Su5U4, config.lambda)
                    .map_err(|e| e.to_string())?;
                let a = pairs_matrix(point)?;
                let vs = bazaikin::vertical_space(&params, &a).map_err(|e| e.to_string())?;
                bazaikin::validate_plane(&ctx, &lie_matrix(x)?, &lie_matrix(y)?, &vs, &tol)
                    .map_err(|e| e.to_string())?
            }
            WitnessRecord::Torus { action, q1, q2, v } => {
                let ctx = SymmetricPairContext::new(PairKind::S3S3Diag, config.lambda)
                    .map_err(|e| e.to_string())?;
                torus::validate_plane(
                    action,
                    &array_quat(q1),
                    &array_quat(q2),
                    &array_quat(v),
                    &ctx,
                    &tol,
                )
                .map_err(|e| e.to_string())?
            }
        };
        if ok {
            Ok(())
        } else {
            Err("plane is not flat and horizontal".into())
        }
    }
}

impl Report {
    /// Index and reason for every witness that fails re-validation.
    pub fn invalid_witnesses(&self) -> Vec<(usize, String)> {
        self.witnesses
            .iter()
            .enumerate()
            .filter_map(|(i, w)| w.revalidate(&self.config).err().map(|e| (i, e)))
            .collect()
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<Self, CliError> {
        serde_json::from_str(text)
            .map_err(|e| CliError::Invalid(format!("cannot parse report: {e}")))
    }

    pub fn render_text(&self) -> String {
        let mut out = String::new();
        let c = &self.config;
        let _ = writeln!(out, "command: {}", self.command);
        let _ = writeln!(
            out,
            "config: seed={} lambda={} tol_bracket={:e} tol_horiz={:e} margin={:e} samples={}",
            c.seed, c.lambda, c.tol_bracket, c.tol_horiz, c.margin, c.samples
        );
        for (k, v) in &self.summary {
            let _ = writeln!(out, "{k}: {}", cell(v));
        }
        let _ = writeln!(out, "results: {}", self.results.len());
        for row in &self.results {
            let line: Vec<String> = row
                .iter()
                .map(|(k, v)| format!("{k}={}", cell(v)))
                .collect();
            let _ = writeln!(out, "  {}", line.join(" "));
        }
        let invalid = self.invalid_witnesses().len();
        let _ = writeln!(
            out,
            "witnesses: {} ({} valid)",
            self.witnesses.len(),
            self.witnesses.len() - invalid
        );
        out
    }

    /// Result rows as CSV; columns in first-seen key order.
    pub fn render_csv(&self) -> Result<String, CliError> {
        let mut columns: Vec<&String> = Vec::new();
        for row in &self.results {
            for k in row.keys() {
                if !columns.contains(&k) {
                    columns.push(k);
                }
            }
        }
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(columns.iter().map(|c| c.as_str()))
            .map_err(io_err)?;
        for row in &self.results {
            w.write_record(
                columns
                    .iter()
                    .map(|c| row.get(*c).map(cell).unwrap_or_default()),
            )
            .map_err(io_err)?;
        }
        let bytes = w.into_inner().map_err(|e| CliError::Io(e.to_string()))?;
        Ok(String::from_utf8(bytes).expect("utf-8"))
    }
}

fn io_err(e: csv::Error) -> CliError {
    CliError::Io(e.to_string())
}

fn cell(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => String::new(),
        other => other.to_string(),
    }
}

/// Exact integer: a JSON number up to 2^53, a string beyond.
pub fn exact_int(x: i128) -> Value {
    const LIMIT: i128 = 1 << 53;
    if x.abs() <= LIMIT {
        Value::from(x as i64)
    } else {
        Value::String(x.to_string())
    }
}
