//! JSON wire formats.
//!
//! * field element: array of `m` strings `"num/den"` (power-basis coordinates)
//! * context: `{"p": p}`
//! * matrix: `{"rows": r, "cols": c, "entries": [element, …]}` in row-major order
//! * spec: `{"n": n, "k": k, "zeros": [[col, …], …]}` with 1-based columns
//!
//! Documents are written as pretty-printed JSON with a trailing newline and a
//! fixed field order, so identical inputs give byte-identical files.

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::certify::{Certificate, Provenance, Subcode};
use crate::constraints::{ConstraintError, SupportSpec};
use crate::field::{format_rational, parse_rational, CycloElement, FieldError, GaloisContext};
use crate::gabidulin::{ConstructionResult, EvaluationPoints};
use crate::gmmds::{OracleMode, OracleVerdict};
use crate::linalg::{ExactMatrix, LinalgError};

#[derive(Debug, thiserror::Error)]
pub enum IoError {
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("invalid document: {0}")]
    Invalid(String),
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error(transparent)]
    Constraint(#[from] ConstraintError),
}

/// Pretty JSON plus a trailing newline.
pub fn to_canonical_json<T: Serialize>(value: &T) -> Result<String, IoError> {
    let mut s = serde_json::to_string_pretty(value)?;
    s.push('\n');
    Ok(s)
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ContextJson {
    pub p: u32,
}

impl ContextJson {
    pub fn to_context(self) -> Result<GaloisContext, IoError> {
        Ok(GaloisContext::new(self.p)?)
    }
}

pub fn element_to_json(e: &CycloElement) -> Vec<String> {
    e.coeffs().iter().map(format_rational).collect()
}

pub fn element_from_json(ctx: &GaloisContext, coeffs: &[String]) -> Result<CycloElement, IoError> {
    let parsed = coeffs
        .iter()
        .map(|s| parse_rational(s))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(ctx.element(parsed)?)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatrixJson {
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<Vec<String>>,
}

impl MatrixJson {
    pub fn from_matrix(m: &ExactMatrix) -> Self {
        Self {
            rows: m.rows(),
            cols: m.cols(),
            entries: m.entries().iter().map(element_to_json).collect(),
        }
    }

    pub fn to_matrix(&self, ctx: &GaloisContext) -> Result<ExactMatrix, IoError> {
        let entries = self
            .entries
            .iter()
            .map(|e| element_from_json(ctx, e))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(ExactMatrix::new(ctx, self.rows, self.cols, entries)?)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpecJson {
    pub n: usize,
    pub k: usize,
    pub zeros: Vec<Vec<usize>>,
}

impl SpecJson {
    pub fn parse(text: &str) -> Result<SupportSpec, IoError> {
        serde_json::from_str::<SpecJson>(text)?.to_spec()
    }

    pub fn from_spec(spec: &SupportSpec) -> Self {
        Self {
            n: spec.n(),
            k: spec.k(),
            zeros: one_based(spec),
        }
    }

    pub fn to_spec(&self) -> Result<SupportSpec, IoError> {
        zero_based(self.n, self.k, &self.zeros)
    }
}

fn one_based(spec: &SupportSpec) -> Vec<Vec<usize>> {
    spec.zeros()
        .iter()
        .map(|z| z.iter().map(|c| c + 1).collect())
        .collect()
}

fn zero_based(n: usize, k: usize, zeros: &[Vec<usize>]) -> Result<SupportSpec, IoError> {
    let mut rows = Vec::with_capacity(zeros.len());
    for (i, z) in zeros.iter().enumerate() {
        let mut row = Vec::with_capacity(z.len());
        for &c in z {
            if c == 0 || c > n {
                return Err(IoError::Invalid(format!(
                    "row {} lists column {c}; columns are numbered 1..={n}",
                    i + 1
                )));
            }
            row.push(c - 1);
        }
        rows.push(row);
    }
    Ok(SupportSpec::new(n, k, rows)?)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PointsJson {
    pub seed: u64,
    pub sample_set_size: u64,
    pub gamma: Vec<Vec<u64>>,
    pub x: Vec<Vec<String>>,
}

/// A construction: echoed inputs, the evaluation points, and `A`, `T`, `G`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResultJson {
    pub context: ContextJson,
    pub n: usize,
    pub k: usize,
    pub zeros: Vec<Vec<usize>>,
    pub completed_zeros: Vec<Vec<usize>>,
    pub s_size: u64,
    pub seed: u64,
    pub max_retries: u32,
    pub retries: u32,
    pub points: PointsJson,
    #[serde(rename = "A")]
    pub a: MatrixJson,
    #[serde(rename = "T")]
    pub t: MatrixJson,
    #[serde(rename = "G")]
    pub g: MatrixJson,
}

impl ResultJson {
    pub fn from_result(ctx: &GaloisContext, r: &ConstructionResult) -> Self {
        Self {
            context: ContextJson { p: ctx.p() },
            n: r.spec.n(),
            k: r.spec.k(),
            zeros: one_based(&r.spec),
            completed_zeros: one_based(&r.completed),
            s_size: r.s_size,
            seed: r.seed,
            max_retries: r.max_retries,
            retries: r.retries,
            points: PointsJson {
                seed: r.points.seed,
                sample_set_size: r.points.sample_set_size,
                gamma: r.points.gamma.clone(),
                x: r.points.x.iter().map(element_to_json).collect(),
            },
            a: MatrixJson::from_matrix(&r.a),
            t: MatrixJson::from_matrix(&r.t),
            g: MatrixJson::from_matrix(&r.g),
        }
    }

    /// Rebuilds the in-memory result. The points keep the `x` listed in the
    /// document; certification checks it against `gamma`.
    pub fn to_result(&self) -> Result<(GaloisContext, ConstructionResult), IoError> {
        let ctx = self.context.to_context()?;
        let spec = zero_based(self.n, self.k, &self.zeros)?;
        let completed = zero_based(self.n, self.k, &self.completed_zeros)?;
        let x = self
            .points
            .x
            .iter()
            .map(|e| element_from_json(&ctx, e))
            .collect::<Result<Vec<_>, _>>()?;
        let points = EvaluationPoints {
            x,
            gamma: self.points.gamma.clone(),
            sample_set_size: self.points.sample_set_size,
            seed: self.points.seed,
        };
        let result = ConstructionResult {
            spec,
            completed,
            a: self.a.to_matrix(&ctx)?,
            t: self.t.to_matrix(&ctx)?,
            g: self.g.to_matrix(&ctx)?,
            points,
            s_size: self.s_size,
            seed: self.seed,
            max_retries: self.max_retries,
            retries: self.retries,
        };
        Ok((ctx, result))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubcodeJson {
    pub n: usize,
    pub k: usize,
    pub zeros: Vec<Vec<usize>>,
    pub ell: usize,
    #[serde(rename = "G_sub")]
    pub g_sub: MatrixJson,
    pub construction: ResultJson,
}

impl SubcodeJson {
    pub fn from_subcode(ctx: &GaloisContext, spec: &SupportSpec, sub: &Subcode) -> Self {
        Self {
            n: spec.n(),
            k: spec.k(),
            zeros: one_based(spec),
            ell: sub.ell,
            g_sub: MatrixJson::from_matrix(&sub.g_sub),
            construction: ResultJson::from_result(ctx, &sub.construction),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckReportJson {
    pub condition: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness_omega: Option<Vec<usize>>,
    pub ell: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleReportJson {
    pub condition: bool,
    pub det_p_nonzero: bool,
    pub mode: OracleMode,
    pub witness_point: Option<Vec<u64>>,
    pub completed_zeros: Vec<Vec<usize>>,
}

impl OracleReportJson {
    pub fn new(condition: bool, verdict: &OracleVerdict, completed: &SupportSpec) -> Self {
        Self {
            condition,
            det_p_nonzero: verdict.det_p_nonzero,
            mode: verdict.mode,
            witness_point: verdict.witness_point.clone(),
            completed_zeros: one_based(completed),
        }
    }
}

/// Attaches hashes of the serialized spec and result documents.
pub fn attach_provenance(cert: &mut Certificate, spec_json: &str, result_json: &str) {
    cert.provenance = Some(Provenance {
        spec_sha256: sha256_hex(spec_json.as_bytes()),
        result_sha256: sha256_hex(result_json.as_bytes()),
    });
}
