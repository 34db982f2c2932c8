//! On-disk document formats.
//!
//! Everything structured is JSON with explicit fields; trajectories and scan
//! maps are CSV with a single header line. Complex numbers are `[re, im]`
//! pairs. Levels and level pairs are 1-based in files, matching the Γ_mn
//! subscript convention.

use ndarray::Array2;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use dephasing::canonical::CanonicalSet;
use dephasing::feasibility::ConstraintReport;
use dephasing::model::{DephasingModel, DiagonalOperatorSet, RateTable};

use crate::CliError;

/// A complex number serialized as `[re, im]`.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct ComplexPair(pub f64, pub f64);

impl From<Complex64> for ComplexPair {
    fn from(z: Complex64) -> Self {
        Self(z.re, z.im)
    }
}

impl From<ComplexPair> for Complex64 {
    fn from(p: ComplexPair) -> Self {
        Complex64::new(p.0, p.1)
    }
}

/// Operator-set document. Also produced by `canonicalize`, which fills in
/// the Hamiltonian correction `dh` and leaves the canonical columns in
/// `operators`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct OperatorSetDoc {
    pub dims: usize,
    /// One diagonal per operator, each of length `dims`.
    pub operators: Vec<Vec<ComplexPair>>,
    /// Optional level energies (used by `simulate --model`).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub levels: Option<Vec<f64>>,
    /// Hamiltonian correction from canonicalization.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dh: Option<Vec<f64>>,
    /// Constraint summary attached by `invert`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub report: Option<ReportDoc>,
}

impl OperatorSetDoc {
    pub fn from_canonical(set: &CanonicalSet) -> Self {
        Self {
            dims: set.dims(),
            operators: columns_to_vecs(set.coeffs()),
            levels: None,
            dh: Some(set.dh().to_vec()),
            report: None,
        }
    }

    pub fn to_operator_set(&self) -> Result<DiagonalOperatorSet, CliError> {
        let diagonals: Vec<Vec<Complex64>> = self
            .operators
            .iter()
            .map(|col| col.iter().map(|&p| p.into()).collect())
            .collect();
        DiagonalOperatorSet::from_diagonals(self.dims, &diagonals)
            .map_err(|e| CliError::input(format!("invalid operator set: {e}")))
    }

    pub fn to_model(&self) -> Result<DephasingModel, CliError> {
        let ops = self.to_operator_set()?;
        let levels = self.levels.clone().unwrap_or_else(|| vec![0.0; self.dims]);
        DephasingModel::new(levels, ops).map_err(|e| CliError::input(format!("invalid model: {e}")))
    }
}

fn columns_to_vecs(coeffs: &Array2<Complex64>) -> Vec<Vec<ComplexPair>> {
    (0..coeffs.ncols())
        .map(|k| (0..coeffs.nrows()).map(|n| coeffs[[n, k]].into()).collect())
        .collect()
}

/// Rate-table document: upper-triangle entries as `[m, n, value]` with
/// 1-based levels and `m < n`. Every pair is written explicitly, zeros
/// included.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RateTableDoc {
    pub dims: usize,
    pub gamma: Vec<(usize, usize, f64)>,
    pub dshift: Vec<(usize, usize, f64)>,
}

impl RateTableDoc {
    pub fn from_table(rt: &RateTable) -> Self {
        let n = rt.dims();
        let mut gamma = Vec::new();
        let mut dshift = Vec::new();
        for m in 0..n {
            for q in m + 1..n {
                gamma.push((m + 1, q + 1, rt.gamma_at(m, q)));
                dshift.push((m + 1, q + 1, rt.dshift_at(m, q)));
            }
        }
        Self {
            dims: n,
            gamma,
            dshift,
        }
    }

    pub fn to_table(&self) -> Result<RateTable, CliError> {
        let convert = |pairs: &[(usize, usize, f64)],
                       what: &str|
         -> Result<Vec<(usize, usize, f64)>, CliError> {
            pairs
                .iter()
                .map(|&(m, n, v)| {
                    if m == 0 || n == 0 || m >= n || n > self.dims {
                        Err(CliError::input(format!(
                            "{what} entry ({m}, {n}) is not an upper-triangle pair \
                             of a {}-level system (1-based, m < n)",
                            self.dims
                        )))
                    } else {
                        Ok((m - 1, n - 1, v))
                    }
                })
                .collect()
        };
        let gamma = convert(&self.gamma, "gamma")?;
        let dshift = convert(&self.dshift, "dshift")?;
        RateTable::from_pairs(self.dims, &gamma, &dshift)
            .map_err(|e| CliError::input(format!("invalid rate table: {e}")))
    }
}

/// Constraint-report document.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ReportDoc {
    pub dims: usize,
    pub tol: f64,
    pub feasible: bool,
    /// `[level, d_level]` for levels 2..N; the deficit of a violated level
    /// is `-d_level`.
    pub pivots: Vec<(usize, f64)>,
    pub violated_levels: Vec<usize>,
    pub boundary_levels: Vec<usize>,
    /// `[level, zero_pivot_level, magnitude]` entries.
    pub residual_violations: Vec<(usize, usize, f64)>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub first_violated_level: Option<usize>,
}

impl ReportDoc {
    pub fn from_report(dims: usize, report: &ConstraintReport) -> Self {
        Self {
            dims,
            tol: report.tol(),
            feasible: report.feasible(),
            pivots: report
                .pivots()
                .iter()
                .enumerate()
                .map(|(i, &d)| (i + 2, d))
                .collect(),
            violated_levels: report.violated_levels().to_vec(),
            boundary_levels: report.boundary_levels().to_vec(),
            residual_violations: report
                .residual_violations()
                .iter()
                .map(|r| (r.level, r.zero_level, r.magnitude))
                .collect(),
            first_violated_level: report.first_violated_level(),
        }
    }
}

/// Parse JSON with a field path in the error message.
pub fn parse_json<T: for<'de> Deserialize<'de>>(text: &str, path: &str) -> Result<T, CliError> {
    let de = &mut serde_json::Deserializer::from_str(text);
    serde_path_to_error::deserialize(de)
        .map_err(|e| CliError::input(format!("{path}: field `{}`: {}", e.path(), e.inner())))
}

/// Serialize a document deterministically (pretty JSON, trailing newline).
pub fn to_json<T: Serialize>(doc: &T) -> String {
    let mut text = serde_json::to_string_pretty(doc).expect("documents serialize");
    text.push('\n');
    text
}

/// Fixed-width float formatting for CSV: 17 significant digits, lossless
/// for f64.
pub fn fmt_float(x: f64) -> String {
    format!("{x:.16e}")
}
