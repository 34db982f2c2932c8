//! Reduction of a diagonal operator set to its unique canonical form.
//!
//! Every pure-dephasing generator can be rewritten, without changing the
//! dynamics, so that the operator table is lower triangular in a strict
//! sense:
//!
//! * the first level carries no coefficient at all (identity shifts remove
//!   it, correcting the Hamiltonian),
//! * column k has at least k leading zeros, with the leading-zero counts
//!   strictly increasing across columns,
//! * the first non-zero entry of each column is real and non-negative,
//! * there are at most N-1 columns.
//!
//! The reduction runs row by row: within the still-unfixed columns, 2x2
//! unitary mixes annihilate entries of the current row until at most one
//! column remains non-zero there; that column is frozen. The accumulated
//! identity shifts leave a real diagonal Hamiltonian correction `dH` which
//! is reported alongside the coefficients: the pair (coefficients, dH) is
//! dynamically equivalent to the input operator set.

use ndarray::Array2;
use num_complex::Complex64;

use crate::dynamics::generator_action;
use crate::error::{Error, Result};
use crate::linalg;
use crate::model::{DephasingModel, DiagonalOperatorSet};

/// Relative threshold that separates "zero" entries from live ones during
/// elimination. Scaled by the largest coefficient magnitude after the
/// first-row shift.
pub const ZERO_THRESHOLD_REL: f64 = 1e-12;

/// Absolute residual below which two models count as generating the same
/// dynamics.
pub const EQUIVALENCE_TOL: f64 = 1e-10;

/// Canonical coefficient table plus the Hamiltonian correction accumulated
/// while gauging away the first level.
///
/// Columns are stored compacted (no zero columns); column `j` has its first
/// super-threshold entry at a strictly larger row than column `j - 1`. The
/// correction `dh` composes additively: a model with levels `λ` and these
/// operators plus `dh` reproduces the original model with levels `λ`.
#[derive(Debug, Clone, PartialEq)]
pub struct CanonicalSet {
    coeffs: Array2<Complex64>,
    dh: Vec<f64>,
}

impl CanonicalSet {
    /// Assemble from raw parts. Only shape and finiteness are enforced here;
    /// use [`canonical_defect`] to test the structural invariants, which
    /// keeps deliberately malformed sets representable.
    pub fn from_parts(coeffs: Array2<Complex64>, dh: Vec<f64>) -> Result<Self> {
        if coeffs.nrows() < 2 {
            return Err(Error::TooFewLevels(coeffs.nrows()));
        }
        if dh.len() != coeffs.nrows() {
            return Err(Error::DimensionMismatch {
                expected: coeffs.nrows(),
                got: dh.len(),
            });
        }
        linalg::check_finite(&coeffs)?;
        if let Some(pos) = dh.iter().position(|x| !x.is_finite()) {
            return Err(Error::NonFinite { row: pos, col: 0 });
        }
        Ok(Self { coeffs, dh })
    }

    pub fn dims(&self) -> usize {
        self.coeffs.nrows()
    }

    pub fn num_operators(&self) -> usize {
        self.coeffs.ncols()
    }

    pub fn coeffs(&self) -> &Array2<Complex64> {
        &self.coeffs
    }

    /// Hamiltonian correction, one real entry per level.
    pub fn dh(&self) -> &[f64] {
        &self.dh
    }

    /// Number of exactly-zero leading entries of column `k`.
    pub fn leading_zeros(&self, k: usize) -> usize {
        let n = self.dims();
        for row in 0..n {
            if self.coeffs[[row, k]] != Complex64::new(0.0, 0.0) {
                return row;
            }
        }
        n
    }

    /// The coefficients viewed as a plain operator set (dropping `dh`).
    pub fn to_operator_set(&self) -> DiagonalOperatorSet {
        DiagonalOperatorSet::new(self.coeffs.clone()).expect("canonical coefficients are valid")
    }

    /// Model formed by these operators with `base_levels + dh` as energies.
    pub fn to_model(&self, base_levels: &[f64]) -> Result<DephasingModel> {
        if base_levels.len() != self.dims() {
            return Err(Error::DimensionMismatch {
                expected: self.dims(),
                got: base_levels.len(),
            });
        }
        let levels: Vec<f64> = base_levels
            .iter()
            .zip(&self.dh)
            .map(|(a, b)| a + b)
            .collect();
        DephasingModel::new(levels, self.to_operator_set())
    }
}

/// First canonical invariant violated by a set, if any.
#[derive(Debug, Clone, PartialEq)]
pub enum CanonicalDefect {
    /// Row 1 must vanish (identity components are gauge).
    NonzeroFirstRow { col: usize },
    /// A stored column is entirely below threshold.
    ZeroColumn { col: usize },
    /// The first non-zero entry of a column must be real and non-negative.
    LeadingEntryNotRealNonnegative { col: usize },
    /// Leading-zero counts must increase strictly across columns.
    LeadsNotStrictlyIncreasing { col: usize },
    /// A canonical set on N levels has at most N-1 operators.
    TooManyColumns { count: usize, max: usize },
}

impl std::fmt::Display for CanonicalDefect {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Self::NonzeroFirstRow { col } => {
                write!(f, "column {col} has a non-zero entry in the first row")
            }
            Self::ZeroColumn { col } => write!(f, "column {col} is identically zero"),
            Self::LeadingEntryNotRealNonnegative { col } => {
                write!(
                    f,
                    "column {col} has a leading entry that is not real non-negative"
                )
            }
            Self::LeadsNotStrictlyIncreasing { col } => write!(
                f,
                "column {col} does not extend the strictly increasing leading-zero pattern"
            ),
            Self::TooManyColumns { count, max } => {
                write!(f, "{count} columns exceed the canonical maximum of {max}")
            }
        }
    }
}

/// Check the canonical invariants at relative tolerance `1e-12` and report
/// the first violation.
pub fn canonical_defect(set: &CanonicalSet) -> Option<CanonicalDefect> {
    let n = set.dims();
    let k = set.num_operators();
    if k > n - 1 {
        return Some(CanonicalDefect::TooManyColumns {
            count: k,
            max: n - 1,
        });
    }
    let tol = ZERO_THRESHOLD_REL * linalg::max_abs(set.coeffs());
    let mut previous_lead: Option<usize> = None;
    for col in 0..k {
        if set.coeffs()[[0, col]].norm() > tol {
            return Some(CanonicalDefect::NonzeroFirstRow { col });
        }
        let lead = (0..n).find(|&row| set.coeffs()[[row, col]].norm() > tol);
        let Some(lead) = lead else {
            return Some(CanonicalDefect::ZeroColumn { col });
        };
        let pivot = set.coeffs()[[lead, col]];
        if pivot.im.abs() > tol || pivot.re < 0.0 {
            return Some(CanonicalDefect::LeadingEntryNotRealNonnegative { col });
        }
        if let Some(prev) = previous_lead {
            if lead <= prev {
                return Some(CanonicalDefect::LeadsNotStrictlyIncreasing { col });
            }
        }
        previous_lead = Some(lead);
    }
    None
}

/// Convenience wrapper over [`canonical_defect`].
pub fn is_canonical(set: &CanonicalSet) -> bool {
    canonical_defect(set).is_none()
}

/// Transform an operator set to canonical form.
///
/// Deterministic: elimination always combines the two leftmost live columns
/// of the current row, zero columns are removed once at the end, and column
/// phases are fixed so each leading entry is real non-negative.
pub fn canonicalize(ops: &DiagonalOperatorSet) -> CanonicalSet {
    let n = ops.dims();
    let k_in = ops.num_operators();
    let mut a = ops.coeffs().clone();
    let mut dh = vec![0.0; n];

    // Step 1: identity shifts α_k = -a_{1k} zero the first row; the
    // compensating Hamiltonian correction accumulates in dh.
    for k in 0..k_in {
        let alpha = -a[[0, k]];
        for row in 0..n {
            dh[row] -= (alpha * a[[row, k]].conj()).im;
        }
        for row in 1..n {
            a[[row, k]] += alpha;
        }
        a[[0, k]] = Complex64::new(0.0, 0.0);
    }

    let scale = linalg::max_abs(&a);
    let threshold = if scale > 0.0 {
        ZERO_THRESHOLD_REL * scale
    } else {
        0.0
    };

    // Step 2: eliminate row by row among the not-yet-fixed columns.
    let mut fixed = 0usize;
    for row in 1..n {
        loop {
            let mut live = (fixed..k_in).filter(|&c| a[[row, c]].norm() > threshold);
            let (Some(i1), Some(i2)) = (live.next(), live.next()) else {
                break;
            };
            let v1 = a[[row, i1]];
            let v2 = a[[row, i2]];
            let r1 = v1.norm();
            let r2 = v2.norm();
            let u1 = v1 / r1;
            let u2 = v2 / r2;
            let norm = r1.hypot(r2);
            for r in 0..n {
                let x = a[[r, i1]];
                let y = a[[r, i2]];
                a[[r, i1]] = (u2 * x * r1 + u1 * y * r2) / norm;
                a[[r, i2]] = (u1.conj() * x * r2 - u2.conj() * y * r1) / norm;
            }
            a[[row, i2]] = Complex64::new(0.0, 0.0);
        }
        if let Some(col) = (fixed..k_in).find(|&c| a[[row, c]].norm() > threshold) {
            if col != fixed {
                for r in 0..n {
                    a.swap([r, fixed], [r, col]);
                }
            }
            fixed += 1;
        }
    }

    // Step 3: compact to the fixed columns, clear sub-threshold junk above
    // each pivot, and rotate the column phase onto the pivot.
    let mut coeffs = Array2::zeros((n, fixed));
    for col in 0..fixed {
        let lead = (0..n)
            .find(|&r| a[[r, col]].norm() > threshold)
            .expect("fixed column has a pivot");
        let pivot = a[[lead, col]];
        let needs_phase = pivot.im != 0.0 || pivot.re < 0.0;
        let phase = pivot.conj() / pivot.norm();
        // keep the pivot's bits when it is already real non-negative, so a
        // canonical input round-trips unchanged
        coeffs[[lead, col]] = if needs_phase {
            Complex64::new(pivot.norm(), 0.0)
        } else {
            pivot
        };
        for r in lead + 1..n {
            coeffs[[r, col]] = if needs_phase {
                a[[r, col]] * phase
            } else {
                a[[r, col]]
            };
        }
    }

    CanonicalSet { coeffs, dh }
}

/// Maximum deviation of the two generators over all matrix units.
pub fn equivalence_residual(m1: &DephasingModel, m2: &DephasingModel) -> Result<f64> {
    let n = m1.dims();
    if m2.dims() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: m2.dims(),
        });
    }
    let mut unit = Array2::<Complex64>::zeros((n, n));
    let mut residual = 0.0f64;
    for r in 0..n {
        for s in 0..n {
            unit[[r, s]] = Complex64::new(1.0, 0.0);
            let a = generator_action(m1, &unit)?;
            let b = generator_action(m2, &unit)?;
            residual = residual.max(linalg::max_abs(&(a - b)));
            unit[[r, s]] = Complex64::new(0.0, 0.0);
        }
    }
    Ok(residual)
}

/// Whether two models generate the same dynamics, at [`EQUIVALENCE_TOL`].
pub fn equivalent(m1: &DephasingModel, m2: &DephasingModel) -> Result<bool> {
    Ok(equivalence_residual(m1, m2)? <= EQUIVALENCE_TOL)
}
