//! Error type shared across the crate.

use thiserror::Error;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("level count must be at least 2, got {0}")]
    TooFewLevels(usize),

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("non-finite entry at ({row}, {col})")]
    NonFinite { row: usize, col: usize },

    #[error("matrix is not square: {rows} x {cols}")]
    NotSquare { rows: usize, cols: usize },

    #[error("matrix is not Hermitian: max |M - M'| = {residual:.3e}")]
    NotHermitian { residual: f64 },

    #[error("mixing matrix is not unitary: max |u'u - I| = {residual:.3e}")]
    NotUnitary { residual: f64 },

    #[error("rate table is not symmetric: max |G - G^T| = {residual:.3e}")]
    NotSymmetric { residual: f64 },

    #[error("table is not antisymmetric: max |W + W^T| = {residual:.3e}")]
    NotAntisymmetric { residual: f64 },

    #[error("diagonal entry {index} must vanish, got {value:.3e}")]
    NonzeroDiagonal { index: usize, value: f64 },

    #[error("negative dephasing rate at ({row}, {col}): {value:.3e}")]
    NegativeRate { row: usize, col: usize, value: f64 },

    #[error("negative rate parameter: {0:.3e}")]
    NegativeParameter(f64),

    #[error("density matrix trace must be 1, got {trace:.12}")]
    TraceNotOne { trace: f64 },

    #[error("state is not positive semidefinite: min eigenvalue {min_eigenvalue:.3e}")]
    NotPositiveSemidefinite { min_eigenvalue: f64 },

    #[error("propagation time must be non-negative, got {0}")]
    NegativeTime(f64),

    #[error("operator index {index} out of range (set has {count} operators)")]
    OperatorIndexOutOfRange { index: usize, count: usize },

    #[error("time grid invalid: {0}")]
    InvalidTimeGrid(&'static str),

    #[error(
        "integration step {step:.3e} unstable for generator bound {bound:.3e} \
         (step * bound must not exceed 0.1)"
    )]
    UnstableStep { step: f64, bound: f64 },

    /// Dephasing shifts on pairs involving level 1 cannot be represented in
    /// the canonical gauge; fold them into the Hamiltonian with
    /// `intrinsic_shifts` first.
    #[error(
        "frequency shift {value:.3e} on level pair (1, {level}) is not allowed here; \
         gauge-fix the observed frequencies with intrinsic_shifts first"
    )]
    FirstLevelShift { level: usize, value: f64 },

    /// A constraint pivot went negative: the rate table is not realizable by
    /// any pure-dephasing generator. `deficit` is the violation magnitude
    /// (-d_n, positive when violated).
    #[error("complete-positivity constraint violated at level {level}: deficit {deficit:.6e}")]
    ConstraintViolation { level: usize, deficit: f64 },

    /// A level with a vanishing pivot still receives projection from a later
    /// level, so the Gram matrix is not positive semidefinite even though no
    /// pivot is negative.
    #[error(
        "level {level} has residual {residual:.6e} on the zero-pivot column of \
         level {zero_level}: rate table infeasible"
    )]
    ResidualAtZeroPivot {
        level: usize,
        zero_level: usize,
        residual: f64,
    },

    #[error("register spec needs one rate per Hamming weight 1..{qubits}, got {got}")]
    RateWeightCount { qubits: usize, got: usize },
}
