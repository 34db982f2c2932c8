//! Domain types for pure-dephasing generators: diagonal Lindblad operator
//! sets, the rate/shift observables they produce, and analytic propagation
//! of density-matrix elements.
//!
//! An N-level pure-dephasing process is fixed by a diagonal Hamiltonian
//! `H = diag(λ_n)` and K diagonal Lindblad operators `V_k = diag(a_nk)`.
//! Coherences evolve as `ρ_mn(t) = e^{-t(iω_mn + Γ_mn)} ρ_mn(0)` with
//!
//! ```text
//! Γ_mn  = Σ_k ½(|a_mk|² + |a_nk|²) - Re(a_mk a*_nk)
//! Δω_mn = -Σ_k Im(a_mk a*_nk)
//! ω_mn  = λ_m - λ_n + Δω_mn
//! ```
//!
//! Populations never move: `Γ_nn = ω_nn = 0`.

use ndarray::Array2;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg;

/// Relative tolerance for structural checks (symmetry, Hermiticity) on
/// constructor input.
const STRUCT_TOL: f64 = 1e-9;

/// A set of K diagonal Lindblad operators on N levels.
///
/// Stored as an N x K complex table; entry `(n, k)` is the n-th diagonal
/// element of the k-th operator, in units of sqrt(rate). K = 0 is allowed
/// and means no dissipation.
#[derive(Debug, Clone, PartialEq)]
pub struct DiagonalOperatorSet {
    coeffs: Array2<Complex64>,
}

impl DiagonalOperatorSet {
    pub fn new(coeffs: Array2<Complex64>) -> Result<Self> {
        if coeffs.nrows() < 2 {
            return Err(Error::TooFewLevels(coeffs.nrows()));
        }
        linalg::check_finite(&coeffs)?;
        Ok(Self { coeffs })
    }

    /// Build from one diagonal per operator.
    pub fn from_diagonals(dims: usize, diagonals: &[Vec<Complex64>]) -> Result<Self> {
        let mut coeffs = Array2::zeros((dims, diagonals.len()));
        for (k, diag) in diagonals.iter().enumerate() {
            if diag.len() != dims {
                return Err(Error::DimensionMismatch {
                    expected: dims,
                    got: diag.len(),
                });
            }
            for (n, &z) in diag.iter().enumerate() {
                coeffs[[n, k]] = z;
            }
        }
        Self::new(coeffs)
    }

    /// The empty set: no dissipation at all.
    pub fn empty(dims: usize) -> Result<Self> {
        Self::new(Array2::zeros((dims, 0)))
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

    /// Diagonal of operator `k` as a dense matrix.
    pub fn operator_matrix(&self, k: usize) -> Array2<Complex64> {
        let n = self.dims();
        let mut m = Array2::zeros((n, n));
        for row in 0..n {
            m[[row, row]] = self.coeffs[[row, k]];
        }
        m
    }
}

/// Level energies plus a diagonal operator set: the full generator of a pure
/// dephasing process.
#[derive(Debug, Clone, PartialEq)]
pub struct DephasingModel {
    levels: Vec<f64>,
    ops: DiagonalOperatorSet,
}

impl DephasingModel {
    pub fn new(levels: Vec<f64>, ops: DiagonalOperatorSet) -> Result<Self> {
        if levels.len() != ops.dims() {
            return Err(Error::DimensionMismatch {
                expected: ops.dims(),
                got: levels.len(),
            });
        }
        if let Some(pos) = levels.iter().position(|x| !x.is_finite()) {
            return Err(Error::NonFinite { row: pos, col: 0 });
        }
        Ok(Self { levels, ops })
    }

    /// Model with H = 0.
    pub fn without_hamiltonian(ops: DiagonalOperatorSet) -> Self {
        let levels = vec![0.0; ops.dims()];
        Self { levels, ops }
    }

    pub fn dims(&self) -> usize {
        self.ops.dims()
    }

    pub fn levels(&self) -> &[f64] {
        &self.levels
    }

    pub fn ops(&self) -> &DiagonalOperatorSet {
        &self.ops
    }

    pub fn hamiltonian(&self) -> Array2<Complex64> {
        let n = self.dims();
        let mut h = Array2::zeros((n, n));
        for i in 0..n {
            h[[i, i]] = Complex64::new(self.levels[i], 0.0);
        }
        h
    }
}

/// Observable dephasing rates Γ_mn (symmetric, non-negative, zero diagonal)
/// and dephasing-induced frequency shifts Δω_mn (antisymmetric).
#[derive(Debug, Clone, PartialEq)]
pub struct RateTable {
    gamma: Array2<f64>,
    dshift: Array2<f64>,
}

impl RateTable {
    pub fn new(gamma: Array2<f64>, dshift: Array2<f64>) -> Result<Self> {
        let n = gamma.nrows();
        if n < 2 {
            return Err(Error::TooFewLevels(n));
        }
        if gamma.ncols() != n {
            return Err(Error::NotSquare {
                rows: n,
                cols: gamma.ncols(),
            });
        }
        if dshift.nrows() != n || dshift.ncols() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: dshift.nrows().max(dshift.ncols()),
            });
        }
        for ((r, c), x) in gamma.indexed_iter() {
            if !x.is_finite() {
                return Err(Error::NonFinite { row: r, col: c });
            }
        }
        for ((r, c), x) in dshift.indexed_iter() {
            if !x.is_finite() {
                return Err(Error::NonFinite { row: r, col: c });
            }
        }
        let scale = gamma
            .iter()
            .chain(dshift.iter())
            .fold(0.0f64, |a, x| a.max(x.abs()));
        let tol = STRUCT_TOL * scale.max(1.0);
        let mut sym = 0.0f64;
        let mut asym = 0.0f64;
        for m in 0..n {
            for k in 0..n {
                sym = sym.max((gamma[[m, k]] - gamma[[k, m]]).abs());
                asym = asym.max((dshift[[m, k]] + dshift[[k, m]]).abs());
            }
        }
        if sym > tol {
            return Err(Error::NotSymmetric { residual: sym });
        }
        if asym > tol {
            return Err(Error::NotAntisymmetric { residual: asym });
        }
        for i in 0..n {
            if gamma[[i, i]].abs() > tol {
                return Err(Error::NonzeroDiagonal {
                    index: i,
                    value: gamma[[i, i]],
                });
            }
        }
        // normalize storage to exact symmetry classes
        let mut g = Array2::zeros((n, n));
        let mut w = Array2::zeros((n, n));
        for m in 0..n {
            for k in m + 1..n {
                let val = 0.5 * (gamma[[m, k]] + gamma[[k, m]]);
                if val < -tol {
                    return Err(Error::NegativeRate {
                        row: m,
                        col: k,
                        value: val,
                    });
                }
                let val = val.max(0.0);
                g[[m, k]] = val;
                g[[k, m]] = val;
                let sh = 0.5 * (dshift[[m, k]] - dshift[[k, m]]);
                w[[m, k]] = sh;
                w[[k, m]] = -sh;
            }
        }
        Ok(Self {
            gamma: g,
            dshift: w,
        })
    }

    /// All-zero table (no dephasing at all).
    pub fn zeros(dims: usize) -> Result<Self> {
        Self::new(Array2::zeros((dims, dims)), Array2::zeros((dims, dims)))
    }

    /// Build from upper-triangle entries, 0-based indices with `m < n`.
    pub fn from_pairs(
        dims: usize,
        gamma_pairs: &[(usize, usize, f64)],
        dshift_pairs: &[(usize, usize, f64)],
    ) -> Result<Self> {
        let mut gamma = Array2::zeros((dims, dims));
        let mut dshift = Array2::zeros((dims, dims));
        for &(m, n, v) in gamma_pairs {
            if m >= n || n >= dims {
                return Err(Error::DimensionMismatch {
                    expected: dims,
                    got: n.max(m),
                });
            }
            gamma[[m, n]] = v;
            gamma[[n, m]] = v;
        }
        for &(m, n, v) in dshift_pairs {
            if m >= n || n >= dims {
                return Err(Error::DimensionMismatch {
                    expected: dims,
                    got: n.max(m),
                });
            }
            dshift[[m, n]] = v;
            dshift[[n, m]] = -v;
        }
        Self::new(gamma, dshift)
    }

    pub fn dims(&self) -> usize {
        self.gamma.nrows()
    }

    pub fn gamma(&self) -> &Array2<f64> {
        &self.gamma
    }

    pub fn dshift(&self) -> &Array2<f64> {
        &self.dshift
    }

    pub fn gamma_at(&self, m: usize, n: usize) -> f64 {
        self.gamma[[m, n]]
    }

    pub fn dshift_at(&self, m: usize, n: usize) -> f64 {
        self.dshift[[m, n]]
    }
}

/// An N x N density matrix: Hermitian with unit trace.
///
/// Positive semidefiniteness is deliberately *not* enforced at construction;
/// propagation under infeasible rate tables produces states with negative
/// eigenvalues, and representing those is the point of the minimum-eigenvalue
/// diagnostics. Use [`DensityMatrix::min_eigenvalue`] to check validity.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    entries: Array2<Complex64>,
}

impl DensityMatrix {
    pub fn new(entries: Array2<Complex64>) -> Result<Self> {
        let n = entries.nrows();
        if n < 2 {
            return Err(Error::TooFewLevels(n));
        }
        if entries.ncols() != n {
            return Err(Error::NotSquare {
                rows: n,
                cols: entries.ncols(),
            });
        }
        linalg::check_finite(&entries)?;
        let scale = linalg::max_abs(&entries);
        let residual = linalg::hermiticity_residual(&entries);
        if residual > STRUCT_TOL * scale.max(1.0) {
            return Err(Error::NotHermitian { residual });
        }
        let trace: Complex64 = (0..n).map(|i| entries[[i, i]]).sum();
        if (trace.re - 1.0).abs() > STRUCT_TOL || trace.im.abs() > STRUCT_TOL {
            return Err(Error::TraceNotOne { trace: trace.re });
        }
        Ok(Self { entries })
    }

    /// Outer product of a normalized pure state.
    pub fn from_pure(amplitudes: &[Complex64]) -> Result<Self> {
        let n = amplitudes.len();
        let mut entries = Array2::zeros((n, n));
        for m in 0..n {
            for k in 0..n {
                entries[[m, k]] = amplitudes[m] * amplitudes[k].conj();
            }
        }
        Self::new(entries)
    }

    /// The fully coherent state: every entry equal to 1/N.
    pub fn uniform(dims: usize) -> Result<Self> {
        let v = Complex64::new(1.0 / dims as f64, 0.0);
        Self::new(Array2::from_elem((dims, dims), v))
    }

    pub fn dims(&self) -> usize {
        self.entries.nrows()
    }

    pub fn entries(&self) -> &Array2<Complex64> {
        &self.entries
    }

    pub fn entry(&self, m: usize, n: usize) -> Complex64 {
        self.entries[[m, n]]
    }

    /// Smallest eigenvalue; negative values flag a non-physical state.
    pub fn min_eigenvalue(&self) -> Result<f64> {
        let values = linalg::hermitian_eigenvalues(&self.entries)?;
        Ok(values[0])
    }

    pub fn is_positive_semidefinite(&self, tol: f64) -> Result<bool> {
        Ok(self.min_eigenvalue()? >= -tol)
    }
}

/// Dephasing rates and frequency shifts generated by an operator set.
///
/// Evaluates the sums over operators directly; tiny negative rate values
/// from rounding are clamped to zero.
pub fn rates_from_operators(ops: &DiagonalOperatorSet) -> RateTable {
    let n = ops.dims();
    let coeffs = ops.coeffs();
    let mut gamma = Array2::zeros((n, n));
    let mut dshift = Array2::zeros((n, n));
    let mut scale = 0.0f64;
    for m in 0..n {
        for q in m + 1..n {
            let mut g = 0.0;
            let mut w = 0.0;
            for k in 0..ops.num_operators() {
                let am = coeffs[[m, k]];
                let an = coeffs[[q, k]];
                let cross = am * an.conj();
                g += 0.5 * (am.norm_sqr() + an.norm_sqr()) - cross.re;
                w -= cross.im;
            }
            scale = scale.max(g.abs()).max(w.abs());
            gamma[[m, q]] = g;
            gamma[[q, m]] = g;
            dshift[[m, q]] = w;
            dshift[[q, m]] = -w;
        }
    }
    // clamp rounding residue so the table constructor's Γ >= 0 check holds
    let clamp = 1e-12 * scale.max(1.0);
    gamma.mapv_inplace(|x| if x < 0.0 && x > -clamp { 0.0 } else { x });
    RateTable::new(gamma, dshift).expect("operator-generated rate table is valid")
}

/// Effective frequencies `ω_mn = λ_m - λ_n + Δω_mn`.
pub fn effective_frequencies(levels: &[f64], rates: &RateTable) -> Result<Array2<f64>> {
    let n = rates.dims();
    if levels.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: levels.len(),
        });
    }
    let mut omega = Array2::zeros((n, n));
    for m in 0..n {
        for k in 0..n {
            omega[[m, k]] = levels[m] - levels[k] + rates.dshift_at(m, k);
        }
    }
    Ok(omega)
}

/// Analytic propagation: each element is multiplied by
/// `e^{-t(iω_mn + Γ_mn)}`. Diagonal elements never move.
pub fn propagate(
    rates: &RateTable,
    freqs: &Array2<f64>,
    rho0: &DensityMatrix,
    t: f64,
) -> Result<DensityMatrix> {
    let n = rates.dims();
    if !t.is_finite() || t < 0.0 {
        return Err(Error::NegativeTime(t));
    }
    if rho0.dims() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: rho0.dims(),
        });
    }
    if freqs.nrows() != n || freqs.ncols() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: freqs.nrows().max(freqs.ncols()),
        });
    }
    let wscale = freqs.iter().fold(0.0f64, |a, x| a.max(x.abs()));
    let mut asym = 0.0f64;
    for m in 0..n {
        for k in m..n {
            asym = asym.max((freqs[[m, k]] + freqs[[k, m]]).abs());
        }
    }
    if asym > STRUCT_TOL * wscale.max(1.0) {
        return Err(Error::NotAntisymmetric { residual: asym });
    }
    let mut entries = rho0.entries().clone();
    for m in 0..n {
        for k in 0..n {
            if m == k {
                continue;
            }
            let decay = (-t * rates.gamma_at(m, k)).exp();
            let phase = Complex64::from_polar(1.0, -t * freqs[[m, k]]);
            entries[[m, k]] *= decay * phase;
        }
    }
    DensityMatrix::new(entries)
}
