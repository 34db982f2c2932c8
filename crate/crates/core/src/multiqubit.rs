//! Multi-qubit registers under collective dephasing: rate tables indexed by
//! Hamming distance, Wootters concurrence, the Bell and cluster-state decay
//! trajectories, minimum-eigenvalue diagnostics, and the two-parameter
//! feasibility scan for three qubits.
//!
//! Basis states are numbered 1..2^n in binary order, `|1> = |0...0>`, so the
//! Hamming distance between two basis labels counts the qubits on which a
//! coherence is non-local.

use ndarray::Array2;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::feasibility::{constraint_report, ConstraintReport};
use crate::linalg;
use crate::model::{propagate, DensityMatrix, RateTable};

/// States are accepted as physical down to this eigenvalue floor.
pub const PSD_TOL: f64 = 1e-10;

/// Collective rate assignment for an n-qubit register: one dephasing rate
/// per Hamming weight, `rate_by_weight[h-1]` for coherences between basis
/// states h bit-flips apart.
#[derive(Debug, Clone, PartialEq)]
pub struct RegisterRateSpec {
    qubits: usize,
    rate_by_weight: Vec<f64>,
}

impl RegisterRateSpec {
    pub fn new(qubits: usize, rate_by_weight: Vec<f64>) -> Result<Self> {
        if qubits < 2 {
            return Err(Error::TooFewLevels(qubits));
        }
        if rate_by_weight.len() != qubits {
            return Err(Error::RateWeightCount {
                qubits,
                got: rate_by_weight.len(),
            });
        }
        for &r in &rate_by_weight {
            if !r.is_finite() || r < 0.0 {
                return Err(Error::NegativeParameter(r));
            }
        }
        Ok(Self {
            qubits,
            rate_by_weight,
        })
    }

    pub fn qubits(&self) -> usize {
        self.qubits
    }

    pub fn rate_by_weight(&self) -> &[f64] {
        &self.rate_by_weight
    }

    /// Hilbert-space dimension 2^n.
    pub fn dims(&self) -> usize {
        1 << self.qubits
    }
}

/// Expand a register spec to the full 2^n-level rate table; shifts vanish.
pub fn register_rate_table(spec: &RegisterRateSpec) -> RateTable {
    let dims = spec.dims();
    let mut gamma = Array2::zeros((dims, dims));
    for m in 0..dims {
        for n in m + 1..dims {
            let weight = (m ^ n).count_ones() as usize;
            let rate = spec.rate_by_weight[weight - 1];
            gamma[[m, n]] = rate;
            gamma[[n, m]] = rate;
        }
    }
    RateTable::new(gamma, Array2::zeros((dims, dims))).expect("register table is valid")
}

/// Wootters concurrence of a two-qubit state.
///
/// Computed along the Hermitian route: with the spin-flipped state
/// `ρ~ = (σy⊗σy) ρ* (σy⊗σy)`, the concurrence is
/// `max(0, λ1 - λ2 - λ3 - λ4)` where λi are the descending square roots of
/// the eigenvalues of `√ρ ρ~ √ρ`. States with eigenvalues below `-1e-10`
/// are rejected; the measure is undefined for non-states.
pub fn concurrence(rho: &DensityMatrix) -> Result<f64> {
    if rho.dims() != 4 {
        return Err(Error::DimensionMismatch {
            expected: 4,
            got: rho.dims(),
        });
    }
    let sqrt_rho = linalg::hermitian_sqrt(rho.entries(), PSD_TOL)?;
    let flipped = spin_flip(rho.entries());
    let m = sqrt_rho.dot(&flipped).dot(&sqrt_rho);
    // symmetrize away the rounding skew before the second eigensolve
    let mut m_h = &m + &m.mapv(|z| z.conj()).reversed_axes();
    m_h.mapv_inplace(|z| 0.5 * z);
    let mut lambdas: Vec<f64> = linalg::hermitian_eigenvalues(&m_h)?
        .into_iter()
        .map(|w| w.max(0.0).sqrt())
        .collect();
    lambdas.reverse();
    Ok((lambdas[0] - lambdas[1] - lambdas[2] - lambdas[3]).max(0.0))
}

/// `(σy ⊗ σy) ρ* (σy ⊗ σy)`.
fn spin_flip(rho: &Array2<Complex64>) -> Array2<Complex64> {
    let mut yy = Array2::<Complex64>::zeros((4, 4));
    yy[[0, 3]] = Complex64::new(-1.0, 0.0);
    yy[[1, 2]] = Complex64::new(1.0, 0.0);
    yy[[2, 1]] = Complex64::new(1.0, 0.0);
    yy[[3, 0]] = Complex64::new(-1.0, 0.0);
    let conj = rho.mapv(|z| z.conj());
    yy.dot(&conj).dot(&yy)
}

/// One sample of a two-qubit decay trajectory.
#[derive(Debug, Clone)]
pub struct TrajectoryPoint {
    pub t: f64,
    pub state: DensityMatrix,
    pub concurrence: f64,
}

/// The Bell state `(|00> + |11>)/√2`.
pub fn bell_state() -> DensityMatrix {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let amp = [
        Complex64::new(s, 0.0),
        Complex64::new(0.0, 0.0),
        Complex64::new(0.0, 0.0),
        Complex64::new(s, 0.0),
    ];
    DensityMatrix::from_pure(&amp).expect("Bell state is a valid state")
}

/// The two-qubit cluster state `(|00> + |01> + |10> - |11>)/2`.
pub fn cluster_state() -> DensityMatrix {
    let amp = [
        Complex64::new(0.5, 0.0),
        Complex64::new(0.5, 0.0),
        Complex64::new(0.5, 0.0),
        Complex64::new(-0.5, 0.0),
    ];
    DensityMatrix::from_pure(&amp).expect("cluster state is a valid state")
}

/// Bell-state decay under pure dephasing: only the (1,4) coherence moves,
/// so `C(t) = e^{-t Γ14}` and the entanglement never dies suddenly.
pub fn bell_trajectory(gamma14: f64, t_grid: &[f64]) -> Result<Vec<TrajectoryPoint>> {
    if !gamma14.is_finite() || gamma14 < 0.0 {
        return Err(Error::NegativeParameter(gamma14));
    }
    let rates = two_qubit_rate_table(0.0, 0.0, gamma14)?;
    trajectory(&rates, &bell_state(), t_grid)
}

/// Cluster-state decay with local rate `gamma` and non-local rates
/// `gamma23`, `gamma14`.
pub fn cluster_trajectory(
    gamma: f64,
    gamma23: f64,
    gamma14: f64,
    t_grid: &[f64],
) -> Result<Vec<TrajectoryPoint>> {
    for &g in &[gamma, gamma23, gamma14] {
        if !g.is_finite() || g < 0.0 {
            return Err(Error::NegativeParameter(g));
        }
    }
    let rates = two_qubit_rate_table(gamma, gamma23, gamma14)?;
    trajectory(&rates, &cluster_state(), t_grid)
}

/// Two-qubit table with equal local rates `gamma` on all four weight-1
/// pairs and individual non-local rates for the (2,3) and (1,4) coherences.
pub fn two_qubit_rate_table(gamma: f64, gamma23: f64, gamma14: f64) -> Result<RateTable> {
    for &g in &[gamma, gamma23, gamma14] {
        if !g.is_finite() || g < 0.0 {
            return Err(Error::NegativeParameter(g));
        }
    }
    RateTable::from_pairs(
        4,
        &[
            (0, 1, gamma),
            (0, 2, gamma),
            (1, 3, gamma),
            (2, 3, gamma),
            (1, 2, gamma23),
            (0, 3, gamma14),
        ],
        &[],
    )
}

fn trajectory(
    rates: &RateTable,
    initial: &DensityMatrix,
    t_grid: &[f64],
) -> Result<Vec<TrajectoryPoint>> {
    let freqs = Array2::zeros((4, 4));
    let mut out = Vec::with_capacity(t_grid.len());
    for &t in t_grid {
        let state = propagate(rates, &freqs, initial, t)?;
        let c = concurrence(&state)?;
        out.push(TrajectoryPoint {
            t,
            state,
            concurrence: c,
        });
    }
    Ok(out)
}

/// One sample of the minimum-eigenvalue diagnostic.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MinEigPoint {
    pub t: f64,
    pub min_eigenvalue: f64,
}

/// Minimum eigenvalue of the fully coherent two-qubit state (all entries
/// 1/4) evolved with local rate `gamma` and non-local rates `μ gamma`.
///
/// Dips below zero for some t exactly when `μ > 2`; this is the signature
/// of a complete-positivity violation.
pub fn min_eig_trajectory(mu: f64, gamma: f64, t_grid: &[f64]) -> Result<Vec<MinEigPoint>> {
    if !mu.is_finite() || mu < 0.0 {
        return Err(Error::NegativeParameter(mu));
    }
    if !gamma.is_finite() || gamma < 0.0 {
        return Err(Error::NegativeParameter(gamma));
    }
    let rates = two_qubit_rate_table(gamma, mu * gamma, mu * gamma)?;
    let rho0 = DensityMatrix::uniform(4)?;
    let freqs = Array2::zeros((4, 4));
    let mut out = Vec::with_capacity(t_grid.len());
    for &t in t_grid {
        let state = propagate(&rates, &freqs, &rho0, t)?;
        out.push(MinEigPoint {
            t,
            min_eigenvalue: state.min_eigenvalue()?,
        });
    }
    Ok(out)
}

/// Verdict for one `(μ1, μ2)` grid point of the three-qubit scan.
#[derive(Debug, Clone, PartialEq)]
pub struct ScanPoint {
    pub mu1: f64,
    pub mu2: f64,
    pub feasible: bool,
    /// Level (2..8) at which the constraint hierarchy first failed.
    pub first_violated_level: Option<usize>,
}

/// Feasibility map for a three-qubit register with local rate `gamma`,
/// two-qubit rates `μ1 gamma`, and three-qubit rates `μ2 gamma`.
///
/// Points are emitted row-major: `mu1` outer, `mu2` inner.
pub fn three_qubit_scan(mu1_grid: &[f64], mu2_grid: &[f64], gamma: f64) -> Result<Vec<ScanPoint>> {
    if !gamma.is_finite() || gamma < 0.0 {
        return Err(Error::NegativeParameter(gamma));
    }
    for &m in mu1_grid.iter().chain(mu2_grid) {
        if !m.is_finite() || m < 0.0 {
            return Err(Error::NegativeParameter(m));
        }
    }
    let mut out = Vec::with_capacity(mu1_grid.len() * mu2_grid.len());
    for &mu1 in mu1_grid {
        for &mu2 in mu2_grid {
            let report = scan_report(mu1, mu2, gamma)?;
            out.push(ScanPoint {
                mu1,
                mu2,
                feasible: report.feasible(),
                first_violated_level: report.first_violated_level(),
            });
        }
    }
    Ok(out)
}

/// Constraint report for a single three-qubit rate assignment.
pub fn scan_report(mu1: f64, mu2: f64, gamma: f64) -> Result<ConstraintReport> {
    let spec = RegisterRateSpec::new(3, vec![gamma, mu1 * gamma, mu2 * gamma])?;
    constraint_report(&register_rate_table(&spec), None)
}

/// Two-qubit speed-limit summary for one qubit pair of a register.
#[derive(Debug, Clone, PartialEq)]
pub struct PairSpeedLimit {
    /// Qubit indices, 0-based.
    pub pair: (usize, usize),
    /// Local rate seen inside the pair subspace.
    pub local_rate: f64,
    /// Sum of the two non-local rates of the pair subspace.
    pub nonlocal_sum: f64,
    /// Upper bound `4 Γ` on that sum.
    pub limit: f64,
    /// Whether the pair sits on the bound (within tolerance).
    pub at_bound: bool,
    /// Whether the bound is exceeded.
    pub violated: bool,
    /// Full constraint verdict for the restricted four-level table.
    pub feasible: bool,
}

/// Restrict a register to every qubit pair (spectator qubits in |0>) and
/// report the two-qubit bounds `Γ23 + Γ14 <= 4Γ` for each.
pub fn pairwise_speed_limit(spec: &RegisterRateSpec) -> Result<Vec<PairSpeedLimit>> {
    let n = spec.qubits();
    let full = register_rate_table(spec);
    let mut out = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let bit_i = 1usize << (n - 1 - i);
            let bit_j = 1usize << (n - 1 - j);
            let levels = [0, bit_j, bit_i, bit_i | bit_j];
            let mut gamma = Array2::zeros((4, 4));
            for a in 0..4 {
                for b in 0..4 {
                    gamma[[a, b]] = full.gamma_at(levels[a], levels[b]);
                }
            }
            let sub = RateTable::new(gamma, Array2::zeros((4, 4)))?;
            let local = sub.gamma_at(0, 1);
            let nonlocal_sum = sub.gamma_at(1, 2) + sub.gamma_at(0, 3);
            let limit = 4.0 * local;
            let tol = 1e-9 * limit.max(1.0);
            let report = constraint_report(&sub, None)?;
            out.push(PairSpeedLimit {
                pair: (i, j),
                local_rate: local,
                nonlocal_sum,
                limit,
                at_bound: (nonlocal_sum - limit).abs() <= tol,
                violated: nonlocal_sum > limit + tol,
                feasible: report.feasible(),
            });
        }
    }
    Ok(out)
}
