//! The Lindblad generator and a fixed-step numerical integrator.
//!
//! `dissipator_apply` and `generator_action` evaluate the master-equation
//! right-hand side with dense matrix products; they make no use of the
//! analytic element-wise solution, so they serve as an independent oracle
//! for the propagation formulas and for the gauge transformations.

use ndarray::Array2;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::model::{DensityMatrix, DephasingModel, DiagonalOperatorSet};

/// Largest admissible value of `step * spectral_bound` for the RK4 scheme.
const STABILITY_LIMIT: f64 = 0.1;

/// Dissipator action `Σ_k [V_k ρ V_k† - ½(V_k†V_k ρ + ρ V_k†V_k)]`.
///
/// The result is traceless, and Hermitian for Hermitian input. Accepts an
/// arbitrary complex matrix so that it can be evaluated on matrix units.
pub fn dissipator_apply(
    ops: &DiagonalOperatorSet,
    rho: &Array2<Complex64>,
) -> Result<Array2<Complex64>> {
    let n = ops.dims();
    if rho.nrows() != n || rho.ncols() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: rho.nrows().max(rho.ncols()),
        });
    }
    let mut out = Array2::<Complex64>::zeros((n, n));
    let half = Complex64::new(0.5, 0.0);
    for k in 0..ops.num_operators() {
        let v = ops.operator_matrix(k);
        let vdag = v.mapv(|z| z.conj()).reversed_axes();
        let vdv = vdag.dot(&v);
        out += &(v.dot(rho).dot(&vdag) - half * (vdv.dot(rho) + rho.dot(&vdv)));
    }
    Ok(out)
}

/// Full generator action `-i[H, ρ] + Σ_k D[V_k]ρ`.
///
/// Two models generate the same dynamics iff this agrees on all N² matrix
/// units, which is how the gauge transformations are validated.
pub fn generator_action(
    model: &DephasingModel,
    rho: &Array2<Complex64>,
) -> Result<Array2<Complex64>> {
    let n = model.dims();
    if rho.nrows() != n || rho.ncols() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: rho.nrows().max(rho.ncols()),
        });
    }
    let h = model.hamiltonian();
    let i = Complex64::new(0.0, 1.0);
    let mut out = -i * (h.dot(rho) - rho.dot(&h));
    out += &dissipator_apply(model.ops(), rho)?;
    Ok(out)
}

/// Crude bound on the generator's spectral radius:
/// `2 (max|λ| + Σ_k max_n |a_nk|²)`. Used for the step-size guard.
pub fn spectral_bound(model: &DephasingModel) -> f64 {
    let lmax = model.levels().iter().fold(0.0f64, |a, x| a.max(x.abs()));
    let coeffs = model.ops().coeffs();
    let mut dissipation = 0.0;
    for k in 0..model.ops().num_operators() {
        let col_max = (0..model.dims()).fold(0.0f64, |a, n| a.max(coeffs[[n, k]].norm_sqr()));
        dissipation += col_max;
    }
    2.0 * (lmax + dissipation)
}

/// Fixed-step fourth-order integration of the master equation.
///
/// Returns one state per grid time; the grid must start at zero and be
/// strictly increasing. Each grid interval is subdivided into equal RK4
/// steps no longer than `step`. Rejects steps with
/// `step * spectral_bound > 0.1`.
pub fn lme_integrate(
    model: &DephasingModel,
    rho0: &DensityMatrix,
    t_grid: &[f64],
    step: f64,
) -> Result<Vec<DensityMatrix>> {
    let n = model.dims();
    if rho0.dims() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: rho0.dims(),
        });
    }
    if t_grid.is_empty() {
        return Err(Error::InvalidTimeGrid("grid is empty"));
    }
    if t_grid[0] != 0.0 {
        return Err(Error::InvalidTimeGrid("grid must start at 0"));
    }
    if t_grid.iter().any(|t| !t.is_finite()) || t_grid.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::InvalidTimeGrid("grid must be strictly increasing"));
    }
    if !step.is_finite() || step <= 0.0 {
        return Err(Error::InvalidTimeGrid("step must be positive"));
    }
    let bound = spectral_bound(model);
    if step * bound > STABILITY_LIMIT {
        return Err(Error::UnstableStep { step, bound });
    }

    let mut out = Vec::with_capacity(t_grid.len());
    out.push(rho0.clone());
    let mut current = rho0.entries().clone();
    for w in t_grid.windows(2) {
        let span = w[1] - w[0];
        let substeps = (span / step).ceil().max(1.0) as usize;
        let h = span / substeps as f64;
        for _ in 0..substeps {
            current = rk4_step(model, &current, h)?;
        }
        out.push(DensityMatrix::new(current.clone())?);
    }
    Ok(out)
}

fn rk4_step(model: &DephasingModel, rho: &Array2<Complex64>, h: f64) -> Result<Array2<Complex64>> {
    let half = Complex64::new(0.5 * h, 0.0);
    let two = Complex64::new(2.0, 0.0);
    let sixth = Complex64::new(h / 6.0, 0.0);
    let k1 = generator_action(model, rho)?;
    let k2 = generator_action(model, &(rho + &(&k1 * half)))?;
    let k3 = generator_action(model, &(rho + &(&k2 * half)))?;
    let k4 = generator_action(model, &(rho + &(&k3 * Complex64::new(h, 0.0))))?;
    Ok(rho + &((k1 + k2 * two + k3 * two + k4) * sixth))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg;
    use crate::model::rates_from_operators;
    use ndarray::{array, Array2};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn spin1_coupling() -> DiagonalOperatorSet {
        DiagonalOperatorSet::from_diagonals(3, &[vec![c(0.0, 0.0), c(1.0, 0.0), c(-1.0, 0.0)]])
            .unwrap()
    }

    #[test]
    fn dissipator_annihilates_maximally_mixed_state() {
        let ops = spin1_coupling();
        let rho = Array2::from_elem((3, 3), c(0.0, 0.0))
            + Array2::from_diag(&ndarray::arr1(&[c(1.0 / 3.0, 0.0); 3]));
        let out = dissipator_apply(&ops, &rho).unwrap();
        assert!(linalg::max_abs(&out) < 1e-15);
    }

    #[test]
    fn dissipator_on_two_level_coherence() {
        // ops {diag(0,1,-1)}, ρ = |+><+| on levels 1,2 -> entry (1,2) = -1/4
        let ops = spin1_coupling();
        let mut rho = Array2::zeros((3, 3));
        rho[[0, 0]] = c(0.5, 0.0);
        rho[[0, 1]] = c(0.5, 0.0);
        rho[[1, 0]] = c(0.5, 0.0);
        rho[[1, 1]] = c(0.5, 0.0);
        let out = dissipator_apply(&ops, &rho).unwrap();
        assert!((out[[0, 1]] - c(-0.25, 0.0)).norm() < 1e-15);
        assert!(out[[0, 0]].norm() < 1e-15);
        assert!(out[[1, 1]].norm() < 1e-15);
    }

    #[test]
    fn dissipator_output_traceless_on_random_hermitian() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..100 {
            let n = rng.random_range(2..=5);
            let k = rng.random_range(0..=4);
            let mut coeffs = Array2::zeros((n, k));
            for v in coeffs.iter_mut() {
                *v = c(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0));
            }
            let ops = DiagonalOperatorSet::new(coeffs).unwrap();
            let mut rho = Array2::zeros((n, n));
            for p in 0..n {
                rho[[p, p]] = c(rng.random_range(-1.0..1.0), 0.0);
                for q in p + 1..n {
                    let z = c(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0));
                    rho[[p, q]] = z;
                    rho[[q, p]] = z.conj();
                }
            }
            let out = dissipator_apply(&ops, &rho).unwrap();
            let trace: Complex64 = (0..n).map(|i| out[[i, i]]).sum();
            assert!(trace.norm() < 1e-13);
            assert!(linalg::hermiticity_residual(&out) < 1e-13);
        }
    }

    #[test]
    fn generator_zero_for_trivial_model() {
        let model = DephasingModel::without_hamiltonian(DiagonalOperatorSet::empty(3).unwrap());
        let rho = DensityMatrix::uniform(3).unwrap();
        let out = generator_action(&model, rho.entries()).unwrap();
        assert_eq!(linalg::max_abs(&out), 0.0);
    }

    #[test]
    fn populations_are_steady_states() {
        // diagonal rho, any diagonal H and ops -> zero table
        let ops = spin1_coupling();
        let model = DephasingModel::new(vec![0.3, -1.0, 2.0], ops).unwrap();
        let rho = Array2::from_diag(&ndarray::arr1(&[c(0.2, 0.0), c(0.5, 0.0), c(0.3, 0.0)]));
        let out = generator_action(&model, &rho).unwrap();
        assert!(linalg::max_abs(&out) < 1e-15);
    }

    #[test]
    fn integrator_constant_for_zero_model() {
        let model = DephasingModel::without_hamiltonian(DiagonalOperatorSet::empty(2).unwrap());
        let rho = DensityMatrix::uniform(2).unwrap();
        let traj = lme_integrate(&model, &rho, &[0.0, 1.0, 2.0], 0.1).unwrap();
        for state in &traj {
            assert_eq!(state.entries(), rho.entries());
        }
    }

    #[test]
    fn integrator_recovers_spin1_decay_rate() {
        // fit the decay of ρ_23 and compare with the Γ_23 = 2 example
        let model = DephasingModel::without_hamiltonian(spin1_coupling());
        let rho = DensityMatrix::uniform(3).unwrap();
        let t_end = 0.5;
        let traj = lme_integrate(&model, &rho, &[0.0, t_end], 5e-4).unwrap();
        let r0 = traj[0].entry(1, 2).norm();
        let r1 = traj[1].entry(1, 2).norm();
        let fitted = -(r1 / r0).ln() / t_end;
        let expected = rates_from_operators(model.ops()).gamma_at(1, 2);
        assert!(
            (fitted - expected).abs() < 1e-4,
            "fitted {fitted}, expected {expected}"
        );
    }

    #[test]
    fn integrator_preserves_trace() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let mut coeffs = Array2::zeros((4, 2));
        for v in coeffs.iter_mut() {
            *v = c(rng.random_range(-0.7..0.7), rng.random_range(-0.7..0.7));
        }
        let model = DephasingModel::new(
            vec![0.4, -0.2, 0.9, 0.0],
            DiagonalOperatorSet::new(coeffs).unwrap(),
        )
        .unwrap();
        let rho = DensityMatrix::uniform(4).unwrap();
        let grid: Vec<f64> = (0..=10).map(|i| i as f64 * 0.1).collect();
        let traj = lme_integrate(&model, &rho, &grid, 1e-3).unwrap();
        for state in &traj {
            let tr: Complex64 = (0..4).map(|i| state.entry(i, i)).sum();
            assert!((tr.re - 1.0).abs() < 1e-10 && tr.im.abs() < 1e-12);
        }
    }

    #[test]
    fn integrator_rejects_unstable_step() {
        let ops =
            DiagonalOperatorSet::from_diagonals(2, &[vec![c(0.0, 0.0), c(10.0, 0.0)]]).unwrap();
        let model = DephasingModel::without_hamiltonian(ops);
        let rho = DensityMatrix::uniform(2).unwrap();
        let err = lme_integrate(&model, &rho, &[0.0, 1.0], 0.01).unwrap_err();
        assert!(matches!(err, Error::UnstableStep { .. }));
    }

    #[test]
    fn integrator_rejects_bad_grid() {
        let model = DephasingModel::without_hamiltonian(DiagonalOperatorSet::empty(2).unwrap());
        let rho = DensityMatrix::uniform(2).unwrap();
        assert!(matches!(
            lme_integrate(&model, &rho, &[0.5, 1.0], 0.01),
            Err(Error::InvalidTimeGrid(_))
        ));
        assert!(matches!(
            lme_integrate(&model, &rho, &[0.0, 1.0, 1.0], 0.01),
            Err(Error::InvalidTimeGrid(_))
        ));
    }

    #[test]
    fn commutator_matches_phase_rotation() {
        // H alone rotates a coherence at λ_m - λ_n
        let model =
            DephasingModel::new(vec![1.0, 0.0], DiagonalOperatorSet::empty(2).unwrap()).unwrap();
        let rho = DensityMatrix::new(array![
            [c(0.5, 0.0), c(0.5, 0.0)],
            [c(0.5, 0.0), c(0.5, 0.0)]
        ])
        .unwrap();
        let traj = lme_integrate(&model, &rho, &[0.0, 1.0], 1e-3).unwrap();
        let expect = c(0.5, 0.0) * Complex64::from_polar(1.0, -1.0);
        assert!((traj[1].entry(0, 1) - expect).norm() < 1e-9);
    }
}
