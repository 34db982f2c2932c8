//! From observed rates back to canonical operators, and the feasibility
//! constraints that decide whether any pure-dephasing generator can produce
//! a given rate table.
//!
//! In the canonical gauge the first level carries no coefficients, so the
//! rows `v_n` (n = 2..N) of the canonical table determine every observable:
//!
//! ```text
//! ‖v_n‖²      = 2 Γ_1n
//! <v_m, v_n>  = (Γ_1m + Γ_1n - Γ_mn) - i Δω_mn      (2 <= m < n)
//! ```
//!
//! Those inner products form a Hermitian Gram matrix G. The rate table is
//! realizable iff G is positive semidefinite, and recovering the canonical
//! rows is a pivoted triangular factorization of G: level by level, the
//! off-pivot entries solve linear equations against earlier pivots and the
//! last entry is `sqrt(d_n)` with pivot
//!
//! ```text
//! d_n = 2 Γ_1n - Σ_ℓ |a^{(ℓ)}_n|²  >= 0 .
//! ```
//!
//! A negative pivot is a constraint violation at that level. A vanishing
//! pivot is legal (the level's row is linearly dependent on earlier ones)
//! but later levels must then have no projection on the missing column;
//! a non-zero residual there is the remaining way G can fail to be PSD.

use ndarray::Array2;
use num_complex::Complex64;

use crate::canonical::CanonicalSet;
use crate::error::{Error, Result};
use crate::model::RateTable;

/// Relative feasibility tolerance: pivots within `1e-10 * trace(G)` of zero
/// count as boundary.
pub const FEASIBILITY_TOL_REL: f64 = 1e-10;

/// Hermitian Gram matrix of canonical coefficient rows for levels 2..N,
/// assembled from observed rates and shifts.
#[derive(Debug, Clone, PartialEq)]
pub struct GramMatrix {
    matrix: Array2<Complex64>,
}

impl GramMatrix {
    /// Order of the matrix (N - 1 for an N-level table).
    pub fn order(&self) -> usize {
        self.matrix.nrows()
    }

    /// Level count N of the underlying table.
    pub fn levels(&self) -> usize {
        self.order() + 1
    }

    pub fn matrix(&self) -> &Array2<Complex64> {
        &self.matrix
    }

    /// Trace; real and non-negative by construction (sum of 2Γ_1n).
    pub fn trace(&self) -> f64 {
        (0..self.order()).map(|i| self.matrix[[i, i]].re).sum()
    }

    /// Default feasibility tolerance for this matrix.
    pub fn default_tol(&self) -> f64 {
        FEASIBILITY_TOL_REL * self.trace()
    }
}

/// Assemble the Gram matrix from a rate table.
///
/// Shifts on pairs involving level 1 are rejected: the canonical gauge has
/// `Δω_1n = 0`, so such shifts must first be folded into the Hamiltonian
/// via [`intrinsic_shifts`].
pub fn gram_from_rates(rates: &RateTable) -> Result<GramMatrix> {
    let n = rates.dims();
    for level in 1..n {
        let shift = rates.dshift_at(0, level);
        if shift != 0.0 {
            return Err(Error::FirstLevelShift {
                level: level + 1,
                value: shift,
            });
        }
    }
    let mut matrix = Array2::zeros((n - 1, n - 1));
    for m in 1..n {
        for q in 1..n {
            matrix[[m - 1, q - 1]] = if m == q {
                Complex64::new(2.0 * rates.gamma_at(0, m), 0.0)
            } else {
                Complex64::new(
                    rates.gamma_at(0, m) + rates.gamma_at(0, q) - rates.gamma_at(m, q),
                    -rates.dshift_at(m, q),
                )
            };
        }
    }
    Ok(GramMatrix { matrix })
}

/// Outcome of running the constraint recursion to completion.
///
/// Levels are numbered 1..N as in the Γ_mn subscripts; the pivot vector
/// holds `d_n` for n = 2..N in order.
#[derive(Debug, Clone, PartialEq)]
pub struct ConstraintReport {
    pivots: Vec<f64>,
    feasible: bool,
    violated_levels: Vec<usize>,
    boundary_levels: Vec<usize>,
    residual_violations: Vec<ResidualViolation>,
    tol: f64,
}

/// A later level projecting onto the missing column of a zero-pivot level.
#[derive(Debug, Clone, PartialEq)]
pub struct ResidualViolation {
    /// Level at which the inconsistency surfaces.
    pub level: usize,
    /// Earlier level that contributed no column (vanishing or violated
    /// pivot).
    pub zero_level: usize,
    /// Magnitude of the offending projection.
    pub magnitude: f64,
}

impl ConstraintReport {
    /// Pivot `d_n` for each level n = 2..N.
    pub fn pivots(&self) -> &[f64] {
        &self.pivots
    }

    pub fn pivot_for_level(&self, level: usize) -> Option<f64> {
        level
            .checked_sub(2)
            .and_then(|i| self.pivots.get(i))
            .copied()
    }

    pub fn feasible(&self) -> bool {
        self.feasible
    }

    /// Levels with `d_n < -tol`, ascending.
    pub fn violated_levels(&self) -> &[usize] {
        &self.violated_levels
    }

    /// Levels with `|d_n| <= tol`, ascending.
    pub fn boundary_levels(&self) -> &[usize] {
        &self.boundary_levels
    }

    pub fn residual_violations(&self) -> &[ResidualViolation] {
        &self.residual_violations
    }

    /// First level at which infeasibility was detected, if any.
    pub fn first_violated_level(&self) -> Option<usize> {
        let pivot_first = self.violated_levels.first().copied();
        let residual_first = self.residual_violations.first().map(|r| r.level);
        match (pivot_first, residual_first) {
            (Some(a), Some(b)) => Some(a.min(b)),
            (a, b) => a.or(b),
        }
    }

    /// Tolerance the verdict was computed with.
    pub fn tol(&self) -> f64 {
        self.tol
    }
}

struct Factorization {
    /// Row i holds the canonical coefficients of level i+2 over the built
    /// columns.
    rows: Array2<Complex64>,
    /// Gram row index that owns each built column (strictly increasing).
    owners: Vec<usize>,
    report_pivots: Vec<f64>,
    violated: Vec<usize>,
    boundary: Vec<usize>,
    residuals: Vec<ResidualViolation>,
}

/// Level-by-level factorization of the Gram matrix; records every pivot and
/// every zero-pivot residual instead of aborting.
fn factorize(gram: &GramMatrix, tol: f64) -> Factorization {
    let n = gram.order();
    let g = gram.matrix();
    let mut rows = Array2::<Complex64>::zeros((n, n));
    let mut owners: Vec<usize> = Vec::new();
    let mut skipped: Vec<usize> = Vec::new();
    let mut report_pivots = Vec::with_capacity(n);
    let mut violated = Vec::new();
    let mut boundary = Vec::new();
    let mut residuals = Vec::new();

    for i in 0..n {
        // off-pivot entries against every built column
        for (c, &owner) in owners.iter().enumerate() {
            let mut acc = g[[i, owner]];
            for b in 0..c {
                acc -= rows[[i, b]] * rows[[owner, b]].conj();
            }
            rows[[i, c]] = acc / rows[[owner, c]];
        }
        // levels that contributed no column must stay orthogonal to row i
        for &srow in &skipped {
            let mut acc = g[[i, srow]];
            for b in 0..owners.len() {
                acc -= rows[[i, b]] * rows[[srow, b]].conj();
            }
            let magnitude = acc.norm();
            if magnitude * magnitude > tol * g[[i, i]].re.max(tol) {
                residuals.push(ResidualViolation {
                    level: i + 2,
                    zero_level: srow + 2,
                    magnitude,
                });
            }
        }
        // pivot
        let mut d = g[[i, i]].re;
        for b in 0..owners.len() {
            d -= rows[[i, b]].norm_sqr();
        }
        report_pivots.push(d);
        if d < -tol {
            violated.push(i + 2);
            skipped.push(i);
        } else if d <= tol {
            boundary.push(i + 2);
            skipped.push(i);
        } else {
            rows[[i, owners.len()]] = Complex64::new(d.sqrt(), 0.0);
            owners.push(i);
        }
    }

    Factorization {
        rows,
        owners,
        report_pivots,
        violated,
        boundary,
        residuals,
    }
}

fn resolve_tol(gram: &GramMatrix, tol: Option<f64>) -> f64 {
    tol.unwrap_or_else(|| gram.default_tol())
}

/// Run the full constraint hierarchy on a rate table.
///
/// Violations are data here, not errors: the report records every pivot,
/// the boundary and violated level sets, and any zero-pivot residuals. The
/// verdict coincides with positive semidefiniteness of the Gram matrix at
/// the same tolerance. `tol` defaults to `1e-10 * trace(G)`.
pub fn constraint_report(rates: &RateTable, tol: Option<f64>) -> Result<ConstraintReport> {
    let gram = gram_from_rates(rates)?;
    let tol = resolve_tol(&gram, tol);
    let f = factorize(&gram, tol);
    Ok(ConstraintReport {
        feasible: f.violated.is_empty() && f.residuals.is_empty(),
        pivots: f.report_pivots,
        violated_levels: f.violated,
        boundary_levels: f.boundary,
        residual_violations: f.residuals,
        tol,
    })
}

/// Invert observed rates to the canonical operator set that generates them.
///
/// Fails with [`Error::ConstraintViolation`] at the first negative pivot, or
/// [`Error::ResidualAtZeroPivot`] when a vanishing pivot is inconsistent
/// with a later level. On success, `rates_from_operators` applied to the
/// result reproduces the table (Γ everywhere, Δω away from level 1).
pub fn invert_rates(rates: &RateTable, tol: Option<f64>) -> Result<CanonicalSet> {
    let gram = gram_from_rates(rates)?;
    let tol = resolve_tol(&gram, tol);
    let f = factorize(&gram, tol);

    // surface the earliest failure in recursion order; within a row the
    // residual checks run before the pivot test
    let pivot_first = f.violated.first().copied();
    let residual_first = f.residuals.first();
    match (pivot_first, residual_first) {
        (Some(level), Some(res)) if res.level <= level => {
            return Err(Error::ResidualAtZeroPivot {
                level: res.level,
                zero_level: res.zero_level,
                residual: res.magnitude,
            })
        }
        (Some(level), _) => {
            return Err(Error::ConstraintViolation {
                level,
                deficit: -f.report_pivots[level - 2],
            })
        }
        (None, Some(res)) => {
            return Err(Error::ResidualAtZeroPivot {
                level: res.level,
                zero_level: res.zero_level,
                residual: res.magnitude,
            })
        }
        (None, None) => {}
    }

    let n = gram.levels();
    let cols = f.owners.len();
    let mut coeffs = Array2::zeros((n, cols));
    for i in 0..n - 1 {
        for c in 0..cols {
            coeffs[[i + 1, c]] = f.rows[[i, c]];
        }
    }
    CanonicalSet::from_parts(coeffs, vec![0.0; n])
}

/// Signed slack of the symmetric three-level constraint:
/// `2(Γ12Γ23 + Γ23Γ13 + Γ12Γ13) - Γ12² - Γ23² - Γ13² - Δω23²`.
///
/// Non-negative iff the rates are realizable; equals `det G` of the 2x2
/// Gram matrix as a polynomial identity.
pub fn symmetric_constraint_n3(g12: f64, g23: f64, g13: f64, dw23: f64) -> f64 {
    2.0 * (g12 * g23 + g23 * g13 + g12 * g13) - g12 * g12 - g23 * g23 - g13 * g13 - dw23 * dw23
}

/// Cone coordinates for the three-level, real-dephasing case.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConeCoords {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl ConeCoords {
    /// `x²/2 - y² - z²`; non-negative (with `x >= 0`) inside the cone.
    /// Equals half the symmetric-constraint slack.
    pub fn boundary_margin(&self) -> f64 {
        0.5 * self.x * self.x - self.y * self.y - self.z * self.z
    }

    pub fn is_inside(&self, tol: f64) -> bool {
        self.x >= -tol && self.boundary_margin() >= -tol
    }
}

/// Map `(Γ12, Γ23, Γ13)` to the symmetric cone frame: the axis along the
/// all-rates-equal direction, so the allowed region is `x²/2 >= y² + z²`.
pub fn cone_coords_n3(g12: f64, g23: f64, g13: f64) -> ConeCoords {
    ConeCoords {
        x: (g12 + g23 + g13) / 3.0f64.sqrt(),
        y: (g13 - g23) / std::f64::consts::SQRT_2,
        z: (2.0f64 / 3.0).sqrt() * (g12 - 0.5 * (g13 + g23)),
    }
}

/// Dephasing-intrinsic frequency shifts of an observed frequency table.
///
/// Gauge-fixing against level 1 absorbs `ω_1n` into the Hamiltonian, which
/// leaves `Δω_mn = ω_mn + ω_1m - ω_1n` for `2 <= m < n`: the failure of the
/// observed frequencies to be differences of level energies. The returned
/// table is antisymmetric with a zero first row, ready for a [`RateTable`].
pub fn intrinsic_shifts(omega: &Array2<f64>) -> Result<Array2<f64>> {
    let n = omega.nrows();
    if omega.ncols() != n {
        return Err(Error::NotSquare {
            rows: n,
            cols: omega.ncols(),
        });
    }
    if n < 2 {
        return Err(Error::TooFewLevels(n));
    }
    let scale = omega.iter().fold(0.0f64, |a, x| a.max(x.abs()));
    let mut asym = 0.0f64;
    for m in 0..n {
        if !omega[[m, m]].is_finite() {
            return Err(Error::NonFinite { row: m, col: m });
        }
        for q in m..n {
            asym = asym.max((omega[[m, q]] + omega[[q, m]]).abs());
        }
    }
    if asym > 1e-9 * scale.max(1.0) {
        return Err(Error::NotAntisymmetric { residual: asym });
    }
    let mut shifts = Array2::zeros((n, n));
    for m in 1..n {
        for q in m + 1..n {
            let value = omega[[m, q]] + omega[[0, m]] - omega[[0, q]];
            shifts[[m, q]] = value;
            shifts[[q, m]] = -value;
        }
    }
    Ok(shifts)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::hermitian_eigenvalues;
    use crate::model::rates_from_operators;

    fn n3_rates(g12: f64, g13: f64, g23: f64, dw23: f64) -> RateTable {
        RateTable::from_pairs(3, &[(0, 1, g12), (0, 2, g13), (1, 2, g23)], &[(1, 2, dw23)]).unwrap()
    }

    #[test]
    fn gram_symmetric_unit_rates() {
        let g = gram_from_rates(&n3_rates(1.0, 1.0, 1.0, 0.0)).unwrap();
        let m = g.matrix();
        assert_eq!(m[[0, 0]], Complex64::new(2.0, 0.0));
        assert_eq!(m[[0, 1]], Complex64::new(1.0, 0.0));
        assert_eq!(m[[1, 0]], Complex64::new(1.0, 0.0));
        assert_eq!(m[[1, 1]], Complex64::new(2.0, 0.0));
    }

    #[test]
    fn gram_zero_rates() {
        let g = gram_from_rates(&RateTable::zeros(3).unwrap()).unwrap();
        assert!(g.matrix().iter().all(|z| z.norm() == 0.0));
    }

    #[test]
    fn gram_infeasible_fixture() {
        // Γ12=1, Γ13=5, Γ23=1 -> G = [[2,5],[5,10]], det = -5
        let g = gram_from_rates(&n3_rates(1.0, 5.0, 1.0, 0.0)).unwrap();
        let m = g.matrix();
        assert_eq!(m[[0, 0]].re, 2.0);
        assert_eq!(m[[0, 1]].re, 5.0);
        assert_eq!(m[[1, 1]].re, 10.0);
        let det = m[[0, 0]].re * m[[1, 1]].re - m[[0, 1]].norm_sqr();
        assert_eq!(det, -5.0);
    }

    #[test]
    fn gram_rejects_first_level_shift() {
        let rt = RateTable::from_pairs(3, &[(0, 1, 1.0)], &[(0, 1, 0.5)]).unwrap();
        assert!(matches!(
            gram_from_rates(&rt),
            Err(Error::FirstLevelShift { level: 2, .. })
        ));
    }

    #[test]
    fn invert_symmetric_unit_rates() {
        let canon = invert_rates(&n3_rates(1.0, 1.0, 1.0, 0.0), None).unwrap();
        assert_eq!(canon.num_operators(), 2);
        let c = canon.coeffs();
        let sqrt2 = std::f64::consts::SQRT_2;
        assert!((c[[1, 0]].re - sqrt2).abs() < 1e-14);
        assert!((c[[2, 0]].re - 1.0 / sqrt2).abs() < 1e-14);
        assert!((c[[2, 1]].re - (1.5f64).sqrt()).abs() < 1e-14);
        assert!(c[[0, 0]].norm() == 0.0 && c[[0, 1]].norm() == 0.0 && c[[1, 1]].norm() == 0.0);
    }

    #[test]
    fn invert_two_level_table() {
        let rt = RateTable::from_pairs(2, &[(0, 1, 0.7)], &[]).unwrap();
        let canon = invert_rates(&rt, None).unwrap();
        assert_eq!(canon.num_operators(), 1);
        assert!((canon.coeffs()[[1, 0]].re - (1.4f64).sqrt()).abs() < 1e-15);
    }

    #[test]
    fn invert_flags_violation_with_deficit() {
        let err = invert_rates(&n3_rates(1.0, 5.0, 1.0, 0.0), None).unwrap_err();
        match err {
            Error::ConstraintViolation { level, deficit } => {
                assert_eq!(level, 3);
                assert!((deficit - 2.5).abs() < 1e-12);
            }
            other => panic!("expected ConstraintViolation, got {other:?}"),
        }
    }

    #[test]
    fn invert_round_trip_reproduces_rates() {
        let rt = n3_rates(1.2, 0.8, 1.5, 0.4);
        let canon = invert_rates(&rt, None).unwrap();
        let back = rates_from_operators(&canon.to_operator_set());
        for m in 0..3 {
            for q in m + 1..3 {
                assert!((back.gamma_at(m, q) - rt.gamma_at(m, q)).abs() < 1e-12);
            }
        }
        assert!((back.dshift_at(1, 2) - 0.4).abs() < 1e-12);
    }

    #[test]
    fn zero_pivot_residual_detected() {
        // Γ12 = 0 with a shift on (2,3): level 2 contributes no column but
        // level 3 projects on it -> infeasible despite no negative pivot
        let rt = n3_rates(0.0, 1.0, 1.0, 1.0);
        let report = constraint_report(&rt, None).unwrap();
        assert!(!report.feasible());
        assert!(report.violated_levels().is_empty());
        assert_eq!(report.residual_violations().len(), 1);
        assert_eq!(report.first_violated_level(), Some(3));
        let err = invert_rates(&rt, None).unwrap_err();
        assert!(matches!(
            err,
            Error::ResidualAtZeroPivot {
                level: 3,
                zero_level: 2,
                ..
            }
        ));
    }

    #[test]
    fn report_matches_psd_oracle_on_fixtures() {
        for (g12, g13, g23, dw) in [
            (1.0, 1.0, 1.0, 0.0),
            (1.0, 5.0, 1.0, 0.0),
            (1.0, 1.0, 1.0, 3.0f64.sqrt()),
            (0.3, 2.0, 0.9, -0.7),
            (0.0, 0.0, 0.0, 0.0),
        ] {
            let rt = n3_rates(g12, g13, g23, dw);
            let report = constraint_report(&rt, None).unwrap();
            let gram = gram_from_rates(&rt).unwrap();
            let min = hermitian_eigenvalues(gram.matrix()).unwrap()[0];
            assert_eq!(
                report.feasible(),
                min >= -report.tol(),
                "mismatch at ({g12},{g13},{g23},{dw}): min eig {min}, tol {}",
                report.tol()
            );
        }
    }

    #[test]
    fn first_pivot_is_twice_gamma12() {
        let rt = n3_rates(0.9, 2.0, 1.1, 0.2);
        let report = constraint_report(&rt, None).unwrap();
        assert_eq!(report.pivots()[0], 1.8);
        assert_eq!(report.pivot_for_level(2), Some(1.8));
    }

    #[test]
    fn symmetric_constraint_fixtures() {
        assert_eq!(symmetric_constraint_n3(1.0, 1.0, 1.0, 0.0), 3.0);
        assert_eq!(symmetric_constraint_n3(1.0, 1.0, 5.0, 0.0), -5.0);
        let boundary = symmetric_constraint_n3(1.0, 1.0, 1.0, 3.0f64.sqrt());
        assert!(boundary.abs() < 1e-15);
    }

    #[test]
    fn symmetric_constraint_equals_gram_determinant() {
        for (g12, g23, g13, dw) in [
            (1.0, 1.0, 5.0, 0.0),
            (0.4, 1.7, 0.9, 0.3),
            (2.2, 0.1, 1.3, -1.1),
        ] {
            let slack = symmetric_constraint_n3(g12, g23, g13, dw);
            let det = 4.0 * g12 * g13 - ((g12 + g13 - g23).powi(2) + dw * dw);
            assert!((slack - det).abs() < 1e-12);
        }
    }

    #[test]
    fn cone_axis_point() {
        let coords = cone_coords_n3(1.0, 1.0, 1.0);
        assert!((coords.x - 3.0f64.sqrt()).abs() < 1e-15);
        assert_eq!(coords.y, 0.0);
        assert_eq!(coords.z, 0.0);
        assert!(coords.is_inside(0.0));
    }

    #[test]
    fn cone_tangent_point_sits_on_boundary() {
        // equal Γ12 = Γ23 with Γ13 = 0 is a tangency line of the cone
        let coords = cone_coords_n3(1.0, 1.0, 0.0);
        assert!(coords.boundary_margin().abs() < 1e-15);
        // a single non-zero rate lies strictly outside
        let outside = cone_coords_n3(1.0, 0.0, 0.0);
        assert!((outside.boundary_margin() - (-0.5)).abs() < 1e-15);
        assert!(!outside.is_inside(1e-12));
    }

    #[test]
    fn cone_apex() {
        let coords = cone_coords_n3(0.0, 0.0, 0.0);
        assert_eq!((coords.x, coords.y, coords.z), (0.0, 0.0, 0.0));
        assert!(coords.is_inside(0.0));
    }

    #[test]
    fn cone_margin_is_half_slack() {
        for (a, b, c) in [(1.0, 2.0, 0.5), (0.1, 0.1, 2.9), (1.5, 1.5, 1.5)] {
            let coords = cone_coords_n3(a, b, c);
            let slack = symmetric_constraint_n3(a, b, c, 0.0);
            assert!((coords.boundary_margin() - 0.5 * slack).abs() < 1e-12);
        }
    }

    #[test]
    fn intrinsic_shifts_vanish_for_additive_spectrum() {
        let levels = [0.0, 1.3, -0.7, 2.1];
        let mut omega = Array2::zeros((4, 4));
        for m in 0..4 {
            for q in 0..4 {
                omega[[m, q]] = levels[m] - levels[q];
            }
        }
        let shifts = intrinsic_shifts(&omega).unwrap();
        assert!(shifts.iter().all(|x| x.abs() < 1e-12));
    }

    #[test]
    fn intrinsic_shift_of_perturbed_gap() {
        // ω23 = (ω13 - ω12) + 1 -> Δω23 = 1
        let (w12, w13) = (1.0, 2.5);
        let w23 = (w13 - w12) + 1.0;
        let mut omega = Array2::zeros((3, 3));
        omega[[0, 1]] = w12;
        omega[[1, 0]] = -w12;
        omega[[0, 2]] = w13;
        omega[[2, 0]] = -w13;
        omega[[1, 2]] = w23;
        omega[[2, 1]] = -w23;
        let shifts = intrinsic_shifts(&omega).unwrap();
        assert!((shifts[[1, 2]] - 1.0).abs() < 1e-15);
        assert_eq!(shifts[[0, 1]], 0.0);
        assert_eq!(shifts[[0, 2]], 0.0);
    }

    #[test]
    fn intrinsic_shifts_round_trip_canonical_rates() {
        // shifts of a canonical set, rebuilt from its observed frequencies
        let ops = crate::model::DiagonalOperatorSet::from_diagonals(
            4,
            &[
                vec![
                    Complex64::new(0.0, 0.0),
                    Complex64::new(1.0, 0.0),
                    Complex64::new(0.3, 0.8),
                    Complex64::new(-0.2, 0.5),
                ],
                vec![
                    Complex64::new(0.0, 0.0),
                    Complex64::new(0.0, 0.0),
                    Complex64::new(0.9, 0.0),
                    Complex64::new(0.4, -0.6),
                ],
            ],
        )
        .unwrap();
        let rt = rates_from_operators(&ops);
        let omega = crate::model::effective_frequencies(&[0.0; 4], &rt).unwrap();
        let shifts = intrinsic_shifts(&omega).unwrap();
        for m in 0..4 {
            for q in 0..4 {
                assert!(
                    (shifts[[m, q]] - rt.dshift_at(m, q)).abs() < 1e-12,
                    "mismatch at ({m},{q})"
                );
            }
        }
    }
}
