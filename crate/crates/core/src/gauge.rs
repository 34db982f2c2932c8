//! Gauge transformations that leave the dephasing generator invariant:
//! unitary mixing of the operator set and identity shifts with their
//! Hamiltonian correction.

use ndarray::Array2;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg;
use crate::model::{DephasingModel, DiagonalOperatorSet};

/// Maximum `|u†u - I|` accepted by [`unitary_mix`].
pub const UNITARITY_TOL: f64 = 1e-12;

/// Replace the operator set by `W_j = Σ_k u_jk V_k`.
///
/// The generator is invariant under any unitary `u`; non-unitary input is
/// rejected with the measured residual.
pub fn unitary_mix(
    ops: &DiagonalOperatorSet,
    u: &Array2<Complex64>,
) -> Result<DiagonalOperatorSet> {
    let k = ops.num_operators();
    if u.nrows() != k || u.ncols() != k {
        return Err(Error::DimensionMismatch {
            expected: k,
            got: u.nrows().max(u.ncols()),
        });
    }
    linalg::check_finite(u)?;
    let mut residual = 0.0f64;
    for a in 0..k {
        for b in 0..k {
            let mut dot = Complex64::new(0.0, 0.0);
            for r in 0..k {
                dot += u[[r, a]].conj() * u[[r, b]];
            }
            let target = if a == b { 1.0 } else { 0.0 };
            residual = residual.max((dot - target).norm());
        }
    }
    if residual > UNITARITY_TOL {
        return Err(Error::NotUnitary { residual });
    }
    // new coeffs: b_nj = Σ_k a_nk u_jk
    let mixed = ops.coeffs().dot(&u.t());
    DiagonalOperatorSet::new(mixed)
}

/// Shift operator `k` by `α I` and apply the compensating Hamiltonian
/// correction `H += (i/2)(α V_k† - α* V_k)`, which for diagonal operators is
/// the real level shift `λ_n -= Im(α a*_nk)`.
///
/// The correction is the same whether evaluated with the pre- or post-shift
/// operator, because the identity parts cancel.
pub fn identity_shift(
    model: &DephasingModel,
    k: usize,
    alpha: Complex64,
) -> Result<DephasingModel> {
    let count = model.ops().num_operators();
    if k >= count {
        return Err(Error::OperatorIndexOutOfRange { index: k, count });
    }
    let mut coeffs = model.ops().coeffs().clone();
    let mut levels = model.levels().to_vec();
    for n in 0..model.dims() {
        levels[n] -= (alpha * coeffs[[n, k]].conj()).im;
        coeffs[[n, k]] += alpha;
    }
    DephasingModel::new(levels, DiagonalOperatorSet::new(coeffs)?)
}
