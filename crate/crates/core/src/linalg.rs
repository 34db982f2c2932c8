//! Dense Hermitian eigensolver for small matrices.
//!
//! Cyclic Jacobi with complex rotations: for a pivot `a_pq = |a_pq| e^{iφ}`
//! the phase is absorbed first, reducing the 2x2 block to the real symmetric
//! case, then the standard rotation annihilates the off-diagonal pair. This
//! is all the eigensolver the crate needs; every matrix here is N <= 2^n for
//! a handful of qubits.

use ndarray::Array2;
use num_complex::Complex64;

use crate::error::{Error, Result};

const MAX_SWEEPS: usize = 64;

pub(crate) fn max_abs(m: &Array2<Complex64>) -> f64 {
    m.iter().fold(0.0f64, |acc, z| acc.max(z.norm()))
}

pub(crate) fn check_finite(m: &Array2<Complex64>) -> Result<()> {
    for ((r, c), z) in m.indexed_iter() {
        if !z.re.is_finite() || !z.im.is_finite() {
            return Err(Error::NonFinite { row: r, col: c });
        }
    }
    Ok(())
}

pub(crate) fn hermiticity_residual(m: &Array2<Complex64>) -> f64 {
    let n = m.nrows();
    let mut res = 0.0f64;
    for p in 0..n {
        res = res.max(m[[p, p]].im.abs());
        for q in p + 1..n {
            res = res.max((m[[p, q]] - m[[q, p]].conj()).norm());
        }
    }
    res
}

fn check_hermitian(m: &Array2<Complex64>) -> Result<(usize, f64)> {
    if m.nrows() != m.ncols() {
        return Err(Error::NotSquare {
            rows: m.nrows(),
            cols: m.ncols(),
        });
    }
    check_finite(m)?;
    let scale = max_abs(m);
    let residual = hermiticity_residual(m);
    if residual > 1e-10 * scale.max(1.0) {
        return Err(Error::NotHermitian { residual });
    }
    Ok((m.nrows(), scale))
}

/// Eigenvalues and eigenvectors of a Hermitian matrix.
///
/// Returns eigenvalues in ascending order; column `j` of the returned matrix
/// is the eigenvector for eigenvalue `j`. Rejects non-Hermitian input
/// (residual above `1e-10` relative to the matrix scale).
pub fn hermitian_eigen(m: &Array2<Complex64>) -> Result<(Vec<f64>, Array2<Complex64>)> {
    let (n, scale) = check_hermitian(m)?;
    let mut a = m.clone();
    let mut v = Array2::<Complex64>::eye(n);
    if n > 1 && scale > 0.0 {
        let stop = 1e-15 * scale;
        for _ in 0..MAX_SWEEPS {
            let mut off = 0.0f64;
            for p in 0..n {
                for q in p + 1..n {
                    off = off.max(a[[p, q]].norm());
                }
            }
            if off <= stop {
                break;
            }
            for p in 0..n - 1 {
                for q in p + 1..n {
                    rotate(&mut a, &mut v, p, q, stop * 1e-2);
                }
            }
        }
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[[i, i]].re.total_cmp(&a[[j, j]].re));
    let values: Vec<f64> = order.iter().map(|&i| a[[i, i]].re).collect();
    let mut vectors = Array2::<Complex64>::zeros((n, n));
    for (dst, &src) in order.iter().enumerate() {
        for r in 0..n {
            vectors[[r, dst]] = v[[r, src]];
        }
    }
    Ok((values, vectors))
}

/// Eigenvalues of a Hermitian matrix, ascending.
pub fn hermitian_eigenvalues(m: &Array2<Complex64>) -> Result<Vec<f64>> {
    hermitian_eigen(m).map(|(values, _)| values)
}

/// One Jacobi rotation annihilating `a[p, q]` (and its conjugate).
fn rotate(a: &mut Array2<Complex64>, v: &mut Array2<Complex64>, p: usize, q: usize, skip: f64) {
    let apq = a[[p, q]];
    let b = apq.norm();
    if b <= skip {
        return;
    }
    let phase = apq / b; // e^{i phi}
    let app = a[[p, p]].re;
    let aqq = a[[q, q]].re;
    let tau = (aqq - app) / (2.0 * b);
    let t = if tau >= 0.0 {
        1.0 / (tau + (1.0 + tau * tau).sqrt())
    } else {
        1.0 / (tau - (1.0 + tau * tau).sqrt())
    };
    let c = 1.0 / (1.0 + t * t).sqrt();
    let s = t * c;

    // U restricted to (p, q):  [[c, s], [-s e^{-i phi}, c e^{-i phi}]]
    let upp = Complex64::new(c, 0.0);
    let upq = Complex64::new(s, 0.0);
    let uqp = -s * phase.conj();
    let uqq = c * phase.conj();

    let n = a.nrows();
    // columns: A <- A U
    for r in 0..n {
        let x = a[[r, p]];
        let y = a[[r, q]];
        a[[r, p]] = x * upp + y * uqp;
        a[[r, q]] = x * upq + y * uqq;
    }
    // rows: A <- U^H A
    for col in 0..n {
        let x = a[[p, col]];
        let y = a[[q, col]];
        a[[p, col]] = upp.conj() * x + uqp.conj() * y;
        a[[q, col]] = upq.conj() * x + uqq.conj() * y;
    }
    a[[p, q]] = Complex64::new(0.0, 0.0);
    a[[q, p]] = Complex64::new(0.0, 0.0);
    a[[p, p]] = Complex64::new(a[[p, p]].re, 0.0);
    a[[q, q]] = Complex64::new(a[[q, q]].re, 0.0);
    // eigenvector accumulation: V <- V U
    for r in 0..n {
        let x = v[[r, p]];
        let y = v[[r, q]];
        v[[r, p]] = x * upp + y * uqp;
        v[[r, q]] = x * upq + y * uqq;
    }
}

/// Hermitian square root of a positive semidefinite matrix.
///
/// Eigenvalues in `[-clamp_tol, 0)` are treated as rounding noise and
/// clamped to zero; anything below `-clamp_tol` is rejected.
pub(crate) fn hermitian_sqrt(m: &Array2<Complex64>, clamp_tol: f64) -> Result<Array2<Complex64>> {
    let (values, vectors) = hermitian_eigen(m)?;
    if let Some(&min) = values.first() {
        if min < -clamp_tol {
            return Err(Error::NotPositiveSemidefinite {
                min_eigenvalue: min,
            });
        }
    }
    let n = m.nrows();
    let mut out = Array2::<Complex64>::zeros((n, n));
    for (j, &w) in values.iter().enumerate() {
        let root = w.max(0.0).sqrt();
        if root == 0.0 {
            continue;
        }
        for r in 0..n {
            for c in 0..n {
                out[[r, c]] += root * vectors[[r, j]] * vectors[[c, j]].conj();
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use ndarray::array;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn identity_has_unit_eigenvalues() {
        let m = Array2::<Complex64>::eye(4);
        assert_eq!(hermitian_eigenvalues(&m).unwrap(), vec![1.0; 4]);
    }

    #[test]
    fn diagonal_matrix_sorted() {
        let m = Array2::from_diag(&ndarray::arr1(&[c(3.0, 0.0), c(1.0, 0.0), c(2.0, 0.0)]));
        assert_eq!(hermitian_eigenvalues(&m).unwrap(), vec![1.0, 2.0, 3.0]);
    }

    #[test]
    fn analytic_two_by_two() {
        let m = array![[c(1.0, 0.0), c(0.5, 0.0)], [c(0.5, 0.0), c(1.0, 0.0)]];
        let vals = hermitian_eigenvalues(&m).unwrap();
        assert!((vals[0] - 0.5).abs() < 1e-14);
        assert!((vals[1] - 1.5).abs() < 1e-14);
    }

    #[test]
    fn rejects_non_hermitian() {
        let m = array![[c(0.0, 0.0), c(1.0, 0.0)], [c(0.0, 0.0), c(0.0, 0.0)]];
        assert!(matches!(
            hermitian_eigenvalues(&m),
            Err(Error::NotHermitian { .. })
        ));
    }

    #[test]
    fn random_hermitian_residuals() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for n in 2..=8usize {
            let mut m = Array2::<Complex64>::zeros((n, n));
            for p in 0..n {
                m[[p, p]] = c(rng.random_range(-2.0..2.0), 0.0);
                for q in p + 1..n {
                    let z = c(rng.random_range(-2.0..2.0), rng.random_range(-2.0..2.0));
                    m[[p, q]] = z;
                    m[[q, p]] = z.conj();
                }
            }
            let (values, vectors) = hermitian_eigen(&m).unwrap();
            let scale = max_abs(&m);
            for (j, &w) in values.iter().enumerate() {
                // || M v - w v || <= 1e-10 ||M|| per pair
                let mut norm2 = 0.0f64;
                for r in 0..n {
                    let mut mv = c(0.0, 0.0);
                    for k in 0..n {
                        mv += m[[r, k]] * vectors[[k, j]];
                    }
                    norm2 += (mv - w * vectors[[r, j]]).norm_sqr();
                }
                assert!(
                    norm2.sqrt() <= 1e-10 * scale,
                    "residual {} for eigenpair {} of n={}",
                    norm2.sqrt(),
                    j,
                    n
                );
            }
            // trace is preserved
            let tr: f64 = (0..n).map(|i| m[[i, i]].re).sum();
            let sum: f64 = values.iter().sum();
            assert!((tr - sum).abs() <= 1e-12 * scale.max(1.0) * n as f64);
        }
    }

    #[test]
    fn sqrt_squares_back() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let n = 4;
        // build a PSD matrix B B^H
        let mut b = Array2::<Complex64>::zeros((n, n));
        for r in 0..n {
            for cidx in 0..n {
                b[[r, cidx]] = c(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0));
            }
        }
        let m = b.dot(&b.mapv(|z| z.conj()).reversed_axes());
        let s = hermitian_sqrt(&m, 1e-12).unwrap();
        let s2 = s.dot(&s);
        for r in 0..n {
            for cidx in 0..n {
                assert!((s2[[r, cidx]] - m[[r, cidx]]).norm() < 1e-10);
            }
        }
    }
}
