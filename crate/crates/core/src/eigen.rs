//! Symmetric eigendecomposition by cyclic Jacobi rotations.

use crate::error::{Error, Result};
use crate::matrix::DenseMatrix;

/// Relative asymmetry allowed in the input.
const SYMMETRY_TOL: f64 = 1e-12;
/// Off-diagonal Frobenius mass, relative to the input norm, at which the
/// iteration stops.
const OFF_DIAGONAL_TOL: f64 = 1e-14;
/// Sweep cap; quadratic convergence makes it unreachable in practice, so
/// hitting it is reported as an error rather than hanging.
const MAX_SWEEPS: usize = 50;

/// Orthogonal diagonalization `S = Q diag(eigenvalues) Q^T` with the
/// eigenvalues in nonincreasing order.
#[derive(Debug, Clone)]
pub struct EigenFactors {
    pub q: DenseMatrix,
    pub eigenvalues: Vec<f64>,
}

impl EigenFactors {
    /// Rebuilds `Q diag(eigenvalues) Q^T`.
    pub fn reconstruct(&self) -> DenseMatrix {
        self.q
            .matmul(&DenseMatrix::from_diag(&self.eigenvalues))
            .matmul(&self.q.transpose())
    }
}

/// Eigendecomposition of a symmetric matrix by cyclic Jacobi sweeps, iterated
/// until the off-diagonal Frobenius mass falls below `1e-14 * |S|_F`.
pub fn sym_eigen(s: &DenseMatrix) -> Result<EigenFactors> {
    if !s.is_square() {
        return Err(Error::NotSquare { rows: s.rows(), cols: s.cols() });
    }
    crate::matrix::check_finite(s)?;
    let n = s.rows();
    let norm = s.frobenius_norm();
    let mut max_asym: f64 = 0.0;
    for i in 0..n {
        for j in i + 1..n {
            max_asym = max_asym.max((s[(i, j)] - s[(j, i)]).abs());
        }
    }
    if max_asym > SYMMETRY_TOL * norm {
        return Err(Error::NotSymmetric { max_asymmetry: max_asym });
    }

    // Work on the symmetrized copy so rounding dust cannot bias the sweeps.
    let mut a = DenseMatrix::from_fn(n, n, |i, j| 0.5 * (s[(i, j)] + s[(j, i)]));
    let mut q = DenseMatrix::identity(n);
    let target = OFF_DIAGONAL_TOL * norm;

    let mut converged = off_diagonal_norm(&a) <= target;
    for _ in 0..MAX_SWEEPS {
        if converged {
            break;
        }
        for p in 0..n {
            for r in p + 1..n {
                let apr = a[(p, r)];
                if apr == 0.0 {
                    continue;
                }
                let tau = (a[(r, r)] - a[(p, p)]) / (2.0 * apr);
                let t = if tau >= 0.0 {
                    1.0 / (tau + (1.0 + tau * tau).sqrt())
                } else {
                    1.0 / (tau - (1.0 + tau * tau).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let sn = t * c;
                // A <- J^T A J and Q <- Q J for the (p, r) rotation.
                for k in 0..n {
                    let akp = a[(k, p)];
                    let akr = a[(k, r)];
                    a[(k, p)] = c * akp - sn * akr;
                    a[(k, r)] = sn * akp + c * akr;
                }
                for k in 0..n {
                    let apk = a[(p, k)];
                    let ark = a[(r, k)];
                    a[(p, k)] = c * apk - sn * ark;
                    a[(r, k)] = sn * apk + c * ark;
                }
                for k in 0..n {
                    let qkp = q[(k, p)];
                    let qkr = q[(k, r)];
                    q[(k, p)] = c * qkp - sn * qkr;
                    q[(k, r)] = sn * qkp + c * qkr;
                }
            }
        }
        converged = off_diagonal_norm(&a) <= target;
    }
    if !converged {
        return Err(Error::ConvergenceFailed { sweeps: MAX_SWEEPS });
    }

    let eigenvalues: Vec<f64> = (0..n).map(|i| a[(i, i)]).collect();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| eigenvalues[j].partial_cmp(&eigenvalues[i]).unwrap());

    let mut sorted_q = DenseMatrix::zeros(n, n);
    let mut sorted_vals = Vec::with_capacity(n);
    for (dst, &src) in order.iter().enumerate() {
        let col = normalize_column_sign(q.col(src));
        sorted_q.set_col(dst, &col);
        sorted_vals.push(eigenvalues[src]);
    }
    Ok(EigenFactors { q: sorted_q, eigenvalues: sorted_vals })
}

fn off_diagonal_norm(a: &DenseMatrix) -> f64 {
    let n = a.rows();
    let mut sum = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                sum += a[(i, j)] * a[(i, j)];
            }
        }
    }
    sum.sqrt()
}

/// Flips a column so its first entry of magnitude above 1e-12 is positive.
/// Columns here are unit vectors, so some entry is always above the cut.
pub(crate) fn normalize_column_sign(mut col: Vec<f64>) -> Vec<f64> {
    for &v in &col {
        if v.abs() > 1e-12 {
            if v < 0.0 {
                for x in col.iter_mut() {
                    *x = -*x;
                }
            }
            break;
        }
    }
    col
}
