//! Singular value decomposition built on the Jacobi eigensolver.
//!
//! The right factor comes from eigendecomposing the Gram matrix of the side
//! with fewer columns; left columns are assembled as `A v_i / d_i`,
//! re-orthogonalized, and the null directions completed from the standard
//! basis. One Jacobi kernel therefore serves both `sym_eigen` and `svd`.

use crate::eigen::{normalize_column_sign, sym_eigen};
use crate::error::{Error, Result};
use crate::matrix::{vec_dot, vec_norm, DenseMatrix};

/// Singular values below this fraction of the largest are assembled from
/// basis completion instead of `A v_i / d_i`, whose direction would be
/// rounding noise.
const NULL_COLUMN_CUT: f64 = 1e-13;
/// Relative gap below which adjacent singular values are flagged as tied.
const TIE_TOL: f64 = 1e-10;
/// Column pairs of `A V` whose normalized inner product exceeds this get a
/// one-sided polish rotation.
const POLISH_TOL: f64 = 1e-14;
/// Sweep cap for the one-sided polish.
const POLISH_MAX_SWEEPS: usize = 50;

/// Factors `A = W D V^T` with `W`, `V` orthogonal and the singular values
/// nonnegative and nonincreasing.
///
/// `tie_flags[i]` is set when `d_i` and `d_{i+1}` agree within `1e-10 * d_1`
/// (the last flag is always false); decompositions that pick singular
/// subspaces are non-unique across a tie.
#[derive(Debug, Clone)]
pub struct SvdFactors {
    pub w: DenseMatrix,
    pub singular_values: Vec<f64>,
    pub v: DenseMatrix,
    pub tie_flags: Vec<bool>,
}

impl SvdFactors {
    /// The `n x k` diagonal matrix `D` carrying the singular values.
    pub fn d_matrix(&self) -> DenseMatrix {
        let mut d = DenseMatrix::zeros(self.w.rows(), self.v.rows());
        for (i, &s) in self.singular_values.iter().enumerate() {
            d[(i, i)] = s;
        }
        d
    }

    /// Rebuilds `W D V^T`.
    pub fn reconstruct(&self) -> DenseMatrix {
        self.w.matmul(&self.d_matrix()).matmul(&self.v.transpose())
    }

    /// `W diag(d_1..d_r, 0..) V^T` keeping only the leading `rank` values.
    pub fn truncated_product(&self, rank: usize) -> DenseMatrix {
        let mut kept = vec![0.0; self.singular_values.len()];
        kept[..rank].copy_from_slice(&self.singular_values[..rank]);
        let mut d = DenseMatrix::zeros(self.w.rows(), self.v.rows());
        for (i, &s) in kept.iter().enumerate() {
            d[(i, i)] = s;
        }
        self.w.matmul(&d).matmul(&self.v.transpose())
    }
}

/// Singular value decomposition of an arbitrary `n x k` matrix.
pub fn svd(a: &DenseMatrix) -> Result<SvdFactors> {
    crate::matrix::check_finite(a)?;
    if a.rows() < a.cols() {
        let t = svd(&a.transpose())?;
        return Ok(SvdFactors {
            w: t.v,
            singular_values: t.singular_values,
            v: t.w,
            tie_flags: t.tie_flags,
        });
    }

    let (n, k) = a.shape();
    // Gram matrix A^T A, filled symmetrically so no asymmetry dust enters.
    let mut gram = DenseMatrix::zeros(k, k);
    for i in 0..k {
        let ci = a.col(i);
        for j in i..k {
            let g = vec_dot(&ci, &a.col(j));
            gram[(i, j)] = g;
            gram[(j, i)] = g;
        }
    }
    let eig = sym_eigen(&gram)?;

    // The Gram route resolves eigenvalue clusters only down to the Jacobi
    // threshold on the SQUARED spectrum; two small singular values of very
    // different size can come back mixed. A one-sided polish on the columns
    // of A V orthogonalizes such pairs at full precision.
    let mut v = eig.q;
    let mut b = a.matmul(&v);
    polish_columns(&mut b, &mut v)?;

    // d_i = |A v_i| rather than sqrt(lambda_i): the two agree to working
    // precision, and the measured norm keeps the reconstruction residual at
    // rounding level even when lambda_i carries absolute error ~eps*lambda_1.
    let mut cols: Vec<(f64, Vec<f64>, Vec<f64>)> = (0..k)
        .map(|i| {
            let vi = normalize_sign_pair(v.col(i), b.col(i));
            (vec_norm(&vi.1), vi.0, vi.1)
        })
        .collect();
    cols.sort_by(|x, y| y.0.partial_cmp(&x.0).unwrap());

    let d1 = cols.first().map_or(0.0, |c| c.0);
    let cut = NULL_COLUMN_CUT * d1;

    let mut v_sorted = DenseMatrix::zeros(k, k);
    let mut w_cols: Vec<Option<Vec<f64>>> = vec![None; n];
    let mut singular_values = Vec::with_capacity(k);
    for (i, (d, vi, ui)) in cols.into_iter().enumerate() {
        v_sorted.set_col(i, &vi);
        singular_values.push(d);
        if d > cut && d > 0.0 {
            let mut w = ui.iter().map(|x| x / d).collect::<Vec<f64>>();
            orthogonalize_against(&mut w, &w_cols);
            let norm = vec_norm(&w);
            for x in w.iter_mut() {
                *x /= norm;
            }
            w_cols[i] = Some(w);
        }
    }
    complete_basis(&mut w_cols);

    let mut w = DenseMatrix::zeros(n, n);
    for (j, col) in w_cols.into_iter().enumerate() {
        w.set_col(j, &col.expect("completed basis"));
    }

    let r = singular_values.len();
    let tie_flags = (0..r)
        .map(|i| i + 1 < r && (singular_values[i] - singular_values[i + 1]).abs() <= TIE_TOL * d1)
        .collect();

    Ok(SvdFactors { w, singular_values, v: v_sorted, tie_flags })
}

/// One-sided Jacobi sweeps on the columns of `b`, mirroring every rotation
/// into `v`, until all column pairs are orthogonal relative to their norms.
/// This is the same plane-rotation kernel as the eigensolver, driven by
/// inner products of the actual columns instead of Gram-matrix entries.
fn polish_columns(b: &mut DenseMatrix, v: &mut DenseMatrix) -> Result<()> {
    let k = b.cols();
    for _ in 0..POLISH_MAX_SWEEPS {
        let mut rotated = false;
        for p in 0..k {
            for q in p + 1..k {
                let bp = b.col(p);
                let bq = b.col(q);
                let npp = vec_dot(&bp, &bp);
                let nqq = vec_dot(&bq, &bq);
                let npq = vec_dot(&bp, &bq);
                if npq.abs() <= POLISH_TOL * (npp * nqq).sqrt() {
                    continue;
                }
                let tau = (nqq - npp) / (2.0 * npq);
                let t = if tau >= 0.0 {
                    1.0 / (tau + (1.0 + tau * tau).sqrt())
                } else {
                    1.0 / (tau - (1.0 + tau * tau).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let sn = t * c;
                for m in [&mut *b, &mut *v] {
                    for i in 0..m.rows() {
                        let mip = m[(i, p)];
                        let miq = m[(i, q)];
                        m[(i, p)] = c * mip - sn * miq;
                        m[(i, q)] = sn * mip + c * miq;
                    }
                }
                rotated = true;
            }
        }
        if !rotated {
            return Ok(());
        }
    }
    Err(Error::ConvergenceFailed { sweeps: POLISH_MAX_SWEEPS })
}

/// First-nonzero-positive sign convention on the `v` column, with the
/// matching flip applied to its image column so `b = A v` stays true.
fn normalize_sign_pair(mut v: Vec<f64>, mut b: Vec<f64>) -> (Vec<f64>, Vec<f64>) {
    for &x in &v {
        if x.abs() > 1e-12 {
            if x < 0.0 {
                for y in v.iter_mut() {
                    *y = -*y;
                }
                for y in b.iter_mut() {
                    *y = -*y;
                }
            }
            break;
        }
    }
    (v, b)
}

/// Number of singular values above `tol * d_1` (0 for the zero matrix).
pub fn rank_of(a: &DenseMatrix, tol: f64) -> Result<usize> {
    if !tol.is_finite() || tol < 0.0 {
        return Err(Error::ParamOutOfRange { name: "tol", value: tol });
    }
    let d = svd(a)?.singular_values;
    let d1 = d[0];
    Ok(d.iter().filter(|&&x| x > tol * d1 && x > 0.0).count())
}

/// The default rank tolerance `1e-10 * max(n, k)`.
pub fn default_rank_tol(a: &DenseMatrix) -> f64 {
    1e-10 * a.rows().max(a.cols()) as f64
}

/// Rank with the default tolerance.
pub fn rank_of_default(a: &DenseMatrix) -> Result<usize> {
    rank_of(a, default_rank_tol(a))
}

/// Two orthogonalization passes against the already fixed columns.
fn orthogonalize_against(v: &mut [f64], fixed: &[Option<Vec<f64>>]) {
    for _ in 0..2 {
        for q in fixed.iter().flatten() {
            let c = vec_dot(q, v);
            for (x, qx) in v.iter_mut().zip(q) {
                *x -= c * qx;
            }
        }
    }
}

/// Fills the empty slots with orthonormal vectors, choosing at each step the
/// standard basis vector with the largest residual (ties to the lowest
/// index) so the completion is deterministic.
fn complete_basis(cols: &mut [Option<Vec<f64>>]) {
    let n = cols.len();
    for slot in 0..n {
        if cols[slot].is_some() {
            continue;
        }
        let mut best: Option<(f64, Vec<f64>)> = None;
        for basis in 0..n {
            let mut e = vec![0.0; n];
            e[basis] = 1.0;
            orthogonalize_against(&mut e, cols);
            let norm = vec_norm(&e);
            if best.as_ref().is_none_or(|(b, _)| norm > *b) {
                best = Some((norm, e));
            }
        }
        let (norm, mut e) = best.expect("n > 0");
        for x in e.iter_mut() {
            *x /= norm;
        }
        cols[slot] = Some(normalize_column_sign(e));
    }
}
