//! Principal component analysis via the SVD of mean-centered data.

use crate::error::{Error, Result};
use crate::matrix::{vec_dot, DenseMatrix};
use crate::svd::{default_rank_tol, svd};

/// Whether data points are the rows or the columns of the data matrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Orientation {
    RowsAsPoints,
    ColsAsPoints,
}

/// A fitted PCA model.
///
/// `components` holds the orthonormal principal directions, ordered by
/// singular value; directions whose singular value falls below the rank
/// tolerance are dropped. `singular_values` keeps the full nonincreasing
/// list, with `tie_flags` carried over from the decomposition so order and
/// sign ambiguity under ties stays visible.
#[derive(Debug, Clone)]
pub struct PcaModel {
    pub mean: Vec<f64>,
    pub components: Vec<Vec<f64>>,
    pub singular_values: Vec<f64>,
    pub tie_flags: Vec<bool>,
    pub orientation: Orientation,
}

impl PcaModel {
    pub fn component_count(&self) -> usize {
        self.components.len()
    }

    pub fn dim(&self) -> usize {
        self.mean.len()
    }
}

/// Fits a PCA model: subtract the average point, decompose, and keep the
/// singular directions on the point side of the factorization.
pub fn pca_fit(data: &DenseMatrix, orientation: Orientation) -> Result<PcaModel> {
    let (centered, mean) = center_data(data, orientation);
    let f = svd(&centered)?;
    let factor = match orientation {
        // Points as rows: directions live in the right factor.
        Orientation::RowsAsPoints => &f.v,
        // Points as columns: directions live in the left factor.
        Orientation::ColsAsPoints => &f.w,
    };
    let cut = default_rank_tol(&centered) * f.singular_values[0];
    let rank = f
        .singular_values
        .iter()
        .filter(|&&d| d > cut && d > 0.0)
        .count();
    let components = (0..rank).map(|j| factor.col(j)).collect();
    Ok(PcaModel {
        mean,
        components,
        singular_values: f.singular_values,
        tie_flags: f.tie_flags,
        orientation,
    })
}

/// Coefficients of `x` against the first `k` components: `<x - mean, w_i>`.
pub fn project(model: &PcaModel, x: &[f64], k: usize) -> Result<Vec<f64>> {
    if k > model.component_count() {
        return Err(Error::IndexOutOfRange { value: k, max: model.component_count() });
    }
    if x.len() != model.dim() {
        return Err(Error::ShapeMismatch {
            left: (x.len(), 1),
            right: (model.dim(), 1),
        });
    }
    let centered: Vec<f64> = x.iter().zip(&model.mean).map(|(a, m)| a - m).collect();
    Ok(model.components[..k]
        .iter()
        .map(|w| vec_dot(&centered, w))
        .collect())
}

/// Rebuilds `mean + sum_i coeffs_i w_i`.
pub fn reconstruct(model: &PcaModel, coeffs: &[f64]) -> Result<Vec<f64>> {
    if coeffs.len() > model.component_count() {
        return Err(Error::IndexOutOfRange {
            value: coeffs.len(),
            max: model.component_count(),
        });
    }
    let mut out = model.mean.clone();
    for (c, w) in coeffs.iter().zip(&model.components) {
        for (o, wi) in out.iter_mut().zip(w) {
            *o += c * wi;
        }
    }
    Ok(out)
}

/// Frobenius norm of the difference between the centered data and its
/// rank-k reconstruction from the model.
pub fn reconstruction_error(model: &PcaModel, data: &DenseMatrix, k: usize) -> Result<f64> {
    if k > model.component_count() {
        return Err(Error::IndexOutOfRange { value: k, max: model.component_count() });
    }
    let points = extract_points(data, model.orientation);
    if points.first().map(Vec::len) != Some(model.dim()) {
        return Err(Error::ShapeMismatch {
            left: data.shape(),
            right: (model.dim(), model.dim()),
        });
    }
    let mut total = 0.0;
    for p in &points {
        let coeffs = project(model, p, k)?;
        let rebuilt = reconstruct(model, &coeffs)?;
        total += p
            .iter()
            .zip(&rebuilt)
            .map(|(a, b)| (a - b) * (a - b))
            .sum::<f64>();
    }
    Ok(total.sqrt())
}

fn extract_points(data: &DenseMatrix, orientation: Orientation) -> Vec<Vec<f64>> {
    match orientation {
        Orientation::RowsAsPoints => (0..data.rows()).map(|i| data.row(i).to_vec()).collect(),
        Orientation::ColsAsPoints => (0..data.cols()).map(|j| data.col(j)).collect(),
    }
}

fn center_data(data: &DenseMatrix, orientation: Orientation) -> (DenseMatrix, Vec<f64>) {
    match orientation {
        Orientation::RowsAsPoints => {
            let m = data.rows() as f64;
            let mean: Vec<f64> =
                (0..data.cols()).map(|j| data.col(j).iter().sum::<f64>() / m).collect();
            let centered = DenseMatrix::from_fn(data.rows(), data.cols(), |i, j| {
                data[(i, j)] - mean[j]
            });
            (centered, mean)
        }
        Orientation::ColsAsPoints => {
            let m = data.cols() as f64;
            let mean: Vec<f64> =
                (0..data.rows()).map(|i| data.row(i).iter().sum::<f64>() / m).collect();
            let centered = DenseMatrix::from_fn(data.rows(), data.cols(), |i, j| {
                data[(i, j)] - mean[i]
            });
            (centered, mean)
        }
    }
}
