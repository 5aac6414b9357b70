//! Orthogonal Procrustes alignment of ordered point sets, with the rotation
//! restricted to SO(n) on request (attitude estimation) and optional scale
//! normalization for shape comparison.

use crate::decomp::nearest_orthogonal;
use crate::error::{Error, Result};
use crate::matrix::DenseMatrix;
use crate::svd::rank_of_default;

/// An ordered set of k points in R^n.
#[derive(Debug, Clone, PartialEq)]
pub struct PointSet {
    dim: usize,
    points: Vec<Vec<f64>>,
}

impl PointSet {
    pub fn new(dim: usize, points: Vec<Vec<f64>>) -> Result<Self> {
        if dim == 0 || points.is_empty() {
            return Err(Error::InvalidShape { rows: points.len(), cols: dim, len: 0 });
        }
        for (i, p) in points.iter().enumerate() {
            if p.len() != dim {
                return Err(Error::InvalidShape { rows: points.len(), cols: dim, len: p.len() });
            }
            for (j, &v) in p.iter().enumerate() {
                if !v.is_finite() {
                    return Err(Error::NonFinite { row: i, col: j });
                }
            }
        }
        Ok(PointSet { dim, points })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[Vec<f64>] {
        &self.points
    }

    /// The n x k matrix whose columns are the points.
    pub fn as_columns(&self) -> DenseMatrix {
        DenseMatrix::from_fn(self.dim, self.points.len(), |i, j| self.points[j][i])
    }
}

/// Output of a Procrustes fit.
///
/// `disparity` is the squared quantity: the sum of squared distances
/// between corresponding points after centering (and optional scaling) and
/// applying the rotation. `unique` is false when `B A^T` is rank-deficient,
/// in which case the reported rotation is one optimal representative.
#[derive(Debug, Clone)]
pub struct ProcrustesResult {
    pub rotation: DenseMatrix,
    pub centroid_p: Vec<f64>,
    pub centroid_q: Vec<f64>,
    pub scale_p: f64,
    pub scale_q: f64,
    pub disparity: f64,
    pub special: bool,
    pub unique: bool,
}

/// Translates a point set so its centroid sits at the origin; returns the
/// centered set and the centroid.
pub fn center(points: &PointSet) -> (PointSet, Vec<f64>) {
    let k = points.len() as f64;
    let mut centroid = vec![0.0; points.dim];
    for p in &points.points {
        for (c, v) in centroid.iter_mut().zip(p) {
            *c += v / k;
        }
    }
    let centered = points
        .points
        .iter()
        .map(|p| p.iter().zip(&centroid).map(|(v, c)| v - c).collect())
        .collect();
    (PointSet { dim: points.dim, points: centered }, centroid)
}

/// Scales a centered set so the total squared norm of its points is 1;
/// returns the scaled set and the divisor.
pub fn scale_normalize(points: &PointSet) -> Result<(PointSet, f64)> {
    let total: f64 = points
        .points
        .iter()
        .flat_map(|p| p.iter())
        .map(|v| v * v)
        .sum();
    if total == 0.0 {
        return Err(Error::DegenerateInput);
    }
    let scale = total.sqrt();
    let scaled = points
        .points
        .iter()
        .map(|p| p.iter().map(|v| v / scale).collect())
        .collect();
    Ok((PointSet { dim: points.dim, points: scaled }, scale))
}

/// Sum of squared distances between `U p_i` and `q_i`.
pub fn disparity(p: &PointSet, q: &PointSet, u: &DenseMatrix) -> Result<f64> {
    if p.dim != q.dim || p.len() != q.len() {
        return Err(Error::ShapeMismatch {
            left: (p.dim, p.len()),
            right: (q.dim, q.len()),
        });
    }
    if u.shape() != (p.dim, p.dim) {
        return Err(Error::ShapeMismatch { left: u.shape(), right: (p.dim, p.dim) });
    }
    let mut total = 0.0;
    for (pi, qi) in p.points.iter().zip(&q.points) {
        let moved = u.matvec(pi);
        total += moved
            .iter()
            .zip(qi)
            .map(|(a, b)| (a - b) * (a - b))
            .sum::<f64>();
    }
    Ok(total)
}

/// Finds the orthogonal map minimizing the disparity between the centered
/// (and optionally scale-normalized) sets: the nearest orthogonal neighbor
/// of `B A^T`, restricted to rotations when `special` is set.
///
/// When every point of either set sits at its centroid, there is nothing to
/// align: the identity is returned with `unique = false`.
pub fn procrustes_fit(
    p: &PointSet,
    q: &PointSet,
    special: bool,
    normalize_scale: bool,
) -> Result<ProcrustesResult> {
    if p.dim != q.dim || p.len() != q.len() {
        return Err(Error::ShapeMismatch {
            left: (p.dim, p.len()),
            right: (q.dim, q.len()),
        });
    }
    let n = p.dim;
    let (mut p_c, centroid_p) = center(p);
    let (mut q_c, centroid_q) = center(q);

    let mut scale_p = 1.0;
    let mut scale_q = 1.0;
    // "Every point at the centroid" up to centering round-off: the centered
    // mass is at rounding level relative to the original coordinates.
    let degenerate_p = total_sq(&p_c) <= 1e-28 * total_sq(p);
    let degenerate_q = total_sq(&q_c) <= 1e-28 * total_sq(q);
    if normalize_scale && !degenerate_p && !degenerate_q {
        let (ps, sp) = scale_normalize(&p_c)?;
        let (qs, sq) = scale_normalize(&q_c)?;
        p_c = ps;
        q_c = qs;
        scale_p = sp;
        scale_q = sq;
    }

    let (rotation, unique) = if degenerate_p || degenerate_q {
        (DenseMatrix::identity(n), false)
    } else {
        let a = p_c.as_columns();
        let b = q_c.as_columns();
        let m = b.matmul(&a.transpose());
        let unique = rank_of_default(&m)? == n;
        (nearest_orthogonal(&m, special)?, unique)
    };

    let disparity = disparity(&p_c, &q_c, &rotation)?;
    Ok(ProcrustesResult {
        rotation,
        centroid_p,
        centroid_q,
        scale_p,
        scale_q,
        disparity,
        special,
        unique,
    })
}

fn total_sq(points: &PointSet) -> f64 {
    points
        .points
        .iter()
        .flat_map(|p| p.iter())
        .map(|v| v * v)
        .sum()
}
