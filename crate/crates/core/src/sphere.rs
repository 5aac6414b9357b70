//! Geometry of the sphere of normalized n x n matrices: the round sphere of
//! radius sqrt(n) in matrix space that carries the orthogonal group, the
//! variety of singular matrices, and its rank strata.

use crate::error::{Error, Result};
use crate::matrix::{cofactor_matrix, frobenius_inner, DenseMatrix};
use crate::svd::{default_rank_tol, svd};

/// Absolute slack allowed on the sphere-radius invariant.
const SPHERE_NORM_TOL: f64 = 1e-10;
/// Default relative gap under which the two nonzero singular values of a
/// rank-2 point count as equal, placing it on the best-of-rank-2 stratum.
pub const DEFAULT_STRATUM_TOL: f64 = 1e-8;

/// An `n x n` matrix of Frobenius norm `sqrt(n)`, i.e. a point of the sphere
/// containing the orthogonal group.
#[derive(Debug, Clone, PartialEq)]
pub struct SphericalPoint {
    matrix: DenseMatrix,
}

impl SphericalPoint {
    /// Wraps a matrix after checking it is square with norm `sqrt(n)`.
    pub fn new(matrix: DenseMatrix) -> Result<Self> {
        if !matrix.is_square() {
            return Err(Error::NotSquare { rows: matrix.rows(), cols: matrix.cols() });
        }
        let expected = (matrix.rows() as f64).sqrt();
        let norm = matrix.frobenius_norm();
        if (norm - expected).abs() > SPHERE_NORM_TOL {
            return Err(Error::NotOnSphere { norm, expected });
        }
        Ok(SphericalPoint { matrix })
    }

    pub fn matrix(&self) -> &DenseMatrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> DenseMatrix {
        self.matrix
    }

    /// Side length n of the underlying matrix.
    pub fn n(&self) -> usize {
        self.matrix.rows()
    }
}

/// A great-circle arc `t -> cos(t) start + sin(t) tangent`, with the tangent
/// scaled to norm `sqrt(n)` so the arc stays on the sphere and `t` is the
/// angle in radians.
#[derive(Debug, Clone)]
pub struct GeodesicArc {
    pub start: SphericalPoint,
    pub unit_tangent: DenseMatrix,
    pub length: f64,
}

impl GeodesicArc {
    pub fn new(start: SphericalPoint, unit_tangent: DenseMatrix, length: f64) -> Result<Self> {
        let n = start.n();
        if unit_tangent.shape() != (n, n) {
            return Err(Error::ShapeMismatch {
                left: (n, n),
                right: unit_tangent.shape(),
            });
        }
        let expected = (n as f64).sqrt();
        let norm = unit_tangent.frobenius_norm();
        if (norm - expected).abs() > 1e-8 {
            return Err(Error::NotOnSphere { norm, expected });
        }
        check_tangency(&start, &unit_tangent)?;
        if !(0.0..=std::f64::consts::PI).contains(&length) {
            return Err(Error::ParamOutOfRange { name: "length", value: length });
        }
        Ok(GeodesicArc { start, unit_tangent, length })
    }

    /// Arc from `start` toward `target`, with the tangent built by
    /// Gram-Schmidt of the chord and the length set to the angular distance.
    pub fn toward(start: &SphericalPoint, target: &SphericalPoint) -> Result<Self> {
        let n = start.n();
        let length = angular_distance(start, target)?;
        let radial = frobenius_inner(target.matrix(), start.matrix())? / n as f64;
        let residual = target.matrix().sub(&start.matrix().scaled(radial));
        let norm = residual.frobenius_norm();
        if norm <= 1e-12 * (n as f64).sqrt() {
            return Err(Error::DegenerateInput);
        }
        let tangent = residual.scaled((n as f64).sqrt() / norm);
        GeodesicArc::new(start.clone(), tangent, length)
    }
}

fn check_tangency(start: &SphericalPoint, tangent: &DenseMatrix) -> Result<()> {
    let inner = frobenius_inner(start.matrix(), tangent)?;
    if inner.abs() > 1e-10 * start.n() as f64 {
        return Err(Error::NotTangent { inner });
    }
    Ok(())
}

/// Stratum of the sphere of normalized 3x3 matrices a point belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StratumLabel {
    /// Rank 3 with positive determinant: the neighborhood of the rotations.
    NonsingularPos,
    /// Rank 3 with negative determinant.
    NonsingularNeg,
    /// Rank 2 with distinct nonzero singular values.
    Rank2Generic,
    /// Rank 2 and orthogonal on its image plane: the best-of-rank-2 stratum.
    M5BestRank2,
    /// Rank 1.
    M4Rank1,
}

impl std::fmt::Display for StratumLabel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let name = match self {
            StratumLabel::NonsingularPos => "NONSINGULAR_POS",
            StratumLabel::NonsingularNeg => "NONSINGULAR_NEG",
            StratumLabel::Rank2Generic => "RANK2_GENERIC",
            StratumLabel::M5BestRank2 => "M5_BEST_RANK2",
            StratumLabel::M4Rank1 => "M4_RANK1",
        };
        write!(f, "{}", name)
    }
}

/// Scales a nonzero square matrix onto the sphere: `sqrt(n) A / |A|`.
pub fn to_sphere(a: &DenseMatrix) -> Result<SphericalPoint> {
    if !a.is_square() {
        return Err(Error::NotSquare { rows: a.rows(), cols: a.cols() });
    }
    let norm = a.frobenius_norm();
    if norm == 0.0 {
        return Err(Error::ZeroMatrix);
    }
    let scaled = a.scaled((a.rows() as f64).sqrt() / norm);
    Ok(SphericalPoint { matrix: scaled })
}

/// Angle `arccos(<A, B> / n)` between two points of the sphere, in [0, pi].
pub fn angular_distance(a: &SphericalPoint, b: &SphericalPoint) -> Result<f64> {
    let inner = frobenius_inner(a.matrix(), b.matrix())?;
    let cos = (inner / a.n() as f64).clamp(-1.0, 1.0);
    Ok(cos.acos())
}

/// Point at angle `t` along the arc.
pub fn geodesic_point(arc: &GeodesicArc, t: f64) -> Result<SphericalPoint> {
    if !(0.0..=arc.length).contains(&t) {
        return Err(Error::ParamOutOfRange { name: "t", value: t });
    }
    check_tangency(&arc.start, &arc.unit_tangent)?;
    let m = arc
        .start
        .matrix()
        .scaled(t.cos())
        .add(&arc.unit_tangent.scaled(t.sin()));
    Ok(SphericalPoint { matrix: m })
}

/// Gradient of the determinant as a function on the sphere: the cofactor
/// matrix minus its radial component. At a singular point this is normal to
/// the level set of det through it, and it vanishes exactly where the full
/// gradient is radial, e.g. on the orthogonal group.
pub fn grad_det_sphere(a: &SphericalPoint) -> Result<DenseMatrix> {
    let cof = cofactor_matrix(a.matrix())?;
    let n = a.n() as f64;
    let radial = frobenius_inner(&cof, a.matrix())? / n;
    Ok(cof.sub(&a.matrix().scaled(radial)))
}

/// Frobenius norm of the induced map on 2-vectors: `|cof(A)|` for 3x3
/// matrices, `|det A|` for 2x2 ones. Invariant under rotations on both sides.
pub fn wedge_norm(a: &DenseMatrix) -> Result<f64> {
    if !a.is_square() {
        return Err(Error::NotSquare { rows: a.rows(), cols: a.cols() });
    }
    match a.rows() {
        2 => Ok(a.determinant()?.abs()),
        3 => Ok(cofactor_matrix(a)?.frobenius_norm()),
        _ => Err(Error::Unsupported { what: "wedge norm is defined for n = 2 and n = 3" }),
    }
}

/// The rank-1 point `sqrt(3) x y^T` of the sphere determined by a pair of
/// unit 3-vectors; `(x, y)` and `(-x, -y)` give the same point.
pub fn m4_point(x: &[f64], y: &[f64]) -> Result<SphericalPoint> {
    for v in [x, y] {
        if v.len() != 3 {
            return Err(Error::Unsupported { what: "rank-1 chart takes unit 3-vectors" });
        }
        let norm = v.iter().map(|t| t * t).sum::<f64>().sqrt();
        if (norm - 1.0).abs() > 1e-12 {
            return Err(Error::NotUnit { norm });
        }
    }
    let outer = DenseMatrix::from_fn(3, 3, |i, j| x[i] * y[j]);
    to_sphere(&outer)
}

/// The ray of singular matrices leaving the best-of-rank-2 point
/// `diag(1, 1, 0)` orthogonally in the tangent direction `(a, b)`, rescaled
/// to the sphere. Rank 2 for `t < pi/4`; at `t = pi/4` the ray reaches a
/// rank-1 point.
pub fn m5_ray(a: f64, b: f64, t: f64) -> Result<SphericalPoint> {
    let unit = a * a + b * b;
    if (unit - 1.0).abs() > 1e-12 {
        return Err(Error::NotUnit { norm: unit.sqrt() });
    }
    if !(0.0..=std::f64::consts::FRAC_PI_4).contains(&t) {
        return Err(Error::ParamOutOfRange { name: "t", value: t });
    }
    let (c, s) = (t.cos(), t.sin());
    let m = DenseMatrix::from_vec(
        3,
        3,
        vec![
            c + b * s,
            a * s,
            0.0,
            a * s,
            c - b * s,
            0.0,
            0.0,
            0.0,
            0.0,
        ],
    )
    .expect("entries are finite");
    to_sphere(&m)
}

/// Geodesic leaving the rank-1 point `diag(sqrt(3), 0, 0)` orthogonally to
/// the rank-1 stratum, with the direction given by a unit 2x2 block
/// `[[a, b], [c, d]]`. A rank-2 block makes the curve immediately rank 3; a
/// rank-1 block keeps it rank 2.
pub fn m4_normal_geodesic(a: f64, b: f64, c: f64, d: f64, t: f64) -> Result<SphericalPoint> {
    let unit = a * a + b * b + c * c + d * d;
    if (unit - 1.0).abs() > 1e-12 {
        return Err(Error::NotUnit { norm: unit.sqrt() });
    }
    let (ct, st) = (t.cos(), t.sin());
    let m = DenseMatrix::from_vec(
        3,
        3,
        vec![
            ct,
            0.0,
            0.0,
            0.0,
            a * st,
            b * st,
            0.0,
            c * st,
            d * st,
        ],
    )
    .expect("entries are finite");
    to_sphere(&m)
}

/// Classifies a point of the sphere of 3x3 matrices into its stratum. `tol`
/// is the relative gap under which the two singular values of a rank-2 point
/// count as equal.
pub fn classify_stratum(a: &SphericalPoint, tol: f64) -> Result<StratumLabel> {
    if a.n() != 3 {
        return Err(Error::Unsupported { what: "stratum labels are defined for n = 3" });
    }
    let f = svd(a.matrix())?;
    let d = &f.singular_values;
    let rank_tol = default_rank_tol(a.matrix()) * d[0];
    let rank = d.iter().filter(|&&x| x > rank_tol && x > 0.0).count();
    Ok(match rank {
        3 => {
            if a.matrix().determinant()? >= 0.0 {
                StratumLabel::NonsingularPos
            } else {
                StratumLabel::NonsingularNeg
            }
        }
        2 => {
            if (d[0] - d[1]).abs() <= tol * d[0] {
                StratumLabel::M5BestRank2
            } else {
                StratumLabel::Rank2Generic
            }
        }
        _ => StratumLabel::M4Rank1,
    })
}
