//! Dense-matrix decomposition toolkit: singular value and polar
//! decompositions built on one Jacobi kernel, Eckart-Young low-rank
//! truncation, nearest orthogonal / best-of-rank-r / singular neighbors,
//! orthogonal Procrustes alignment, and PCA, together with a seeded
//! verification suite for the geometry of the sphere of normalized matrices.
//!
//! Everything works on [`DenseMatrix`], a plain row-major array of binary64
//! reals. All operations are pure functions of their inputs; values are
//! immutable after construction and safe to share across threads.

pub mod align;
pub mod decomp;
pub mod eigen;
pub mod error;
pub mod matrix;
pub mod pca;
pub mod report;
pub mod rng;
pub mod sphere;
pub mod svd;

pub use align::{center, disparity, procrustes_fit, scale_normalize, PointSet, ProcrustesResult};
pub use decomp::{
    nearest_best_of_rank, nearest_orthogonal, nearest_singular_on_sphere, polar_decompose,
    psd_sqrt, truncate_rank, PolarFactors, PolarSide, TruncationResult,
};
pub use eigen::{sym_eigen, EigenFactors};
pub use error::{Error, Result};
pub use matrix::{cofactor_matrix, frobenius_inner, gram_schmidt, DenseMatrix};
pub use pca::{pca_fit, project, reconstruct, reconstruction_error, Orientation, PcaModel};
pub use report::{geometry_report, CheckResult, Report};
pub use rng::Rng;
pub use sphere::{
    angular_distance, classify_stratum, geodesic_point, grad_det_sphere, m4_normal_geodesic,
    m4_point, m5_ray, to_sphere, wedge_norm, GeodesicArc, SphericalPoint, StratumLabel,
};
pub use svd::{default_rank_tol, rank_of, rank_of_default, svd, SvdFactors};
