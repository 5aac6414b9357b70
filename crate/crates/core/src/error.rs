use std::fmt;

/// Errors raised when an operation's contract is violated or a numerical
/// routine fails to converge.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// Two operands have incompatible shapes.
    ShapeMismatch {
        left: (usize, usize),
        right: (usize, usize),
    },
    /// A square matrix was required.
    NotSquare { rows: usize, cols: usize },
    /// Zero dimension, or entry count inconsistent with the shape.
    InvalidShape { rows: usize, cols: usize, len: usize },
    /// An entry is NaN or infinite.
    NonFinite { row: usize, col: usize },
    /// A symmetric matrix was required.
    NotSymmetric { max_asymmetry: f64 },
    /// Jacobi iteration did not converge within the sweep cap.
    ConvergenceFailed { sweeps: usize },
    /// Columns are linearly dependent where independence was required.
    SingularInput,
    /// A positive semi-definite matrix was required.
    NotPositiveSemidefinite { min_eigenvalue: f64 },
    /// The input's rank is below what the operation needs.
    RankTooLow { rank: usize, required: usize },
    /// A requested rank is outside `0..=min(rows, cols)`.
    RankOutOfRange { rank: usize, max: usize },
    /// An index argument is out of range.
    IndexOutOfRange { value: usize, max: usize },
    /// A scalar argument is outside its admissible range.
    ParamOutOfRange { name: &'static str, value: f64 },
    /// A matrix expected to lie on the sphere of radius sqrt(n) does not.
    NotOnSphere { norm: f64, expected: f64 },
    /// A vector expected to be unit length is not.
    NotUnit { norm: f64 },
    /// A tangent direction is not orthogonal to the base point.
    NotTangent { inner: f64 },
    /// The zero matrix has no direction to normalize.
    ZeroMatrix,
    /// Degenerate input (e.g. every point at the centroid).
    DegenerateInput,
    /// The operation is not defined for this dimension.
    Unsupported { what: &'static str },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::ShapeMismatch { left, right } => {
                write!(f, "shape mismatch: {}x{} vs {}x{}", left.0, left.1, right.0, right.1)
            }
            Error::NotSquare { rows, cols } => {
                write!(f, "matrix must be square, got {}x{}", rows, cols)
            }
            Error::InvalidShape { rows, cols, len } => {
                write!(f, "invalid shape: {}x{} with {} entries", rows, cols, len)
            }
            Error::NonFinite { row, col } => {
                write!(f, "non-finite entry at ({}, {})", row, col)
            }
            Error::NotSymmetric { max_asymmetry } => {
                write!(f, "matrix is not symmetric (max asymmetry {:e})", max_asymmetry)
            }
            Error::ConvergenceFailed { sweeps } => {
                write!(f, "Jacobi iteration failed to converge in {} sweeps", sweeps)
            }
            Error::SingularInput => write!(f, "columns are linearly dependent"),
            Error::NotPositiveSemidefinite { min_eigenvalue } => {
                write!(f, "matrix is not positive semi-definite (eigenvalue {:e})", min_eigenvalue)
            }
            Error::RankTooLow { rank, required } => {
                write!(f, "rank {} is below the required {}", rank, required)
            }
            Error::RankOutOfRange { rank, max } => {
                write!(f, "target rank {} out of range 0..={}", rank, max)
            }
            Error::IndexOutOfRange { value, max } => {
                write!(f, "index {} out of range 0..={}", value, max)
            }
            Error::ParamOutOfRange { name, value } => {
                write!(f, "parameter {} = {} out of range", name, value)
            }
            Error::NotOnSphere { norm, expected } => {
                write!(f, "matrix norm {} differs from sphere radius {}", norm, expected)
            }
            Error::NotUnit { norm } => write!(f, "vector norm {} is not 1", norm),
            Error::NotTangent { inner } => {
                write!(f, "direction is not tangent (inner product {:e})", inner)
            }
            Error::ZeroMatrix => write!(f, "zero matrix cannot be normalized"),
            Error::DegenerateInput => write!(f, "degenerate input"),
            Error::Unsupported { what } => write!(f, "unsupported: {}", what),
        }
    }
}

impl std::error::Error for Error {}

pub type Result<T> = std::result::Result<T, Error>;
