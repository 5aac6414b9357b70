//! Dense row-major matrices of binary64 reals, plus the basic operations the
//! decomposition routines are built on: Frobenius inner product, cofactor
//! matrices, and classical Gram-Schmidt orthonormalization.

use std::fmt;
use std::ops::{Index, IndexMut};

use crate::error::{Error, Result};

/// Relative threshold below which a Gram-Schmidt residual counts as zero.
const GS_DEPENDENCE_TOL: f64 = 1e-12;

/// An `n x k` dense matrix of finite binary64 entries, stored row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<f64>,
}

impl DenseMatrix {
    /// Builds a matrix from row-major entries, validating the shape and that
    /// every entry is finite.
    pub fn from_vec(rows: usize, cols: usize, entries: Vec<f64>) -> Result<Self> {
        if rows == 0 || cols == 0 || entries.len() != rows * cols {
            return Err(Error::InvalidShape { rows, cols, len: entries.len() });
        }
        for (i, &v) in entries.iter().enumerate() {
            if !v.is_finite() {
                return Err(Error::NonFinite { row: i / cols, col: i % cols });
            }
        }
        Ok(DenseMatrix { rows, cols, entries })
    }

    /// Builds a matrix from a slice of equally long rows.
    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        if r == 0 || c == 0 || rows.iter().any(|row| row.len() != c) {
            return Err(Error::InvalidShape {
                rows: r,
                cols: c,
                len: rows.iter().map(|row| row.len()).sum(),
            });
        }
        let mut entries = Vec::with_capacity(r * c);
        for row in rows {
            entries.extend_from_slice(row);
        }
        Self::from_vec(r, c, entries)
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        assert!(rows > 0 && cols > 0, "matrix dimensions must be positive");
        DenseMatrix { rows, cols, entries: vec![0.0; rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = 1.0;
        }
        m
    }

    /// Square matrix with `d` on the diagonal and zeros elsewhere.
    pub fn from_diag(d: &[f64]) -> Self {
        let n = d.len();
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = d[i];
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> f64) -> Self {
        let mut m = Self::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m[(i, j)] = f(i, j);
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn entries(&self) -> &[f64] {
        &self.entries
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn col(&self, j: usize) -> Vec<f64> {
        (0..self.rows).map(|i| self[(i, j)]).collect()
    }

    pub fn set_col(&mut self, j: usize, v: &[f64]) {
        assert_eq!(v.len(), self.rows);
        for i in 0..self.rows {
            self[(i, j)] = v[i];
        }
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)])
    }

    /// Matrix product; shapes must already agree.
    pub fn matmul(&self, rhs: &Self) -> Self {
        assert_eq!(self.cols, rhs.rows, "matmul shape mismatch");
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for l in 0..self.cols {
                let a = self[(i, l)];
                if a == 0.0 {
                    continue;
                }
                for j in 0..rhs.cols {
                    out[(i, j)] += a * rhs[(l, j)];
                }
            }
        }
        out
    }

    /// Matrix-vector product.
    pub fn matvec(&self, v: &[f64]) -> Vec<f64> {
        assert_eq!(v.len(), self.cols, "matvec shape mismatch");
        (0..self.rows)
            .map(|i| self.row(i).iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }

    pub fn add(&self, rhs: &Self) -> Self {
        assert_eq!(self.shape(), rhs.shape(), "add shape mismatch");
        let entries = self.entries.iter().zip(&rhs.entries).map(|(a, b)| a + b).collect();
        DenseMatrix { rows: self.rows, cols: self.cols, entries }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        assert_eq!(self.shape(), rhs.shape(), "sub shape mismatch");
        let entries = self.entries.iter().zip(&rhs.entries).map(|(a, b)| a - b).collect();
        DenseMatrix { rows: self.rows, cols: self.cols, entries }
    }

    pub fn scaled(&self, s: f64) -> Self {
        let entries = self.entries.iter().map(|a| a * s).collect();
        DenseMatrix { rows: self.rows, cols: self.cols, entries }
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.entries.iter().map(|a| a * a).sum::<f64>().sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.entries.iter().fold(0.0, |m, a| m.max(a.abs()))
    }

    /// Largest absolute entrywise difference between two same-shaped matrices.
    pub fn max_abs_diff(&self, rhs: &Self) -> f64 {
        assert_eq!(self.shape(), rhs.shape(), "diff shape mismatch");
        self.entries
            .iter()
            .zip(&rhs.entries)
            .fold(0.0, |m, (a, b)| m.max((a - b).abs()))
    }

    /// Determinant via LU with partial pivoting (direct formulas for n <= 3).
    pub fn determinant(&self) -> Result<f64> {
        if !self.is_square() {
            return Err(Error::NotSquare { rows: self.rows, cols: self.cols });
        }
        let n = self.rows;
        match n {
            1 => return Ok(self[(0, 0)]),
            2 => return Ok(self[(0, 0)] * self[(1, 1)] - self[(0, 1)] * self[(1, 0)]),
            3 => {
                let m = self;
                return Ok(m[(0, 0)] * (m[(1, 1)] * m[(2, 2)] - m[(1, 2)] * m[(2, 1)])
                    - m[(0, 1)] * (m[(1, 0)] * m[(2, 2)] - m[(1, 2)] * m[(2, 0)])
                    + m[(0, 2)] * (m[(1, 0)] * m[(2, 1)] - m[(1, 1)] * m[(2, 0)]));
            }
            _ => {}
        }
        let mut lu = self.clone();
        let mut det = 1.0;
        for p in 0..n {
            let mut pivot = p;
            for i in p + 1..n {
                if lu[(i, p)].abs() > lu[(pivot, p)].abs() {
                    pivot = i;
                }
            }
            if lu[(pivot, p)] == 0.0 {
                return Ok(0.0);
            }
            if pivot != p {
                for j in 0..n {
                    let tmp = lu[(p, j)];
                    lu[(p, j)] = lu[(pivot, j)];
                    lu[(pivot, j)] = tmp;
                }
                det = -det;
            }
            det *= lu[(p, p)];
            for i in p + 1..n {
                let factor = lu[(i, p)] / lu[(p, p)];
                for j in p + 1..n {
                    let sub = factor * lu[(p, j)];
                    lu[(i, j)] -= sub;
                }
            }
        }
        Ok(det)
    }
}

impl Index<(usize, usize)> for DenseMatrix {
    type Output = f64;

    fn index(&self, (i, j): (usize, usize)) -> &f64 {
        &self.entries[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for DenseMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut f64 {
        &mut self.entries[i * self.cols + j]
    }
}

impl fmt::Display for DenseMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|v| format!("{}", v)).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// Frobenius inner product `sum_ij A_ij * B_ij` of two same-shaped matrices.
pub fn frobenius_inner(a: &DenseMatrix, b: &DenseMatrix) -> Result<f64> {
    if a.shape() != b.shape() {
        return Err(Error::ShapeMismatch { left: a.shape(), right: b.shape() });
    }
    Ok(a.entries.iter().zip(&b.entries).map(|(x, y)| x * y).sum())
}

/// Matrix of signed minors `C_rs = (-1)^(r+s) det(minor_rs)`.
///
/// For a 3x3 matrix this coincides with the induced map on 2-vectors, and in
/// every dimension it is the gradient of the determinant.
pub fn cofactor_matrix(a: &DenseMatrix) -> Result<DenseMatrix> {
    if !a.is_square() {
        return Err(Error::NotSquare { rows: a.rows(), cols: a.cols() });
    }
    let n = a.rows();
    if n == 1 {
        return Ok(DenseMatrix::from_vec(1, 1, vec![1.0]).expect("valid 1x1"));
    }
    let mut c = DenseMatrix::zeros(n, n);
    for r in 0..n {
        for s in 0..n {
            let minor = DenseMatrix::from_fn(n - 1, n - 1, |i, j| {
                let ii = if i < r { i } else { i + 1 };
                let jj = if j < s { j } else { j + 1 };
                a[(ii, jj)]
            });
            let sign = if (r + s) % 2 == 0 { 1.0 } else { -1.0 };
            c[(r, s)] = sign * minor.determinant().expect("minor is square");
        }
    }
    Ok(c)
}

/// Classical column-by-column Gram-Schmidt orthonormalization.
///
/// Returns the orthogonal factor `Q`; the implied triangular factor has a
/// positive diagonal. Each column is orthogonalized twice against its
/// predecessors so that `Q^T Q = I` holds to working precision. A column
/// whose residual drops below `1e-12` of its original norm is treated as
/// linearly dependent.
pub fn gram_schmidt(a: &DenseMatrix) -> Result<DenseMatrix> {
    if !a.is_square() {
        return Err(Error::NotSquare { rows: a.rows(), cols: a.cols() });
    }
    let n = a.rows();
    let mut q_cols: Vec<Vec<f64>> = Vec::with_capacity(n);
    for j in 0..n {
        let mut v = a.col(j);
        let original_norm = vec_norm(&v);
        if original_norm == 0.0 {
            return Err(Error::SingularInput);
        }
        for _ in 0..2 {
            for q in &q_cols {
                let c = vec_dot(q, &v);
                for (vi, qi) in v.iter_mut().zip(q) {
                    *vi -= c * qi;
                }
            }
        }
        let norm = vec_norm(&v);
        if norm <= GS_DEPENDENCE_TOL * original_norm {
            return Err(Error::SingularInput);
        }
        for vi in v.iter_mut() {
            *vi /= norm;
        }
        q_cols.push(v);
    }
    let mut q = DenseMatrix::zeros(n, n);
    for (j, col) in q_cols.iter().enumerate() {
        q.set_col(j, col);
    }
    Ok(q)
}

/// Contract check for operations that require finite entries; matrices built
/// through `from_fn` or arithmetic can smuggle NaN/Inf past the constructors.
pub(crate) fn check_finite(a: &DenseMatrix) -> Result<()> {
    for i in 0..a.rows() {
        for (j, v) in a.row(i).iter().enumerate() {
            if !v.is_finite() {
                return Err(Error::NonFinite { row: i, col: j });
            }
        }
    }
    Ok(())
}

pub(crate) fn vec_dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub(crate) fn vec_norm(a: &[f64]) -> f64 {
    vec_dot(a, a).sqrt()
}
