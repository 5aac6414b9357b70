//! Deterministic pseudorandom sampling for reproducible reports and oracles.
//!
//! A fixed xoshiro256++ stream seeded through SplitMix64: the same seed gives
//! the same samples on every platform and in every release, which is what the
//! verification report's byte-for-byte determinism contract needs. Random
//! orthogonal matrices come from Gram-Schmidt of standard-normal matrices
//! (positive-diagonal convention).

use crate::matrix::{gram_schmidt, DenseMatrix};

/// Deterministic 64-bit pseudorandom generator (xoshiro256++).
#[derive(Debug, Clone)]
pub struct Rng {
    state: [u64; 4],
    spare_normal: Option<f64>,
}

impl Rng {
    pub fn new(seed: u64) -> Self {
        // SplitMix64 expansion of the seed into the xoshiro state.
        let mut x = seed;
        let mut next = || {
            x = x.wrapping_add(0x9e3779b97f4a7c15);
            let mut z = x;
            z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
            z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
            z ^ (z >> 31)
        };
        let state = [next(), next(), next(), next()];
        Rng { state, spare_normal: None }
    }

    pub fn next_u64(&mut self) -> u64 {
        let s = &mut self.state;
        let result = s[0]
            .wrapping_add(s[3])
            .rotate_left(23)
            .wrapping_add(s[0]);
        let t = s[1] << 17;
        s[2] ^= s[0];
        s[3] ^= s[1];
        s[1] ^= s[2];
        s[0] ^= s[3];
        s[2] ^= t;
        s[3] = s[3].rotate_left(45);
        result
    }

    /// Uniform in [0, 1) with 53 random bits.
    pub fn uniform(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// Standard normal via the Marsaglia polar method.
    pub fn normal(&mut self) -> f64 {
        if let Some(z) = self.spare_normal.take() {
            return z;
        }
        loop {
            let u = 2.0 * self.uniform() - 1.0;
            let v = 2.0 * self.uniform() - 1.0;
            let s = u * u + v * v;
            if s > 0.0 && s < 1.0 {
                let m = (-2.0 * s.ln() / s).sqrt();
                self.spare_normal = Some(v * m);
                return u * m;
            }
        }
    }

    /// Matrix of independent standard-normal entries.
    pub fn normal_matrix(&mut self, rows: usize, cols: usize) -> DenseMatrix {
        DenseMatrix::from_fn(rows, cols, |_, _| self.normal())
    }

    /// Uniform point on the unit sphere in R^n.
    pub fn unit_vector(&mut self, n: usize) -> Vec<f64> {
        loop {
            let v: Vec<f64> = (0..n).map(|_| self.normal()).collect();
            let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
            if norm > 1e-8 {
                return v.into_iter().map(|x| x / norm).collect();
            }
        }
    }

    /// Random orthogonal matrix: Gram-Schmidt of a standard-normal matrix.
    /// Covers both components of O(n).
    pub fn orthogonal(&mut self, n: usize) -> DenseMatrix {
        loop {
            if let Ok(q) = gram_schmidt(&self.normal_matrix(n, n)) {
                return q;
            }
        }
    }

    /// Random rotation: an orthogonal sample with the last column flipped
    /// when the determinant is negative.
    pub fn rotation(&mut self, n: usize) -> DenseMatrix {
        let mut q = self.orthogonal(n);
        if q.determinant().expect("square") < 0.0 {
            let flipped: Vec<f64> = q.col(n - 1).iter().map(|v| -v).collect();
            q.set_col(n - 1, &flipped);
        }
        q
    }
}
