//! Polar decomposition, PSD square roots, Eckart-Young truncation, and the
//! nearest orthogonal / best-of-rank-r / singular neighbor maps.

use crate::eigen::sym_eigen;
use crate::error::{Error, Result};
use crate::matrix::DenseMatrix;
use crate::sphere::{to_sphere, SphericalPoint};
use crate::svd::{default_rank_tol, rank_of_default, svd};

/// Which side the symmetric factor sits on: `A = U P` (right) or `A = P U`
/// (left).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PolarSide {
    Right,
    Left,
}

/// Polar factors of a square matrix: orthogonal `U` and symmetric PSD `P`.
///
/// `unique_orthogonal` is true exactly when the input was nonsingular; for
/// singular inputs the returned `U = W V^T` is one representative of a family.
#[derive(Debug, Clone)]
pub struct PolarFactors {
    pub u: DenseMatrix,
    pub p: DenseMatrix,
    pub side: PolarSide,
    pub unique_orthogonal: bool,
}

impl PolarFactors {
    /// Rebuilds `U P` or `P U` according to the side.
    pub fn reconstruct(&self) -> DenseMatrix {
        match self.side {
            PolarSide::Right => self.u.matmul(&self.p),
            PolarSide::Left => self.p.matmul(&self.u),
        }
    }
}

/// Result of the Eckart-Young truncation to rank at most `target_rank`.
///
/// `tie` is set when the smallest kept and largest dropped singular values
/// agree within `1e-10 * d_1`; the optimum is then non-unique and the
/// computed decomposition's choice is returned.
#[derive(Debug, Clone)]
pub struct TruncationResult {
    pub matrix: DenseMatrix,
    pub target_rank: usize,
    pub achieved_distance: f64,
    pub tie: bool,
}

/// Polar decomposition through the SVD: `U = W V^T`, with `P = V D V^T` on
/// the right and `P = W D W^T` on the left. The orthogonal factor is the same
/// on both sides.
pub fn polar_decompose(a: &DenseMatrix, side: PolarSide) -> Result<PolarFactors> {
    if !a.is_square() {
        return Err(Error::NotSquare { rows: a.rows(), cols: a.cols() });
    }
    let n = a.rows();
    let f = svd(a)?;
    let u = f.w.matmul(&f.v.transpose());
    let d = DenseMatrix::from_diag(&f.singular_values);
    let p = match side {
        PolarSide::Right => f.v.matmul(&d).matmul(&f.v.transpose()),
        PolarSide::Left => f.w.matmul(&d).matmul(&f.w.transpose()),
    };
    let p = symmetrized(&p);
    let rank = f
        .singular_values
        .iter()
        .filter(|&&x| x > default_rank_tol(a) * f.singular_values[0] && x > 0.0)
        .count();
    Ok(PolarFactors { u, p, side, unique_orthogonal: rank == n })
}

/// The unique symmetric PSD square root of a symmetric PSD matrix, computed
/// as `Q sqrt(L) Q^T`. Eigenvalue dust down to `-1e-8 * |S|` is clamped to
/// zero; anything below that is rejected.
pub fn psd_sqrt(s: &DenseMatrix) -> Result<DenseMatrix> {
    let eig = sym_eigen(s)?;
    let norm = s.frobenius_norm();
    let mut roots = Vec::with_capacity(eig.eigenvalues.len());
    for &l in &eig.eigenvalues {
        if l < -1e-8 * norm {
            return Err(Error::NotPositiveSemidefinite { min_eigenvalue: l });
        }
        roots.push(l.max(0.0).sqrt());
    }
    let p = eig
        .q
        .matmul(&DenseMatrix::from_diag(&roots))
        .matmul(&eig.q.transpose());
    Ok(symmetrized(&p))
}

/// Nearest matrix of rank at most `r_prime` in Frobenius norm: the SVD with
/// all but the leading `r_prime` singular values zeroed.
pub fn truncate_rank(a: &DenseMatrix, r_prime: usize) -> Result<TruncationResult> {
    let r = a.rows().min(a.cols());
    if r_prime > r {
        return Err(Error::RankOutOfRange { rank: r_prime, max: r });
    }
    let f = svd(a)?;
    let matrix = f.truncated_product(r_prime);
    let achieved_distance = f.singular_values[r_prime..]
        .iter()
        .map(|d| d * d)
        .sum::<f64>()
        .sqrt();
    let tie = r_prime >= 1 && r_prime < r && f.tie_flags[r_prime - 1];
    Ok(TruncationResult { matrix, target_rank: r_prime, achieved_distance, tie })
}

/// Nearest orthogonal matrix `U = W V^T`; with `special` the determinant is
/// forced to +1 by flipping the singular direction with the smallest value,
/// giving the minimizer over rotations instead of all of O(n).
pub fn nearest_orthogonal(a: &DenseMatrix, special: bool) -> Result<DenseMatrix> {
    if !a.is_square() {
        return Err(Error::NotSquare { rows: a.rows(), cols: a.cols() });
    }
    let n = a.rows();
    let f = svd(a)?;
    let u = f.w.matmul(&f.v.transpose());
    if !special {
        return Ok(u);
    }
    let rank = f
        .singular_values
        .iter()
        .filter(|&&x| x > default_rank_tol(a) * f.singular_values[0] && x > 0.0)
        .count();
    // With a zero smallest singular value any completion attains the optimum;
    // take s = +1. Otherwise flip when det(W V^T) = -1.
    let s = if rank < n {
        1.0
    } else if u.determinant()? < 0.0 {
        -1.0
    } else {
        1.0
    };
    if s > 0.0 {
        return Ok(u);
    }
    let mut signs = vec![1.0; n];
    signs[n - 1] = -1.0;
    Ok(f.w.matmul(&DenseMatrix::from_diag(&signs)).matmul(&f.v.transpose()))
}

/// Nearest "best of rank r" matrix: orthogonal on an r-plane, zero on its
/// complement, obtained by replacing the leading r singular values with 1.
pub fn nearest_best_of_rank(a: &DenseMatrix, r: usize) -> Result<DenseMatrix> {
    if !a.is_square() {
        return Err(Error::NotSquare { rows: a.rows(), cols: a.cols() });
    }
    let n = a.rows();
    if r < 1 || r > n {
        return Err(Error::RankOutOfRange { rank: r, max: n });
    }
    let rank = rank_of_default(a)?;
    if rank < r {
        return Err(Error::RankTooLow { rank, required: r });
    }
    let f = svd(a)?;
    let mut gains = vec![0.0; n];
    for g in gains.iter_mut().take(r) {
        *g = 1.0;
    }
    Ok(f.w.matmul(&DenseMatrix::from_diag(&gains)).matmul(&f.v.transpose()))
}

/// Nearest singular neighbor on the sphere of norm-sqrt(n) matrices: the
/// rank-(n-1) truncation rescaled back to the sphere. Rescaled truncation
/// maximizes the inner product with `A` over singular matrices of that norm,
/// and distance on a sphere is monotone in the inner product.
pub fn nearest_singular_on_sphere(a: &SphericalPoint) -> Result<SphericalPoint> {
    let n = a.n();
    if n < 2 {
        return Err(Error::Unsupported { what: "nearest singular neighbor needs n >= 2" });
    }
    if rank_of_default(a.matrix())? < n {
        return Err(Error::SingularInput);
    }
    let truncated = truncate_rank(a.matrix(), n - 1)?;
    to_sphere(&truncated.matrix)
}

/// Numerical symmetrization `(P + P^T) / 2`.
fn symmetrized(p: &DenseMatrix) -> DenseMatrix {
    DenseMatrix::from_fn(p.rows(), p.cols(), |i, j| 0.5 * (p[(i, j)] + p[(j, i)]))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::frobenius_inner;
    use crate::rng::Rng;
    use crate::sphere::angular_distance;

    fn orthogonality_defect(m: &DenseMatrix) -> f64 {
        m.transpose().matmul(m).max_abs_diff(&DenseMatrix::identity(m.cols()))
    }

    #[test]
    fn polar_of_identity() {
        let f = polar_decompose(&DenseMatrix::identity(3), PolarSide::Right).unwrap();
        assert!(f.u.max_abs_diff(&DenseMatrix::identity(3)) < 1e-14);
        assert!(f.p.max_abs_diff(&DenseMatrix::identity(3)) < 1e-14);
        assert!(f.unique_orthogonal);
    }

    #[test]
    fn polar_of_rotation_scale() {
        // A = [[0, -2], [1, 0]]: U = [[0, -1], [1, 0]], P = diag(1, 2).
        let a = DenseMatrix::from_vec(2, 2, vec![0.0, -2.0, 1.0, 0.0]).unwrap();
        let f = polar_decompose(&a, PolarSide::Right).unwrap();
        let u = DenseMatrix::from_vec(2, 2, vec![0.0, -1.0, 1.0, 0.0]).unwrap();
        let p = DenseMatrix::from_diag(&[1.0, 2.0]);
        assert!(f.u.max_abs_diff(&u) < 1e-13);
        assert!(f.p.max_abs_diff(&p) < 1e-13);
    }

    #[test]
    fn polar_of_negative_diagonal() {
        let a = DenseMatrix::from_diag(&[-2.0, 1.0, 1.0]);
        let f = polar_decompose(&a, PolarSide::Right).unwrap();
        assert!(f.u.max_abs_diff(&DenseMatrix::from_diag(&[-1.0, 1.0, 1.0])) < 1e-13);
        assert!(f.p.max_abs_diff(&DenseMatrix::from_diag(&[2.0, 1.0, 1.0])) < 1e-13);
    }

    #[test]
    fn polar_factors_satisfy_contracts() {
        let mut rng = Rng::new(51);
        for _ in 0..30 {
            let n = 2 + (rng.next_u64() % 4) as usize;
            let a = rng.normal_matrix(n, n);
            for side in [PolarSide::Right, PolarSide::Left] {
                let f = polar_decompose(&a, side).unwrap();
                let residual = f.reconstruct().sub(&a).frobenius_norm();
                assert!(residual <= 1e-11 * a.frobenius_norm().max(1.0));
                assert!(orthogonality_defect(&f.u) <= 1e-12);
                assert!(f.p.max_abs_diff(&f.p.transpose()) == 0.0);
                let eig = sym_eigen(&f.p).unwrap();
                let min = eig.eigenvalues.last().copied().unwrap();
                assert!(min >= -1e-12 * f.p.frobenius_norm());
            }
        }
    }

    #[test]
    fn right_and_left_share_the_orthogonal_factor() {
        let mut rng = Rng::new(53);
        for _ in 0..20 {
            let a = rng.normal_matrix(3, 3);
            let right = polar_decompose(&a, PolarSide::Right).unwrap();
            let left = polar_decompose(&a, PolarSide::Left).unwrap();
            assert!(right.u.max_abs_diff(&left.u) <= 1e-11);
        }
    }

    #[test]
    fn singular_input_flags_non_unique_factor() {
        let a = DenseMatrix::from_diag(&[2.0, 1.0, 0.0]);
        let f = polar_decompose(&a, PolarSide::Right).unwrap();
        assert!(!f.unique_orthogonal);
        assert!(f.reconstruct().max_abs_diff(&a) < 1e-12);
    }

    #[test]
    fn psd_sqrt_examples() {
        assert!(psd_sqrt(&DenseMatrix::identity(3))
            .unwrap()
            .max_abs_diff(&DenseMatrix::identity(3))
            < 1e-14);
        let s = DenseMatrix::from_diag(&[4.0, 9.0]);
        assert!(psd_sqrt(&s).unwrap().max_abs_diff(&DenseMatrix::from_diag(&[2.0, 3.0])) < 1e-13);
        assert!(matches!(
            psd_sqrt(&DenseMatrix::from_diag(&[1.0, -1.0])),
            Err(Error::NotPositiveSemidefinite { .. })
        ));
    }

    #[test]
    fn psd_sqrt_matches_polar_factor() {
        // Two code paths to P: eigen square root of A^T A vs V D V^T.
        let mut rng = Rng::new(57);
        for _ in 0..20 {
            let a = rng.normal_matrix(4, 4);
            let gram = a.transpose().matmul(&a);
            let root = psd_sqrt(&symmetrized(&gram)).unwrap();
            let f = polar_decompose(&a, PolarSide::Right).unwrap();
            assert!(root.max_abs_diff(&f.p) <= 1e-10 * gram.frobenius_norm().max(1.0));
            let square_residual = root.matmul(&root).sub(&gram).frobenius_norm();
            assert!(square_residual <= 1e-10 * gram.frobenius_norm().max(1.0));
        }
    }

    #[test]
    fn truncation_examples() {
        let a = DenseMatrix::from_diag(&[3.0, 2.0, 1.0]);
        let t = truncate_rank(&a, 2).unwrap();
        assert!(t.matrix.max_abs_diff(&DenseMatrix::from_diag(&[3.0, 2.0, 0.0])) < 1e-13);
        assert!((t.achieved_distance - 1.0).abs() < 1e-13);
        assert!(!t.tie);

        // Already at or below the target rank: unchanged.
        let low = DenseMatrix::from_diag(&[5.0, 4.0, 0.0]);
        let t = truncate_rank(&low, 2).unwrap();
        assert!(t.matrix.max_abs_diff(&low) < 1e-12);
        assert!(t.achieved_distance <= 1e-12);

        let t = truncate_rank(&DenseMatrix::from_diag(&[2.0, 1.0, 1.0]), 2).unwrap();
        assert!(t.tie);

        assert!(matches!(
            truncate_rank(&a, 4),
            Err(Error::RankOutOfRange { rank: 4, max: 3 })
        ));
    }

    #[test]
    fn truncation_distance_identity() {
        let mut rng = Rng::new(61);
        for _ in 0..20 {
            let a = rng.normal_matrix(4, 3);
            let d = svd(&a).unwrap().singular_values;
            for r in 0..=3 {
                let t = truncate_rank(&a, r).unwrap();
                let direct = t.matrix.sub(&a).frobenius_norm();
                assert!((t.achieved_distance - direct).abs() <= 1e-10 * direct.max(1.0));
                let tail = d[r..].iter().map(|x| x * x).sum::<f64>().sqrt();
                assert!((t.achieved_distance - tail).abs() <= 1e-10 * tail.max(1.0));
                assert!(rank_of_default(&t.matrix).unwrap() <= r);
            }
        }
    }

    #[test]
    fn truncation_is_transitive() {
        // Truncating to rank 2 and then to rank 1 lands on the direct rank-1
        // truncation whenever no singular values tie.
        let mut rng = Rng::new(67);
        let mut checked = 0;
        while checked < 20 {
            let a = rng.normal_matrix(3, 3);
            let f = svd(&a).unwrap();
            if f.tie_flags.iter().any(|&t| t) {
                continue;
            }
            let two = truncate_rank(&a, 2).unwrap();
            let via = truncate_rank(&two.matrix, 1).unwrap();
            let direct = truncate_rank(&a, 1).unwrap();
            assert!(via.matrix.max_abs_diff(&direct.matrix) <= 1e-10);
            checked += 1;
        }
    }

    #[test]
    fn truncation_beats_sampled_candidates() {
        let mut rng = Rng::new(71);
        for _ in 0..5 {
            let a = rng.normal_matrix(3, 3);
            let t = truncate_rank(&a, 2).unwrap();
            for _ in 0..2000 {
                let x = rng.normal_matrix(3, 2);
                let y = rng.normal_matrix(2, 3);
                let m = x.matmul(&y);
                // Best scaling of the sampled direction.
                let alpha =
                    frobenius_inner(&a, &m).unwrap() / frobenius_inner(&m, &m).unwrap();
                let dist = m.scaled(alpha).sub(&a).frobenius_norm();
                assert!(t.achieved_distance <= dist + 1e-9);
            }
        }
    }

    #[test]
    fn nearest_orthogonal_examples() {
        let mut rng = Rng::new(73);
        let q = rng.orthogonal(3);
        assert!(nearest_orthogonal(&q, false).unwrap().max_abs_diff(&q) < 1e-12);

        let r = rng.rotation(2);
        let a = r.matmul(&DenseMatrix::from_diag(&[2.0, 1.0]));
        assert!(nearest_orthogonal(&a, false).unwrap().max_abs_diff(&r) < 1e-12);

        assert!(matches!(
            nearest_orthogonal(&DenseMatrix::zeros(2, 3), false),
            Err(Error::NotSquare { .. })
        ));
    }

    #[test]
    fn nearest_orthogonal_beats_sampled_candidates() {
        let mut rng = Rng::new(79);
        for _ in 0..5 {
            let a = rng.normal_matrix(3, 3);
            let u = nearest_orthogonal(&a, false).unwrap();
            let best = u.sub(&a).frobenius_norm();
            for _ in 0..2000 {
                let q = rng.orthogonal(3);
                assert!(best <= q.sub(&a).frobenius_norm() + 1e-12);
            }
        }
    }

    #[test]
    fn special_variant_minimizes_over_rotations() {
        let a = DenseMatrix::from_diag(&[-2.0, 1.0, 1.0]);
        let u = nearest_orthogonal(&a, true).unwrap();
        assert!((u.determinant().unwrap() - 1.0).abs() < 1e-12);
        let best = u.sub(&a).frobenius_norm();
        let mut rng = Rng::new(83);
        for _ in 0..10000 {
            let r = rng.rotation(3);
            assert!(best <= r.sub(&a).frobenius_norm() + 1e-12);
        }
    }

    #[test]
    fn special_with_zero_singular_value_still_rotates() {
        let a = DenseMatrix::from_diag(&[3.0, 1.0, 0.0]);
        let u = nearest_orthogonal(&a, true).unwrap();
        assert!((u.determinant().unwrap() - 1.0).abs() < 1e-12);
        assert!(orthogonality_defect(&u) < 1e-12);
    }

    #[test]
    fn nearest_orthogonal_is_the_polar_factor_bit_for_bit() {
        let mut rng = Rng::new(87);
        for _ in 0..10 {
            let a = rng.normal_matrix(4, 4);
            let u = nearest_orthogonal(&a, false).unwrap();
            let f = polar_decompose(&a, PolarSide::Right).unwrap();
            for i in 0..4 {
                for j in 0..4 {
                    assert_eq!(u[(i, j)].to_bits(), f.u[(i, j)].to_bits());
                }
            }
        }
    }

    #[test]
    fn nearest_orthogonal_is_equivariant() {
        let mut rng = Rng::new(89);
        for _ in 0..20 {
            let a = rng.normal_matrix(3, 3);
            let u = rng.rotation(3);
            let v = rng.rotation(3);
            let lhs = nearest_orthogonal(&u.matmul(&a).matmul(&v.transpose()), false).unwrap();
            let rhs = u
                .matmul(&nearest_orthogonal(&a, false).unwrap())
                .matmul(&v.transpose());
            assert!(lhs.max_abs_diff(&rhs) <= 1e-10);
        }
    }

    #[test]
    fn best_of_rank_examples() {
        let a = DenseMatrix::from_diag(&[2.0, 1.0, 0.0]);
        let u = nearest_best_of_rank(&a, 2).unwrap();
        assert!(u.max_abs_diff(&DenseMatrix::from_diag(&[1.0, 1.0, 0.0])) < 1e-13);

        // A best-of-rank-2 matrix is its own nearest neighbor.
        let mut rng = Rng::new(97);
        let w = rng.rotation(3);
        let v = rng.rotation(3);
        let best = w.matmul(&DenseMatrix::from_diag(&[1.0, 1.0, 0.0])).matmul(&v.transpose());
        let u = nearest_best_of_rank(&best, 2).unwrap();
        assert!(u.max_abs_diff(&best) <= 1e-12);

        assert!(matches!(
            nearest_best_of_rank(&a, 3),
            Err(Error::RankTooLow { rank: 2, required: 3 })
        ));
        assert!(matches!(
            nearest_best_of_rank(&a, 0),
            Err(Error::RankOutOfRange { .. })
        ));
    }

    #[test]
    fn best_of_rank_beats_sampled_candidates() {
        let mut rng = Rng::new(101);
        let template = DenseMatrix::from_diag(&[1.0, 1.0, 0.0]);
        for _ in 0..5 {
            let a = rng.normal_matrix(3, 3);
            if rank_of_default(&a).unwrap() < 2 {
                continue;
            }
            let u = nearest_best_of_rank(&a, 2).unwrap();
            let best = u.sub(&a).frobenius_norm();
            for _ in 0..2000 {
                let w = rng.rotation(3);
                let v = rng.rotation(3);
                let candidate = w.matmul(&template).matmul(&v.transpose());
                assert!(best <= candidate.sub(&a).frobenius_norm() + 1e-12);
            }
        }
    }

    #[test]
    fn nearest_singular_of_scaled_diagonal() {
        let a = to_sphere(&DenseMatrix::from_diag(&[2.0, 2.0, 1.0])).unwrap();
        let b = nearest_singular_on_sphere(&a).unwrap();
        let half = (3.0f64 / 2.0).sqrt();
        let expected = DenseMatrix::from_diag(&[half, half, 0.0]);
        assert!(b.matrix().max_abs_diff(&expected) < 1e-12);
        assert_eq!(rank_of_default(b.matrix()).unwrap(), 2);
    }

    #[test]
    fn nearest_singular_of_identity_lands_on_best_rank_two() {
        // All three singular values tie; the returned representative is a
        // best-of-rank-2 point at angular distance arccos(sqrt(2/3)).
        let a = to_sphere(&DenseMatrix::identity(3)).unwrap();
        let f = svd(a.matrix()).unwrap();
        assert!(f.tie_flags[0] && f.tie_flags[1]);
        let b = nearest_singular_on_sphere(&a).unwrap();
        let d = svd(b.matrix()).unwrap().singular_values;
        assert!((d[0] - d[1]).abs() < 1e-12);
        assert!(d[2] < 1e-12);
        let expected = (2.0f64 / 3.0).sqrt().acos();
        assert!((angular_distance(&a, &b).unwrap() - expected).abs() < 1e-12);
    }

    #[test]
    fn nearest_singular_rejects_singular_input() {
        let a = to_sphere(&DenseMatrix::from_diag(&[1.0, 1.0, 0.0])).unwrap();
        assert_eq!(nearest_singular_on_sphere(&a), Err(Error::SingularInput));
    }

    #[test]
    fn nearest_singular_beats_sampled_singular_candidates() {
        let mut rng = Rng::new(103);
        let a = to_sphere(&rng.normal_matrix(3, 3)).unwrap();
        if rank_of_default(a.matrix()).unwrap() < 3 {
            return;
        }
        let b = nearest_singular_on_sphere(&a).unwrap();
        // The nearest singular neighbor of a nonsingular matrix has rank
        // exactly n - 1, never less.
        assert_eq!(rank_of_default(b.matrix()).unwrap(), 2);
        let best = angular_distance(&a, &b).unwrap();
        for _ in 0..5000 {
            let x = rng.normal_matrix(3, 2);
            let y = rng.normal_matrix(2, 3);
            let m = x.matmul(&y);
            if m.frobenius_norm() == 0.0 {
                continue;
            }
            let candidate = to_sphere(&m).unwrap();
            assert!(best <= angular_distance(&a, &candidate).unwrap() + 1e-9);
        }
    }

    #[test]
    fn two_by_two_neighbors_are_colinear_on_the_sphere() {
        // The nearest orthogonal and nearest singular neighbors of a 2x2
        // matrix lie on one great circle through it: the angles add up.
        let mut rng = Rng::new(107);
        for _ in 0..20 {
            let a = to_sphere(&rng.normal_matrix(2, 2)).unwrap();
            if rank_of_default(a.matrix()).unwrap() < 2 {
                continue;
            }
            let u = SphericalPoint::new(nearest_orthogonal(a.matrix(), false).unwrap()).unwrap();
            let b = nearest_singular_on_sphere(&a).unwrap();
            let ua = angular_distance(&u, &a).unwrap();
            let ab = angular_distance(&a, &b).unwrap();
            let ub = angular_distance(&u, &b).unwrap();
            assert!((ua + ab - ub).abs() <= 1e-9, "deviation {}", ua + ab - ub);
            assert!((ub - std::f64::consts::FRAC_PI_4).abs() <= 1e-10);
        }
    }

    #[test]
    fn three_by_three_neighbors_are_not_colinear() {
        // For 3x3 matrices the fibres are not round, so a witness with
        // angular deviation above 1e-3 must show up among random samples.
        let mut rng = Rng::new(109);
        let mut found = false;
        for _ in 0..200 {
            let a = to_sphere(&rng.normal_matrix(3, 3)).unwrap();
            if rank_of_default(a.matrix()).unwrap() < 3 {
                continue;
            }
            let u = SphericalPoint::new(nearest_orthogonal(a.matrix(), false).unwrap()).unwrap();
            let b = nearest_singular_on_sphere(&a).unwrap();
            let deviation = angular_distance(&u, &a).unwrap()
                + angular_distance(&a, &b).unwrap()
                - angular_distance(&u, &b).unwrap();
            if deviation.abs() > 1e-3 {
                found = true;
                break;
            }
        }
        assert!(found, "no non-colinearity witness found");
    }
}
