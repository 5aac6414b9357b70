//! Property tests over randomly generated matrices.

use proptest::prelude::*;

use matdec::{
    angular_distance, frobenius_inner, gram_schmidt, polar_decompose, rank_of_default, svd,
    sym_eigen, to_sphere, truncate_rank, DenseMatrix, PolarSide,
};

fn entries(len: usize) -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(prop_oneof![-10.0..10.0f64, -1e3..1e3f64, -0.01..0.01f64], len)
}

fn matrix(max_dim: usize) -> impl Strategy<Value = DenseMatrix> {
    (1..=max_dim, 1..=max_dim).prop_flat_map(|(n, k)| {
        entries(n * k).prop_map(move |e| DenseMatrix::from_vec(n, k, e).unwrap())
    })
}

fn square_matrix(max_dim: usize) -> impl Strategy<Value = DenseMatrix> {
    (1..=max_dim).prop_flat_map(|n| {
        entries(n * n).prop_map(move |e| DenseMatrix::from_vec(n, n, e).unwrap())
    })
}

proptest! {
    #[test]
    fn svd_reconstructs_and_is_orthogonal(a in matrix(8)) {
        let f = svd(&a).unwrap();
        let residual = f.reconstruct().sub(&a).frobenius_norm();
        prop_assert!(residual <= 1e-12 * a.frobenius_norm().max(1.0));

        let wtw = f.w.transpose().matmul(&f.w);
        prop_assert!(wtw.max_abs_diff(&DenseMatrix::identity(a.rows())) <= 1e-12);
        let vtv = f.v.transpose().matmul(&f.v);
        prop_assert!(vtv.max_abs_diff(&DenseMatrix::identity(a.cols())) <= 1e-12);

        for w in f.singular_values.windows(2) {
            prop_assert!(w[0] >= w[1]);
        }
        prop_assert!(f.singular_values.iter().all(|&d| d >= 0.0));
    }

    #[test]
    fn svd_matches_gram_eigenvalues(a in matrix(6)) {
        let f = svd(&a).unwrap();
        let gram = a.transpose().matmul(&a);
        let sym = DenseMatrix::from_fn(gram.rows(), gram.cols(), |i, j| {
            0.5 * (gram[(i, j)] + gram[(j, i)])
        });
        let eig = sym_eigen(&sym).unwrap();
        let scale = eig.eigenvalues[0].max(1.0);
        for (d, l) in f.singular_values.iter().zip(&eig.eigenvalues) {
            prop_assert!((d * d - l).abs() <= 1e-10 * scale);
        }
    }

    #[test]
    fn truncation_distance_identity(a in matrix(6), r in 0usize..6) {
        let max_rank = a.rows().min(a.cols());
        let r = r.min(max_rank);
        let t = truncate_rank(&a, r).unwrap();
        let d = svd(&a).unwrap().singular_values;
        let tail = d[r..].iter().map(|x| x * x).sum::<f64>().sqrt();
        prop_assert!((t.achieved_distance - tail).abs() <= 1e-10 * tail.max(1.0));
        // Squared-distance identity, relative to the matrix scale so the
        // rounding in assembling W D' V^T is accounted for.
        let direct = t.matrix.sub(&a).frobenius_norm();
        let scale_sq = a.frobenius_norm().powi(2).max(1.0);
        prop_assert!((t.achieved_distance.powi(2) - direct.powi(2)).abs() <= 1e-10 * scale_sq);
        prop_assert!(rank_of_default(&t.matrix).unwrap() <= r);
    }

    #[test]
    fn polar_reconstructs_on_both_sides(a in square_matrix(6)) {
        for side in [PolarSide::Right, PolarSide::Left] {
            let f = polar_decompose(&a, side).unwrap();
            let residual = f.reconstruct().sub(&a).frobenius_norm();
            prop_assert!(residual <= 1e-11 * a.frobenius_norm().max(1.0));
            let utu = f.u.transpose().matmul(&f.u);
            prop_assert!(utu.max_abs_diff(&DenseMatrix::identity(a.rows())) <= 1e-12);
        }
    }

    #[test]
    fn gram_schmidt_output_is_orthogonal(a in square_matrix(6)) {
        if let Ok(q) = gram_schmidt(&a) {
            let defect = q.transpose().matmul(&q).max_abs_diff(&DenseMatrix::identity(a.rows()));
            prop_assert!(defect <= 1e-12);
            // Q^T A is upper triangular with a positive diagonal.
            let r = q.transpose().matmul(&a);
            for i in 0..a.rows() {
                prop_assert!(r[(i, i)] > 0.0);
                for j in 0..i {
                    prop_assert!(r[(i, j)].abs() <= 1e-10 * a.frobenius_norm().max(1.0));
                }
            }
        }
    }

    #[test]
    fn frobenius_inner_is_symmetric_and_positive(a in matrix(6)) {
        let self_inner = frobenius_inner(&a, &a).unwrap();
        prop_assert!((self_inner - a.frobenius_norm().powi(2)).abs()
            <= 1e-12 * self_inner.max(1.0));
        let b = a.scaled(-2.5);
        let ab = frobenius_inner(&a, &b).unwrap();
        let ba = frobenius_inner(&b, &a).unwrap();
        prop_assert_eq!(ab, ba);
    }

    #[test]
    fn sphere_scaling_and_distance_bounds(
        (a, b) in (1usize..=5).prop_flat_map(|n| (
            entries(n * n).prop_map(move |e| DenseMatrix::from_vec(n, n, e).unwrap()),
            entries(n * n).prop_map(move |e| DenseMatrix::from_vec(n, n, e).unwrap()),
        ))
    ) {
        prop_assume!(a.frobenius_norm() > 0.0 && b.frobenius_norm() > 0.0);
        let pa = to_sphere(&a).unwrap();
        let pb = to_sphere(&b).unwrap();
        let n = (a.rows() as f64).sqrt();
        prop_assert!((pa.matrix().frobenius_norm() - n).abs() <= 1e-12);
        let d = angular_distance(&pa, &pb).unwrap();
        prop_assert!((0.0..=std::f64::consts::PI).contains(&d));
        let back = angular_distance(&pb, &pa).unwrap();
        prop_assert_eq!(d, back);
        prop_assert!(angular_distance(&pa, &pa).unwrap() <= 1e-7);
    }

    #[test]
    fn rank_never_exceeds_min_dimension(a in matrix(6)) {
        let r = rank_of_default(&a).unwrap();
        prop_assert!(r <= a.rows().min(a.cols()));
    }
}
