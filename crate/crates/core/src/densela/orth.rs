use super::{dot, vec_norm, Matrix, C64};

/// Relative rank/deflation tolerance used when the caller has no opinion.
pub const DEFAULT_RANK_TOL: f64 = 1e-10;

/// Orthonormalizes the columns of `cols` against `against` (assumed to have
/// orthonormal columns) and against each other, scanning left to right.
///
/// Modified Gram-Schmidt with one full re-orthogonalization pass. A column
/// whose remaining norm is below `tol` times its original norm is dropped.
/// Returns the new orthonormal columns and the indices of the input columns
/// that survived.
pub fn orthonormalize(cols: &Matrix, against: Option<&Matrix>, tol: f64) -> (Matrix, Vec<usize>) {
    assert!(tol > 0.0, "tolerance must be positive");
    let n = cols.rows();
    if let Some(q0) = against {
        assert_eq!(q0.rows(), n, "orthonormalize: row mismatch");
    }
    let mut q = Matrix::zeros(n, 0);
    let mut kept = Vec::new();
    let mut w: Vec<C64> = vec![C64::default(); n];

    for j in 0..cols.cols() {
        w.copy_from_slice(cols.col(j));
        let original = vec_norm(&w);
        if original == 0.0 {
            continue;
        }
        for _pass in 0..2 {
            if let Some(q0) = against {
                project_out(q0, &mut w);
            }
            project_out(&q, &mut w);
        }
        let residual = vec_norm(&w);
        if residual < tol * original {
            continue;
        }
        let inv = 1.0 / residual;
        w.iter_mut().for_each(|z| *z *= inv);
        q.push_col(&w);
        kept.push(j);
    }
    (q, kept)
}

/// Residual norm of `v` after removing its components along the orthonormal
/// columns of `q` (two MGS passes). Used for deflation diagnostics.
pub(crate) fn residual_norm(q: &Matrix, v: &[C64]) -> f64 {
    let mut w = v.to_vec();
    project_out(q, &mut w);
    project_out(q, &mut w);
    vec_norm(&w)
}

fn project_out(q: &Matrix, w: &mut [C64]) {
    for k in 0..q.cols() {
        let qk = q.col(k);
        let h = dot(qk, w);
        for (wi, &qi) in w.iter_mut().zip(qk) {
            *wi -= h * qi;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::densela::c64;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn orthonormality_defect(q: &Matrix) -> f64 {
        q.adjoint_mul(q).max_abs_diff(&Matrix::identity(q.cols()))
    }

    #[test]
    fn exact_duplicate_deflates() {
        let e1 = Matrix::unit(3, 0);
        let cols = Matrix::hstack(&[&e1, &e1]);
        let (q, kept) = orthonormalize(&cols, None, DEFAULT_RANK_TOL);
        assert_eq!(kept, vec![0]);
        assert_eq!(q, e1);
    }

    #[test]
    fn already_spanned_column_deflates() {
        let e1 = Matrix::unit(3, 0);
        let e2 = Matrix::unit(3, 1);
        let cols = Matrix::hstack(&[&e1, &e2]);
        let (q, kept) = orthonormalize(&cols, Some(&e1), DEFAULT_RANK_TOL);
        assert_eq!(kept, vec![1]);
        assert_eq!(q, e2);
    }

    #[test]
    fn rank_three_of_four() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let mut cols = Matrix::from_fn(10, 4, |_, _| {
            c64(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
        });
        for i in 0..10 {
            cols[(i, 2)] = cols[(i, 0)] + cols[(i, 1)];
        }
        let (q, kept) = orthonormalize(&cols, None, DEFAULT_RANK_TOL);
        assert_eq!(kept, vec![0, 1, 3]);
        assert!(orthonormality_defect(&q) < 1e-12);
        // independent check: the dropped column lies in range(Q)
        let dropped = cols.col(2);
        assert!(residual_norm(&q, dropped) < 1e-12 * vec_norm(dropped));
    }

    #[test]
    fn zero_column_and_empty_input() {
        let (q, kept) = orthonormalize(&Matrix::zeros(4, 2), None, 1e-10);
        assert_eq!((q.shape(), kept.len()), ((4, 0), 0));
        let (q, kept) = orthonormalize(&Matrix::zeros(4, 0), None, 1e-10);
        assert_eq!((q.shape(), kept.len()), ((4, 0), 0));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]
        #[test]
        fn output_is_orthonormal(seed in any::<u64>(), rows in 1usize..24, cols in 1usize..12) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let m = Matrix::from_fn(rows, cols, |_, _| c64(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)));
            let (q, kept) = orthonormalize(&m, None, DEFAULT_RANK_TOL);
            prop_assert!(kept.len() <= rows.min(cols));
            prop_assert!(orthonormality_defect(&q) < 1e-12);
            let (q2, _) = orthonormalize(&m, Some(&q), DEFAULT_RANK_TOL);
            prop_assert_eq!(q2.cols(), 0);
        }
    }
}
