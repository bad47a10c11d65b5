//! Dense complex kernels: an LU solve and a rank-revealing orthonormalization.

use structmor::densela::{lu_factor, orthonormalize, DEFAULT_RANK_TOL};
use structmor::synth::{random_matrix, rng};
use structmor::{c64, Matrix};

fn main() -> structmor::Result<()> {
    let mut r = rng(1);
    let mut a = random_matrix(&mut r, 8, 8, true);
    for i in 0..8 {
        a[(i, i)] += c64(3.0, 0.0);
    }
    let b = random_matrix(&mut r, 8, 2, true);
    let lu = lu_factor(&a)?;
    let x = lu.solve(&b);
    let res = (&a.matmul(&x) - &b).norm_fro() / b.norm_fro();
    println!("solve residual {res:.2e}, det {:.3}", lu.determinant());

    // The third column duplicates the first, so it gets dropped.
    let m = Matrix::hstack(&[&b, &b.cols_range(0, 1).scale(c64(0.0, 2.0))]);
    let (q, kept) = orthonormalize(&m, None, DEFAULT_RANK_TOL);
    let defect = q.adjoint_mul(&q).max_abs_diff(&Matrix::identity(q.cols()));
    println!("kept columns {kept:?}, orthonormality defect {defect:.2e}");
    Ok(())
}
