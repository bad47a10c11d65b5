use super::{c64, Matrix};
use crate::error::{Error, Result};

/// Cholesky factor `L` (lower) of a Hermitian positive definite matrix.
/// Only the lower triangle of `m` is read.
pub fn cholesky(m: &Matrix) -> Result<Matrix> {
    if !m.is_square() {
        return Err(Error::Dimension("cholesky needs a square matrix".into()));
    }
    let n = m.rows();
    let mut l = Matrix::zeros(n, n);
    for j in 0..n {
        let mut d = m[(j, j)].re;
        for k in 0..j {
            d -= l[(j, k)].norm_sqr();
        }
        if !(d > 0.0) {
            return Err(Error::SingularMatrix {
                step: j,
                pivot: d,
                threshold: 0.0,
            });
        }
        let ljj = d.sqrt();
        l[(j, j)] = c64(ljj, 0.0);
        for i in j + 1..n {
            let mut s = m[(i, j)];
            for k in 0..j {
                s -= l[(i, k)] * l[(j, k)].conj();
            }
            l[(i, j)] = s / ljj;
        }
    }
    Ok(l)
}

/// Positive-semidefiniteness test for the Hermitian part of `m`: Cholesky
/// of `herm(m) + rel_shift * max(|m|_max, tiny) * I`.
pub fn is_psd_shifted(m: &Matrix, rel_shift: f64) -> bool {
    let h = m.hermitian_part();
    let scale = h.max_abs().max(f64::MIN_POSITIVE);
    let shifted = &h + &Matrix::identity(h.rows()).scale(c64(rel_shift * scale, 0.0));
    cholesky(&shifted).is_ok()
}
