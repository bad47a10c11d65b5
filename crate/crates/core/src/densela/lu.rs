use super::{Matrix, C64, ZERO};
use crate::error::{Error, Result};

/// Partial-pivoted `P M = L U` factorization, `L` unit lower triangular,
/// both factors packed into one matrix.
#[derive(Clone, Debug)]
pub struct LuFactorization {
    factors: Matrix,
    /// `perm[k]` is the source row placed at position `k`.
    perm: Vec<usize>,
    dim: usize,
}

/// Pivot threshold relative to the largest initial column norm.
const PIVOT_RTOL: f64 = 1e-14;

pub fn lu_factor(m: &Matrix) -> Result<LuFactorization> {
    if !m.is_square() {
        return Err(Error::Dimension(format!(
            "lu_factor needs a square matrix, got {}x{}",
            m.rows(),
            m.cols()
        )));
    }
    let n = m.rows();
    let threshold = PIVOT_RTOL * m.max_col_norm();
    let mut a = m.clone();
    let mut perm: Vec<usize> = (0..n).collect();

    for k in 0..n {
        let (p, pmag) = (k..n)
            .map(|i| (i, a[(i, k)].norm()))
            .fold((k, -1.0), |best, cur| if cur.1 > best.1 { cur } else { best });
        if !(pmag > threshold) || pmag == 0.0 {
            return Err(Error::SingularMatrix {
                step: k,
                pivot: pmag.max(0.0),
                threshold,
            });
        }
        if p != k {
            perm.swap(p, k);
            for j in 0..n {
                let t = a[(p, j)];
                a[(p, j)] = a[(k, j)];
                a[(k, j)] = t;
            }
        }
        let inv = a[(k, k)].inv();
        for i in k + 1..n {
            a[(i, k)] *= inv;
        }
        for j in k + 1..n {
            let akj = a[(k, j)];
            if akj == ZERO {
                continue;
            }
            for i in k + 1..n {
                let lik = a[(i, k)];
                a[(i, j)] -= lik * akj;
            }
        }
    }
    Ok(LuFactorization {
        factors: a,
        perm,
        dim: n,
    })
}

impl LuFactorization {
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Solves `M X = B` for a block of right-hand sides.
    pub fn solve(&self, b: &Matrix) -> Matrix {
        assert_eq!(b.rows(), self.dim, "rhs row count mismatch");
        let n = self.dim;
        let lu = &self.factors;
        let mut x = Matrix::zeros(n, b.cols());
        for c in 0..b.cols() {
            let bc = b.col(c);
            let xc = x.col_mut(c);
            for (k, &p) in self.perm.iter().enumerate() {
                xc[k] = bc[p];
            }
            for k in 0..n {
                let xk = xc[k];
                if xk == ZERO {
                    continue;
                }
                for i in k + 1..n {
                    xc[i] -= lu[(i, k)] * xk;
                }
            }
            for k in (0..n).rev() {
                xc[k] /= lu[(k, k)];
                let xk = xc[k];
                for i in 0..k {
                    xc[i] -= lu[(i, k)] * xk;
                }
            }
        }
        x
    }

    /// Solves `M^H X = B`.
    pub fn solve_adjoint(&self, b: &Matrix) -> Matrix {
        assert_eq!(b.rows(), self.dim, "rhs row count mismatch");
        let n = self.dim;
        let lu = &self.factors;
        let mut x = Matrix::zeros(n, b.cols());
        let mut w = vec![ZERO; n];
        // M^H = U^H L^H P, so solve U^H y = b, L^H z = y, x = P^T z.
        for c in 0..b.cols() {
            w.copy_from_slice(b.col(c));
            for k in 0..n {
                let mut s = w[k];
                for i in 0..k {
                    s -= lu[(i, k)].conj() * w[i];
                }
                w[k] = s / lu[(k, k)].conj();
            }
            for k in (0..n).rev() {
                let mut s = w[k];
                for i in k + 1..n {
                    s -= lu[(i, k)].conj() * w[i];
                }
                w[k] = s;
            }
            let xc = x.col_mut(c);
            for (k, &p) in self.perm.iter().enumerate() {
                xc[p] = w[k];
            }
        }
        x
    }

    pub fn determinant(&self) -> C64 {
        let mut det = (0..self.dim).map(|k| self.factors[(k, k)]).product::<C64>();
        // sign of the permutation
        let mut seen = vec![false; self.dim];
        for start in 0..self.dim {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut k = start;
            while !seen[k] {
                seen[k] = true;
                k = self.perm[k];
                len += 1;
            }
            if len % 2 == 0 {
                det = -det;
            }
        }
        det
    }
}
