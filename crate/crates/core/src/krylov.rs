//! Deflated block-Krylov bases for `M = (s0 E - A)^-1 E`, `R = (s0 E - A)^-1 B`.
//!
//! The basis is grown one block at a time (block Arnoldi). Each candidate
//! column is orthogonalized against everything accepted so far; a column
//! whose residual is below `tol` times its original norm is deflated and
//! its thread is dropped for good, so every block is a sub-block of the
//! previous one. Bases are only ever cut at block boundaries
//! `n(j) = m_1 + ... + m_j`.

use serde::{Deserialize, Serialize};

use crate::densela::{lu_factor, orthonormalize, residual_norm, vec_norm, LuFactorization, Matrix, C64};
use crate::error::{Error, Result};
use crate::systems::FirstOrderSystem;

pub use crate::densela::DEFAULT_RANK_TOL as DEFAULT_DEFLATION_TOL;

/// Factored `s0 E - A` together with the data needed to apply `M` and form `R`.
pub struct KrylovOperator<'a> {
    lu: LuFactorization,
    e: &'a Matrix,
    b: &'a Matrix,
    s0: C64,
}

pub fn make_operator(sys: &FirstOrderSystem, s0: C64) -> Result<KrylovOperator<'_>> {
    let lu = lu_factor(&sys.pencil_at(s0)).map_err(|_| Error::ExpansionPointIsPole {
        re: s0.re,
        im: s0.im,
    })?;
    Ok(KrylovOperator {
        lu,
        e: sys.e(),
        b: sys.b(),
        s0,
    })
}

impl KrylovOperator<'_> {
    pub fn s0(&self) -> C64 {
        self.s0
    }

    pub fn dim(&self) -> usize {
        self.lu.dim()
    }

    /// `M v = (s0 E - A)^-1 E v`
    pub fn apply(&self, v: &Matrix) -> Matrix {
        self.lu.solve(&self.e.matmul(v))
    }

    /// `R = (s0 E - A)^-1 B`
    pub fn start_block(&self) -> Matrix {
        self.lu.solve(self.b)
    }

    pub fn factorization(&self) -> &LuFactorization {
        &self.lu
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DeflationEvent {
    /// Block index `j` (1-based) at which the candidate was dropped.
    pub iteration: usize,
    /// Column of `R` whose thread was dropped.
    pub column: usize,
    /// Residual norm after orthogonalization.
    pub residual: f64,
    /// Norm of the candidate before orthogonalization.
    pub original_norm: f64,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct KrylovBasis {
    /// `N1 x n` with orthonormal columns.
    pub v: Matrix,
    /// `n(1) < n(2) < ...`
    pub boundaries: Vec<usize>,
    /// `m_1 >= m_2 >= ...`
    pub block_widths: Vec<usize>,
    /// For each block, the columns of `R` whose threads it continues.
    pub threads: Vec<Vec<usize>>,
    pub deflations: Vec<DeflationEvent>,
    /// `n` asked for; `n()` is the smallest boundary at or above it.
    pub requested_n: usize,
    /// The space is exhausted: the next block deflated completely.
    pub exhausted: bool,
    pub s0: C64,
    pub tol: f64,
}

impl KrylovBasis {
    pub fn n(&self) -> usize {
        self.v.cols()
    }

    /// Number of blocks `j(n)`.
    pub fn j(&self) -> usize {
        self.boundaries.len()
    }

    /// Whether `n` had to be raised to reach a block boundary.
    pub fn snapped(&self) -> bool {
        self.n() != self.requested_n
    }

    /// The basis cut at the `j`-th block boundary (1-based).
    pub fn truncate(&self, j: usize) -> KrylovBasis {
        assert!(j >= 1 && j <= self.j(), "block index out of range");
        let n = self.boundaries[j - 1];
        KrylovBasis {
            v: self.v.cols_range(0, n),
            boundaries: self.boundaries[..j].to_vec(),
            block_widths: self.block_widths[..j].to_vec(),
            threads: self.threads[..j].to_vec(),
            deflations: self
                .deflations
                .iter()
                .filter(|d| d.iteration <= j)
                .cloned()
                .collect(),
            requested_n: n,
            exhausted: self.exhausted && j == self.j(),
            s0: self.s0,
            tol: self.tol,
        }
    }

    /// Diagnostic export of the deflation log.
    pub fn deflation_log_json(&self) -> serde_json::Value {
        serde_json::json!({
            "s0": [self.s0.re, self.s0.im],
            "tol": self.tol,
            "boundaries": self.boundaries,
            "block_widths": self.block_widths,
            "exhausted": self.exhausted,
            "deflations": self.deflations,
        })
    }
}

/// Grows the basis until `n(j) >= target_n` or the space is exhausted.
///
/// Fails with `TargetUnreachable` (carrying the maximal basis) when every
/// candidate of a block deflates before `target_n` is reached.
pub fn build_basis(op: &KrylovOperator<'_>, target_n: usize, tol: f64) -> Result<KrylovBasis> {
    if target_n == 0 {
        return Err(Error::InvalidArgument("target_n must be at least 1".into()));
    }
    let basis = grow(op, Some(target_n), tol)?;
    if basis.n() < target_n {
        let achieved = basis.n();
        return Err(Error::TargetUnreachable {
            requested: target_n,
            achieved,
            basis: Box::new(basis),
        });
    }
    Ok(basis)
}

/// Runs until the block-Krylov space is exhausted (`j = j_max`).
pub fn build_maximal_basis(op: &KrylovOperator<'_>, tol: f64) -> Result<KrylovBasis> {
    grow(op, None, tol)
}

fn grow(op: &KrylovOperator<'_>, target_n: Option<usize>, tol: f64) -> Result<KrylovBasis> {
    if !(tol > 0.0) {
        return Err(Error::InvalidArgument("deflation tolerance must be positive".into()));
    }
    let n1 = op.dim();
    let mut v = Matrix::zeros(n1, 0);
    let mut boundaries = Vec::new();
    let mut widths = Vec::new();
    let mut threads: Vec<Vec<usize>> = Vec::new();
    let mut deflations = Vec::new();

    let mut candidates = op.start_block();
    let mut active: Vec<usize> = (0..candidates.cols()).collect();
    let mut exhausted = false;

    for iteration in 1.. {
        let (q, kept) = orthonormalize(&candidates, Some(&v), tol);
        let span = Matrix::hstack(&[&v, &q]);
        for (k, &col) in active.iter().enumerate() {
            if !kept.contains(&k) {
                let cand = candidates.col(k);
                deflations.push(DeflationEvent {
                    iteration,
                    column: col,
                    residual: residual_norm(&span, cand),
                    original_norm: vec_norm(cand),
                });
            }
        }
        if kept.is_empty() {
            exhausted = true;
            break;
        }
        active = kept.iter().map(|&k| active[k]).collect();
        v = span;
        widths.push(q.cols());
        boundaries.push(v.cols());
        threads.push(active.clone());
        if target_n.is_some_and(|t| v.cols() >= t) {
            break;
        }
        candidates = op.apply(&q);
    }

    Ok(KrylovBasis {
        requested_n: target_n.unwrap_or(v.cols()),
        v,
        boundaries,
        block_widths: widths,
        threads,
        deflations,
        exhausted,
        s0: op.s0,
        tol,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::densela::c64;

    fn scalar(x: f64) -> Matrix {
        Matrix::from_real_rows(&[[x]])
    }

    fn rc() -> FirstOrderSystem {
        FirstOrderSystem::new(scalar(1.0), scalar(-1.0), scalar(1.0), scalar(1.0), scalar(0.0))
            .unwrap()
    }

    #[test]
    fn scalar_rc_operator() {
        let sys = rc();
        let op = make_operator(&sys, c64(0.0, 0.0)).unwrap();
        assert_eq!(op.start_block(), scalar(1.0));
        assert_eq!(op.apply(&scalar(1.0)), scalar(1.0));
        let basis = build_basis(&op, 1, DEFAULT_DEFLATION_TOL).unwrap();
        assert_eq!(basis.v, scalar(1.0));
        assert_eq!(basis.boundaries, vec![1]);
    }

    #[test]
    fn rlc_start_block() {
        // (E - A) = [[2, 1], [-1, 1]], R = [1/3, 1/3]^T
        let sys = FirstOrderSystem::new(
            Matrix::identity(2),
            Matrix::from_real_rows(&[[-1.0, -1.0], [1.0, 0.0]]),
            Matrix::from_real_rows(&[[1.0], [0.0]]),
            Matrix::from_real_rows(&[[1.0, 0.0]]),
            scalar(0.0),
        )
        .unwrap();
        let op = make_operator(&sys, c64(1.0, 0.0)).unwrap();
        let r = op.start_block();
        assert!((r[(0, 0)] - c64(1.0 / 3.0, 0.0)).norm() < 1e-15);
        assert!((r[(1, 0)] - c64(1.0 / 3.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn expansion_point_at_pole() {
        let sys = FirstOrderSystem::new(scalar(1.0), scalar(2.0), scalar(1.0), scalar(1.0), scalar(0.0))
            .unwrap();
        assert!(matches!(
            make_operator(&sys, c64(2.0, 0.0)),
            Err(Error::ExpansionPointIsPole { .. })
        ));
    }

    #[test]
    fn unreachable_target_carries_basis() {
        let sys = rc();
        let op = make_operator(&sys, c64(0.5, 0.0)).unwrap();
        match build_basis(&op, 3, DEFAULT_DEFLATION_TOL) {
            Err(Error::TargetUnreachable {
                requested,
                achieved,
                basis,
            }) => {
                assert_eq!((requested, achieved), (3, 1));
                assert!(basis.exhausted);
                assert_eq!(basis.boundaries, vec![1]);
            }
            other => panic!("expected TargetUnreachable, got {other:?}"),
        }
    }
}
