//! Moments, moment-matching reports, frequency sweeps and passivity samples.

mod passivity;
mod sweep;

use serde::{Deserialize, Serialize};

use crate::densela::{lu_factor, Matrix, C64};
use crate::error::{Error, Result};
use crate::reduce::ReducedModel;
use crate::systems::FirstOrderSystem;

pub use passivity::{passivity_sample, sample_right_half_plane, PassivityReport, PassivitySample};
pub use sweep::{
    frequency_grid, sweep, sweep_error, FrequencyResponse, GridScale, SweepErrorSummary,
};

pub const THEOREM1_TOL: f64 = 1e-8;
pub const THEOREM2_TOL: f64 = 1e-6;
/// Guard for the denominator of relative errors.
pub const REL_EPS: f64 = 1e-300;

/// `mu_i = L M^i R` for `i < k`, with `D` added to `mu_0`, so that
/// `H(s) = sum_i (-1)^i mu_i (s - s0)^i`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct MomentTable {
    pub s0: C64,
    pub moments: Vec<Matrix>,
}

impl MomentTable {
    pub fn len(&self) -> usize {
        self.moments.len()
    }

    pub fn is_empty(&self) -> bool {
        self.moments.is_empty()
    }

    /// Truncated Taylor series of `H` about `s0`.
    pub fn series(&self, s: C64) -> Option<Matrix> {
        let first = self.moments.first()?;
        let t = -(s - self.s0);
        let mut acc = Matrix::zeros(first.rows(), first.cols());
        for mu in self.moments.iter().rev() {
            acc = &acc.scale(t) + mu;
        }
        Some(acc)
    }
}

pub fn compute_moments(sys: &FirstOrderSystem, s0: C64, k: usize) -> Result<MomentTable> {
    let mut moments = Vec::with_capacity(k);
    if k > 0 {
        let lu = lu_factor(&sys.pencil_at(s0)).map_err(|_| Error::pole(s0))?;
        let mut w = lu.solve(sys.b());
        moments.push(sys.d() + &sys.l().matmul(&w));
        for _ in 1..k {
            w = lu.solve(&sys.e().matmul(&w));
            moments.push(sys.l().matmul(&w));
        }
    }
    Ok(MomentTable { s0, moments })
}

/// `||a - b||_F / max(||a||_F, eps)`
pub fn rel_error(reference: &Matrix, other: &Matrix) -> f64 {
    (reference - other).norm_fro() / reference.norm_fro().max(REL_EPS)
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct MatchReport {
    pub s0: C64,
    pub tol: f64,
    /// Per-moment relative error, `i = 0..k-1`.
    pub errors: Vec<f64>,
    /// Length of the prefix of moments with error below `tol`.
    pub matched_count: usize,
    pub j: usize,
    pub hermitian_source: bool,
    /// `2 j` in the Hermitian, real-`s0`, structure-preserving case, else `j`.
    pub expected_bound: usize,
    pub meets_bound: bool,
}

/// Compares the leading `k` moments of `full` and `reduced` about the
/// reduced model's expansion point.
pub fn match_report(full: &FirstOrderSystem, reduced: &ReducedModel, k: usize, tol: f64) -> Result<MatchReport> {
    let s0 = reduced.provenance.s0;
    let a = compute_moments(full, s0, k)?;
    let b = compute_moments(&reduced.first_order, s0, k)?;
    let errors: Vec<f64> = a
        .moments
        .iter()
        .zip(&b.moments)
        .map(|(x, y)| rel_error(x, y))
        .collect();
    let matched_count = errors.iter().take_while(|&&e| e < tol).count();
    let j = reduced.provenance.j;
    let expected_bound = if reduced.doubling_expected() { 2 * j } else { j };
    Ok(MatchReport {
        s0,
        tol,
        errors,
        matched_count,
        j,
        hermitian_source: reduced.provenance.hermitian_source,
        expected_bound,
        meets_bound: matched_count >= expected_bound.min(k),
    })
}

/// `max_i ||L M^i V - L_n M_n^i||_max` over `i = 0..=i_max`.
///
/// The left-hand rows are built from the adjoint recurrence
/// `(L M^i)^H = E^H (s0 E - A)^-H (L M^{i-1})^H`.
pub fn left_moment_residual(full: &FirstOrderSystem, reduced: &ReducedModel, i_max: usize) -> Result<f64> {
    let s0 = reduced.provenance.s0;
    let red = &reduced.first_order;
    let lu = lu_factor(&full.pencil_at(s0)).map_err(|_| Error::pole(s0))?;
    let lu_n = lu_factor(&red.pencil_at(s0)).map_err(|_| Error::ReducedPencilSingular)?;
    let mut y = full.l().adjoint();
    let mut y_n = red.l().adjoint();
    let mut worst = 0.0_f64;
    for i in 0..=i_max {
        if i > 0 {
            y = full.e().adjoint_mul(&lu.solve_adjoint(&y));
            y_n = red.e().adjoint_mul(&lu_n.solve_adjoint(&y_n));
        }
        let lhs = reduced.projection.adjoint_mul(&y);
        worst = worst.max(lhs.max_abs_diff(&y_n));
    }
    Ok(worst)
}
