//! System classes and transfer-function evaluation.
//!
//! * [`FirstOrderSystem`]: `H(s) = D + L (sE - A)^-1 B`
//! * [`SpecialSecondOrderSystem`]: `H(s) = D + L (s P1 + P0 + P_-1 / s)^-1 B`
//! * [`HigherOrderSystem`]: `H(s) = D + L(s) P(s)^-1 B`
//!
//! Every type checks dimensions and finiteness on construction and records a
//! point at which its pencil (or matrix polynomial) is nonsingular.

mod first_order;
mod hermitian;
mod higher_order;
mod model_file;
mod second_order;

use serde::{Deserialize, Serialize};

use crate::densela::{c64, Matrix, C64};
use crate::error::Result;

pub use first_order::FirstOrderSystem;
pub use hermitian::{
    j_relation_report, verify_j_relations, HermitianStructure, JRelationReport, RelationCheck,
    StructureKind, J_RELATION_RTOL,
};
pub use higher_order::HigherOrderSystem;
pub use model_file::{Dimensions, Model, ModelFile};
pub use second_order::{Factorization, IntegralTerm, SpecialSecondOrderSystem};

/// Entrywise tolerance of the Hermitian-structure checks.
pub const HERMITIAN_TOL: f64 = 1e-12;

pub trait TransferFunction {
    fn num_inputs(&self) -> usize;
    fn num_outputs(&self) -> usize;

    /// `H(s)` as a `p x m` matrix; fails with `PoleOrSingular` at poles.
    fn eval_transfer(&self, s: C64) -> Result<Matrix>;
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HermitianReport {
    pub hermitian: bool,
    /// Names of the violated identities.
    pub failures: Vec<String>,
}

/// Probe points spread over magnitude and angle; a regular pencil is
/// singular at only finitely many points, so one of these will do.
fn probe_points() -> impl Iterator<Item = C64> {
    const ANGLES: [f64; 3] = [1.1, 0.37, 2.3];
    (-6..=12)
        .step_by(3)
        .flat_map(|k| ANGLES.map(|t| c64(t.cos(), t.sin()) * 10f64.powi(k)))
}

pub(crate) fn find_regular_point(hint: Option<C64>, ok: impl Fn(C64) -> bool) -> Option<C64> {
    hint.into_iter().chain(probe_points()).find(|&s| ok(s))
}
