//! Crate-wide error type.

use thiserror::Error;

use crate::krylov::KrylovBasis;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("singular matrix: pivot {pivot:.3e} at step {step} below threshold {threshold:.3e}")]
    SingularMatrix {
        step: usize,
        pivot: f64,
        threshold: f64,
    },

    #[error("matrix contains non-finite entries")]
    NonFinite,

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("parse error on line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("validation error: {0}")]
    Validation(String),

    #[error("inductance matrix is not positive definite")]
    NonPdInductance,

    #[error("transfer function evaluation failed at s = {re}{im:+}i (pole or singular matrix)")]
    PoleOrSingular { re: f64, im: f64 },

    #[error("matrix pencil or polynomial appears singular at every probe point")]
    SingularPencil,

    #[error("inner matrix G of the factored P_-1 is singular")]
    SingularInnerG,

    #[error("expansion point s0 = {re}{im:+}i is a pole (s0*E - A singular)")]
    ExpansionPointIsPole { re: f64, im: f64 },

    #[error("Krylov target n = {requested} unreachable: space exhausted at n = {achieved}")]
    TargetUnreachable {
        requested: usize,
        achieved: usize,
        basis: Box<KrylovBasis>,
    },

    #[error("reduced pencil s0*E_n - A_n is singular")]
    ReducedPencilSingular,

    #[error("reduced inner matrix G~ = V2^H G V2 is singular")]
    ReducedInnerGSingular,

    #[error("relation violated: {relation} (residual {residual:.3e} > tolerance {tolerance:.3e})")]
    RelationViolated {
        relation: String,
        residual: f64,
        tolerance: f64,
    },

    #[error("frequency grids differ")]
    GridMismatch,

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// Process exit code: 2 for bad input, 3 for numerical failure.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Dimension(_)
            | Error::Parse { .. }
            | Error::Validation(_)
            | Error::NonPdInductance
            | Error::NonFinite
            | Error::GridMismatch
            | Error::InvalidArgument(_)
            | Error::Io(_)
            | Error::Json(_) => 2,
            Error::SingularMatrix { .. }
            | Error::PoleOrSingular { .. }
            | Error::SingularPencil
            | Error::SingularInnerG
            | Error::ExpansionPointIsPole { .. }
            | Error::TargetUnreachable { .. }
            | Error::ReducedPencilSingular
            | Error::ReducedInnerGSingular
            | Error::RelationViolated { .. } => 3,
        }
    }

    pub(crate) fn pole(s: num_complex::Complex64) -> Self {
        Error::PoleOrSingular { re: s.re, im: s.im }
    }
}
