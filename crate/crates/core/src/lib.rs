//! Krylov-subspace model-order reduction that keeps the structure of the
//! source system.
//!
//! The crate covers the whole path from an RCL netlist to a reduced model:
//!
//! * [`netlist`]: netlist parsing and modified nodal analysis.
//! * [`systems`]: first-order, special second-order and order-`l` systems.
//! * [`linearize`]: equivalent first-order realizations.
//! * [`krylov`]: deflated block-Krylov bases.
//! * [`reduce`]: PRIMA, SPRIM and higher-order structure-preserving projection.
//! * [`analysis`]: moments, matching reports, sweeps and passivity samples.
//! * [`synth`]: seeded random systems and ladder circuits.
//! * [`cli`]: the `structmor` command-line front end.

pub mod analysis;
pub mod cli;
pub mod densela;
pub mod error;
pub mod io;
pub mod krylov;
pub mod linearize;
pub mod netlist;
pub mod reduce;
pub mod synth;
pub mod systems;

pub use densela::{c64, Matrix, C64};
pub use error::{Error, Result};
pub use krylov::{build_basis, make_operator, KrylovBasis};
pub use linearize::{linearize_higher_order, linearize_second_order, LinearizationMap};
pub use reduce::{
    higher_order_reduce, prima_reduce, sprim_reduce, structure_check, ReducedModel, ReductionMethod,
};
pub use systems::{
    FirstOrderSystem, HigherOrderSystem, SpecialSecondOrderSystem, TransferFunction,
};
