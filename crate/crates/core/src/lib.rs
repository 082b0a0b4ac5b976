//! Finite models of Galois cohomology, Heisenberg groups, and the
//! period-index obstruction attached to Lagrangian theta data.

pub mod cohomology;
pub mod error;
pub mod finmod;
pub mod guard;
pub mod heisenberg;
pub mod localfield;
pub mod obstruction;

pub use error::{Error, Result};

/// Rationals used as inputs to the local-field reduction.
pub type Rational = num_rational::Ratio<i64>;

/// Library version, recorded in experiment reports.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
