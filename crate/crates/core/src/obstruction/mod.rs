//! The obstruction map from `H¹(Γ, K)` to `H²(Γ, μ_n)` attached to a
//! Heisenberg group with Lagrangian decomposition `K = H ⊕ H*`.

pub mod catalog;
mod theta;

pub use theta::{
    cross_term, cross_term_is_biadditive, delta, delta_via_connecting, delta_via_connecting_cocycle,
    quadraticity_report, torsion_check, LagrangianThetaData, ObstructionRecord, QuadraticityReport,
};
