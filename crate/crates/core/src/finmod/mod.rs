//! Finite abelian groups, finite Galois-group stand-ins, Γ-modules, duals,
//! and symplectic pairings.

mod abelian;
pub mod catalog;
mod group;
mod module;
mod pairing;

pub use abelian::{FiniteAbelianGroup, MAX_RANK};
pub use group::{FiniteGroup, Subgroup};
pub use module::{dual_module, DualModule, GammaModule, MuN};
pub use pairing::{standard_gram, standard_symplectic, BilinearForm, SymplecticPairing};

/// Alias for the divisor-sequence constructor.
pub fn make_group(divisors: &[u32]) -> crate::Result<FiniteAbelianGroup> {
    FiniteAbelianGroup::new(divisors)
}
