//! Finite Heisenberg groups, their variant built from half the commutator
//! pairing, and the automorphisms acting trivially on the center.

mod automorphisms;
mod extension;
mod group;
mod symplectic;
mod twist;

pub use automorphisms::{
    check_split, enumerate_g1, section, CentrallyTrivialAut, G1Enumeration, G1Summary, SplitReport,
};
pub use extension::CentralExtension;
pub use group::{halve, variant_group, HeisenbergGroup, YuIsomorphism};
pub use symplectic::{sp_group, KMatrix};
pub use twist::{base_action, twist_action, GammaHeisenberg, HeisenbergAction};
