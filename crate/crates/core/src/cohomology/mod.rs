//! Group cohomology of finite groups with coefficients in finite modules,
//! by explicit cocycles and exhaustive search.

mod classes;
mod cochain;
mod connecting;
mod cup;
mod invariants;

pub use classes::{coboundaries1, coboundaries2, h1, h2, position_in, z1, z2, CohClass};
pub use cochain::{Cocycle1, Cocycle2};
pub use connecting::{catalog_sequences, connecting2, connecting2_cocycle, ShortExactSequence};
pub use cup::{cup, BilinearMap};
pub use invariants::{
    check_prop9, coprime_restrictions, index, lenstra_subgroup, period, prime_factors, restrict, splits,
    LenstraSubgroup, PeriodIndexReport, PrimaryPart, Prop9Verdict,
};
