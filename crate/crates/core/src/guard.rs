//! Enumeration limits shared by every brute-force search.
//!
//! The default limit is 10^7 candidates. Setting the environment variable
//! `THETAKIT_GUARD_OVERRIDE` to a larger integer raises it; smaller values
//! are ignored.

use std::sync::OnceLock;

use crate::error::{Error, Result};

pub const DEFAULT_LIMIT: u64 = 10_000_000;
pub const OVERRIDE_VAR: &str = "THETAKIT_GUARD_OVERRIDE";

pub fn limit() -> u64 {
    static LIMIT: OnceLock<u64> = OnceLock::new();
    *LIMIT.get_or_init(|| {
        std::env::var(OVERRIDE_VAR)
            .ok()
            .and_then(|v| v.trim().parse::<u64>().ok())
            .map_or(DEFAULT_LIMIT, |v| v.max(DEFAULT_LIMIT))
    })
}

/// Fails with [`Error::GuardExceeded`] when `required` candidates exceed the limit.
pub fn check(guard: &'static str, required: u128) -> Result<()> {
    let limit = limit();
    if required > limit as u128 {
        return Err(Error::GuardExceeded { guard, required, limit });
    }
    Ok(())
}

/// `base^exp` saturating at `u128::MAX`, for candidate counts.
pub fn pow_count(base: usize, exp: usize) -> u128 {
    let mut acc: u128 = 1;
    for _ in 0..exp {
        acc = acc.saturating_mul(base as u128);
    }
    acc
}
