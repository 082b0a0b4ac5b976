use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid divisor sequence {divisors:?}: {reason}")]
    InvalidDivisors { divisors: Vec<u32>, reason: &'static str },

    #[error("not a group: {0}")]
    NotAGroup(String),

    #[error("not a subgroup: {0}")]
    NotASubgroup(String),

    #[error("invalid module action: {0}")]
    InvalidAction(String),

    #[error("exponent {exponent} does not divide {modulus}")]
    ExponentMismatch { exponent: u32, modulus: u32 },

    #[error("enumeration guard `{guard}` exceeded: {required} candidates > limit {limit} (raise with THETAKIT_GUARD_OVERRIDE)")]
    GuardExceeded { guard: &'static str, required: u128, limit: u64 },

    #[error("cocycle identity fails: {0}")]
    NotACocycle(String),

    #[error("pairing is not bilinear: {0}")]
    NotBilinear(String),

    #[error("sequence is not exact: {0}")]
    NotExact(String),

    #[error("modulus {0} is even; the construction needs 2 to be invertible")]
    EvenModulus(u32),

    #[error("type mismatch: {0}")]
    TypeMismatch(String),

    #[error("length mismatch: expected {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },

    #[error("zero has no class in k*/k*^n")]
    ZeroRational,

    #[error("invalid local model: {0}")]
    InvalidModel(String),

    #[error("unsupported: {0}")]
    Unsupported(String),
}

pub type Result<T> = std::result::Result<T, Error>;
