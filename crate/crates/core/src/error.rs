use thiserror::Error;

/// Errors raised by the core library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("integer overflow: {0} exceeds 2^127 - 1")]
    Overflow(&'static str),

    #[error("modulus must be at least 2, got {0}")]
    ModulusTooSmall(u128),

    #[error("{a} and {n} are not coprime")]
    NotCoprime { a: u128, n: u128 },

    #[error("value {value} is out of range [0, {bound})")]
    OutOfRange { value: u128, bound: u128 },

    #[error("elements belong to different groups (orders {left} and {right})")]
    MismatchedGroups { left: u64, right: u64 },

    #[error("length mismatch: expected {expected}, got {actual}")]
    LengthMismatch { expected: usize, actual: usize },

    #[error("{0} is not square-free")]
    NotSquareFree(u128),

    #[error("no order of {a} modulo {n} found within {n} steps")]
    OrderSearchExhausted { a: u128, n: u128 },

    #[error("residue {0} is not produced by the oracle")]
    ResidueNotInSupport(u64),

    #[error("{0} is prime and has no nontrivial factors")]
    PrimeModulus(u64),

    #[error("no factors found after {attempts} attempts")]
    AttemptsExhausted { attempts: u32 },

    #[error("invalid argument: {0}")]
    InvalidArgument(&'static str),
}

pub type Result<T> = core::result::Result<T, Error>;
