//! Crate-wide error type.
//!
//! Every fallible operation in this crate is exact: an `Err` always means
//! "this question cannot be answered from the given data", never "the answer
//! is approximate". Precision errors surface as [`Error::InsufficientPrecision`]
//! and are required to propagate; no operation silently rounds.

use thiserror::Error;

/// Errors produced by the arithmetic and valuation layers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Division by zero, inversion of zero, or a zero denominator.
    #[error("division by zero")]
    DivisionByZero,

    /// Zero passed to an operation that conventionally excludes it
    /// (square-class tests, valuations, archimedean comparison).
    #[error("zero input: {0}")]
    ZeroInput(&'static str),

    /// The operation needs data beyond the tracked precision cutoff.
    #[error("insufficient precision: {0}")]
    InsufficientPrecision(String),

    /// Operands belong to different ambient structures (different prime,
    /// different coefficient field, different extension generator).
    #[error("mismatched contexts: {0}")]
    ContextMismatch(String),

    /// A parameter is outside the supported range (even characteristic,
    /// non-prime modulus, excessive Witt length, ...).
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// The requested element is not a unit of the relevant ring.
    #[error("not a unit: {0}")]
    NotAUnit(String),

    /// A structural self-check failed; indicates a bug, not a user error.
    #[error("integrality check failed: {0}")]
    IntegralityFailure(String),

    /// Textual syntax could not be parsed.
    #[error("parse error: {0}")]
    Parse(String),

    /// A scenario claim check did not hold. Carried inside a failed claim,
    /// never a silent pass.
    #[error("claim failed: {0}")]
    ClaimFailed(String),
}

pub type Result<T> = std::result::Result<T, Error>;
