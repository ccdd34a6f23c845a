//! Error taxonomy shared by the whole crate.
//!
//! Pole errors are kept distinct from domain errors so the verification
//! harness can *skip* parameter points where a formula denominator vanishes
//! instead of failing the sweep.

use thiserror::Error;

/// Crate-wide error type.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// An argument is outside the mathematical domain of the operation
    /// (e.g. a negative argument to a factorial-type product).
    #[error("domain error: {0}")]
    Domain(String),

    /// A product formula hit a zero factor in a denominator position.
    #[error("pole: {0}")]
    Pole(String),

    /// Region/family parameters violate a builder precondition
    /// (e.g. ferns that do not fit inside the contour).
    #[error("parameter error: {0}")]
    Parameter(String),

    /// The region exceeds a hard capacity limit of an oracle
    /// (e.g. the frontier-width cap of the dynamic-programming counter).
    #[error("capacity exceeded: {0}")]
    Capacity(String),

    /// Malformed input to a parser (CLI flag, region file).
    #[error("usage error: {0}")]
    Usage(String),
}

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
