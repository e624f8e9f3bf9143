use num_bigint::{BigInt, BigUint};
use thiserror::Error;

use crate::seq::SeqClass;

/// Errors produced by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Malformed or out-of-domain input (zero denominator, empty sequence,
    /// violated precondition of a constructive operation).
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// A sequence operation ran into a zero where the continued fraction
    /// expression needs a nonzero value (tail evaluating to zero, a merge
    /// producing an interior zero, or a transformed fraction with zero
    /// denominator).
    #[error("degenerate sequence: {0}")]
    DegenerateSequence(String),

    /// A sequence does not satisfy the requirements of the class it was
    /// constructed with or that an operation demands.
    #[error("sequence is not in class {expected}: {reason}")]
    ClassViolation { expected: SeqClass, reason: String },

    /// Inversion of a matrix whose determinant is not one.
    #[error("matrix is not unimodular (determinant {det})")]
    NotUnimodular { det: BigInt },

    /// The requested operation is not defined for these values of u and v.
    #[error("unsupported parameters: {0}")]
    UnsupportedParams(String),

    /// A state that the underlying theory rules out for well-formed inputs.
    /// Seeing this error means a bug, not a property of the input.
    #[error("internal inconsistency: {0}")]
    Inconsistency(String),

    /// A bounded search was refused because it would enumerate too much.
    #[error("search space too large: {estimate} candidates exceeds cap {cap}")]
    SearchCapExceeded { estimate: BigUint, cap: u64 },
}

pub type Result<T> = std::result::Result<T, Error>;
