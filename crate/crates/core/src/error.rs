//! Crate-wide error type.

use crate::arith::Natural;

/// Errors reported by the library.
///
/// Most operations here are total functions of their inputs; errors are
/// reserved for violated preconditions and for inputs that exceed the
/// configured trial-division bound.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("gcd(0, 0) is undefined")]
    GcdUndefined,

    #[error("N = {n} is too small to test (need N >= 4)")]
    ModulusTooSmall { n: Natural },

    #[error("multiplier d = {d} out of range for N = {n} (need 1 <= d < N/2)")]
    MultiplierOutOfRange { n: Natural, d: Natural },

    #[error("{context}: {value} exceeds the factorization bound {bound}")]
    BoundExceeded {
        context: String,
        value: Natural,
        bound: Natural,
    },

    #[error("invalid recipe '{text}': {reason}")]
    BadRecipe { text: String, reason: String },

    #[error("ratio {num}/{den} must be greater than 1")]
    RatioNotAboveOne { num: Natural, den: Natural },

    #[error("not a valid semiprime spec: {0}")]
    InvalidSemiprime(String),

    #[error("semiprime generation unsatisfiable: {0}")]
    Unsatisfiable(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),
}
