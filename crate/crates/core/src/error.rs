//! Error types shared across the crate.

use thiserror::Error;

/// Errors raised by data handling, configuration, and sampling.
#[derive(Debug, Error)]
pub enum Error {
    /// Input data violates a structural requirement (shape, emptiness,
    /// duplicate names, cell domain).
    #[error("data shape error: {0}")]
    DataShape(String),

    /// A variable label was not found in the input.
    #[error("unknown variable: {0}")]
    UnknownVariable(String),

    /// A configuration value is outside its allowed range.
    #[error("configuration error: {0}")]
    Config(String),

    /// A posterior summary was requested from fewer draws than the floor.
    #[error("too few draws: got {got}, need at least {min}")]
    TooFewDraws { got: usize, min: usize },

    /// The grid oracle cannot resolve the density at the requested
    /// concentration; use analytic moments instead.
    #[error("oracle range error: {0}")]
    OracleRange(String),

    /// Internal numerical safeguard tripped; indicates a bug or
    /// pathological parameters.
    #[error("numerical error: {0}")]
    Numerical(String),
}

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
