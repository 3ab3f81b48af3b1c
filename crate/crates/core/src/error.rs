//! Error type shared across the toolkit.

use thiserror::Error;

/// Errors produced by vector arithmetic, line searches, solves, and the
/// benchmark harness.
#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },

    #[error("vector must have at least one component")]
    EmptyVector,

    #[error("non-finite component {value} at index {index}")]
    NonFinite { index: usize, value: f64 },

    #[error("objective evaluated to a non-finite value at a probe point")]
    EvalFailed,

    #[error("not a descent direction: g'd = {slope}")]
    NotDescentDirection { slope: f64 },

    #[error("line search exhausted its evaluation budget ({evals} evaluations)")]
    LineSearchFailed { evals: usize },

    #[error("gradient is zero: already at a stationary point")]
    ZeroGradient,

    #[error("objective is non-finite at the starting point")]
    InvalidStart,

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("empty input: {0}")]
    EmptyInput(String),

    #[error("duplicate record for problem `{problem}`, method `{method}`")]
    DuplicateRecord { problem: String, method: String },

    #[error("malformed CSV at line {line}: {message}")]
    CsvFormat { line: usize, message: String },

    #[error("truth image has zero norm; relative error is undefined")]
    ZeroTruthNorm,

    #[error("unknown method `{0}`")]
    UnknownMethod(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

/// Convenience alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;
