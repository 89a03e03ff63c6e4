//! Error types shared across the crate.

use thiserror::Error;

/// Errors produced by lattice, symbol, operator and transport operations.
#[derive(Debug, Error)]
pub enum Error {
    /// An argument fell outside the operation's domain (basis membership,
    /// window bounds, dimension constraints).
    #[error("domain error: {0}")]
    Domain(String),

    /// Two values of different ambient dimension were combined.
    #[error("dimension mismatch: expected n={expected}, got n={got}")]
    DimensionMismatch { expected: usize, got: usize },

    /// Malformed symbol file.
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    /// The same exponent appeared twice in a symbol file.
    #[error("duplicate exponent {0:?} in symbol file")]
    DuplicateExponent(Vec<i64>),

    /// An operator expression that does not type-check (e.g. a Toeplitz
    /// factor applied to the image of a Hankel factor without an adjoint).
    #[error("ill-formed expression: {0}")]
    IllFormedExpression(String),

    /// A check was invoked with arguments violating its stated hypothesis.
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),

    /// Underlying I/O failure when reading or writing files.
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
