use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// An argument lies outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// Input data does not describe a valid probability measure.
    #[error("invalid measure: {0}")]
    Validation(String),

    #[error("dimension mismatch: expected {expected}, got {got}")]
    Dimension { expected: usize, got: usize },

    #[error("i/o error on {path}: {message}")]
    Io { path: String, message: String },

    /// Malformed serialized input; the message names the offending field.
    #[error("parse error: {0}")]
    Parse(String),

    /// A numerical self-check failed; indicates a tolerance problem rather than bad input.
    #[error("internal consistency error: {0}")]
    Consistency(String),
}

pub type Result<T> = std::result::Result<T, Error>;
