use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("malformed diagram: {0}")]
    MalformedDiagram(String),

    #[error("invalid type matrix: {0}")]
    InvalidMatrix(String),

    #[error("circle count mismatch: expected {expected}, got {got}")]
    CircleMismatch { expected: usize, got: usize },

    #[error("{0}")]
    Algebra(String),

    #[error("truncation {requested} unsupported (max {max}): {reason}")]
    UnsupportedTruncation { requested: usize, max: usize, reason: String },

    #[error("insufficient truncation: need degree {needed}, have {have}")]
    InsufficientTruncation { needed: usize, have: usize },

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse { line: usize, column: usize, message: String },

    #[error("invalid slice {slice} ({text}): {message}")]
    Validate { slice: usize, text: String, message: String },

    #[error("skeleton mismatch: {0}")]
    Skeleton(String),

    #[error("{0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
