use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    /// Shape mismatch between matrices, vectors or lattices.
    #[error("dimension error: {0}")]
    Dimension(String),

    /// A brute-force routine was asked to work beyond its size limits.
    #[error("computational cap exceeded: {0}")]
    CapExceeded(String),

    /// The input lies outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("map is not unimodular")]
    NotUnimodular,

    /// An internal consistency check failed; this always indicates a bug.
    #[error("internal consistency error: {0}")]
    Internal(String),

    /// A polytope of degree at most one was neither an exceptional simplex nor
    /// a Lawrence prism.
    #[error("degree <= 1 polytope escaped classification: {0}")]
    MainTheoremViolation(String),
}

pub type Result<T> = std::result::Result<T, Error>;
