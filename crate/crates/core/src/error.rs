use thiserror::Error;

/// Errors raised by the algebraic constructions and the document layer.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("ring mismatch: {0}")]
    RingMismatch(String),

    #[error("invalid ring: {0}")]
    InvalidRing(String),

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("potential mismatch: {0}")]
    PotentialMismatch(String),

    #[error("invalid factorization: {0}")]
    InvalidFactorization(String),

    #[error("grading violation: {0}")]
    Grading(String),

    #[error("invalid morphism: {0}")]
    InvalidMorphism(String),

    #[error("endpoint mismatch: {0}")]
    EndpointMismatch(String),

    #[error("not a chain: {0}")]
    NotAChain(String),

    #[error("{0} is not in the ideal generated by the sequence")]
    NotInIdeal(String),

    #[error("invalid sequence: {0}")]
    InvalidSequence(String),

    #[error("fold identity violated at blocks {0:?}")]
    FoldIdentity(Vec<(i64, i64)>),

    #[error("fold precondition failed: {0}")]
    FoldPrecondition(String),

    #[error("base change: {0}")]
    BaseChange(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("document error at {field}: {message}")]
    Document { field: String, message: String },

    #[error("unknown example `{0}`")]
    UnknownExample(String),
}

pub type Result<T> = std::result::Result<T, Error>;
