use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FluteError {
    #[error("diagram is not realizable: {0}")]
    NotRealizable(String),
    #[error("curve does not separate the two ends")]
    NotSeparating,
    #[error("curves have no disjoint realization")]
    NotDisjoint,
    #[error("arc never meets the curve")]
    ArcDisjoint,
    #[error("arc does not produce a lasso curve: {0}")]
    InvalidArc(String),
    #[error("carrier [{0}, {1}] does not carry the curve")]
    NotCarried(i64, i64),
    #[error("malformed curve: {0}")]
    Malformed(String),
}
