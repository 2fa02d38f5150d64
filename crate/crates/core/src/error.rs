use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension error: {0}")]
    Dimension(String),
    #[error("scalar mode mismatch: {0}")]
    ModeMixing(String),
    #[error("malformed input: {0}")]
    Parse(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    /// An equation that must hold exactly has a nonzero residual.
    #[error("{equation} does not hold; residual {residual}")]
    Residual {
        equation: &'static str,
        residual: String,
    },
    #[error("intertwiner has rank {rank} but {expected} is required; {hint}")]
    Rank {
        rank: usize,
        expected: usize,
        hint: &'static str,
    },
    #[error("insufficient evidence: {points} distinct sample points, at least {needed} required")]
    InsufficientEvidence { points: usize, needed: usize },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn dimension(msg: impl Into<String>) -> Error {
    Error::Dimension(msg.into())
}
