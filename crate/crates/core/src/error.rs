use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("index of {sub} relative to {other} cannot be classified")]
    UnsupportedPair { sub: String, other: String },
    #[error("no witness found within {bound} enumerated elements")]
    NotFound { bound: usize },
    #[error("search domain is empty")]
    EmptyDomain,
    #[error("{what}: cap of {cap} exceeded")]
    CapExceeded { what: &'static str, cap: usize },
    #[error("element is not diagonal: offending term {0}")]
    NotDiagonal(String),
    #[error("theta(x) is zero")]
    ThetaZero,
    #[error("element is not self-adjoint")]
    NotSelfAdjoint,
    #[error("hypothesis violation: {0}")]
    HypothesisViolation(String),
    #[error("verification failure: {0}")]
    VerificationFailure(String),
    #[error("window too small: {0}")]
    ConfigTooSmall(String),
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("configuration error: {0}")]
    Config(String),
}

pub type Result<T> = std::result::Result<T, Error>;
