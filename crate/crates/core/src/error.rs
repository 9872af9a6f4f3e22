use thiserror::Error;

/// Errors raised by the engine.
///
/// `Finding` is special: it marks a computed fact that contradicts one of the
/// theorems being checked. Input problems are never reported as findings.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("group order exceeds the configured cap of {cap}")]
    GroupTooLarge { cap: usize },
    #[error("subgroup is not normal")]
    NotNormal,
    #[error("subgroup is not subnormal")]
    NotSubnormal,
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("value is not 2-integral (valuation {0})")]
    NotIntegral(i64),
    #[error("randomized search gave up after {0} attempts")]
    RetryExhausted(usize),
    #[error("incomplete: {0}")]
    Incomplete(String),
    #[error("finding: {0}")]
    Finding(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    pub fn is_finding(&self) -> bool {
        matches!(self, Error::Finding(_))
    }
}
