use thiserror::Error;

/// Errors shared by all numeric layers of the toolkit.
#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    #[error("term cap {cap} exceeded before the tail bound was met")]
    TermCapExceeded { cap: u64 },
    #[error("domain error: {0}")]
    Domain(String),
    #[error("argument error: {0}")]
    Argument(String),
    #[error("range error: {0}")]
    Range(String),
    #[error("convergence failure: {0}")]
    Convergence(String),
    #[error("resource cap exceeded: {0}")]
    Resource(String),
    #[error("tolerance not met: {0}")]
    ToleranceNotMet(String),
    #[error("boundary case not covered: {0}")]
    Boundary(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
