use thiserror::Error;

/// Failure modes shared by every module of the crate.
#[derive(Debug, Error)]
pub enum Error {
    /// An operation was applied outside its mathematical domain.
    #[error("domain error: {0}")]
    Domain(String),
    /// A structural precondition on an input tensor or parameter set failed.
    #[error("validation error: {0}")]
    Validation(String),
    #[error("parse error: {0}")]
    Parse(String),
    /// The quartic is identically zero, so no web is defined.
    #[error("tensor is equivalent to C₃₃·R₃⊙R₃ + f·g; no web defined")]
    ZeroQuartic,
    /// Two exact procedures disagreed; this indicates a bug, not bad input.
    #[error("internal consistency error: {0}")]
    Consistency(String),
    #[error("no row of the invariant table matched: {0}")]
    Unclassified(String),
    #[error("catalog error: {0}")]
    Catalog(String),
}

pub type Result<T> = std::result::Result<T, Error>;
