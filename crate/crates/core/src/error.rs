//! Crate-wide error type. The CLI maps variants onto process exit codes
//! (degenerate ratios count as numeric failures), so library code should
//! pick variants accordingly.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    /// Malformed input: out-of-range vertex ids, unparsable files, bad
    /// parameter combinations.
    #[error("input error: {0}")]
    Input(String),

    /// A configured size or degree cap would be exceeded.
    #[error("resource limit exceeded: {0}")]
    Resource(String),

    /// Numeric failure: an iteration did not converge, or a value left the
    /// representable range.
    #[error("numeric failure: {0}")]
    Numeric(String),

    /// A ratio of the form 0/0 whose two legs vanished simultaneously.
    #[error("degenerate ratio: {0}")]
    DegenerateRatio(String),

    /// A quantity that a proved statement pins down came out wrong; this is
    /// reported loudly instead of being patched over.
    #[error("theorem violation: {0}")]
    TheoremViolation(String),

    /// The request lies outside every certified regime and is declined
    /// rather than answered with an unreliable number.
    #[error("refusal: {0}")]
    Refusal(String),
}

impl Error {
    pub fn input(msg: impl Into<String>) -> Self {
        Error::Input(msg.into())
    }

    pub fn resource(msg: impl Into<String>) -> Self {
        Error::Resource(msg.into())
    }

    pub fn numeric(msg: impl Into<String>) -> Self {
        Error::Numeric(msg.into())
    }

    pub fn theorem_violation(msg: impl Into<String>) -> Self {
        Error::TheoremViolation(msg.into())
    }

    pub fn refusal(msg: impl Into<String>) -> Self {
        Error::Refusal(msg.into())
    }
}
