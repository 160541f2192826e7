use std::fmt;

/// Crate-wide error type.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// Construction input outside the operation's domain (usage error).
    InvalidParam(String),
    /// The requested target law is not a probability distribution
    /// (zero variance, or a negative binomial success probability).
    Degenerate(String),
    /// Evaluation outside a structure's domain (state out of range,
    /// mismatched supports).
    Domain(String),
    /// An exchangeable-pair hypothesis failed exact verification, so no
    /// certification was attempted.
    Hypothesis(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::InvalidParam(m) => write!(f, "invalid parameter: {m}"),
            Error::Degenerate(m) => write!(f, "degenerate target: {m}"),
            Error::Domain(m) => write!(f, "domain error: {m}"),
            Error::Hypothesis(m) => write!(f, "hypothesis failure: {m}"),
        }
    }
}

impl std::error::Error for Error {}
