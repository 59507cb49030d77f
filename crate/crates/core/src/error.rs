use thiserror::Error;

use crate::congruence::ConditionReport;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum Error {
    /// Malformed request: empty input, out-of-range size parameter, bad flag.
    #[error("usage: {0}")]
    Usage(String),
    /// Argument outside the mathematical domain of the operation.
    #[error("domain: {0}")]
    Domain(String),
    /// The closed form was asked for an instance outside its hypothesis.
    #[error("precondition: {message}")]
    Precondition {
        message: String,
        report: Option<Box<ConditionReport>>,
    },
    /// A configured enumeration cap or tuple budget would be exceeded.
    #[error("resource: {0}")]
    Resource(String),
}

impl Error {
    pub fn usage(msg: impl Into<String>) -> Self {
        Error::Usage(msg.into())
    }

    pub fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub fn resource(msg: impl Into<String>) -> Self {
        Error::Resource(msg.into())
    }

    pub fn precondition(msg: impl Into<String>) -> Self {
        Error::Precondition {
            message: msg.into(),
            report: None,
        }
    }

    /// Process exit status used by the CLI (and mirrored by the C API status codes).
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Usage(_) | Error::Domain(_) => 2,
            Error::Precondition { .. } => 3,
            Error::Resource(_) => 4,
        }
    }

    /// The message without its category prefix.
    pub fn message(&self) -> &str {
        match self {
            Error::Usage(m) | Error::Domain(m) | Error::Resource(m) => m,
            Error::Precondition { message, .. } => message,
        }
    }

    pub fn category(&self) -> &'static str {
        match self {
            Error::Usage(_) => "usage",
            Error::Domain(_) => "domain",
            Error::Precondition { .. } => "precondition",
            Error::Resource(_) => "resource",
        }
    }
}
