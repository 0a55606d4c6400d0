use thiserror::Error;

/// Errors reported by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// An argument violated a documented precondition.
    #[error("invalid parameter: {0}")]
    Parameter(String),
    /// An operation was applied to a state where it makes no sense
    /// (for example orienting a pair that is already oriented).
    #[error("invalid usage: {0}")]
    Usage(String),
    /// The request is outside what the implementation supports.
    #[error("unsupported: {0}")]
    Capability(String),
    /// A hard-coded structure disagrees with the one derived from first principles.
    #[error("structural mismatch: {0}")]
    Structural(String),
    /// Malformed text input.
    #[error("parse error: {0}")]
    Parse(String),
    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
