use thiserror::Error;

/// Errors raised by graph construction and structure queries.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// The input graph is outside the class the operation is defined for
    /// (non-chordal or disconnected).
    #[error("unsupported input: {0}")]
    UnsupportedInput(String),

    #[error("resource limit exceeded: {what}")]
    ResourceLimit { what: String },

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }

    pub(crate) fn limit(what: impl Into<String>) -> Self {
        Error::ResourceLimit { what: what.into() }
    }
}
