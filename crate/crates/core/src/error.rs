use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    /// Malformed or out-of-range input, naming the offending field.
    #[error("invalid `{field}`: {message}")]
    Validation { field: String, message: String },

    /// An operation was called outside its precondition.
    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("insufficient precision: {0}")]
    Precision(String),

    /// A computed invariant disagreed with its independent prediction.
    #[error("internal assertion failed: {0}")]
    Internal(String),
}

impl Error {
    pub fn validation(field: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Validation { field: field.into(), message: message.into() }
    }

    /// Process exit status used by the command-line tool.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Validation { .. }
            | Error::Precondition(_)
            | Error::Unsupported(_)
            | Error::Precision(_) => 2,
            Error::Dimension(_) | Error::Internal(_) => 3,
        }
    }
}
