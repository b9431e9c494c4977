use thiserror::Error;

/// Errors surfaced by the library. Each variant maps to a stable numeric
/// code (see [`Error::code`]) that the C ABI hands back to callers.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("construction unavailable: no odd prime strictly inside ({lo}, {hi})")]
    ConstructionUnavailable { lo: String, hi: String },

    #[error("too large: {0}")]
    TooLarge(String),

    #[error("insufficient size: {0}")]
    InsufficientSize(String),

    #[error("parse error: {0}")]
    Parse(String),

    /// A proof-guaranteed object was not found. Reaching this is a bug.
    #[error("internal error: {0}")]
    Internal(String),
}

impl Error {
    pub fn code(&self) -> i32 {
        match self {
            Error::InvalidArgument(_) => 1,
            Error::ConstructionUnavailable { .. } => 2,
            Error::TooLarge(_) => 3,
            Error::InsufficientSize(_) => 4,
            Error::Parse(_) => 5,
            Error::Internal(_) => 6,
        }
    }

    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
