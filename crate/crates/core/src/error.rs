use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("arity mismatch: expected {expected} points, found {found}")]
    ArityMismatch { expected: usize, found: usize },

    #[error("{what} exceeds the configured limit of {limit}")]
    ResourceLimit { what: &'static str, limit: usize },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("parse error at byte {position}: {message}")]
    Parse { position: usize, message: String },

    #[error("point {point} is outside 0..{arity}")]
    PointOutOfRange { point: usize, arity: usize },

    #[error("unknown proposition `{0}`")]
    UnknownProposition(String),

    #[error("invariant violated: {0}")]
    InvariantViolation(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    pub(crate) fn parse(position: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            position,
            message: message.into(),
        }
    }
}
