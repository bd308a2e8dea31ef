use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),

    #[error("validation error: {0}")]
    Validation(String),

    #[error("invalid field: {0}")]
    InvalidField(String),

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: String, found: String },

    #[error("incompatible instances: {0}")]
    Incompatible(String),

    #[error("index out of range: {0}")]
    IndexOutOfRange(String),

    #[error("quiver has a directed cycle through vertex {0}")]
    CyclicQuiver(usize),

    #[error("precondition violated: {0}")]
    Precondition(String),

    /// Two independent computations disagreed.
    #[error("internal cross-check failed: {0}")]
    Internal(String),
}

impl Error {
    pub(crate) fn dims(expected: impl ToString, found: impl ToString) -> Self {
        Error::DimensionMismatch {
            expected: expected.to_string(),
            found: found.to_string(),
        }
    }
}
