use thiserror::Error;

/// Errors raised by constructors and operations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("characteristic {0} is not supported (2 and 3 are excluded)")]
    UnsupportedCharacteristic(u64),
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("parameter {0} is zero or a square, so it does not define a quadratic field")]
    SquareParameter(String),
    #[error("element is not invertible")]
    NonInvertible,
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("invalid structure: {0}")]
    InvalidStructure(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("schema violation: {0}")]
    Schema(String),
    #[error("unknown builtin `{0}`")]
    UnknownBuiltin(String),
    #[error("size bound exceeded: {0}")]
    TooLarge(String),
    #[error("verification failed: {0}")]
    VerificationFailed(String),
}

impl Error {
    pub(crate) fn schema(msg: impl Into<String>) -> Self {
        Error::Schema(msg.into())
    }

    pub(crate) fn precondition(msg: impl Into<String>) -> Self {
        Error::Precondition(msg.into())
    }

    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidStructure(msg.into())
    }

    /// Process exit code used by the command-line runner for this error.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Schema(_) | Error::UnknownBuiltin(_) => 2,
            Error::VerificationFailed(_) => 1,
            _ => 3,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn check_dim(expected: usize, got: usize) -> Result<()> {
    if expected == got {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { expected, got })
    }
}
