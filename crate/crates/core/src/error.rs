use thiserror::Error;

/// Errors surfaced by every layer of the checker.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("not invertible: {0}")]
    NotInvertible(String),
    #[error("precision exhausted: {0}")]
    PrecisionExhausted(String),
    #[error("unsupported degree {degree} (bound {bound})")]
    UnsupportedDegree { degree: usize, bound: usize },
    #[error("requires squarefree split: {0}")]
    RequiresSquarefreeSplit(String),
    #[error("context mismatch: {0}")]
    ContextMismatch(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("nilpotency degree too large: {0}")]
    NilpotencyTooLarge(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("internal error: {0}")]
    Internal(String),
    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Internal(format!("serialization failed: {e}"))
    }
}

impl Error {
    /// Exit code for the command-line tool: 2 for bad input, 3 for failures
    /// inside the checks themselves.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Internal(_) | Error::PrecisionExhausted(_) | Error::NilpotencyTooLarge(_) => 3,
            _ => 2,
        }
    }
}
