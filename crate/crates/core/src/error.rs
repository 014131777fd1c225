use thiserror::Error;

/// Errors raised by the library. Validation problems are distinguished from
/// numerical failures so the command line can map them to different exit codes.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("{a} is not invertible modulo {q}")]
    NotInvertible { a: i64, q: i64 },
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("gap in coefficient sequence: expected n = {expected}, found n = {found}")]
    Gap { expected: u64, found: u64 },
    #[error("coefficient table too short: need n = {needed}, have {available}")]
    TableTooShort { needed: u64, available: u64 },
    #[error("integer overflow in {0}")]
    Overflow(&'static str),
    #[error("bound violated: |value| = {value} exceeds {bound}")]
    BoundViolation { value: f64, bound: f64 },
    #[error("quadrature did not converge: {0}")]
    Quadrature(String),
    #[error("dual sum truncation failed: {0}")]
    Truncation(String),
    #[error("accuracy degraded: {0}")]
    Accuracy(String),
    #[error("i/o error: {0}")]
    Io(String),
    #[error("check failed: {0}")]
    CheckFailed(String),
}

impl Error {
    /// True for errors caused by bad input rather than a failed computation.
    pub fn is_validation(&self) -> bool {
        matches!(
            self,
            Error::InvalidArgument(_)
                | Error::NotInvertible { .. }
                | Error::Unsupported(_)
                | Error::Parse { .. }
                | Error::Gap { .. }
                | Error::TableTooShort { .. }
        )
    }

    /// Short machine-readable tag used in CLI error lines.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::InvalidArgument(_) => "invalid_argument",
            Error::NotInvertible { .. } => "not_invertible",
            Error::Unsupported(_) => "unsupported",
            Error::Parse { .. } => "parse",
            Error::Gap { .. } => "gap",
            Error::TableTooShort { .. } => "table_too_short",
            Error::Overflow(_) => "overflow",
            Error::BoundViolation { .. } => "bound_violation",
            Error::Quadrature(_) => "quadrature",
            Error::Truncation(_) => "truncation",
            Error::Accuracy(_) => "accuracy",
            Error::Io(_) => "io",
            Error::CheckFailed(_) => "check_failed",
        }
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::InvalidArgument(msg.into()))
}
