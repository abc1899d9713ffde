use std::fmt;

use thiserror::Error;

/// A violated invariant of a quantum object, with the size of the violation.
#[derive(Debug, Clone, PartialEq)]
pub enum Violation {
    Shape { expected: usize, found: usize },
    NonFinite,
    NotSquare { rows: usize, cols: usize },
    BadDims(String),
    NotHermitian { deviation: f64 },
    Trace { deviation: f64 },
    NotPsd { min_eigenvalue: f64 },
    NotOrthonormal { deviation: f64 },
    NegativeProbability { index: usize, value: f64 },
    ProbabilitySum { deviation: f64 },
    Frame(String),
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Shape { expected, found } => {
                write!(f, "expected {expected} entries, found {found}")
            }
            Violation::NonFinite => write!(f, "matrix has non-finite entries"),
            Violation::NotSquare { rows, cols } => write!(f, "matrix is not square: {rows}x{cols}"),
            Violation::BadDims(msg) => write!(f, "bad subsystem dimensions: {msg}"),
            Violation::NotHermitian { deviation } => {
                write!(f, "not Hermitian: max |M - M^dag| = {deviation:e}")
            }
            Violation::Trace { deviation } => write!(f, "trace violation of {deviation:e}"),
            Violation::NotPsd { min_eigenvalue } => {
                write!(f, "not positive semidefinite: min eigenvalue {min_eigenvalue:e}")
            }
            Violation::NotOrthonormal { deviation } => {
                write!(f, "basis not orthonormal: max |G - I| = {deviation:e}")
            }
            Violation::NegativeProbability { index, value } => {
                write!(f, "probability {index} is negative: {value:e}")
            }
            Violation::ProbabilitySum { deviation } => {
                write!(f, "probabilities do not sum to 1 (off by {deviation:e})")
            }
            Violation::Frame(msg) => write!(f, "invalid majorization frame: {msg}"),
        }
    }
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("validation failed: {0}")]
    Validation(Violation),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("internal consistency check failed: {0}")]
    Inconsistent(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),

    #[error("parse error: {0}")]
    Parse(String),
}

impl From<Violation> for Error {
    fn from(v: Violation) -> Self {
        Error::Validation(v)
    }
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn dim_mismatch(msg: impl Into<String>) -> Error {
    Error::DimensionMismatch(msg.into())
}
