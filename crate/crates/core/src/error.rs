use thiserror::Error;

use crate::solver::Status;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("zero denominator")]
    ZeroDenominator,

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("unknown DMU `{0}`")]
    UnknownDmu(String),

    #[error("non-integer value where integer data is required: {0}")]
    NonInteger(String),

    #[error("malformed problem: {0}")]
    Malformed(String),

    /// Branch-and-bound only terminates over boxed integer variables.
    #[error("integer variable {0} has no finite upper bound")]
    UnboundedIntegerVar(usize),

    #[error("solver returned status {0:?}")]
    Status(Status),

    #[error("load error at row {row}, column {column}: {message}")]
    Load {
        row: usize,
        column: String,
        message: String,
    },
}
