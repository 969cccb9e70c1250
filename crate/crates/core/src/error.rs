use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid tuple: {0}")]
    InvalidTuple(String),

    #[error("degree {0} out of range 1..=6")]
    InvalidDegree(usize),

    #[error("{a} is not invertible modulo {m}")]
    NotInvertible { a: i64, m: i64 },

    #[error("internal invariant violated: {0}")]
    InternalInvariantViolation(String),

    #[error("matrix is not in the group (residual {residual:e})")]
    NotInGroup { residual: f64 },

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("verification failed: {reason}; matrix = {matrix}")]
    VerificationFailure { reason: String, matrix: String },

    #[error("parse error on line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
