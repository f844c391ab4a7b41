use alloc::string::String;

/// Errors raised by the algebraic engine.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("invalid Coxeter matrix: {0}")]
    InvalidCoxeterMatrix(String),
    #[error("invalid Cartan realization: {0}")]
    InvalidRealization(String),
    #[error("generator {letter} out of range for rank {rank}")]
    InvalidGenerator { letter: usize, rank: usize },
    #[error("precondition violated: {0}")]
    PreconditionViolation(String),
    #[error("word mismatch: expected {expected}, found {found}")]
    WordMismatch { expected: String, found: String },
    #[error("verification failed at {index}: {detail}")]
    VerificationFailure { index: String, detail: String },
    #[error("internal error: {0}")]
    Internal(String),
}

pub type Result<T, E = Error> = core::result::Result<T, E>;
