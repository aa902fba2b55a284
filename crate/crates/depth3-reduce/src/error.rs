use circuit_core::CircuitError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ReduceError {
    #[error(transparent)]
    Core(#[from] CircuitError),
    #[error("input circuit is not normalized")]
    NotNormalized,
    #[error("size-bound assertion failed: {0}")]
    BoundViolation(String),
    #[error("support of {support} variables exceeds the width limit {limit}")]
    SupportTooLarge { support: usize, limit: usize },
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
}
