use thiserror::Error;

#[derive(Debug, Error)]
pub enum LinearError {
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("dimension mismatch: {left:?} vs {right:?}")]
    DimensionMismatch {
        left: (usize, usize),
        right: (usize, usize),
    },
    #[error("not a linear circuit: {0}")]
    NotLinear(String),
    #[error("case assertion failed: {0}")]
    CaseAssertion(String),
}
