use thiserror::Error;

#[derive(Debug, Error)]
pub enum BoundsError {
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("matrix of {bits} bits exceeds the exhaustive-search budget of {budget}")]
    BudgetExceeded { bits: usize, budget: usize },
    #[error(transparent)]
    Linear(#[from] linear_gf2::LinearError),
}
