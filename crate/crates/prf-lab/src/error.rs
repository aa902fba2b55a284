use thiserror::Error;

#[derive(Debug, Error)]
pub enum PrfError {
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("{what} needs {needed} steps, over the budget of {budget}")]
    BudgetExceeded {
        what: &'static str,
        needed: u128,
        budget: u128,
    },
    #[error(transparent)]
    Core(#[from] circuit_core::CircuitError),
    #[error(transparent)]
    Reduce(#[from] depth3_reduce::ReduceError),
}
