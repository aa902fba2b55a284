use thiserror::Error;

#[derive(Debug, Error)]
pub enum CircuitError {
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("node {node} out of range in {context}")]
    InvalidNode { node: usize, context: &'static str },
    #[error("gate {gate} references node {pred} that is not defined yet")]
    ForwardReference { gate: usize, pred: usize },
    #[error("assignment has {got} bits but the circuit has {expected} inputs")]
    AssignmentLength { expected: usize, got: usize },
    #[error("{n} inputs exceed the oracle budget of {budget} bits")]
    BudgetExceeded { n: usize, budget: usize },
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("circuit is not in normal form")]
    NotNormalized,
    #[error("expected a single-output circuit, got {got} outputs")]
    MultiOutput { got: usize },
    #[error("rewrite overrides form a cycle through node {0}")]
    RewriteCycle(usize),
    #[error("generator gave up after {attempts} attempts: {hint}")]
    GeneratorExhausted { attempts: usize, hint: &'static str },
}
