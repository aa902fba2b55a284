//! GF(2) matrices, XOR-only circuits, and the sparse-plus-low-rank
//! decomposition extracted from a small linear circuit.

mod circuit;
mod error;
mod matrix;
mod reduce;
mod synthesize;

pub use circuit::{parse_linear_circuit, write_linear_circuit, LinearCircuit, ZERO_NODE};
pub use error::LinearError;
pub use matrix::{parse_matrix, write_matrix, Gf2Matrix};
pub use reduce::{
    linear_reduce, verify_decomposition, DecompositionReport, LinearStep, RigidityDecomposition,
};
pub use synthesize::synthesize_linear;
