//! Circuit intermediate representation, semantics oracles, normalization,
//! and the gate-restriction primitive the depth reductions branch on.

mod circuit;
mod error;
mod format;
mod generate;
mod normalize;
mod op;
mod truth;

pub use circuit::{Circuit, CircuitStats, Gate, NodeId, Wire};
pub use error::CircuitError;
pub use format::{parse_circuit, write_circuit};
pub use generate::{generate, GenSpec};
pub use normalize::{is_normalized, normalize, restrict_by_gate, rewrite, NormalizationReport};
pub use op::{GateOp, OpKind, UnaryOp};
pub use truth::{var_pattern, TruthTable, DEFAULT_ORACLE_BITS};
