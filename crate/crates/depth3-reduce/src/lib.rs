//! Circuit-to-depth-3 transformations: branching reductions to ORs of
//! formulas and ORs of bounded-width CNFs, CNF width reduction, isolated
//! solution counting, and exhaustive verification of every artifact.

mod cnf;
mod error;
mod expand;
mod isolated;
mod reduce;
mod verify;
mod width;

pub use cnf::{parse_mcnf, write_mcnf, Clause, Kcnf, OrOfKcnf};
pub use error::ReduceError;
pub use expand::{expand_to_cnf, expand_to_cnf_with_limit, DEFAULT_WIDTH_LIMIT};
pub use isolated::{count_isolated, count_isolated_cnf, isolated_bound};
pub use reduce::{
    ceil_div_3_9, reduce_part1, reduce_part2, to_or_of_kcnf, toy_reduce, CaseLabel, OrAndC,
    OrOfFormulas, Part, ReductionTrace, TraceStep,
};
pub use verify::{verify_or_of_kcnf, VerifyReport};
pub use width::width_reduce;
