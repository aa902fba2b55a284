//! Exhaustive verification of OR-of-CNF representations against their
//! source circuit: equivalence, declared-bound compliance, and (when
//! flagged) disjointness.

use crate::cnf::OrOfKcnf;
use crate::error::ReduceError;
use circuit_core::{Circuit, TruthTable};
use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct VerifyReport {
    pub equivalent: bool,
    /// First assignment where circuit and representation disagree.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<u64>,
    pub p_achieved: usize,
    pub q_achieved: usize,
    pub r_achieved: usize,
    pub p_bound_log2: u32,
    pub q_bound: u64,
    pub r_bound: usize,
    pub bounds_ok: bool,
    /// Present when the representation claims disjoint disjuncts.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub disjoint_ok: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub disjoint_witness: Option<u64>,
    /// log₂(achieved p) / s, the empirical branching exponent.
    pub exponent: f64,
    pub pass: bool,
}

pub fn verify_or_of_kcnf(
    c: &Circuit,
    d: &OrOfKcnf,
    budget: usize,
) -> Result<VerifyReport, ReduceError> {
    if c.n_inputs() != d.n {
        return Err(ReduceError::InvalidParams(format!(
            "circuit has {} inputs, representation has {}",
            c.n_inputs(),
            d.n
        )));
    }
    let want = TruthTable::of_circuit(c).map_err(ReduceError::Core)?;
    TruthTable::check_budget(d.n, budget)?;

    let mut acc = TruthTable::constant(d.n, false);
    let mut disjoint_witness = None;
    for cnf in &d.disjuncts {
        let t = cnf.truth_table(budget)?;
        if d.disjoint && disjoint_witness.is_none() {
            if let Some(x) = acc.and(&t).first_difference(&TruthTable::constant(d.n, false)) {
                disjoint_witness = Some(x as u64);
            }
        }
        acc = acc.or(&t);
    }
    let witness = want.first_difference(&acc).map(|x| x as u64);
    let equivalent = witness.is_none();
    let disjoint_ok = if d.disjoint {
        Some(disjoint_witness.is_none())
    } else {
        None
    };
    let bounds_ok = d.bounds_ok();
    let s = c.size();
    let exponent = if s == 0 || d.achieved_p() == 0 {
        0.0
    } else {
        (d.achieved_p() as f64).log2() / s as f64
    };
    Ok(VerifyReport {
        equivalent,
        witness,
        p_achieved: d.achieved_p(),
        q_achieved: d.achieved_q(),
        r_achieved: d.achieved_r(),
        p_bound_log2: d.bound_p_log2,
        q_bound: d.bound_q,
        r_bound: d.bound_r,
        bounds_ok,
        disjoint_ok,
        disjoint_witness,
        exponent,
        pass: equivalent && bounds_ok && disjoint_ok.unwrap_or(true),
    })
}
