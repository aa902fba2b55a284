//! Isolated satisfying assignments: satisfying points all of whose Hamming
//! neighbors falsify. A k-CNF has at most `2^{n(1−1/k)}` of them, which is
//! what makes parity hard for ORs of k-CNFs.

use crate::cnf::Kcnf;
use crate::error::ReduceError;
use circuit_core::TruthTable;

pub fn count_isolated(t: &TruthTable) -> u64 {
    let mut acc = t.clone();
    for i in 0..t.n() {
        acc = acc.and(&t.flip_var(i).not());
    }
    acc.count_ones()
}

pub fn count_isolated_cnf(f: &Kcnf, budget: usize) -> Result<u64, ReduceError> {
    Ok(count_isolated(&f.truth_table(budget)?))
}

/// The `2^{n(1−1/k)}` ceiling on isolated satisfying assignments of a k-CNF.
pub fn isolated_bound(n: usize, k: usize) -> f64 {
    2f64.powf(n as f64 * (1.0 - 1.0 / k as f64))
}
