//! Explicit depth-2 and depth-3 constructions: the canonical parity CNF
//! and the OR-of-3-CNFs for inner product.

use crate::error::PrfError;
use circuit_core::{Circuit, Gate, GateOp, Wire};
use depth3_reduce::{expand_to_cnf, Clause, Kcnf, OrOfKcnf};

/// CNF for parity of `n` bits: one width-`n` clause per even-parity
/// (falsifying) assignment, emitted in increasing index order — exactly
/// `2^{n−1}` clauses, and no CNF for parity has fewer.
pub fn parity_cnf(n: usize) -> Result<Kcnf, PrfError> {
    if n == 0 || n > 20 {
        return Err(PrfError::BudgetExceeded {
            what: "parity CNF (needs 1 <= n <= 20)",
            needed: n as u128,
            budget: 20,
        });
    }
    let mut clauses = Vec::with_capacity(1 << (n - 1));
    for x in 0..1usize << n {
        if x.count_ones() % 2 == 0 {
            let lits = (0..n).map(|i| (i, x >> i & 1 == 1)).collect();
            clauses.push(Clause::new(lits)?);
        }
    }
    Ok(Kcnf::new(n, n, clauses)?)
}

/// Window circuit for `[x_a·x_b ⊕ x_c·x_d = 0]` over `n` variables.
fn block_p_zero(n: usize, base: usize) -> Circuit {
    let gates = vec![
        Gate { op: GateOp::AND, a: base, b: base + 1 },
        Gate { op: GateOp::AND, a: base + 2, b: base + 3 },
        Gate { op: GateOp::XOR, a: n, b: n + 1 },
    ];
    Circuit::new(n, gates, vec![Wire::Node { id: n + 2, invert: true }]).unwrap()
}

/// Window circuit for `[x_{a+1} ⊕ x_{a+2}·x_{a+3} = 1]`: the block value
/// when its first variable is 1.
fn block_q(n: usize, base: usize) -> Circuit {
    let gates = vec![
        Gate { op: GateOp::AND, a: base + 2, b: base + 3 },
        Gate { op: GateOp::XOR, a: base + 1, b: n },
    ];
    Circuit::new(n, gates, vec![Wire::node(n + 1)]).unwrap()
}

/// Window circuit for `[x_{a+2}·x_{a+3} = 1]`: the block value when its
/// first variable is 0.
fn block_r(n: usize, base: usize) -> Circuit {
    let gates = vec![Gate { op: GateOp::AND, a: base + 2, b: base + 3 }];
    Circuit::new(n, gates, vec![Wire::node(n)]).unwrap()
}

/// OR of 3-CNFs computing `IP(x) = x₁x₂ ⊕ x₃x₄ ⊕ ⋯ ⊕ x_{n−1}xₙ`.
///
/// With blocks `p_i = x_{4i+1}x_{4i+2} ⊕ x_{4i+3}x_{4i+4}`, IP is 1 iff an
/// odd number of blocks is 1. One disjunct per odd subset `S` of blocks and
/// per split `T ⊆ S` on each block's first variable; the disjunct count is
/// `Σ_{|S| odd} 2^{|S|} ≤ 3^{n/4}`.
pub fn build_ip_depth3(n: usize) -> Result<OrOfKcnf, PrfError> {
    if n == 0 || !n.is_multiple_of(4) {
        return Err(PrfError::InvalidParams(format!(
            "inner-product construction needs n divisible by 4, got {n}"
        )));
    }
    if n > 24 {
        return Err(PrfError::BudgetExceeded {
            what: "inner-product construction",
            needed: n as u128,
            budget: 24,
        });
    }
    let blocks = n / 4;
    // Per-block clause sets, frozen from the expansion of tiny circuits.
    let mut p_clauses = Vec::with_capacity(blocks);
    let mut q_clauses = Vec::with_capacity(blocks);
    let mut r_clauses = Vec::with_capacity(blocks);
    for i in 0..blocks {
        let base = 4 * i;
        p_clauses.push(expand_to_cnf(&block_p_zero(n, base))?);
        q_clauses.push(expand_to_cnf(&block_q(n, base))?);
        r_clauses.push(expand_to_cnf(&block_r(n, base))?);
    }

    let mut disjuncts = Vec::new();
    for s_mask in 0u32..1 << blocks {
        if s_mask.count_ones() % 2 != 1 {
            continue;
        }
        for t_mask in 0u32..1 << blocks {
            if t_mask & !s_mask != 0 {
                continue;
            }
            let mut clauses: Vec<Clause> = Vec::new();
            for i in 0..blocks {
                let first_var = 4 * i;
                if s_mask >> i & 1 == 1 {
                    if t_mask >> i & 1 == 1 {
                        clauses.push(Clause::new(vec![(first_var, false)])?);
                        clauses.extend(q_clauses[i].clauses().iter().cloned());
                    } else {
                        clauses.push(Clause::new(vec![(first_var, true)])?);
                        clauses.extend(r_clauses[i].clauses().iter().cloned());
                    }
                } else {
                    clauses.extend(p_clauses[i].clauses().iter().cloned());
                }
            }
            disjuncts.push(Kcnf::new(n, 3, clauses)?);
        }
    }

    let fan_in_cap = 3f64.powf(blocks as f64);
    if disjuncts.len() as f64 > fan_in_cap {
        return Err(PrfError::InvalidParams(format!(
            "construction bug: {} disjuncts exceed 3^{blocks}",
            disjuncts.len()
        )));
    }
    Ok(OrOfKcnf {
        n,
        disjuncts,
        bound_p_log2: (blocks as f64 * 3f64.log2()).ceil() as u32,
        bound_q: n as u64,
        bound_r: 3,
        disjoint: true,
    })
}

/// The exact top fan-in formula `Σ_{S ⊆ [blocks], |S| odd} 2^{|S|}`.
pub fn ip_depth3_fan_in(blocks: usize) -> u64 {
    (0u32..1 << blocks)
        .filter(|s| s.count_ones() % 2 == 1)
        .map(|s| 1u64 << s.count_ones())
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use circuit_core::{generate, GenSpec, TruthTable};
    use depth3_reduce::verify_or_of_kcnf;

    #[test]
    fn parity_cnf_counts_and_shape() {
        let f = parity_cnf(2).unwrap();
        assert_eq!(f.clauses().len(), 2);
        let lits: Vec<_> = f.clauses().iter().map(|c| c.literals().to_vec()).collect();
        assert!(lits.contains(&vec![(0, false), (1, false)]));
        assert!(lits.contains(&vec![(0, true), (1, true)]));
        assert_eq!(parity_cnf(3).unwrap().clauses().len(), 4);
        for n in 1..=12 {
            assert_eq!(parity_cnf(n).unwrap().clauses().len(), 1 << (n - 1));
        }
    }

    #[test]
    fn parity_cnf_is_equivalent_to_parity() {
        for n in 1..=12 {
            let f = parity_cnf(n).unwrap();
            let c = generate(GenSpec::Parity(n), 0).unwrap();
            let want = TruthTable::of_circuit(&c).unwrap();
            assert_eq!(f.truth_table(24).unwrap(), want, "n = {n}");
        }
    }

    #[test]
    fn ip4_has_two_branches_and_is_equivalent() {
        let d = build_ip_depth3(4).unwrap();
        assert_eq!(d.disjuncts.len(), 2);
        assert_eq!(ip_depth3_fan_in(1), 2);
        let c = generate(GenSpec::Ip(4), 0).unwrap();
        let report = verify_or_of_kcnf(&c, &d, 24).unwrap();
        assert!(report.pass, "{report:?}");
    }

    #[test]
    fn ip8_fan_in_at_most_nine() {
        let d = build_ip_depth3(8).unwrap();
        assert!(d.disjuncts.len() <= 9, "fan-in {}", d.disjuncts.len());
        assert_eq!(d.disjuncts.len() as u64, ip_depth3_fan_in(2));
        assert!(d.achieved_r() <= 3);
        let c = generate(GenSpec::Ip(8), 0).unwrap();
        let report = verify_or_of_kcnf(&c, &d, 24).unwrap();
        assert!(report.pass, "{report:?}");
    }

    /// The four-clause block for [p_i = 0] comes out exactly as published.
    #[test]
    fn p_block_golden_clauses() {
        let f = expand_to_cnf(&block_p_zero(4, 0)).unwrap();
        let got: Vec<Vec<(usize, bool)>> =
            f.clauses().iter().map(|c| c.literals().to_vec()).collect();
        let want: Vec<Vec<(usize, bool)>> = vec![
            vec![(0, false), (2, true), (3, true)],
            vec![(1, false), (2, true), (3, true)],
            vec![(0, true), (1, true), (2, false)],
            vec![(0, true), (1, true), (3, false)],
        ];
        for w in &want {
            assert!(got.contains(w), "missing clause {w:?} in {got:?}");
        }
        assert_eq!(got.len(), 4);
    }

    #[test]
    fn q_and_r_blocks_are_3cnfs() {
        let q = expand_to_cnf(&block_q(4, 0)).unwrap();
        assert!(q.max_width() <= 3);
        assert_eq!(q.clauses().len(), 3);
        let r = expand_to_cnf(&block_r(4, 0)).unwrap();
        let got: Vec<Vec<(usize, bool)>> =
            r.clauses().iter().map(|c| c.literals().to_vec()).collect();
        assert_eq!(got.len(), 2);
        assert!(got.contains(&vec![(2, false)]));
        assert!(got.contains(&vec![(3, false)]));
    }
}
