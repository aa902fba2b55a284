//! Circuit generators: the named families used throughout the test suites
//! plus seeded random circuits.
//!
//! Random generation is deterministic per seed. The `Random` kind produces
//! circuits that are already in normal form (generation rejects candidates
//! that any normalization rule would fire on, then verifies by normalizing);
//! `RandomAny` places no such constraint and is what the normalizer's own
//! tests chew on. `LinearRandom` produces multi-output XOR-only circuits
//! whose gates all compute distinct nonzero linear forms.

use crate::circuit::{Circuit, Gate, NodeId, Wire};
use crate::error::CircuitError;
use crate::normalize::normalize;
use crate::op::GateOp;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;
use std::collections::HashSet;
use std::str::FromStr;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum GenSpec {
    Parity(usize),
    Ip(usize),
    And(usize),
    /// Normalized random circuit with `s` gates over `n` inputs.
    Random { n: usize, s: usize },
    /// Unconstrained random circuit (may contain anything normalize removes).
    RandomAny { n: usize, s: usize },
    /// Random XOR-only circuit with `m` outputs.
    LinearRandom { n: usize, m: usize, s: usize },
}

impl FromStr for GenSpec {
    type Err = CircuitError;

    /// Accepts `parity:8`, `ip:4`, `and:6`, `random:10,20`, `random-any:10,20`,
    /// `linear-random:12,12,40`.
    fn from_str(s: &str) -> Result<GenSpec, CircuitError> {
        let bad = || CircuitError::InvalidParams(format!("bad generator spec '{s}'"));
        let (kind, args) = s.split_once(':').ok_or_else(bad)?;
        let nums: Vec<usize> = args
            .split(',')
            .map(|a| a.trim().parse::<usize>())
            .collect::<Result<_, _>>()
            .map_err(|_| bad())?;
        match (kind, nums.as_slice()) {
            ("parity", [n]) => Ok(GenSpec::Parity(*n)),
            ("ip", [n]) => Ok(GenSpec::Ip(*n)),
            ("and", [n]) => Ok(GenSpec::And(*n)),
            ("random", [n, s]) => Ok(GenSpec::Random { n: *n, s: *s }),
            ("random-any", [n, s]) => Ok(GenSpec::RandomAny { n: *n, s: *s }),
            ("linear-random", [n, m, s]) => Ok(GenSpec::LinearRandom {
                n: *n,
                m: *m,
                s: *s,
            }),
            _ => Err(bad()),
        }
    }
}

/// Balanced fold of `wires` under a symmetric `op`, appending gates in
/// canonical operand order.
fn balanced_fold(gates: &mut Vec<Gate>, n_inputs: usize, op: GateOp, wires: Vec<NodeId>) -> NodeId {
    debug_assert_eq!(op, op.commuted());
    let mut layer = wires;
    while layer.len() > 1 {
        let mut next = Vec::with_capacity(layer.len().div_ceil(2));
        for pair in layer.chunks(2) {
            if pair.len() == 2 {
                gates.push(Gate {
                    op,
                    a: pair[0].min(pair[1]),
                    b: pair[0].max(pair[1]),
                });
                next.push(n_inputs + gates.len() - 1);
            } else {
                next.push(pair[0]);
            }
        }
        layer = next;
    }
    layer[0]
}

pub fn generate(spec: GenSpec, seed: u64) -> Result<Circuit, CircuitError> {
    match spec {
        GenSpec::Parity(n) => balanced_tree(n, GateOp::XOR),
        GenSpec::And(n) => balanced_tree(n, GateOp::AND),
        GenSpec::Ip(n) => ip_circuit(n),
        GenSpec::Random { n, s } => random_normalized(n, s, seed),
        GenSpec::RandomAny { n, s } => Ok(random_any(n, s, seed)),
        GenSpec::LinearRandom { n, m, s } => linear_random(n, m, s, seed),
    }
}

fn balanced_tree(n: usize, op: GateOp) -> Result<Circuit, CircuitError> {
    if n == 0 {
        return Err(CircuitError::InvalidParams("need n >= 1".into()));
    }
    let mut gates = Vec::new();
    let root = balanced_fold(&mut gates, n, op, (0..n).collect());
    Circuit::new(n, gates, vec![Wire::node(root)])
}

/// `IP(x) = x₁x₂ ⊕ x₃x₄ ⊕ ⋯ ⊕ x_{n−1}xₙ`, with n/2 AND gates and a balanced
/// XOR tree: exactly n − 1 gates.
fn ip_circuit(n: usize) -> Result<Circuit, CircuitError> {
    if n == 0 || !n.is_multiple_of(2) {
        return Err(CircuitError::InvalidParams(
            "inner product needs even n >= 2".into(),
        ));
    }
    let mut gates = Vec::new();
    let mut products = Vec::with_capacity(n / 2);
    for i in (0..n).step_by(2) {
        gates.push(Gate {
            op: GateOp::AND,
            a: i,
            b: i + 1,
        });
        products.push(n + gates.len() - 1);
    }
    let root = balanced_fold(&mut gates, n, GateOp::XOR, products);
    Circuit::new(n, gates, vec![Wire::node(root)])
}

fn random_any(n: usize, s: usize, seed: u64) -> Circuit {
    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    let mut gates = Vec::with_capacity(s);
    for k in 0..s {
        let limit = n + k;
        gates.push(Gate {
            op: GateOp::from_table(rng.gen_range(0..16)),
            a: rng.gen_range(0..limit),
            b: rng.gen_range(0..limit),
        });
    }
    let out = if s == 0 { 0 } else { n + s - 1 };
    Circuit::new(n.max(1), gates, vec![Wire::node(out)]).expect("valid by construction")
}

/// Whether adding `op(a, b)` (a < b) would violate the normal form.
fn breaks_normal_form(
    gates: &[Gate],
    n_inputs: usize,
    seen: &HashSet<(GateOp, NodeId, NodeId)>,
    op: GateOp,
    a: NodeId,
    b: NodeId,
) -> bool {
    if seen.contains(&(op, a, b)) {
        return true;
    }
    let gate_of = |id: NodeId| id.checked_sub(n_inputs).map(|k| &gates[k]);
    // Triangle: the new gate reads a node and a gate over that node.
    if let Some(g) = gate_of(b) {
        if g.a == a || g.b == a {
            return true;
        }
        // Diamond: both operands are gates over the same predecessor pair.
        if let Some(ga) = gate_of(a) {
            if (ga.a, ga.b) == (g.a, g.b) {
                return true;
            }
        }
    }
    false
}

fn random_normalized(n: usize, s: usize, seed: u64) -> Result<Circuit, CircuitError> {
    if n < 2 {
        return Err(CircuitError::InvalidParams(
            "random circuits need n >= 2".into(),
        ));
    }
    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    'attempt: for _ in 0..1000 {
        let mut gates: Vec<Gate> = Vec::with_capacity(s);
        let mut seen: HashSet<(GateOp, NodeId, NodeId)> = HashSet::new();
        let ops: Vec<GateOp> = GateOp::all_binary().collect();
        // Gates that nothing reads yet. Keeping their count at most one above
        // the number of remaining slots guarantees the finished circuit has a
        // single unread gate (the output) and no dead gates to sweep.
        let mut unused: Vec<NodeId> = Vec::new();
        for k in 0..s {
            let remaining = s - k;
            let limit = n + k;
            let mut placed = false;
            for _ in 0..64 {
                let (a, b) = if unused.len() > remaining {
                    let i = rng.gen_range(0..unused.len());
                    let mut j = rng.gen_range(0..unused.len() - 1);
                    if j >= i {
                        j += 1;
                    }
                    (unused[i], unused[j])
                } else if unused.len() >= remaining || (!unused.is_empty() && rng.gen_bool(0.5)) {
                    (
                        unused[rng.gen_range(0..unused.len())],
                        rng.gen_range(0..limit),
                    )
                } else {
                    (rng.gen_range(0..limit), rng.gen_range(0..limit))
                };
                if a == b {
                    continue;
                }
                let (a, b) = if a < b { (a, b) } else { (b, a) };
                let op = ops[rng.gen_range(0..ops.len())];
                if breaks_normal_form(&gates, n, &seen, op, a, b) {
                    continue;
                }
                seen.insert((op, a, b));
                unused.retain(|&u| u != a && u != b);
                gates.push(Gate { op, a, b });
                unused.push(n + k);
                placed = true;
                break;
            }
            if !placed {
                continue 'attempt;
            }
        }
        if s > 0 && unused != [n + s - 1] {
            continue 'attempt;
        }
        let out = if s == 0 { 0 } else { n + s - 1 };
        let c = Circuit::new(n, gates, vec![Wire::node(out)])?;
        let (norm, _) = normalize(&c);
        if norm == c {
            return Ok(c);
        }
    }
    Err(CircuitError::GeneratorExhausted {
        attempts: 1000,
        hint: "random normalized circuit (try a larger n or smaller s)",
    })
}

fn linear_random(n: usize, m: usize, s: usize, seed: u64) -> Result<Circuit, CircuitError> {
    if n == 0 || n > 64 || m == 0 || s < m {
        return Err(CircuitError::InvalidParams(
            "linear-random needs 1 <= n <= 64, m >= 1, s >= m".into(),
        ));
    }
    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    'attempt: for _ in 0..1000 {
        let mut gates: Vec<Gate> = Vec::with_capacity(s);
        // Linear form of every node as a support bitmask over the inputs.
        let mut form: Vec<u64> = (0..n).map(|i| 1u64 << i).collect();
        let mut seen: HashSet<u64> = form.iter().copied().collect();
        // Unread gates that are not going to be outputs (outputs are the
        // last m gates and may stay unread). These must all be consumed;
        // each remaining slot can consume two of them.
        let mut must_use: Vec<NodeId> = Vec::new();
        let mut placed_all = true;
        for k in 0..s {
            let slots_left = s - k;
            let must_pushes_left = (s - m).saturating_sub(k);
            let limit = n + k;
            let mut placed = false;
            for _ in 0..64 {
                let needed = must_use.len() + must_pushes_left;
                let cap = 2 * slots_left;
                let (a, b) = if needed >= cap {
                    let i = rng.gen_range(0..must_use.len());
                    let mut j = rng.gen_range(0..must_use.len() - 1);
                    if j >= i {
                        j += 1;
                    }
                    (must_use[i], must_use[j])
                } else if needed + 1 >= cap
                    || (!must_use.is_empty() && rng.gen_bool(0.5))
                {
                    (
                        must_use[rng.gen_range(0..must_use.len())],
                        rng.gen_range(0..limit),
                    )
                } else if k > 0 && rng.gen_bool(0.5) {
                    // Chain from the previous gate for depth.
                    (limit - 1, rng.gen_range(0..limit))
                } else {
                    (rng.gen_range(0..limit), rng.gen_range(0..limit))
                };
                if a == b {
                    continue;
                }
                let f = form[a] ^ form[b];
                if f == 0 || seen.contains(&f) {
                    continue;
                }
                let (a, b) = if a < b { (a, b) } else { (b, a) };
                seen.insert(f);
                form.push(f);
                must_use.retain(|&u| u != a && u != b);
                gates.push(Gate {
                    op: GateOp::XOR,
                    a,
                    b,
                });
                if k < s - m {
                    must_use.push(n + k);
                }
                placed = true;
                break;
            }
            if !placed {
                placed_all = false;
                break;
            }
        }
        if !placed_all || !must_use.is_empty() {
            continue 'attempt;
        }
        let outputs: Vec<Wire> = (s - m..s).map(|k| Wire::node(n + k)).collect();
        return Circuit::new(n, gates, outputs);
    }
    Err(CircuitError::GeneratorExhausted {
        attempts: 1000,
        hint: "random linear circuit (try a larger n or smaller s)",
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::truth::TruthTable;

    #[test]
    fn parity_has_n_minus_1_gates_and_right_table() {
        for n in [1, 2, 4, 7] {
            let c = generate(GenSpec::Parity(n), 0).unwrap();
            assert_eq!(c.size(), n.saturating_sub(1));
            let t = TruthTable::of_circuit(&c).unwrap();
            for x in 0..1usize << n {
                assert_eq!(t.get(x), (x.count_ones() & 1) == 1);
            }
        }
    }

    #[test]
    fn ip2_is_single_and() {
        let c = generate(GenSpec::Ip(2), 0).unwrap();
        assert_eq!(c.size(), 1);
        assert_eq!(c.gates()[0].op, GateOp::AND);
    }

    #[test]
    fn ip_gate_count_and_semantics() {
        for n in [4usize, 8] {
            let c = generate(GenSpec::Ip(n), 0).unwrap();
            assert_eq!(c.size(), n - 1);
            let t = TruthTable::of_circuit(&c).unwrap();
            for x in 0..1usize << n {
                let mut v = false;
                for i in (0..n).step_by(2) {
                    v ^= (x >> i & 1 == 1) && (x >> (i + 1) & 1 == 1);
                }
                assert_eq!(t.get(x), v);
            }
        }
    }

    #[test]
    fn random_is_seed_deterministic_and_normal() {
        let a = generate(GenSpec::Random { n: 8, s: 20 }, 7).unwrap();
        let b = generate(GenSpec::Random { n: 8, s: 20 }, 7).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.size(), 20);
        assert!(crate::normalize::is_normalized(&a));
        let c = generate(GenSpec::Random { n: 8, s: 20 }, 8).unwrap();
        assert_ne!(a, c);
    }

    #[test]
    fn linear_random_is_xor_only_with_m_outputs() {
        let c = generate(
            GenSpec::LinearRandom {
                n: 12,
                m: 10,
                s: 40,
            },
            3,
        )
        .unwrap();
        assert_eq!(c.outputs().len(), 10);
        assert_eq!(c.size(), 40);
        assert!(c.gates().iter().all(|g| g.op == GateOp::XOR));
    }

    #[test]
    fn spec_strings_parse() {
        assert_eq!("parity:8".parse::<GenSpec>().unwrap(), GenSpec::Parity(8));
        assert_eq!(
            "random:10,20".parse::<GenSpec>().unwrap(),
            GenSpec::Random { n: 10, s: 20 }
        );
        assert_eq!(
            "linear-random:12,12,40".parse::<GenSpec>().unwrap(),
            GenSpec::LinearRandom { n: 12, m: 12, s: 40 }
        );
        assert!("frob:3".parse::<GenSpec>().is_err());
    }
}
