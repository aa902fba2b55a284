//! Branching depth reductions: rewriting an arbitrary single-output circuit
//! as an OR of formulas, an OR of ANDs of small circuits, and finally an OR
//! of bounded-width CNFs.
//!
//! All three reductions share one scheme: pick a gate `G` whose guard
//! subcircuit is small, restrict it to 0 and to 1, simplify each branch,
//! and recurse; `C ≡ ([G=0] ∧ C₀) ∨ ([G=1] ∧ C₁)`. What differs is the
//! choice of `G` and the bookkeeping:
//!
//! * the toy reduction branches on the topologically first gate of
//!   out-degree ≥ 2, folding the guard into each branch formula — both
//!   branches shrink by the guard size plus 2;
//! * part 1 branches on a gate fed by two variables — both branches shrink
//!   by 2 and every conjunct is a single gate;
//! * part 2 branches near the *deepest* gate fed by two variables. With `A`
//!   that gate and `B` its successor towards the output, the five cases
//!   (1.1, 1.2 for a fan-out-1 `B`; 2.1 for a parity-type `B`; 2.2.1, 2.2.2
//!   for a product-type `B`) each remove at least four gates per branch,
//!   except case 2.2.2 which removes three in one branch and five in the
//!   other. Every guard has size at most 15, hence support at most 16.
//!
//! Every step is recorded in a [`ReductionTrace`] and its size decrement is
//! asserted; a violation aborts the reduction rather than emitting an
//! artifact with broken bounds.

use crate::cnf::{Kcnf, OrOfKcnf};
use crate::error::ReduceError;
use crate::expand::expand_to_cnf_with_limit;
use circuit_core::{
    is_normalized, rewrite, write_circuit, Circuit, NodeId, OpKind, TruthTable, Wire,
};
use serde::{Deserialize, Serialize};
use std::collections::HashMap;

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub enum CaseLabel {
    #[serde(rename = "base")]
    Base,
    #[serde(rename = "toy")]
    Toy,
    #[serde(rename = "1")]
    Part1,
    #[serde(rename = "1.1")]
    Case11,
    #[serde(rename = "1.2")]
    Case12,
    #[serde(rename = "2.1")]
    Case21,
    #[serde(rename = "2.2.1")]
    Case221,
    #[serde(rename = "2.2.2")]
    Case222,
}

/// One branching step (or base-case leaf) of a reduction, on the circuit
/// current at that point of the recursion.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TraceStep {
    /// Branch path from the root: "0"/"1" per restriction value taken.
    pub path: String,
    pub case: CaseLabel,
    /// Size of the circuit at this step.
    pub size: usize,
    /// Chosen gate node (absent for base leaves).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub gate: Option<NodeId>,
    /// Size of the guard subcircuit computing the chosen gate.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub guard_size: Option<usize>,
    /// Sizes of the two restricted branches after normalization.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub size0: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub size1: Option<usize>,
    /// For case 2.2.2: the branch value that forces both product inputs.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub forced_branch: Option<u8>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ReductionTrace {
    pub kind: String,
    pub initial_size: usize,
    pub leaves: usize,
    pub steps: Vec<TraceStep>,
}

impl ReductionTrace {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("trace serializes")
    }

    /// Check every step against its case's size-decrement ledger.
    pub fn validate(&self) -> Result<(), String> {
        for step in &self.steps {
            let s = step.size;
            let sizes = [step.size0, step.size1];
            let need = |branch: usize, dec: usize| -> Result<(), String> {
                let got = sizes[branch]
                    .ok_or_else(|| format!("step {}: missing branch size", step.path))?;
                if got + dec > s {
                    return Err(format!(
                        "step '{}' case {:?}: branch {branch} has size {got}, needs <= {}",
                        step.path,
                        step.case,
                        s - dec.min(s)
                    ));
                }
                Ok(())
            };
            match step.case {
                CaseLabel::Base => {}
                CaseLabel::Toy => {
                    let t = step.guard_size.unwrap_or(1);
                    need(0, t + 2)?;
                    need(1, t + 2)?;
                }
                CaseLabel::Part1 => {
                    need(0, 2)?;
                    need(1, 2)?;
                }
                CaseLabel::Case11 | CaseLabel::Case12 | CaseLabel::Case21 | CaseLabel::Case221 => {
                    need(0, 4)?;
                    need(1, 4)?;
                }
                CaseLabel::Case222 => {
                    let forced = step
                        .forced_branch
                        .ok_or_else(|| format!("step {}: 2.2.2 without forced branch", step.path))?
                        as usize;
                    need(forced, 5)?;
                    need(1 - forced, 3)?;
                }
            }
        }
        Ok(())
    }
}

/// Disjunction of formulas equivalent to the source circuit.
#[derive(Clone, Debug)]
pub struct OrOfFormulas {
    pub n: usize,
    pub formulas: Vec<Circuit>,
    pub bound_p_log2: u32,
}

impl OrOfFormulas {
    pub fn truth_table(&self, budget: usize) -> Result<TruthTable, ReduceError> {
        TruthTable::check_budget(self.n, budget)?;
        let mut acc = TruthTable::constant(self.n, false);
        for f in &self.formulas {
            acc = acc.or(&TruthTable::of_circuit(f)?);
        }
        Ok(acc)
    }
}

/// OR of ANDs of small circuits over the original variables, with the
/// declared fan-in bounds of the producing reduction.
#[derive(Clone, Debug)]
pub struct OrAndC {
    pub n: usize,
    /// Each branch is a conjunction of single-output circuits.
    pub branches: Vec<Vec<Circuit>>,
    pub bound_p_log2: u32,
    /// Bound on conjuncts per branch.
    pub bound_q: u64,
    /// Bound on conjunct circuit size.
    pub bound_r: usize,
}

impl OrAndC {
    pub fn achieved_q(&self) -> usize {
        self.branches.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn achieved_r(&self) -> usize {
        self.branches
            .iter()
            .flat_map(|b| b.iter().map(Circuit::size))
            .max()
            .unwrap_or(0)
    }

    pub fn truth_table(&self, budget: usize) -> Result<TruthTable, ReduceError> {
        TruthTable::check_budget(self.n, budget)?;
        let mut acc = TruthTable::constant(self.n, false);
        for branch in &self.branches {
            let mut band = TruthTable::constant(self.n, true);
            for conj in branch {
                band = band.and(&TruthTable::of_circuit(conj)?);
            }
            acc = acc.or(&band);
        }
        Ok(acc)
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Part {
    One,
    Two,
}

/// `⌈s/3.9⌉`, computed exactly as `⌈10s/39⌉`.
pub fn ceil_div_3_9(s: usize) -> u32 {
    (10 * s).div_ceil(39) as u32
}

fn ensure_ready(c: &Circuit) -> Result<(), ReduceError> {
    c.single_output().map_err(ReduceError::Core)?;
    if !is_normalized(c) {
        return Err(ReduceError::NotNormalized);
    }
    Ok(())
}

fn bound_violation(msg: String) -> ReduceError {
    ReduceError::BoundViolation(msg)
}

/// Guard circuit computing `[G = value]` inside `c`.
fn guard_cone(c: &Circuit, g: NodeId, value: bool) -> Circuit {
    c.cone(Wire::Node {
        id: g,
        invert: !value,
    })
}

// ---------------------------------------------------------------------------
// Toy reduction: OR of 2^{⌈s/3⌉} formulas, each smaller than the source.
// ---------------------------------------------------------------------------

pub fn toy_reduce(c: &Circuit) -> Result<(OrOfFormulas, ReductionTrace), ReduceError> {
    ensure_ready(c)?;
    let mut steps = Vec::new();
    let mut formulas = Vec::new();
    toy_rec(c, String::new(), &mut steps, &mut formulas)?;
    let s = c.size();
    let bound_p_log2 = s.div_ceil(3) as u32;
    if (formulas.len() as u128) > 1u128 << bound_p_log2 {
        return Err(bound_violation(format!(
            "toy reduction produced {} formulas > 2^{bound_p_log2}",
            formulas.len()
        )));
    }
    let limit = if c.is_formula() { s } else { s.saturating_sub(1) };
    for f in &formulas {
        if !f.is_formula() {
            return Err(bound_violation("toy reduction leaf is not a formula".into()));
        }
        if f.size() > limit {
            return Err(bound_violation(format!(
                "toy reduction formula of size {} exceeds {limit}",
                f.size()
            )));
        }
    }
    let trace = ReductionTrace {
        kind: "toy".into(),
        initial_size: s,
        leaves: formulas.len(),
        steps,
    };
    Ok((
        OrOfFormulas {
            n: c.n_inputs(),
            formulas,
            bound_p_log2,
        },
        trace,
    ))
}

fn toy_rec(
    c: &Circuit,
    path: String,
    steps: &mut Vec<TraceStep>,
    out: &mut Vec<Circuit>,
) -> Result<(), ReduceError> {
    if c.is_formula() {
        steps.push(TraceStep {
            path,
            case: CaseLabel::Base,
            size: c.size(),
            gate: None,
            guard_size: None,
            size0: None,
            size1: None,
            forced_branch: None,
        });
        out.push(c.clone());
        return Ok(());
    }
    let s = c.size();
    let g = c
        .stats()
        .first_multi_fanout
        .expect("a non-formula circuit has a multi-fanout gate");
    let t = c.cone(Wire::node(g)).size();
    let restricted: Vec<Circuit> = [false, true]
        .iter()
        .map(|&b| rewrite(c, &[(g, Wire::Const(b))]).map(|(ci, _)| ci))
        .collect::<Result<_, _>>()?;
    for ci in &restricted {
        if ci.size() + t + 2 > s {
            return Err(bound_violation(format!(
                "toy step at '{path}': branch size {} vs s={s}, t={t}",
                ci.size()
            )));
        }
    }
    steps.push(TraceStep {
        path: path.clone(),
        case: CaseLabel::Toy,
        size: s,
        gate: Some(g),
        guard_size: Some(t),
        size0: Some(restricted[0].size()),
        size1: Some(restricted[1].size()),
        forced_branch: None,
    });
    for (b, ci) in restricted.iter().enumerate() {
        let guard = guard_cone(c, g, b == 1);
        let mut local = Vec::new();
        toy_rec(ci, format!("{path}{b}"), steps, &mut local)?;
        for f in local {
            let combined = Circuit::conjunction(&[&f, &guard])?;
            if combined.size() >= s {
                return Err(bound_violation(format!(
                    "toy combined formula of size {} not below {s}",
                    combined.size()
                )));
            }
            out.push(combined);
        }
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// Part 1: branch on a gate fed by two variables.
// ---------------------------------------------------------------------------

pub fn reduce_part1(c: &Circuit) -> Result<(OrAndC, ReductionTrace), ReduceError> {
    ensure_ready(c)?;
    let mut steps = Vec::new();
    let mut branches = Vec::new();
    part1_rec(c, String::new(), &mut steps, &mut branches)?;
    let s = c.size();
    let bound_p_log2 = s.div_ceil(2) as u32;
    let bound_q = (s / 2 + 1) as u64;
    check_orandc_bounds(&branches, bound_p_log2, bound_q, 1, "part 1")?;
    let trace = ReductionTrace {
        kind: "part1".into(),
        initial_size: s,
        leaves: branches.len(),
        steps,
    };
    Ok((
        OrAndC {
            n: c.n_inputs(),
            branches,
            bound_p_log2,
            bound_q,
            bound_r: 1,
        },
        trace,
    ))
}

fn part1_rec(
    c: &Circuit,
    path: String,
    steps: &mut Vec<TraceStep>,
    out: &mut Vec<Vec<Circuit>>,
) -> Result<(), ReduceError> {
    let s = c.size();
    if s <= 1 {
        steps.push(TraceStep {
            path,
            case: CaseLabel::Base,
            size: s,
            gate: None,
            guard_size: None,
            size0: None,
            size1: None,
            forced_branch: None,
        });
        out.push(vec![c.clone()]);
        return Ok(());
    }
    // The first gate is fed by two variables.
    let a_node = c.n_inputs();
    let restricted: Vec<Circuit> = [false, true]
        .iter()
        .map(|&b| rewrite(c, &[(a_node, Wire::Const(b))]).map(|(ci, _)| ci))
        .collect::<Result<_, _>>()?;
    for ci in &restricted {
        if ci.size() + 2 > s {
            return Err(bound_violation(format!(
                "part 1 step at '{path}': branch size {} vs s={s}",
                ci.size()
            )));
        }
    }
    steps.push(TraceStep {
        path: path.clone(),
        case: CaseLabel::Part1,
        size: s,
        gate: Some(a_node),
        guard_size: Some(1),
        size0: Some(restricted[0].size()),
        size1: Some(restricted[1].size()),
        forced_branch: None,
    });
    for (b, ci) in restricted.iter().enumerate() {
        let guard = guard_cone(c, a_node, b == 1);
        let mut local = Vec::new();
        part1_rec(ci, format!("{path}{b}"), steps, &mut local)?;
        for branch in local {
            let mut full = Vec::with_capacity(branch.len() + 1);
            full.push(guard.clone());
            full.extend(branch);
            out.push(full);
        }
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// Part 2: the five-case analysis around the deepest gate fed by variables.
// ---------------------------------------------------------------------------

pub fn reduce_part2(c: &Circuit) -> Result<(OrAndC, ReductionTrace), ReduceError> {
    ensure_ready(c)?;
    let mut steps = Vec::new();
    let mut branches = Vec::new();
    part2_rec(c, String::new(), &mut steps, &mut branches)?;
    let s = c.size();
    let bound_p_log2 = ceil_div_3_9(s);
    // The count also satisfies the sharper real-exponent bound 2^{s/3.9}.
    let count = branches.len() as f64;
    if count.log2() * 3.9 > s as f64 + 1e-9 {
        return Err(bound_violation(format!(
            "part 2 produced {} branches > 2^({s}/3.9)",
            branches.len()
        )));
    }
    let bound_q = (s.div_ceil(3)).max(1) as u64;
    check_orandc_bounds(&branches, bound_p_log2, bound_q, 15, "part 2")?;
    let trace = ReductionTrace {
        kind: "part2".into(),
        initial_size: s,
        leaves: branches.len(),
        steps,
    };
    Ok((
        OrAndC {
            n: c.n_inputs(),
            branches,
            bound_p_log2,
            bound_q,
            bound_r: 15,
        },
        trace,
    ))
}

struct Part2Plan {
    case: CaseLabel,
    g: NodeId,
    /// Extra overrides per branch value, beyond pinning `g`.
    extra: [Vec<(NodeId, Wire)>; 2],
    /// Required decrements per branch value.
    dec: [usize; 2],
    forced_branch: Option<u8>,
}

fn part2_plan(c: &Circuit, path: &str) -> Result<Part2Plan, ReduceError> {
    let s = c.size();
    let stats = c.stats();
    let (a_node, dist) = stats
        .deepest_top_gate
        .ok_or_else(|| bound_violation(format!("no live top gate at '{path}'")))?;
    if dist < 4 {
        return Err(bound_violation(format!(
            "size {s} > 15 but deepest top gate only {dist} edges from the output"
        )));
    }
    let dist_to_out = c.dist_to_output();
    let succ = c.successors();
    let deg = c.out_degrees();
    // Successor of A on a longest path to the output.
    let b_node = succ[a_node]
        .iter()
        .copied()
        .filter(|&h| dist_to_out[h] == Some(dist - 1))
        .min()
        .ok_or_else(|| bound_violation(format!("top gate without on-path successor at '{path}'")))?;

    if deg[b_node] == 1 {
        let c_node = succ[b_node][0];
        if deg[c_node] == 1 {
            let e_node = succ[c_node][0];
            Ok(Part2Plan {
                case: CaseLabel::Case11,
                g: e_node,
                extra: [vec![], vec![]],
                dec: [4, 4],
                forced_branch: None,
            })
        } else {
            Ok(Part2Plan {
                case: CaseLabel::Case12,
                g: c_node,
                extra: [vec![], vec![]],
                dec: [4, 4],
                forced_branch: None,
            })
        }
    } else {
        let gb = *c.gate_at(b_node).expect("successor is a gate");
        let d_node = if gb.a == a_node {
            gb.b
        } else {
            debug_assert_eq!(gb.b, a_node);
            gb.a
        };
        match gb.op.kind() {
            OpKind::Parity { invert } => {
                // On the branch B = v: A = D ⊕ v ⊕ invert.
                let alias = |v: bool| {
                    vec![(
                        a_node,
                        Wire::Node {
                            id: d_node,
                            invert: v ^ invert,
                        },
                    )]
                };
                Ok(Part2Plan {
                    case: CaseLabel::Case21,
                    g: b_node,
                    extra: [alias(false), alias(true)],
                    dec: [4, 4],
                    forced_branch: None,
                })
            }
            OpKind::Product {
                flip_left,
                flip_right,
                invert,
            } => {
                let (flip_a, flip_d) = if gb.a == a_node {
                    (flip_left, flip_right)
                } else {
                    (flip_right, flip_left)
                };
                // B = (A ⊕ flip_a)(D ⊕ flip_d) ⊕ invert; the branch
                // B = ¬invert forces A = ¬flip_a and D = ¬flip_d.
                let forcing =
                    vec![(a_node, Wire::Const(!flip_a)), (d_node, Wire::Const(!flip_d))];
                let mut extra = [vec![], vec![]];
                extra[!invert as usize] = forcing;
                if deg[a_node] == 1 {
                    Ok(Part2Plan {
                        case: CaseLabel::Case221,
                        g: b_node,
                        extra,
                        dec: [4, 4],
                        forced_branch: None,
                    })
                } else {
                    let forced = !invert as usize;
                    let mut dec = [3, 3];
                    dec[forced] = 5;
                    Ok(Part2Plan {
                        case: CaseLabel::Case222,
                        g: b_node,
                        extra,
                        dec,
                        forced_branch: Some(forced as u8),
                    })
                }
            }
            _ => Err(bound_violation(format!(
                "normalized circuit has a degenerate gate {b_node} at '{path}'"
            ))),
        }
    }
}

fn part2_rec(
    c: &Circuit,
    path: String,
    steps: &mut Vec<TraceStep>,
    out: &mut Vec<Vec<Circuit>>,
) -> Result<(), ReduceError> {
    let s = c.size();
    if s <= 15 {
        steps.push(TraceStep {
            path,
            case: CaseLabel::Base,
            size: s,
            gate: None,
            guard_size: None,
            size0: None,
            size1: None,
            forced_branch: None,
        });
        out.push(vec![c.clone()]);
        return Ok(());
    }
    let plan = part2_plan(c, &path)?;
    let t = c.cone(Wire::node(plan.g)).size();
    if t > 15 {
        return Err(bound_violation(format!(
            "guard of size {t} > 15 for case {:?} at '{path}'",
            plan.case
        )));
    }
    let mut restricted = Vec::with_capacity(2);
    for (v, value) in [false, true].iter().enumerate() {
        let mut overrides = vec![(plan.g, Wire::Const(*value))];
        overrides.extend(plan.extra[v].iter().copied());
        let (ci, _) = rewrite(c, &overrides)?;
        if ci.size() + plan.dec[v] > s {
            return Err(bound_violation(format!(
                "case {:?} at '{path}': branch {v} has size {} vs s={s}, needs decrement {}",
                plan.case,
                ci.size(),
                plan.dec[v]
            )));
        }
        restricted.push(ci);
    }
    steps.push(TraceStep {
        path: path.clone(),
        case: plan.case,
        size: s,
        gate: Some(plan.g),
        guard_size: Some(t),
        size0: Some(restricted[0].size()),
        size1: Some(restricted[1].size()),
        forced_branch: plan.forced_branch,
    });
    for (b, ci) in restricted.iter().enumerate() {
        let guard = guard_cone(c, plan.g, b == 1);
        let mut local = Vec::new();
        part2_rec(ci, format!("{path}{b}"), steps, &mut local)?;
        for branch in local {
            let mut full = Vec::with_capacity(branch.len() + 1);
            full.push(guard.clone());
            full.extend(branch);
            out.push(full);
        }
    }
    Ok(())
}

fn check_orandc_bounds(
    branches: &[Vec<Circuit>],
    bound_p_log2: u32,
    bound_q: u64,
    bound_r: usize,
    what: &str,
) -> Result<(), ReduceError> {
    if (branches.len() as u128) > 1u128 << bound_p_log2.min(127) {
        return Err(bound_violation(format!(
            "{what}: {} branches exceed 2^{bound_p_log2}",
            branches.len()
        )));
    }
    for branch in branches {
        if branch.len() as u64 > bound_q {
            return Err(bound_violation(format!(
                "{what}: branch with {} conjuncts exceeds {bound_q}",
                branch.len()
            )));
        }
        for conj in branch {
            if conj.size() > bound_r {
                return Err(bound_violation(format!(
                    "{what}: conjunct of size {} exceeds {bound_r}",
                    conj.size()
                )));
            }
        }
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// Composition: OR of k-CNFs.
// ---------------------------------------------------------------------------

/// Expand every conjunct of every branch into a CNF and concatenate the
/// clause lists per branch. Part 1 yields width ≤ 2; part 2 width ≤ 16.
/// Branches guard on complementary gate values, so the disjuncts are
/// mutually exclusive and the output carries the `disjoint` flag.
pub fn to_or_of_kcnf(
    c: &Circuit,
    part: Part,
) -> Result<(OrOfKcnf, ReductionTrace), ReduceError> {
    let (orandc, trace) = match part {
        Part::One => reduce_part1(c)?,
        Part::Two => reduce_part2(c)?,
    };
    let s = c.size();
    let (width_limit, bound_q, bound_r) = match part {
        Part::One => (2usize, (s + 1) as u64, 2usize),
        Part::Two => (16usize, ((1u64 << 14) * s as u64).max(1), 16usize),
    };
    // Guards repeat across sibling branches; expand each distinct conjunct
    // once.
    let mut memo: HashMap<String, Kcnf> = HashMap::new();
    let mut disjuncts = Vec::with_capacity(orandc.branches.len());
    for branch in &orandc.branches {
        let mut clauses = Vec::new();
        for conj in branch {
            let key = write_circuit(conj);
            let cnf = match memo.get(&key) {
                Some(f) => f,
                None => {
                    let f = expand_to_cnf_with_limit(conj, width_limit)?;
                    memo.entry(key).or_insert(f)
                }
            };
            clauses.extend(cnf.clauses().iter().cloned());
        }
        disjuncts.push(Kcnf::new(c.n_inputs(), bound_r, clauses)?);
    }
    let out = OrOfKcnf {
        n: c.n_inputs(),
        disjuncts,
        bound_p_log2: orandc.bound_p_log2,
        bound_q,
        bound_r,
        disjoint: true,
    };
    if !out.bounds_ok() {
        return Err(bound_violation(format!(
            "composed OR of CNFs violates its declared bounds (p={}, q={}, r={})",
            out.achieved_p(),
            out.achieved_q(),
            out.achieved_r()
        )));
    }
    Ok((out, trace))
}
