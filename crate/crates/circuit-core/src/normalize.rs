//! Semantics-preserving normalization and the gate-restriction primitive.
//!
//! [`rewrite`] rebuilds a circuit through a value lattice: every old node
//! resolves to a constant, a (possibly inverted) node of the new circuit, or
//! a fresh gate. On the way it applies, to fixpoint, the rules that the
//! reductions' size accounting relies on:
//!
//! * constant folding and propagation;
//! * degenerate collapse (an operation that ignores an input, or a gate fed
//!   the same node twice, becomes a wire);
//! * duplicate merge (two gates with the same operation and predecessors, up
//!   to commuting the operands, become one);
//! * local 2-neighborhood collapse: a gate reading both some node `u` and a
//!   gate over `u` (or two gates over the same predecessor pair) computes a
//!   two-input function and is rewired to compute it directly;
//! * dead-gate sweep.
//!
//! Restrictions are the same pass seeded with overrides: pinning a gate to a
//! constant, pinning a variable, or aliasing a gate to a literal of another
//! node. The returned circuit agrees with the original on every assignment
//! where the overrides hold, which is exactly the branching step the
//! depth-reduction arguments need.

use crate::circuit::{Circuit, Gate, NodeId, Wire};
use crate::error::CircuitError;
use crate::op::{GateOp, OpKind, UnaryOp};
use std::collections::HashMap;

#[derive(Clone, Copy, Default, Debug, PartialEq, Eq)]
pub struct NormalizationReport {
    pub constant_folds: usize,
    pub degenerate_collapses: usize,
    pub duplicate_merges: usize,
    pub neighborhood_collapses: usize,
    pub dead_gates_swept: usize,
    /// Net size decrease of the pass.
    pub gates_removed: usize,
}

struct Builder<'a> {
    src: &'a Circuit,
    overrides: HashMap<NodeId, Wire>,
    resolved: Vec<Option<Wire>>,
    visiting: Vec<bool>,
    n_inputs: usize,
    gates: Vec<Gate>,
    dedup: HashMap<(GateOp, NodeId, NodeId), NodeId>,
    report: NormalizationReport,
}

impl<'a> Builder<'a> {
    fn new(src: &'a Circuit, overrides: &[(NodeId, Wire)]) -> Builder<'a> {
        Builder {
            src,
            overrides: overrides.iter().copied().collect(),
            resolved: vec![None; src.node_count()],
            visiting: vec![false; src.node_count()],
            n_inputs: src.n_inputs(),
            gates: Vec::with_capacity(src.size()),
            dedup: HashMap::new(),
            report: NormalizationReport::default(),
        }
    }

    fn resolve_wire(&mut self, w: Wire) -> Result<Wire, CircuitError> {
        match w {
            Wire::Const(v) => Ok(Wire::Const(v)),
            Wire::Node { id, invert } => Ok(self.resolve(id)?.xor_invert(invert)),
        }
    }

    fn resolve(&mut self, node: NodeId) -> Result<Wire, CircuitError> {
        if let Some(w) = self.resolved[node] {
            return Ok(w);
        }
        if self.visiting[node] {
            return Err(CircuitError::RewriteCycle(node));
        }
        self.visiting[node] = true;
        let wire = if let Some(&ov) = self.overrides.get(&node) {
            self.resolve_wire(ov)?
        } else if node < self.n_inputs {
            Wire::node(node)
        } else {
            let g = *self.src.gate_at(node).expect("node is a gate");
            let a = self.resolve(g.a)?;
            let b = self.resolve(g.b)?;
            self.emit(g.op, a, b)
        };
        self.visiting[node] = false;
        self.resolved[node] = Some(wire);
        Ok(wire)
    }

    fn apply_unary(&mut self, u: UnaryOp, w: Wire) -> Wire {
        match u {
            UnaryOp::Const(c) => Wire::Const(c),
            UnaryOp::Pass => w,
            UnaryOp::Invert => w.inverted(),
        }
    }

    /// A wire of the new circuit computing `op(a, b)`.
    fn emit(&mut self, op: GateOp, a: Wire, b: Wire) -> Wire {
        match (a, b) {
            (Wire::Const(va), Wire::Const(vb)) => {
                self.report.constant_folds += 1;
                Wire::Const(op.eval(va, vb))
            }
            (Wire::Const(va), w) => {
                self.report.constant_folds += 1;
                self.apply_unary(op.restrict_left(va), w)
            }
            (w, Wire::Const(vb)) => {
                self.report.constant_folds += 1;
                self.apply_unary(op.restrict_right(vb), w)
            }
            (Wire::Node { id: u, invert: iu }, Wire::Node { id: v, invert: iv }) => {
                let mut op = op;
                if iu {
                    op = op.negate_left();
                }
                if iv {
                    op = op.negate_right();
                }
                self.emit_nodes(op, u, v)
            }
        }
    }

    /// `u` and `v` are plain (uninverted) node ids of the new circuit.
    fn emit_nodes(&mut self, op: GateOp, u: NodeId, v: NodeId) -> Wire {
        match op.kind() {
            OpKind::Constant(c) => {
                self.report.constant_folds += 1;
                return Wire::Const(c);
            }
            OpKind::PassLeft { invert } => {
                self.report.degenerate_collapses += 1;
                return Wire::node(u).xor_invert(invert);
            }
            OpKind::PassRight { invert } => {
                self.report.degenerate_collapses += 1;
                return Wire::node(v).xor_invert(invert);
            }
            _ => {}
        }
        if u == v {
            self.report.degenerate_collapses += 1;
            let unary = op.diagonal();
            return self.apply_unary(unary, Wire::node(u));
        }
        // Canonical operand order; gates are always stored with a < b.
        let (op, u, v) = if u > v { (op.commuted(), v, u) } else { (op, u, v) };
        // 2-neighborhood collapse. Only v can be a gate over u (ids grow
        // along predecessor edges), so one orientation suffices.
        if let Some(gv) = self.new_gate(v).copied() {
            if gv.a == u {
                self.report.neighborhood_collapses += 1;
                let composed = GateOp::from_fn(|x, y| op.eval(x, gv.op.eval(x, y)));
                return self.emit(composed, Wire::node(u), Wire::node(gv.b));
            }
            if gv.b == u {
                self.report.neighborhood_collapses += 1;
                let composed = GateOp::from_fn(|x, y| op.eval(x, gv.op.eval(y, x)));
                return self.emit(composed, Wire::node(u), Wire::node(gv.a));
            }
            if let Some(gu) = self.new_gate(u).copied() {
                if (gu.a, gu.b) == (gv.a, gv.b) {
                    self.report.neighborhood_collapses += 1;
                    let composed =
                        GateOp::from_fn(|x, y| op.eval(gu.op.eval(x, y), gv.op.eval(x, y)));
                    return self.emit(composed, Wire::node(gu.a), Wire::node(gu.b));
                }
            }
        }
        if let Some(&existing) = self.dedup.get(&(op, u, v)) {
            self.report.duplicate_merges += 1;
            return Wire::node(existing);
        }
        let node = self.n_inputs + self.gates.len();
        self.gates.push(Gate { op, a: u, b: v });
        self.dedup.insert((op, u, v), node);
        Wire::node(node)
    }

    fn new_gate(&self, id: NodeId) -> Option<&Gate> {
        id.checked_sub(self.n_inputs).and_then(|k| self.gates.get(k))
    }

    fn finish(mut self) -> Result<(Circuit, NormalizationReport), CircuitError> {
        // Resolve gates in the source order so that normalization preserves
        // the layout of circuits already in normal form. Overrides whose
        // target lies ahead are pulled in recursively.
        for k in 0..self.src.size() {
            self.resolve(self.n_inputs + k)?;
        }
        let mut outputs = Vec::with_capacity(self.src.outputs().len());
        for &w in self.src.outputs() {
            let resolved = self.resolve_wire(w)?;
            outputs.push(resolved);
        }
        // Sweep new gates that ended up bypassed by later collapses.
        let node_count = self.n_inputs + self.gates.len();
        let mut live = vec![false; node_count];
        for w in &outputs {
            if let Some(id) = w.node_id() {
                live[id] = true;
            }
        }
        for k in (0..self.gates.len()).rev() {
            if live[self.n_inputs + k] {
                live[self.gates[k].a] = true;
                live[self.gates[k].b] = true;
            }
        }
        let mut map = vec![usize::MAX; node_count];
        for (i, slot) in map.iter_mut().enumerate().take(self.n_inputs) {
            *slot = i;
        }
        let mut gates = Vec::with_capacity(self.gates.len());
        for (k, g) in self.gates.iter().enumerate() {
            let node = self.n_inputs + k;
            if live[node] {
                map[node] = self.n_inputs + gates.len();
                gates.push(Gate {
                    op: g.op,
                    a: map[g.a],
                    b: map[g.b],
                });
            } else {
                self.report.dead_gates_swept += 1;
            }
        }
        let outputs = outputs
            .into_iter()
            .map(|w| match w {
                Wire::Const(v) => Wire::Const(v),
                Wire::Node { id, invert } => Wire::Node {
                    id: map[id],
                    invert,
                },
            })
            .collect();
        let out = Circuit::new(self.n_inputs, gates, outputs)?;
        self.report.gates_removed = self.src.size() - out.size();
        Ok((out, self.report))
    }
}

/// Rebuild `c` with the given node overrides applied, then normalize.
///
/// Overrides substitute a node by a constant or by a literal of another old
/// node. Inputs may be pinned too. The result agrees with `c` on every
/// assignment satisfying all overrides.
pub fn rewrite(
    c: &Circuit,
    overrides: &[(NodeId, Wire)],
) -> Result<(Circuit, NormalizationReport), CircuitError> {
    for &(node, target) in overrides {
        if node >= c.node_count() {
            return Err(CircuitError::InvalidNode {
                node,
                context: "rewrite override",
            });
        }
        if let Some(id) = target.node_id() {
            if id >= c.node_count() {
                return Err(CircuitError::InvalidNode {
                    node: id,
                    context: "rewrite override target",
                });
            }
        }
    }
    Builder::new(c, overrides).finish()
}

/// Apply every local simplification rule to fixpoint.
pub fn normalize(c: &Circuit) -> (Circuit, NormalizationReport) {
    rewrite(c, &[]).expect("normalize cannot fail on a valid circuit")
}

/// Whether `c` is already in normal form.
pub fn is_normalized(c: &Circuit) -> bool {
    normalize(c).0 == *c
}

/// Pin internal gate `g` to the constant `b`, simplify, and normalize. The
/// result agrees with `c` on every `x` with `G(x) = b`, and is strictly
/// smaller than `c`.
pub fn restrict_by_gate(
    c: &Circuit,
    g: NodeId,
    b: bool,
) -> Result<(Circuit, NormalizationReport), CircuitError> {
    if c.gate_at(g).is_none() {
        return Err(CircuitError::InvalidNode {
            node: g,
            context: "restrict_by_gate",
        });
    }
    rewrite(c, &[(g, Wire::Const(b))])
}
