//! Circuit intermediate representation.
//!
//! A circuit is a DAG of fan-in-2 gates over `n` input variables. Nodes are
//! numbered densely: `0..n` are the inputs, `n + k` is gate `k`, and gate
//! predecessors always have smaller ids, so the gate list is in topological
//! order by construction and cycles are unrepresentable. Outputs are
//! [`Wire`]s: a node reference with an optional inversion, or a constant, so
//! that zero-gate circuits (projections, literals, constants) stay
//! expressible. The size of a circuit is its number of gates.

use crate::error::CircuitError;
use crate::op::{GateOp, UnaryOp};

pub type NodeId = usize;

/// A value tap: a node with optional inversion, or a constant.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Wire {
    Const(bool),
    Node { id: NodeId, invert: bool },
}

impl Wire {
    pub fn node(id: NodeId) -> Wire {
        Wire::Node { id, invert: false }
    }

    pub fn inverted(self) -> Wire {
        self.xor_invert(true)
    }

    pub fn xor_invert(self, flip: bool) -> Wire {
        match self {
            Wire::Const(v) => Wire::Const(v ^ flip),
            Wire::Node { id, invert } => Wire::Node {
                id,
                invert: invert ^ flip,
            },
        }
    }

    pub fn node_id(self) -> Option<NodeId> {
        match self {
            Wire::Const(_) => None,
            Wire::Node { id, .. } => Some(id),
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Gate {
    pub op: GateOp,
    pub a: NodeId,
    pub b: NodeId,
}

#[derive(Clone, PartialEq, Eq)]
pub struct Circuit {
    n_inputs: usize,
    gates: Vec<Gate>,
    outputs: Vec<Wire>,
}

/// Structural measurements of a circuit.
#[derive(Clone, Debug)]
pub struct CircuitStats {
    pub size: usize,
    pub depth: usize,
    /// Depth (edges from an input) of each gate, indexed by gate order.
    pub gate_depth: Vec<usize>,
    /// Out-degree (uses as a gate operand) of each gate, indexed by gate order.
    pub gate_out_degree: Vec<usize>,
    pub is_formula: bool,
    /// Topologically first gate of out-degree at least 2, if any.
    pub first_multi_fanout: Option<NodeId>,
    /// Gate fed by two variables with the maximum edge distance to an output,
    /// together with that distance.
    pub deepest_top_gate: Option<(NodeId, usize)>,
}

impl Circuit {
    pub fn new(
        n_inputs: usize,
        gates: Vec<Gate>,
        outputs: Vec<Wire>,
    ) -> Result<Circuit, CircuitError> {
        if n_inputs == 0 {
            return Err(CircuitError::InvalidParams(
                "circuit needs at least one input".into(),
            ));
        }
        for (k, g) in gates.iter().enumerate() {
            let node = n_inputs + k;
            for pred in [g.a, g.b] {
                if pred >= node {
                    return Err(CircuitError::ForwardReference { gate: node, pred });
                }
            }
        }
        if outputs.is_empty() {
            return Err(CircuitError::InvalidParams(
                "circuit needs at least one output".into(),
            ));
        }
        let count = n_inputs + gates.len();
        for w in &outputs {
            if let Some(id) = w.node_id() {
                if id >= count {
                    return Err(CircuitError::InvalidNode {
                        node: id,
                        context: "output",
                    });
                }
            }
        }
        Ok(Circuit {
            n_inputs,
            gates,
            outputs,
        })
    }

    pub fn n_inputs(&self) -> usize {
        self.n_inputs
    }

    /// Number of internal gates.
    pub fn size(&self) -> usize {
        self.gates.len()
    }

    pub fn node_count(&self) -> usize {
        self.n_inputs + self.gates.len()
    }

    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    pub fn outputs(&self) -> &[Wire] {
        &self.outputs
    }

    pub fn is_input(&self, id: NodeId) -> bool {
        id < self.n_inputs
    }

    pub fn gate_node(&self, gate_index: usize) -> NodeId {
        self.n_inputs + gate_index
    }

    pub fn gate_at(&self, id: NodeId) -> Option<&Gate> {
        id.checked_sub(self.n_inputs).and_then(|k| self.gates.get(k))
    }

    pub fn single_output(&self) -> Result<Wire, CircuitError> {
        if self.outputs.len() == 1 {
            Ok(self.outputs[0])
        } else {
            Err(CircuitError::MultiOutput {
                got: self.outputs.len(),
            })
        }
    }

    pub fn with_outputs(&self, outputs: Vec<Wire>) -> Result<Circuit, CircuitError> {
        Circuit::new(self.n_inputs, self.gates.clone(), outputs)
    }

    pub fn eval(&self, x: &[bool]) -> Result<Vec<bool>, CircuitError> {
        if x.len() != self.n_inputs {
            return Err(CircuitError::AssignmentLength {
                expected: self.n_inputs,
                got: x.len(),
            });
        }
        let mut values = Vec::with_capacity(self.node_count());
        values.extend_from_slice(x);
        for g in &self.gates {
            values.push(g.op.eval(values[g.a], values[g.b]));
        }
        Ok(self
            .outputs
            .iter()
            .map(|w| match *w {
                Wire::Const(v) => v,
                Wire::Node { id, invert } => values[id] ^ invert,
            })
            .collect())
    }

    pub fn eval_single(&self, x: &[bool]) -> Result<bool, CircuitError> {
        self.single_output()?;
        Ok(self.eval(x)?[0])
    }

    /// Out-degree of every node, counting uses as gate operands only.
    pub fn out_degrees(&self) -> Vec<usize> {
        let mut deg = vec![0usize; self.node_count()];
        for g in &self.gates {
            deg[g.a] += 1;
            deg[g.b] += 1;
        }
        deg
    }

    /// Gate successors of every node.
    pub fn successors(&self) -> Vec<Vec<NodeId>> {
        let mut succ = vec![Vec::new(); self.node_count()];
        for (k, g) in self.gates.iter().enumerate() {
            let node = self.gate_node(k);
            succ[g.a].push(node);
            if g.b != g.a {
                succ[g.b].push(node);
            }
        }
        succ
    }

    /// Depth of every node: the maximum number of edges from an input.
    pub fn depths(&self) -> Vec<usize> {
        let mut d = vec![0usize; self.node_count()];
        for (k, g) in self.gates.iter().enumerate() {
            d[self.n_inputs + k] = 1 + d[g.a].max(d[g.b]);
        }
        d
    }

    /// Longest edge distance from every node to an output node; `None` for
    /// nodes from which no output is reachable.
    pub fn dist_to_output(&self) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.node_count()];
        for w in &self.outputs {
            if let Some(id) = w.node_id() {
                dist[id] = Some(0);
            }
        }
        for k in (0..self.gates.len()).rev() {
            let node = self.n_inputs + k;
            if let Some(d) = dist[node] {
                let g = self.gates[k];
                for pred in [g.a, g.b] {
                    let cand = d + 1;
                    if dist[pred].is_none_or(|cur| cand > cur) {
                        dist[pred] = Some(cand);
                    }
                }
            }
        }
        dist
    }

    /// Nodes from which an output is reachable (inputs included).
    pub fn live_nodes(&self) -> Vec<bool> {
        self.dist_to_output().iter().map(Option::is_some).collect()
    }

    pub fn is_formula(&self) -> bool {
        let deg = self.out_degrees();
        let mut is_output = vec![false; self.node_count()];
        for w in &self.outputs {
            if let Some(id) = w.node_id() {
                is_output[id] = true;
            }
        }
        (0..self.gates.len()).all(|k| {
            let node = self.n_inputs + k;
            is_output[node] || deg[node] == 1
        })
    }

    /// Gates fed by two input variables.
    pub fn top_gates(&self) -> Vec<NodeId> {
        self.gates
            .iter()
            .enumerate()
            .filter(|(_, g)| self.is_input(g.a) && self.is_input(g.b))
            .map(|(k, _)| self.n_inputs + k)
            .collect()
    }

    pub fn stats(&self) -> CircuitStats {
        let depths = self.depths();
        let deg = self.out_degrees();
        let dist = self.dist_to_output();
        let first_multi_fanout = (0..self.gates.len())
            .map(|k| self.n_inputs + k)
            .find(|&node| deg[node] >= 2);
        let mut deepest_top_gate: Option<(NodeId, usize)> = None;
        for node in self.top_gates() {
            if let Some(d) = dist[node] {
                let better = match deepest_top_gate {
                    None => true,
                    Some((_, best)) => d > best,
                };
                if better {
                    deepest_top_gate = Some((node, d));
                }
            }
        }
        CircuitStats {
            size: self.size(),
            depth: depths.iter().copied().max().unwrap_or(0),
            gate_depth: (0..self.gates.len())
                .map(|k| depths[self.n_inputs + k])
                .collect(),
            gate_out_degree: (0..self.gates.len())
                .map(|k| deg[self.n_inputs + k])
                .collect(),
            is_formula: self.is_formula(),
            first_multi_fanout,
            deepest_top_gate,
        }
    }

    /// Input variables reachable from the outputs.
    pub fn structural_support(&self) -> Vec<usize> {
        let live = self.live_nodes();
        (0..self.n_inputs).filter(|&i| live[i]).collect()
    }

    /// Extract the subcircuit feeding `wire` as a standalone single-output
    /// circuit over the same inputs.
    pub fn cone(&self, wire: Wire) -> Circuit {
        let (id, invert) = match wire {
            Wire::Const(v) => {
                return Circuit {
                    n_inputs: self.n_inputs,
                    gates: Vec::new(),
                    outputs: vec![Wire::Const(v)],
                }
            }
            Wire::Node { id, invert } => (id, invert),
        };
        let mut needed = vec![false; self.node_count()];
        needed[id] = true;
        for k in (0..self.gates.len()).rev() {
            let node = self.n_inputs + k;
            if needed[node] {
                needed[self.gates[k].a] = true;
                needed[self.gates[k].b] = true;
            }
        }
        let mut map = vec![usize::MAX; self.node_count()];
        for (i, slot) in map.iter_mut().enumerate().take(self.n_inputs) {
            *slot = i;
        }
        let mut gates = Vec::new();
        for k in 0..self.gates.len() {
            let node = self.n_inputs + k;
            if needed[node] {
                let g = self.gates[k];
                map[node] = self.n_inputs + gates.len();
                gates.push(Gate {
                    op: g.op,
                    a: map[g.a],
                    b: map[g.b],
                });
            }
        }
        Circuit {
            n_inputs: self.n_inputs,
            gates,
            outputs: vec![Wire::Node {
                id: map[id],
                invert,
            }],
        }
    }

    /// Conjunction of single-output circuits over the same inputs. Constant
    /// outputs fold; no gate sharing is introduced, so a conjunction of
    /// formulas is a formula.
    pub fn conjunction(parts: &[&Circuit]) -> Result<Circuit, CircuitError> {
        let n_inputs = parts
            .first()
            .ok_or_else(|| CircuitError::InvalidParams("empty conjunction".into()))?
            .n_inputs;
        let mut gates: Vec<Gate> = Vec::new();
        let mut acc: Option<Wire> = None;
        for part in parts {
            if part.n_inputs != n_inputs {
                return Err(CircuitError::InvalidParams(
                    "conjunction parts disagree on input count".into(),
                ));
            }
            let out = part.single_output()?;
            let offset = gates.len();
            let remap = |id: NodeId| {
                if id < n_inputs {
                    id
                } else {
                    id + offset
                }
            };
            for g in &part.gates {
                gates.push(Gate {
                    op: g.op,
                    a: remap(g.a),
                    b: remap(g.b),
                });
            }
            let out = match out {
                Wire::Const(v) => Wire::Const(v),
                Wire::Node { id, invert } => Wire::Node {
                    id: remap(id),
                    invert,
                },
            };
            acc = Some(match acc {
                None => out,
                Some(w) => match (w, out) {
                    (Wire::Const(false), _) | (_, Wire::Const(false)) => Wire::Const(false),
                    (Wire::Const(true), o) => o,
                    (w, Wire::Const(true)) => w,
                    (
                        Wire::Node { id: u, invert: iu },
                        Wire::Node { id: v, invert: iv },
                    ) => {
                        let op = GateOp::from_fn(|a, b| (a ^ iu) && (b ^ iv));
                        if u == v {
                            match op.diagonal() {
                                UnaryOp::Const(c) => Wire::Const(c),
                                UnaryOp::Pass => Wire::node(u),
                                UnaryOp::Invert => Wire::node(u).inverted(),
                            }
                        } else {
                            let (op, a, b) = if u > v {
                                (op.commuted(), v, u)
                            } else {
                                (op, u, v)
                            };
                            gates.push(Gate { op, a, b });
                            Wire::node(n_inputs + gates.len() - 1)
                        }
                    }
                },
            });
        }
        // Constant folding above can orphan a part's gates; sweep them so a
        // conjunction of formulas stays a formula.
        let acc = acc.unwrap();
        let mut live = vec![false; n_inputs + gates.len()];
        if let Some(id) = acc.node_id() {
            live[id] = true;
        }
        for k in (0..gates.len()).rev() {
            if live[n_inputs + k] {
                live[gates[k].a] = true;
                live[gates[k].b] = true;
            }
        }
        let mut map = vec![usize::MAX; n_inputs + gates.len()];
        for (i, slot) in map.iter_mut().enumerate().take(n_inputs) {
            *slot = i;
        }
        let mut kept = Vec::with_capacity(gates.len());
        for (k, g) in gates.iter().enumerate() {
            if live[n_inputs + k] {
                map[n_inputs + k] = n_inputs + kept.len();
                kept.push(Gate {
                    op: g.op,
                    a: map[g.a],
                    b: map[g.b],
                });
            }
        }
        let acc = match acc {
            Wire::Const(v) => Wire::Const(v),
            Wire::Node { id, invert } => Wire::Node {
                id: map[id],
                invert,
            },
        };
        Circuit::new(n_inputs, kept, vec![acc])
    }
}

impl std::fmt::Debug for Circuit {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Circuit({} inputs, {} gates)", self.n_inputs, self.size())
    }
}
