//! XOR-only circuits computing linear transformations over GF(2).
//!
//! Node numbering: node 0 is the constant-0 input, nodes `1..=n` are the
//! variables, node `n + 1 + k` is gate `k`. Every gate XORs two earlier
//! nodes. Each node computes a linear form over the inputs, exposed as a
//! support bitmask; output `i` computes row `i` of the circuit's matrix.

use crate::error::LinearError;
use crate::matrix::Gf2Matrix;
use circuit_core::{Circuit, GateOp, Wire};
use std::collections::HashMap;
use std::fmt::Write as _;

pub const ZERO_NODE: usize = 0;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LinearCircuit {
    n_inputs: usize,
    gates: Vec<(usize, usize)>,
    outputs: Vec<usize>,
}

impl LinearCircuit {
    pub fn new(
        n_inputs: usize,
        gates: Vec<(usize, usize)>,
        outputs: Vec<usize>,
    ) -> Result<LinearCircuit, LinearError> {
        if n_inputs == 0 || n_inputs > 64 {
            return Err(LinearError::InvalidParams(
                "linear circuits support 1..=64 inputs".into(),
            ));
        }
        for (k, &(a, b)) in gates.iter().enumerate() {
            let node = n_inputs + 1 + k;
            if a >= node || b >= node {
                return Err(LinearError::InvalidParams(format!(
                    "gate {k} references a node that is not defined yet"
                )));
            }
        }
        let count = n_inputs + 1 + gates.len();
        if outputs.is_empty() || outputs.iter().any(|&o| o >= count) {
            return Err(LinearError::InvalidParams(
                "outputs must reference defined nodes".into(),
            ));
        }
        Ok(LinearCircuit {
            n_inputs,
            gates,
            outputs,
        })
    }

    pub fn n_inputs(&self) -> usize {
        self.n_inputs
    }

    pub fn size(&self) -> usize {
        self.gates.len()
    }

    pub fn node_count(&self) -> usize {
        self.n_inputs + 1 + self.gates.len()
    }

    pub fn gates(&self) -> &[(usize, usize)] {
        &self.gates
    }

    pub fn outputs(&self) -> &[usize] {
        &self.outputs
    }

    pub fn m_outputs(&self) -> usize {
        self.outputs.len()
    }

    /// Linear form of every node as a support bitmask over the inputs.
    pub fn supports(&self) -> Vec<u64> {
        let mut sup = vec![0u64; self.node_count()];
        for i in 0..self.n_inputs {
            sup[1 + i] = 1 << i;
        }
        for (k, &(a, b)) in self.gates.iter().enumerate() {
            sup[self.n_inputs + 1 + k] = sup[a] ^ sup[b];
        }
        sup
    }

    /// Depth (edges from an input) of every node.
    pub fn depths(&self) -> Vec<usize> {
        let mut d = vec![0usize; self.node_count()];
        for (k, &(a, b)) in self.gates.iter().enumerate() {
            d[self.n_inputs + 1 + k] = 1 + d[a].max(d[b]);
        }
        d
    }

    pub fn depth(&self) -> usize {
        self.depths().into_iter().max().unwrap_or(0)
    }

    /// Out-degree of every node counting gate operand uses only.
    pub fn out_degrees(&self) -> Vec<usize> {
        let mut deg = vec![0usize; self.node_count()];
        for &(a, b) in &self.gates {
            deg[a] += 1;
            deg[b] += 1;
        }
        deg
    }

    pub fn eval(&self, x: u64) -> u64 {
        let mut vals = vec![false; self.node_count()];
        for i in 0..self.n_inputs {
            vals[1 + i] = x >> i & 1 == 1;
        }
        for (k, &(a, b)) in self.gates.iter().enumerate() {
            vals[self.n_inputs + 1 + k] = vals[a] ^ vals[b];
        }
        let mut out = 0u64;
        for (i, &o) in self.outputs.iter().enumerate() {
            if vals[o] {
                out |= 1 << i;
            }
        }
        out
    }

    /// The matrix computed by this circuit: column `j` is the output vector
    /// on the `j`-th standard basis vector; the constant-0 input contributes
    /// nothing.
    pub fn matrix(&self) -> Gf2Matrix {
        let sup = self.supports();
        let rows = self.outputs.iter().map(|&o| sup[o]).collect();
        Gf2Matrix::new(self.m_outputs(), self.n_inputs, rows)
            .expect("supports fit the input count")
    }

    /// Rebuild with node aliases applied, deduplicating by linear form,
    /// collapsing gates that reduce to zero or to an input, and sweeping
    /// dead gates. `overrides` maps a node to the node whose value it takes.
    pub fn rewrite(&self, overrides: &[(usize, usize)]) -> Result<LinearCircuit, LinearError> {
        let ov: HashMap<usize, usize> = overrides.iter().copied().collect();
        let mut resolved: Vec<Option<usize>> = vec![None; self.node_count()];
        let mut visiting = vec![false; self.node_count()];
        let mut gates: Vec<(usize, usize)> = Vec::with_capacity(self.size());
        // First node computing each nonzero linear form; zero forms go to
        // the zero node.
        let mut by_form: HashMap<u64, usize> = HashMap::new();
        let mut forms: Vec<u64> = vec![0];
        for i in 0..self.n_inputs {
            by_form.insert(1 << i, 1 + i);
            forms.push(1 << i);
        }

        struct Ctx<'a> {
            src: &'a LinearCircuit,
            ov: HashMap<usize, usize>,
        }
        fn resolve(
            cx: &Ctx,
            node: usize,
            resolved: &mut Vec<Option<usize>>,
            visiting: &mut Vec<bool>,
            gates: &mut Vec<(usize, usize)>,
            by_form: &mut HashMap<u64, usize>,
            forms: &mut Vec<u64>,
        ) -> Result<usize, LinearError> {
            if let Some(r) = resolved[node] {
                return Ok(r);
            }
            if visiting[node] {
                return Err(LinearError::CaseAssertion(format!(
                    "alias cycle through node {node}"
                )));
            }
            visiting[node] = true;
            let n1 = cx.src.n_inputs + 1;
            let new = if let Some(&target) = cx.ov.get(&node) {
                resolve(cx, target, resolved, visiting, gates, by_form, forms)?
            } else if node < n1 {
                node
            } else {
                let (a, b) = cx.src.gates[node - n1];
                let ra = resolve(cx, a, resolved, visiting, gates, by_form, forms)?;
                let rb = resolve(cx, b, resolved, visiting, gates, by_form, forms)?;
                let form = forms[ra] ^ forms[rb];
                if form == 0 {
                    ZERO_NODE
                } else if let Some(&existing) = by_form.get(&form) {
                    existing
                } else {
                    debug_assert!(ra != ZERO_NODE && rb != ZERO_NODE && ra != rb);
                    let id = n1 + gates.len();
                    gates.push((ra.min(rb), ra.max(rb)));
                    forms.push(form);
                    debug_assert_eq!(forms.len(), id + 1);
                    by_form.insert(form, id);
                    id
                }
            };
            visiting[node] = false;
            resolved[node] = Some(new);
            Ok(new)
        }

        let cx = Ctx { src: self, ov };
        for k in 0..self.size() {
            resolve(
                &cx,
                self.n_inputs + 1 + k,
                &mut resolved,
                &mut visiting,
                &mut gates,
                &mut by_form,
                &mut forms,
            )?;
        }
        let mut outputs = Vec::with_capacity(self.outputs.len());
        for &o in &self.outputs {
            outputs.push(resolve(
                &cx,
                o,
                &mut resolved,
                &mut visiting,
                &mut gates,
                &mut by_form,
                &mut forms,
            )?);
        }
        // Dead sweep.
        let n1 = self.n_inputs + 1;
        let count = n1 + gates.len();
        let mut live = vec![false; count];
        for &o in &outputs {
            live[o] = true;
        }
        for k in (0..gates.len()).rev() {
            if live[n1 + k] {
                live[gates[k].0] = true;
                live[gates[k].1] = true;
            }
        }
        let mut map = vec![usize::MAX; count];
        for (i, slot) in map.iter_mut().enumerate().take(n1) {
            *slot = i;
        }
        let mut kept = Vec::with_capacity(gates.len());
        for (k, &(a, b)) in gates.iter().enumerate() {
            if live[n1 + k] {
                map[n1 + k] = n1 + kept.len();
                kept.push((map[a], map[b]));
            }
        }
        LinearCircuit::new(
            self.n_inputs,
            kept,
            outputs.into_iter().map(|o| map[o]).collect(),
        )
    }

    /// Deduplicate equal linear forms, drop gates computing zero or an
    /// input, and sweep dead gates.
    pub fn normalize(&self) -> LinearCircuit {
        self.rewrite(&[]).expect("normalize cannot fail")
    }

    /// Interpret a general circuit (XOR gates only) as a linear circuit.
    pub fn from_circuit(c: &Circuit) -> Result<LinearCircuit, LinearError> {
        let mut gates = Vec::with_capacity(c.size());
        for g in c.gates() {
            if g.op != GateOp::XOR {
                return Err(LinearError::NotLinear(format!(
                    "gate with operation {} is not XOR",
                    g.op
                )));
            }
            gates.push((map_node(c, g.a), map_node(c, g.b)));
        }
        let mut outputs = Vec::with_capacity(c.outputs().len());
        for w in c.outputs() {
            match *w {
                Wire::Const(false) => outputs.push(ZERO_NODE),
                Wire::Const(true) => {
                    return Err(LinearError::NotLinear(
                        "constant-1 output is not a linear form".into(),
                    ))
                }
                Wire::Node { id, invert } => {
                    if invert {
                        return Err(LinearError::NotLinear(
                            "negated output is not a linear form".into(),
                        ));
                    }
                    outputs.push(map_node(c, id));
                }
            }
        }
        LinearCircuit::new(c.n_inputs(), gates, outputs)
    }
}

// Inserting the zero node at 0 shifts every general-circuit node up by one:
// input i -> 1+i, gate k (node n+k) -> n+1+k.
fn map_node(_c: &Circuit, id: usize) -> usize {
    1 + id
}

fn node_name(c: &LinearCircuit, id: usize) -> String {
    if id == ZERO_NODE {
        "zero".into()
    } else if id <= c.n_inputs() {
        format!("x{id}")
    } else {
        format!("g{}", id - c.n_inputs())
    }
}

pub fn write_linear_circuit(c: &LinearCircuit) -> String {
    let mut s = String::new();
    writeln!(s, "INPUTS {}", c.n_inputs()).unwrap();
    for (k, &(a, b)) in c.gates().iter().enumerate() {
        writeln!(
            s,
            "g{} = XOR {} {}",
            k + 1,
            node_name(c, a),
            node_name(c, b)
        )
        .unwrap();
    }
    let taps: Vec<String> = c.outputs().iter().map(|&o| node_name(c, o)).collect();
    writeln!(s, "OUTPUT {}", taps.join(" ")).unwrap();
    s
}

pub fn parse_linear_circuit(text: &str) -> Result<LinearCircuit, LinearError> {
    let err = |line: usize, msg: String| LinearError::Parse { line, msg };
    let mut n_inputs: Option<usize> = None;
    let mut names: HashMap<String, usize> = HashMap::new();
    let mut gates: Vec<(usize, usize)> = Vec::new();
    let mut outputs: Vec<usize> = Vec::new();
    let mut outputs_seen = false;

    let resolve = |tok: &str, n: usize, names: &HashMap<String, usize>, line: usize| {
        if tok == "zero" {
            return Ok(ZERO_NODE);
        }
        if let Some(rest) = tok.strip_prefix('x') {
            if let Ok(i) = rest.parse::<usize>() {
                if i == 0 || i > n {
                    return Err(err(line, format!("input x{i} out of range")));
                }
                return Ok(i);
            }
        }
        names
            .get(tok)
            .copied()
            .ok_or_else(|| err(line, format!("reference to undefined node '{tok}'")))
    };

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = match raw.find('#') {
            Some(p) => &raw[..p],
            None => raw,
        }
        .trim();
        if line.is_empty() {
            continue;
        }
        let toks: Vec<&str> = line.split_ascii_whitespace().collect();
        if n_inputs.is_none() {
            if toks[0] != "INPUTS" || toks.len() != 2 {
                return Err(err(line_no, "expected header 'INPUTS <n>'".into()));
            }
            let n: usize = toks[1]
                .parse()
                .map_err(|_| err(line_no, "bad input count".into()))?;
            n_inputs = Some(n);
            continue;
        }
        let n = n_inputs.unwrap();
        if toks[0] == "OUTPUT" {
            outputs_seen = true;
            for tok in &toks[1..] {
                outputs.push(resolve(tok, n, &names, line_no)?);
            }
            continue;
        }
        if outputs_seen {
            return Err(err(line_no, "gate definition after OUTPUT".into()));
        }
        if toks.len() != 5 || toks[1] != "=" {
            return Err(err(line_no, "expected '<id> = XOR <arg> <arg>'".into()));
        }
        if !toks[2].eq_ignore_ascii_case("XOR") {
            return Err(err(
                line_no,
                format!("linear circuits allow only XOR gates, got '{}'", toks[2]),
            ));
        }
        let a = resolve(toks[3], n, &names, line_no)?;
        let b = resolve(toks[4], n, &names, line_no)?;
        if names.contains_key(toks[0]) {
            return Err(err(line_no, format!("duplicate definition of '{}'", toks[0])));
        }
        names.insert(toks[0].to_string(), n + 1 + gates.len());
        gates.push((a, b));
    }
    let n = n_inputs.ok_or_else(|| err(1, "missing 'INPUTS <n>' header".into()))?;
    if !outputs_seen {
        return Err(err(
            text.lines().count().max(1),
            "missing OUTPUT line".into(),
        ));
    }
    LinearCircuit::new(n, gates, outputs)
}
