//! Line-oriented circuit text format.
//!
//! ```text
//! # comment
//! INPUTS 3
//! g1 = AND x1 x2
//! g2 = XOR g1 x3
//! OUTPUT g2
//! ```
//!
//! Inputs are referenced as `x1 … xn`. Gate identifiers are arbitrary names
//! defined before use. `OUTPUT` takes one or more taps: a node, `!node` for
//! its negation, or `const0`/`const1`. Files are UTF-8 with LF line ends;
//! the writer emits gates as `g1 … gs` in topological order.

use crate::circuit::{Circuit, Gate, Wire};
use crate::error::CircuitError;
use crate::op::GateOp;
use std::collections::HashMap;
use std::fmt::Write as _;

fn err(line: usize, msg: impl Into<String>) -> CircuitError {
    CircuitError::Parse {
        line,
        msg: msg.into(),
    }
}

fn parse_input_ref(tok: &str) -> Option<usize> {
    let rest = tok.strip_prefix('x')?;
    if rest.is_empty() || !rest.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    rest.parse::<usize>().ok()
}

fn resolve_node(
    tok: &str,
    n_inputs: usize,
    names: &HashMap<String, usize>,
    defined_at: &HashMap<String, usize>,
    line: usize,
) -> Result<usize, CircuitError> {
    if let Some(i) = parse_input_ref(tok) {
        if i == 0 || i > n_inputs {
            return Err(err(
                line,
                format!("input x{i} out of range (circuit has {n_inputs} inputs)"),
            ));
        }
        return Ok(i - 1);
    }
    if let Some(&id) = names.get(tok) {
        return Ok(id);
    }
    match defined_at.get(tok) {
        Some(def_line) => Err(err(
            line,
            format!("forward reference to '{tok}' (defined at line {def_line})"),
        )),
        None => Err(err(line, format!("reference to undefined node '{tok}'"))),
    }
}

pub fn parse_circuit(text: &str) -> Result<Circuit, CircuitError> {
    let mut n_inputs: Option<usize> = None;
    let mut names: HashMap<String, usize> = HashMap::new();
    let mut gates: Vec<Gate> = Vec::new();
    let mut outputs: Vec<Wire> = Vec::new();
    let mut outputs_seen = false;

    // Definition sites, so that a use-before-definition can be reported as a
    // forward reference rather than an unknown name.
    let mut defined_at: HashMap<String, usize> = HashMap::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = match raw.find('#') {
            Some(p) => &raw[..p],
            None => raw,
        }
        .trim();
        let toks: Vec<&str> = line.split_ascii_whitespace().collect();
        if toks.len() == 5 && toks[1] == "=" {
            defined_at.entry(toks[0].to_string()).or_insert(idx + 1);
        }
    }

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
                return Err(err(line_no, "expected header 'INPUTS <n>'"));
            }
            let n: usize = toks[1]
                .parse()
                .map_err(|_| err(line_no, format!("bad input count '{}'", toks[1])))?;
            if n == 0 {
                return Err(err(line_no, "input count must be at least 1"));
            }
            n_inputs = Some(n);
            continue;
        }
        let n = n_inputs.unwrap();

        if toks[0] == "OUTPUT" {
            if toks.len() < 2 {
                return Err(err(line_no, "OUTPUT needs at least one node"));
            }
            outputs_seen = true;
            for tok in &toks[1..] {
                let wire = match *tok {
                    "const0" => Wire::Const(false),
                    "const1" => Wire::Const(true),
                    t => {
                        let (name, invert) = match t.strip_prefix('!') {
                            Some(rest) => (rest, true),
                            None => (t, false),
                        };
                        let id = resolve_node(name, n, &names, &defined_at, line_no)?;
                        Wire::Node { id, invert }
                    }
                };
                outputs.push(wire);
            }
            continue;
        }

        if outputs_seen {
            return Err(err(line_no, "gate definition after OUTPUT"));
        }
        if toks.len() != 5 || toks[1] != "=" {
            return Err(err(line_no, "expected '<id> = <OP> <arg> <arg>'"));
        }
        let name = toks[0];
        if name == "INPUTS"
            || name == "OUTPUT"
            || name == "const0"
            || name == "const1"
            || name == "zero"
        {
            return Err(err(line_no, format!("reserved identifier '{name}'")));
        }
        if parse_input_ref(name).is_some() {
            return Err(err(
                line_no,
                format!("identifier '{name}' collides with input references"),
            ));
        }
        if names.contains_key(name) {
            return Err(err(line_no, format!("duplicate definition of '{name}'")));
        }
        let op = GateOp::from_mnemonic(toks[2])
            .map_err(|_| err(line_no, format!("unknown operation '{}'", toks[2])))?;
        let a = resolve_node(toks[3], n, &names, &defined_at, line_no)?;
        let b = resolve_node(toks[4], n, &names, &defined_at, line_no)?;
        let node = n + gates.len();
        names.insert(name.to_string(), node);
        gates.push(Gate { op, a, b });
    }

    let n = n_inputs.ok_or_else(|| err(1, "missing 'INPUTS <n>' header"))?;
    if !outputs_seen {
        return Err(err(text.lines().count().max(1), "missing OUTPUT line"));
    }
    Circuit::new(n, gates, outputs)
}

fn node_name(c: &Circuit, id: usize) -> String {
    if c.is_input(id) {
        format!("x{}", id + 1)
    } else {
        format!("g{}", id - c.n_inputs() + 1)
    }
}

pub fn write_circuit(c: &Circuit) -> String {
    let mut s = String::new();
    writeln!(s, "INPUTS {}", c.n_inputs()).unwrap();
    for (k, g) in c.gates().iter().enumerate() {
        writeln!(
            s,
            "g{} = {} {} {}",
            k + 1,
            g.op.mnemonic(),
            node_name(c, g.a),
            node_name(c, g.b)
        )
        .unwrap();
    }
    let taps: Vec<String> = c
        .outputs()
        .iter()
        .map(|w| match *w {
            Wire::Const(false) => "const0".into(),
            Wire::Const(true) => "const1".into(),
            Wire::Node { id, invert } => {
                let name = node_name(c, id);
                if invert {
                    format!("!{name}")
                } else {
                    name
                }
            }
        })
        .collect();
    writeln!(s, "OUTPUT {}", taps.join(" ")).unwrap();
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_single_gate() {
        let c = parse_circuit("INPUTS 2\ng1 = XOR x1 x2\nOUTPUT g1\n").unwrap();
        assert_eq!(c.n_inputs(), 2);
        assert_eq!(c.size(), 1);
        assert_eq!(c.eval(&[true, false]).unwrap(), vec![true]);
        assert_eq!(c.eval(&[true, true]).unwrap(), vec![false]);
    }

    #[test]
    fn rejects_forward_reference() {
        let e = parse_circuit("INPUTS 2\ng1 = AND g2 x1\ng2 = OR x1 x2\nOUTPUT g2\n").unwrap_err();
        let msg = e.to_string();
        assert!(msg.contains("line 2"), "{msg}");
        assert!(msg.contains("forward reference to 'g2'"), "{msg}");
    }

    #[test]
    fn rejects_bad_op_and_counts() {
        assert!(parse_circuit("INPUTS 2\ng1 = XAND x1 x2\nOUTPUT g1\n").is_err());
        assert!(parse_circuit("INPUTS 2\ng1 = AND x1 x3\nOUTPUT g1\n").is_err());
        assert!(parse_circuit("INPUTS 0\nOUTPUT x1\n").is_err());
    }

    #[test]
    fn comments_and_negated_outputs() {
        let c = parse_circuit(
            "# parity with a twist\nINPUTS 2\ng1 = XOR x1 x2  # the gate\nOUTPUT !g1 x1\n",
        )
        .unwrap();
        assert_eq!(c.outputs().len(), 2);
        assert_eq!(c.eval(&[true, false]).unwrap(), vec![false, true]);
    }
}
