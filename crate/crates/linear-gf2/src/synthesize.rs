//! Linear-circuit synthesis from a matrix by greedy common-subexpression
//! pairing: repeatedly materialize the XOR of the pair of nodes that
//! co-occurs in the most rows. No optimality claim.

use crate::circuit::{LinearCircuit, ZERO_NODE};
use crate::error::LinearError;
use crate::matrix::Gf2Matrix;
use std::collections::HashMap;

pub fn synthesize_linear(mx: &Gf2Matrix) -> Result<LinearCircuit, LinearError> {
    let (m, n) = mx.dims();
    if n == 0 {
        return Err(LinearError::InvalidParams("matrix needs columns".into()));
    }
    // Each row is a set of nodes whose XOR it equals; start from inputs.
    let mut rows: Vec<Vec<usize>> = mx
        .rows()
        .iter()
        .map(|&r| (0..n).filter(|j| r >> j & 1 == 1).map(|j| 1 + j).collect())
        .collect();
    let mut gates: Vec<(usize, usize)> = Vec::new();

    loop {
        let mut counts: HashMap<(usize, usize), usize> = HashMap::new();
        for row in &rows {
            for i in 0..row.len() {
                for j in i + 1..row.len() {
                    *counts.entry((row[i], row[j])).or_insert(0) += 1;
                }
            }
        }
        let Some((&pair, _)) = counts
            .iter()
            .max_by_key(|(&pair, &c)| (c, std::cmp::Reverse(pair)))
        else {
            break;
        };
        let node = n + 1 + gates.len();
        gates.push(pair);
        for row in &mut rows {
            if row.contains(&pair.0) && row.contains(&pair.1) {
                row.retain(|&u| u != pair.0 && u != pair.1);
                row.push(node);
            }
        }
    }

    let outputs = rows
        .iter()
        .map(|r| match r.as_slice() {
            [] => ZERO_NODE,
            [u] => *u,
            _ => unreachable!("pairing loop reduces every row to one node"),
        })
        .collect();
    let c = LinearCircuit::new(n, gates, outputs)?;
    debug_assert_eq!(c.m_outputs(), m);
    Ok(c)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_needs_no_gates() {
        let c = synthesize_linear(&Gf2Matrix::identity(5)).unwrap();
        assert_eq!(c.size(), 0);
        assert_eq!(c.matrix(), Gf2Matrix::identity(5));
    }

    #[test]
    fn dense_row_uses_weight_minus_one_gates() {
        let mx = Gf2Matrix::new(1, 6, vec![0b111111]).unwrap();
        let c = synthesize_linear(&mx).unwrap();
        assert_eq!(c.size(), 5);
        assert_eq!(c.matrix(), mx);
    }

    #[test]
    fn zero_row_maps_to_zero_node() {
        let mx = Gf2Matrix::new(2, 3, vec![0, 0b101]).unwrap();
        let c = synthesize_linear(&mx).unwrap();
        assert_eq!(c.matrix(), mx);
        assert_eq!(c.outputs()[0], ZERO_NODE);
    }
}
