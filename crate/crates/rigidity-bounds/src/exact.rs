//! Exhaustive rigidity search on tiny matrices.
//!
//! `R_M(r)` is the least `s` such that flipping at most `s` entries per row
//! drops the rank to `r` or below. The search tries `s = 0, 1, …`, and for
//! each `s` walks the rows choosing perturbation vectors of weight ≤ `s` in
//! lexicographic order, pruning as soon as the partial row space exceeds
//! rank `r`. The first hit gives both the value and a witness perturbation.

use crate::error::BoundsError;
use linear_gf2::Gf2Matrix;

pub const EXACT_BUDGET_BITS: usize = 25;

#[derive(Clone, Debug)]
pub struct RigidityWitness {
    pub sparsity: usize,
    pub perturbation: Gf2Matrix,
}

/// Incremental GF(2) row-space: insert returns the new rank.
#[derive(Clone, Default)]
struct RowSpace {
    basis: Vec<u64>,
}

impl RowSpace {
    fn insert(&mut self, mut v: u64) -> usize {
        for &b in &self.basis {
            v = v.min(v ^ b);
        }
        if v != 0 {
            self.basis.push(v);
            self.basis.sort_unstable_by(|a, b| b.cmp(a));
        }
        self.basis.len()
    }

    fn rank(&self) -> usize {
        self.basis.len()
    }
}

pub fn rigidity_exact(m: &Gf2Matrix, r: usize) -> Result<RigidityWitness, BoundsError> {
    let (rows, cols) = m.dims();
    if rows * cols > EXACT_BUDGET_BITS {
        return Err(BoundsError::BudgetExceeded {
            bits: rows * cols,
            budget: EXACT_BUDGET_BITS,
        });
    }
    if r > rows.min(cols) {
        return Err(BoundsError::InvalidParams(format!(
            "rank target {r} exceeds min(m, n) = {}",
            rows.min(cols)
        )));
    }
    for s in 0..=cols {
        // Candidate row perturbations of weight <= s, lexicographic.
        let candidates: Vec<u64> = (0..1u64 << cols)
            .filter(|v| v.count_ones() as usize <= s)
            .collect();
        let mut chosen = vec![0u64; rows];
        if search(m, r, &candidates, 0, &RowSpace::default(), &mut chosen) {
            let perturbation = Gf2Matrix::new(rows, cols, chosen)?;
            return Ok(RigidityWitness {
                sparsity: s,
                perturbation,
            });
        }
    }
    unreachable!("s = n always succeeds: perturb every row to zero")
}

fn search(
    m: &Gf2Matrix,
    r: usize,
    candidates: &[u64],
    row: usize,
    space: &RowSpace,
    chosen: &mut Vec<u64>,
) -> bool {
    if space.rank() > r {
        return false;
    }
    if row == m.dims().0 {
        return true;
    }
    for &v in candidates {
        let mut next = space.clone();
        if next.insert(m.row(row) ^ v) > r {
            continue;
        }
        chosen[row] = v;
        if search(m, r, candidates, row + 1, &next, chosen) {
            return true;
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_matrix_has_zero_rigidity() {
        let z = Gf2Matrix::zero(4, 4);
        for r in 0..=4 {
            assert_eq!(rigidity_exact(&z, r).unwrap().sparsity, 0);
        }
    }

    #[test]
    fn rank_already_low_means_zero() {
        let id = Gf2Matrix::identity(4);
        assert_eq!(rigidity_exact(&id, 4).unwrap().sparsity, 0);
        assert!(rigidity_exact(&id, 3).unwrap().sparsity >= 1);
    }

    #[test]
    fn witness_is_valid() {
        let t = Gf2Matrix::upper_triangular(4);
        for r in 0..=3 {
            let w = rigidity_exact(&t, r).unwrap();
            assert_eq!(w.perturbation.row_sparsity(), w.sparsity);
            assert!(t.xor(&w.perturbation).unwrap().rank() <= r);
        }
    }

    #[test]
    fn budget_is_enforced() {
        let big = Gf2Matrix::zero(6, 6);
        assert!(matches!(
            rigidity_exact(&big, 1),
            Err(BoundsError::BudgetExceeded { .. })
        ));
    }
}
