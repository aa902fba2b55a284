//! Rewriting a small circuit as a CNF over its support.
//!
//! A circuit of size `r` depends on at most `r + 1` variables, so its
//! falsifying assignments over the support give a CNF of width at most
//! `r + 1`. Falsifying assignments are enumerated in increasing index order
//! and paired on the last support variable, which caps the clause count at
//! `2^r`; each clause is then widened greedily (literals dropped while its
//! subcube stays falsifying) and subsumed clauses are removed.

use crate::cnf::{Clause, Kcnf};
use crate::error::ReduceError;
use circuit_core::Circuit;

pub const DEFAULT_WIDTH_LIMIT: usize = 16;

pub fn expand_to_cnf(c: &Circuit) -> Result<Kcnf, ReduceError> {
    expand_to_cnf_with_limit(c, DEFAULT_WIDTH_LIMIT)
}

pub fn expand_to_cnf_with_limit(c: &Circuit, width_limit: usize) -> Result<Kcnf, ReduceError> {
    c.single_output()?;
    let structural = c.structural_support();
    if structural.len() > width_limit {
        return Err(ReduceError::SupportTooLarge {
            support: structural.len(),
            limit: width_limit,
        });
    }

    // Local truth table over the structural support.
    let m = structural.len();
    let mut local = vec![false; 1 << m];
    let mut assignment = vec![false; c.n_inputs()];
    for (idx, value) in local.iter_mut().enumerate() {
        for (j, &v) in structural.iter().enumerate() {
            assignment[v] = idx >> j & 1 == 1;
        }
        *value = c.eval(&assignment)?[0];
    }

    // Shrink to the functional support.
    let support: Vec<usize> = (0..m)
        .filter(|&j| (0..1usize << m).any(|idx| local[idx] != local[idx ^ (1 << j)]))
        .collect();
    let k = support.len();
    // Table over the functional support, other variables at 0.
    let mut packed = vec![false; 1 << k];
    for (sup_idx, value) in packed.iter_mut().enumerate() {
        let mut idx = 0usize;
        for (jj, &j) in support.iter().enumerate() {
            if sup_idx >> jj & 1 == 1 {
                idx |= 1 << j;
            }
        }
        *value = local[idx];
    }
    let table = |sup_idx: usize| packed[sup_idx];

    if k == 0 {
        let clauses = if table(0) { vec![] } else { vec![Clause::empty()] };
        return Kcnf::new(c.n_inputs(), 0, clauses);
    }

    // A clause is a subcube of falsifying assignments: `mask` marks the
    // fixed support variables and `fixed` their values.
    let all_falsifying = |mask: usize, fixed: usize| -> bool {
        let free: Vec<usize> = (0..k).filter(|j| mask >> j & 1 == 0).collect();
        (0..1usize << free.len()).all(|t| {
            let mut idx = fixed;
            for (u, &j) in free.iter().enumerate() {
                if t >> u & 1 == 1 {
                    idx |= 1 << j;
                }
            }
            !table(idx)
        })
    };

    let full = (1usize << k) - 1;
    let mut cubes: Vec<(usize, usize)> = Vec::new();
    // Pair falsifying assignments that differ only in the last support
    // variable; at most one cube per prefix.
    let top = 1usize << (k - 1);
    for prefix in 0..top {
        let lo = prefix;
        let hi = prefix | top;
        match (!table(lo), !table(hi)) {
            (true, true) => cubes.push((full ^ top, lo)),
            (true, false) => cubes.push((full, lo)),
            (false, true) => cubes.push((full, hi)),
            (false, false) => {}
        }
    }
    // Greedy widening: drop fixed variables in increasing order while the
    // subcube stays falsifying.
    for cube in &mut cubes {
        for j in 0..k {
            let bit = 1usize << j;
            if cube.0 & bit != 0 && all_falsifying(cube.0 ^ bit, cube.1 & !(bit)) {
                cube.0 ^= bit;
                cube.1 &= !bit;
            }
        }
    }
    // Subsumption: a cube contained in an earlier, wider one is redundant.
    let mut kept: Vec<(usize, usize)> = Vec::new();
    'outer: for cube in cubes {
        for prev in &kept {
            if prev.0 & cube.0 == prev.0 && cube.1 & prev.0 == prev.1 {
                continue 'outer;
            }
        }
        kept.push(cube);
    }

    let mut clauses = Vec::with_capacity(kept.len());
    let mut width = 0;
    for (mask, fixed) in kept {
        let lits: Vec<(usize, bool)> = (0..k)
            .filter(|j| mask >> j & 1 == 1)
            // Reject the assignment: the literal is the negation of the
            // falsifying value.
            .map(|j| (structural[support[j]], fixed >> j & 1 == 1))
            .collect();
        width = width.max(lits.len());
        clauses.push(Clause::new(lits)?);
    }
    debug_assert!(clauses.len() <= 1 << (k - 1));
    Kcnf::new(c.n_inputs(), width, clauses)
}

#[cfg(test)]
mod tests {
    use super::*;
    use circuit_core::{generate, parse_circuit, GenSpec, TruthTable};

    fn lits(cl: &Clause) -> Vec<(usize, bool)> {
        cl.literals().to_vec()
    }

    #[test]
    fn xor_gives_the_two_canonical_clauses() {
        let c = parse_circuit("INPUTS 2\ng1 = XOR x1 x2\nOUTPUT g1\n").unwrap();
        let f = expand_to_cnf(&c).unwrap();
        assert_eq!(f.clauses().len(), 2);
        assert_eq!(f.max_width(), 2);
        let sets: Vec<Vec<(usize, bool)>> = f.clauses().iter().map(lits).collect();
        assert!(sets.contains(&vec![(0, false), (1, false)]), "{sets:?}");
        assert!(sets.contains(&vec![(0, true), (1, true)]), "{sets:?}");
    }

    #[test]
    fn and_gives_unit_clauses() {
        let c = parse_circuit("INPUTS 2\ng1 = AND x1 x2\nOUTPUT g1\n").unwrap();
        let f = expand_to_cnf(&c).unwrap();
        let sets: Vec<Vec<(usize, bool)>> = f.clauses().iter().map(lits).collect();
        assert_eq!(sets.len(), 2, "{sets:?}");
        assert!(sets.contains(&vec![(0, false)]));
        assert!(sets.contains(&vec![(1, false)]));
    }

    #[test]
    fn constants_and_literals() {
        let c = parse_circuit("INPUTS 2\nOUTPUT const1\n").unwrap();
        assert_eq!(expand_to_cnf(&c).unwrap().clauses().len(), 0);
        let c = parse_circuit("INPUTS 2\nOUTPUT const0\n").unwrap();
        let f = expand_to_cnf(&c).unwrap();
        assert_eq!(f.clauses().len(), 1);
        assert_eq!(f.clauses()[0].width(), 0);
        let c = parse_circuit("INPUTS 3\nOUTPUT !x2\n").unwrap();
        let f = expand_to_cnf(&c).unwrap();
        assert_eq!(f.clauses().len(), 1);
        assert_eq!(lits(&f.clauses()[0]), vec![(1, true)]);
    }

    #[test]
    fn random_circuits_expand_equivalently_with_bounds() {
        for seed in 0..120u64 {
            let s = 1 + (seed % 15) as usize;
            let c = generate(GenSpec::Random { n: 12, s }, seed).unwrap();
            let f = expand_to_cnf(&c).unwrap();
            assert!(f.max_width() <= s + 1, "seed {seed}: width {} > r+1", f.max_width());
            assert!(
                f.clauses().len() <= 1 << s,
                "seed {seed}: {} clauses > 2^{s}",
                f.clauses().len()
            );
            let want = TruthTable::of_circuit(&c).unwrap();
            let got = f.truth_table(24).unwrap();
            assert_eq!(want, got, "seed {seed}: expansion is not equivalent");
        }
    }

    #[test]
    fn oversized_support_is_rejected() {
        let c = generate(GenSpec::Parity(18), 0).unwrap();
        assert!(matches!(
            expand_to_cnf(&c),
            Err(ReduceError::SupportTooLarge { .. })
        ));
    }
}
