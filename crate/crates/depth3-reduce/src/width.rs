//! Width reduction for CNFs by clause branching.
//!
//! Branching on the first `k` literals of a too-wide clause: either one of
//! them is true (the clause may be shortened to just those literals), or
//! all are false (unit facts recording that are added and propagated
//! through every clause). The two cases are mutually exclusive, so the
//! resulting OR of k-CNFs is disjoint. Only the width bound and equivalence
//! are asserted; per-disjunct clause counts are reported, not promised.

use crate::cnf::{Clause, Kcnf, OrOfKcnf};
use crate::error::ReduceError;

pub fn width_reduce(f: &Kcnf, k: usize) -> Result<OrOfKcnf, ReduceError> {
    if k < 2 {
        return Err(ReduceError::InvalidParams(
            "width reduction needs a target width of at least 2".into(),
        ));
    }
    let mut leaves = Vec::new();
    width_rec(f.clauses().to_vec(), k, &mut leaves)?;
    let bound_q = leaves
        .iter()
        .map(|c: &Vec<Clause>| c.len() as u64)
        .max()
        .unwrap_or(0);
    let disjuncts = leaves
        .into_iter()
        .map(|clauses| Kcnf::new(f.n(), k, clauses))
        .collect::<Result<Vec<_>, _>>()?;
    let bound_p_log2 = disjuncts.len().next_power_of_two().trailing_zeros();
    Ok(OrOfKcnf {
        n: f.n(),
        disjuncts,
        bound_p_log2,
        bound_q,
        bound_r: k,
        disjoint: true,
    })
}

fn width_rec(
    clauses: Vec<Clause>,
    k: usize,
    out: &mut Vec<Vec<Clause>>,
) -> Result<(), ReduceError> {
    let wide = clauses.iter().position(|c| c.width() > k);
    let Some(idx) = wide else {
        out.push(clauses);
        return Ok(());
    };
    let front: Vec<(usize, bool)> = clauses[idx].literals()[..k].to_vec();

    // Branch 1: some literal among the front is true; the wide clause
    // weakens to exactly those k literals.
    let mut some_true = clauses.clone();
    some_true[idx] = Clause::new(front.clone())?;
    width_rec(some_true, k, out)?;

    // Branch 2: all front literals are false. Record each as a unit clause
    // and propagate: clauses containing a front literal lose it; clauses
    // containing its negation are satisfied and disappear.
    let mut all_false: Vec<Clause> = Vec::with_capacity(clauses.len() + k);
    for &(v, neg) in &front {
        all_false.push(Clause::new(vec![(v, !neg)])?);
    }
    'clause: for cl in &clauses {
        let mut lits = Vec::with_capacity(cl.width());
        for &(v, neg) in cl.literals() {
            match front.iter().find(|&&(fv, _)| fv == v) {
                Some(&(_, fneg)) if fneg == neg => {} // literal is false: drop
                Some(_) => continue 'clause,          // negation is true: clause satisfied
                None => lits.push((v, neg)),
            }
        }
        all_false.push(Clause::new(lits)?);
    }
    width_rec(all_false, k, out)
}
