//! Truth-table-oracle tests for every reduction: equivalence, fan-in
//! bounds, trace decrements, and disjointness, on named families and
//! seeded random circuits.

use circuit_core::{generate, is_normalized, normalize, GenSpec, TruthTable};
use depth3_reduce::*;

const BUDGET: usize = 24;

fn random_normalized(n: usize, s: usize, seed: u64) -> circuit_core::Circuit {
    let c = generate(GenSpec::Random { n, s }, seed).unwrap();
    assert!(is_normalized(&c));
    c
}

#[test]
fn toy_reduce_leaves_formulas_alone() {
    let c = generate(GenSpec::Parity(6), 0).unwrap();
    let (or, trace) = toy_reduce(&c).unwrap();
    assert_eq!(or.formulas.len(), 1);
    assert_eq!(trace.steps.len(), 1);
    assert_eq!(trace.steps[0].case, CaseLabel::Base);
}

#[test]
fn toy_reduce_small_circuits_give_single_formula() {
    // Normalized circuits of size <= 3 are formulas already.
    for seed in 0..200u64 {
        let c = random_normalized(5, 1 + (seed % 3) as usize, seed);
        assert!(c.is_formula(), "seed {seed}");
        let (or, _) = toy_reduce(&c).unwrap();
        assert_eq!(or.formulas.len(), 1);
    }
}

#[test]
fn toy_reduce_random_circuits() {
    for seed in 0..60u64 {
        let c = random_normalized(10, 18, seed);
        let (or, trace) = toy_reduce(&c).unwrap();
        assert!(
            or.formulas.len() <= 1 << 6,
            "seed {seed}: {} formulas",
            or.formulas.len()
        );
        let limit = if c.is_formula() { c.size() } else { c.size() - 1 };
        for f in &or.formulas {
            assert!(f.is_formula(), "seed {seed}: branch is not a formula");
            assert!(f.size() <= limit, "seed {seed}: formula too big");
        }
        let want = TruthTable::of_circuit(&c).unwrap();
        assert_eq!(or.truth_table(BUDGET).unwrap(), want, "seed {seed}");
        trace.validate().unwrap_or_else(|e| panic!("seed {seed}: {e}"));
    }
}

#[test]
fn part1_base_case_single_gate() {
    let c = random_normalized(4, 1, 3);
    let (or, _) = reduce_part1(&c).unwrap();
    assert_eq!(or.branches.len(), 1);
    assert_eq!(or.branches[0].len(), 1);
    assert_eq!(or.branches[0][0].size(), 1);
}

#[test]
fn part1_parity5() {
    let c = generate(GenSpec::Parity(5), 0).unwrap();
    assert_eq!(c.size(), 4);
    let (or, trace) = reduce_part1(&c).unwrap();
    assert!(or.branches.len() <= 4, "p = {}", or.branches.len());
    assert!(or.achieved_q() <= 3, "q = {}", or.achieved_q());
    assert_eq!(or.achieved_r(), 1);
    let want = TruthTable::of_circuit(&c).unwrap();
    assert_eq!(or.truth_table(BUDGET).unwrap(), want);
    trace.validate().unwrap();
}

#[test]
fn part1_random_circuits() {
    for seed in 0..40u64 {
        let c = random_normalized(10, 16, seed);
        let (or, trace) = reduce_part1(&c).unwrap();
        assert!(or.branches.len() <= 1 << 8, "seed {seed}");
        assert_eq!(or.achieved_r().max(1), 1, "seed {seed}");
        let want = TruthTable::of_circuit(&c).unwrap();
        assert_eq!(or.truth_table(BUDGET).unwrap(), want, "seed {seed}");
        trace.validate().unwrap_or_else(|e| panic!("seed {seed}: {e}"));
    }
}

#[test]
fn part2_base_case_up_to_15_gates() {
    let c = generate(GenSpec::Parity(12), 0).unwrap();
    assert_eq!(c.size(), 11);
    let (or, trace) = reduce_part2(&c).unwrap();
    assert_eq!(or.branches.len(), 1);
    assert_eq!(or.branches[0].len(), 1);
    assert_eq!(trace.steps[0].case, CaseLabel::Base);
}

#[test]
fn part2_random_circuits() {
    for seed in 0..40u64 {
        let c = random_normalized(10, 24, seed);
        let (or, trace) = reduce_part2(&c).unwrap();
        assert!(
            or.branches.len() <= 1 << 7,
            "seed {seed}: p = {}",
            or.branches.len()
        );
        assert!(or.achieved_q() <= 8, "seed {seed}: q = {}", or.achieved_q());
        assert!(or.achieved_r() <= 15, "seed {seed}: r = {}", or.achieved_r());
        let want = TruthTable::of_circuit(&c).unwrap();
        assert_eq!(or.truth_table(BUDGET).unwrap(), want, "seed {seed}");
        trace.validate().unwrap_or_else(|e| panic!("seed {seed}: {e}"));
    }
}

#[test]
fn part2_exercises_every_case() {
    use std::collections::HashSet;
    let mut seen: HashSet<String> = HashSet::new();
    for seed in 0..400u64 {
        let c = random_normalized(10, 26, seed);
        let (_, trace) = reduce_part2(&c).unwrap();
        for step in &trace.steps {
            seen.insert(format!("{:?}", step.case));
        }
        if seen.len() >= 6 {
            break;
        }
    }
    for case in ["Case11", "Case12", "Case21", "Case221", "Case222"] {
        assert!(seen.contains(case), "case {case} never exercised: {seen:?}");
    }
}

/// Deep recursions: circuits up to size 60 chain many case steps. All five
/// cases must fire across the batch and every output stays exact.
#[test]
fn part2_deep_circuits_stay_exact() {
    let mut cases: std::collections::HashSet<String> = std::collections::HashSet::new();
    for seed in 0..25u64 {
        let n = 12 + (seed % 3) as usize;
        let s = 40 + (seed % 21) as usize;
        let c = random_normalized(n, s, 90_000 + seed);
        let (d, trace) = to_or_of_kcnf(&c, Part::Two).unwrap();
        trace.validate().unwrap_or_else(|e| panic!("seed {seed}: {e}"));
        for step in &trace.steps {
            cases.insert(format!("{:?}", step.case));
        }
        let report = verify_or_of_kcnf(&c, &d, BUDGET).unwrap();
        assert!(report.pass, "seed {seed} (n={n}, s={s}): {report:?}");
    }
    for case in ["Case11", "Case12", "Case21", "Case221", "Case222"] {
        assert!(cases.contains(case), "case {case} never fired: {cases:?}");
    }
}

#[test]
fn non_normalized_input_is_rejected() {
    let c = generate(GenSpec::RandomAny { n: 6, s: 12 }, 1).unwrap();
    assert_ne!(normalize(&c).0, c, "pick a seed whose circuit is not normal");
    assert!(matches!(toy_reduce(&c), Err(ReduceError::NotNormalized)));
    assert!(matches!(reduce_part1(&c), Err(ReduceError::NotNormalized)));
    assert!(matches!(reduce_part2(&c), Err(ReduceError::NotNormalized)));
}

#[test]
fn or_of_kcnf_parity3_part1() {
    let c = generate(GenSpec::Parity(3), 0).unwrap();
    assert_eq!(c.size(), 2);
    let (d, _) = to_or_of_kcnf(&c, Part::One).unwrap();
    assert!(d.disjuncts.len() <= 2, "p = {}", d.disjuncts.len());
    assert!(d.achieved_r() <= 2);
    let report = verify_or_of_kcnf(&c, &d, BUDGET).unwrap();
    assert!(report.pass, "{report:?}");
}

#[test]
fn or_of_kcnf_small_part2_is_single_cnf() {
    let c = random_normalized(8, 13, 11);
    let (d, _) = to_or_of_kcnf(&c, Part::Two).unwrap();
    assert_eq!(d.disjuncts.len(), 1);
    assert!(d.achieved_r() <= 14);
    let report = verify_or_of_kcnf(&c, &d, BUDGET).unwrap();
    assert!(report.pass, "{report:?}");
}

#[test]
fn or_of_kcnf_random_part2_with_disjointness() {
    for seed in 0..25u64 {
        let c = random_normalized(10, 24, seed);
        let (d, trace) = to_or_of_kcnf(&c, Part::Two).unwrap();
        assert!(d.disjuncts.len() <= 128, "seed {seed}");
        assert!(d.achieved_r() <= 16, "seed {seed}");
        assert!(d.disjoint);
        let report = verify_or_of_kcnf(&c, &d, BUDGET).unwrap();
        assert!(report.pass, "seed {seed}: {report:?}");
        assert_eq!(report.disjoint_ok, Some(true), "seed {seed}");
        trace.validate().unwrap();
    }
}

#[test]
fn or_of_kcnf_random_part1() {
    for seed in 0..25u64 {
        let c = random_normalized(9, 14, seed + 100);
        let (d, _) = to_or_of_kcnf(&c, Part::One).unwrap();
        assert!(d.achieved_r() <= 2, "seed {seed}");
        assert!(
            d.achieved_q() <= c.size() + 1,
            "seed {seed}: q = {} vs s = {}",
            d.achieved_q(),
            c.size()
        );
        let report = verify_or_of_kcnf(&c, &d, BUDGET).unwrap();
        assert!(report.pass, "seed {seed}: {report:?}");
    }
}

#[test]
fn verify_flags_corruption() {
    let c = generate(GenSpec::Parity(6), 0).unwrap();
    let (mut d, _) = to_or_of_kcnf(&c, Part::Two).unwrap();
    let report = verify_or_of_kcnf(&c, &d, BUDGET).unwrap();
    assert!(report.equivalent);
    // Corrupt one disjunct: drop a clause from the first non-empty CNF.
    let idx = d
        .disjuncts
        .iter()
        .position(|f| !f.clauses().is_empty())
        .unwrap();
    let mut clauses = d.disjuncts[idx].clauses().to_vec();
    clauses.pop();
    d.disjuncts[idx] = Kcnf::new(d.n, d.bound_r, clauses).unwrap();
    let report = verify_or_of_kcnf(&c, &d, BUDGET).unwrap();
    assert!(!report.equivalent);
    assert!(report.witness.is_some());
}

/// Any OR of k-CNFs equivalent to parity must have at least 2^{n/k - 1}
/// disjuncts; our own outputs respect that.
#[test]
fn parity_lower_bound_consistency() {
    for n in [6usize, 8, 10] {
        let c = generate(GenSpec::Parity(n), 0).unwrap();
        let (d1, _) = to_or_of_kcnf(&c, Part::One).unwrap();
        let report = verify_or_of_kcnf(&c, &d1, BUDGET).unwrap();
        assert!(report.pass);
        let k = 2u32;
        let floor = 2f64.powf(n as f64 / k as f64 - 1.0);
        assert!(
            d1.disjuncts.len() as f64 >= floor,
            "n = {n}: {} disjuncts below the parity floor {floor}",
            d1.disjuncts.len()
        );
        let (d2, _) = to_or_of_kcnf(&c, Part::Two).unwrap();
        let report = verify_or_of_kcnf(&c, &d2, BUDGET).unwrap();
        assert!(report.pass);
        let floor16 = 2f64.powf(n as f64 / 16.0 - 1.0);
        assert!(d2.disjuncts.len() as f64 >= floor16, "n = {n}");
    }
}

/// Disjoint branches partition the satisfying set exactly: the counting
/// step that turns branch-size bounds into disperser lower bounds.
#[test]
fn part2_branches_partition_the_ones() {
    for seed in 0..20u64 {
        let c = random_normalized(10, 22, seed + 700);
        let want = TruthTable::of_circuit(&c).unwrap();
        let (d, _) = to_or_of_kcnf(&c, Part::Two).unwrap();
        let per_branch: u64 = d
            .disjuncts
            .iter()
            .map(|f| f.truth_table(BUDGET).unwrap().count_ones())
            .sum();
        assert_eq!(
            per_branch,
            want.count_ones(),
            "seed {seed}: disjoint branches must partition f^-1(1)"
        );
        // Every conjunct has support <= 16, i.e. each branch is a variety
        // cut out by <= q polynomials of degree <= 16.
        assert!(d.achieved_r() <= 16);
    }
}

#[test]
fn pruning_preserves_the_function() {
    for seed in 0..10u64 {
        let c = random_normalized(9, 20, seed + 300);
        let (d, _) = to_or_of_kcnf(&c, Part::Two).unwrap();
        let pruned = d.prune_empty(BUDGET).unwrap();
        assert!(pruned.disjuncts.len() <= d.disjuncts.len());
        assert_eq!(
            pruned.truth_table(BUDGET).unwrap(),
            d.truth_table(BUDGET).unwrap(),
            "seed {seed}"
        );
        let report = verify_or_of_kcnf(&c, &pruned, BUDGET).unwrap();
        assert!(report.pass, "seed {seed}: {report:?}");
    }
}

#[test]
fn width_reduce_random_cnfs() {
    for seed in 0..30u64 {
        let f = Kcnf::random(12, 6, 50, seed).unwrap();
        let d = width_reduce(&f, 3).unwrap();
        assert!(d.achieved_r() <= 3, "seed {seed}");
        let want = f.truth_table(BUDGET).unwrap();
        assert_eq!(d.truth_table(BUDGET).unwrap(), want, "seed {seed}");
    }
}

#[test]
fn isolated_count_on_random_kcnfs_respects_ppz_bound() {
    for seed in 0..60u64 {
        let k = 3;
        let n = 10 + (seed % 6) as usize;
        let f = Kcnf::random(n, k, 4 * n, seed).unwrap();
        let count = count_isolated_cnf(&f, BUDGET).unwrap();
        let bound = isolated_bound(n, k);
        assert!(
            count as f64 <= bound,
            "seed {seed}: {count} isolated > 2^({n}(1-1/{k})) = {bound}"
        );
    }
}

#[test]
fn trace_json_round_trips() {
    let c = random_normalized(8, 18, 5);
    let (_, trace) = to_or_of_kcnf(&c, Part::Two).unwrap();
    let json = trace.to_json();
    let back: ReductionTrace = serde_json::from_str(&json).unwrap();
    assert_eq!(back.steps.len(), trace.steps.len());
    assert_eq!(back.initial_size, trace.initial_size);
    back.validate().unwrap();
}

mod proptests {
    use super::*;
    use proptest::prelude::*;

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]

        /// OR-of-output is equivalent to the input for all three reductions.
        #[test]
        fn reductions_preserve_semantics(seed in any::<u64>(), s in 4usize..20) {
            let c = random_normalized(8, s, seed);
            let want = TruthTable::of_circuit(&c).unwrap();
            let (toy, _) = toy_reduce(&c).unwrap();
            prop_assert_eq!(toy.truth_table(BUDGET).unwrap(), want.clone());
            let (p1, t1) = to_or_of_kcnf(&c, Part::One).unwrap();
            prop_assert_eq!(p1.truth_table(BUDGET).unwrap(), want.clone());
            prop_assert!(t1.validate().is_ok());
            let (p2, t2) = to_or_of_kcnf(&c, Part::Two).unwrap();
            prop_assert_eq!(p2.truth_table(BUDGET).unwrap(), want);
            prop_assert!(t2.validate().is_ok());
        }
    }
}
