//! Clauses, bounded-width CNFs, ORs of CNFs, and the multi-CNF DIMACS
//! dialect they are exchanged in.

use crate::error::ReduceError;
use circuit_core::{var_pattern, TruthTable};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;
use std::fmt::Write as _;

/// A disjunction of literals. Literals are `(variable, negated)`, kept
/// sorted by variable; no variable appears twice.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Clause {
    literals: Vec<(usize, bool)>,
}

impl Clause {
    pub fn new(mut literals: Vec<(usize, bool)>) -> Result<Clause, ReduceError> {
        literals.sort_unstable();
        for pair in literals.windows(2) {
            if pair[0].0 == pair[1].0 {
                return Err(ReduceError::InvalidParams(format!(
                    "variable {} appears twice in a clause",
                    pair[0].0 + 1
                )));
            }
        }
        Ok(Clause { literals })
    }

    /// The always-false clause.
    pub fn empty() -> Clause {
        Clause {
            literals: Vec::new(),
        }
    }

    pub fn literals(&self) -> &[(usize, bool)] {
        &self.literals
    }

    pub fn width(&self) -> usize {
        self.literals.len()
    }

    pub fn satisfied_by(&self, x: u64) -> bool {
        self.literals
            .iter()
            .any(|&(v, neg)| (x >> v & 1 == 1) != neg)
    }

    /// `lits ⊆ other.lits`, i.e. `self` subsumes `other`.
    pub fn subsumes(&self, other: &Clause) -> bool {
        self.literals.iter().all(|l| other.literals.contains(l))
    }

    fn table_word(&self, w: usize) -> u64 {
        let mut acc = 0u64;
        for &(v, neg) in &self.literals {
            let p = var_pattern(v, w);
            acc |= if neg { !p } else { p };
        }
        acc
    }
}

/// A CNF with a declared clause-width bound `k`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Kcnf {
    n: usize,
    k: usize,
    clauses: Vec<Clause>,
}

impl Kcnf {
    pub fn new(n: usize, k: usize, clauses: Vec<Clause>) -> Result<Kcnf, ReduceError> {
        for cl in &clauses {
            if cl.width() > k {
                return Err(ReduceError::InvalidParams(format!(
                    "clause of width {} exceeds declared bound {k}",
                    cl.width()
                )));
            }
            if let Some(&(v, _)) = cl.literals().last() {
                if v >= n {
                    return Err(ReduceError::InvalidParams(format!(
                        "variable x{} out of range (n = {n})",
                        v + 1
                    )));
                }
            }
        }
        Ok(Kcnf { n, k, clauses })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn clauses(&self) -> &[Clause] {
        &self.clauses
    }

    pub fn max_width(&self) -> usize {
        self.clauses.iter().map(Clause::width).max().unwrap_or(0)
    }

    pub fn satisfied_by(&self, x: u64) -> bool {
        self.clauses.iter().all(|c| c.satisfied_by(x))
    }

    pub fn truth_table(&self, budget: usize) -> Result<TruthTable, ReduceError> {
        TruthTable::check_budget(self.n, budget)?;
        let words = if self.n >= 6 { 1 << (self.n - 6) } else { 1 };
        let mut acc = vec![u64::MAX; words];
        for cl in &self.clauses {
            for (w, word) in acc.iter_mut().enumerate() {
                *word &= cl.table_word(w);
            }
        }
        Ok(TruthTable::from_words(self.n, acc))
    }

    /// Random `k`-CNF with `m` clauses of exactly `k` distinct variables.
    pub fn random(n: usize, k: usize, m: usize, seed: u64) -> Result<Kcnf, ReduceError> {
        if k > n {
            return Err(ReduceError::InvalidParams(format!(
                "clause width {k} exceeds variable count {n}"
            )));
        }
        let mut rng = ChaCha12Rng::seed_from_u64(seed);
        let mut clauses = Vec::with_capacity(m);
        let vars: Vec<usize> = (0..n).collect();
        for _ in 0..m {
            let mut picked = vars.clone();
            picked.shuffle(&mut rng);
            picked.truncate(k);
            let lits: Vec<(usize, bool)> = picked.into_iter().map(|v| (v, rng.gen())).collect();
            clauses.push(Clause::new(lits)?);
        }
        Kcnf::new(n, k, clauses)
    }
}

/// A disjunction of bounded CNFs: the depth-3 target form, with its
/// declared fan-in bounds.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct OrOfKcnf {
    pub n: usize,
    pub disjuncts: Vec<Kcnf>,
    /// Declared bound on the number of disjuncts, as a log₂ exponent.
    pub bound_p_log2: u32,
    /// Declared bound on clauses per disjunct.
    pub bound_q: u64,
    /// Declared bound on clause width.
    pub bound_r: usize,
    /// When set, no assignment satisfies two disjuncts.
    pub disjoint: bool,
}

impl OrOfKcnf {
    pub fn achieved_p(&self) -> usize {
        self.disjuncts.len()
    }

    pub fn achieved_q(&self) -> usize {
        self.disjuncts.iter().map(|d| d.clauses().len()).max().unwrap_or(0)
    }

    pub fn achieved_r(&self) -> usize {
        self.disjuncts.iter().map(Kcnf::max_width).max().unwrap_or(0)
    }

    pub fn bounds_ok(&self) -> bool {
        (self.achieved_p() as u128) <= (1u128 << self.bound_p_log2.min(127))
            && self.achieved_q() as u64 <= self.bound_q
            && self.achieved_r() <= self.bound_r
    }

    pub fn satisfied_by(&self, x: u64) -> bool {
        self.disjuncts.iter().any(|d| d.satisfied_by(x))
    }

    pub fn truth_table(&self, budget: usize) -> Result<TruthTable, ReduceError> {
        TruthTable::check_budget(self.n, budget)?;
        let mut acc = TruthTable::constant(self.n, false);
        for d in &self.disjuncts {
            acc = acc.or(&d.truth_table(budget)?);
        }
        Ok(acc)
    }

    /// Optimization pass: drop disjuncts no assignment satisfies (for
    /// example branches whose guard never takes the branched value). Off
    /// the default path so that disjunct counts mirror the branching
    /// recursion exactly.
    pub fn prune_empty(&self, budget: usize) -> Result<OrOfKcnf, ReduceError> {
        TruthTable::check_budget(self.n, budget)?;
        let mut kept = Vec::with_capacity(self.disjuncts.len());
        for d in &self.disjuncts {
            if d.truth_table(budget)?.count_ones() > 0 {
                kept.push(d.clone());
            }
        }
        Ok(OrOfKcnf {
            n: self.n,
            disjuncts: kept,
            ..self.clone()
        })
    }
}

fn lit_to_dimacs(v: usize, neg: bool) -> i64 {
    let l = (v + 1) as i64;
    if neg {
        -l
    } else {
        l
    }
}

/// Multi-CNF DIMACS dialect: `p mcnf <n> <#disjuncts>`, each disjunct headed
/// by `d <#clauses> <k>` followed by standard DIMACS clause lines.
pub fn write_mcnf(d: &OrOfKcnf) -> String {
    let mut s = String::new();
    writeln!(
        s,
        "c bounds p<=2^{} q<={} r<={} disjoint={}",
        d.bound_p_log2, d.bound_q, d.bound_r, d.disjoint as u8
    )
    .unwrap();
    writeln!(s, "p mcnf {} {}", d.n, d.disjuncts.len()).unwrap();
    for cnf in &d.disjuncts {
        writeln!(s, "d {} {}", cnf.clauses().len(), cnf.k()).unwrap();
        for cl in cnf.clauses() {
            for &(v, neg) in cl.literals() {
                write!(s, "{} ", lit_to_dimacs(v, neg)).unwrap();
            }
            writeln!(s, "0").unwrap();
        }
    }
    s
}

pub fn parse_mcnf(text: &str) -> Result<OrOfKcnf, ReduceError> {
    let err = |line: usize, msg: &str| ReduceError::Parse {
        line,
        msg: msg.to_string(),
    };
    let mut header: Option<(usize, usize)> = None;
    let mut bounds: Option<(u32, u64, usize, bool)> = None;
    let mut disjuncts: Vec<Kcnf> = Vec::new();
    let mut current: Option<(usize, usize, Vec<Clause>)> = None; // expected clauses, k, parsed

    let finish = |cur: &mut Option<(usize, usize, Vec<Clause>)>,
                      n: usize,
                      line: usize|
     -> Result<Option<Kcnf>, ReduceError> {
        match cur.take() {
            None => Ok(None),
            Some((expect, k, clauses)) => {
                if clauses.len() != expect {
                    return Err(err(line, "disjunct clause count mismatch"));
                }
                Ok(Some(Kcnf::new(n, k, clauses)?))
            }
        }
    };

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() {
            continue;
        }
        if let Some(rest) = line.strip_prefix("c ") {
            if let Some(spec) = rest.strip_prefix("bounds ") {
                let mut p = 0u32;
                let mut q = 0u64;
                let mut r = 0usize;
                let mut dis = false;
                for tok in spec.split_ascii_whitespace() {
                    if let Some(v) = tok.strip_prefix("p<=2^") {
                        p = v.parse().map_err(|_| err(line_no, "bad p bound"))?;
                    } else if let Some(v) = tok.strip_prefix("q<=") {
                        q = v.parse().map_err(|_| err(line_no, "bad q bound"))?;
                    } else if let Some(v) = tok.strip_prefix("r<=") {
                        r = v.parse().map_err(|_| err(line_no, "bad r bound"))?;
                    } else if let Some(v) = tok.strip_prefix("disjoint=") {
                        dis = v == "1";
                    }
                }
                bounds = Some((p, q, r, dis));
            }
            continue;
        }
        if line == "c" {
            continue;
        }
        let toks: Vec<&str> = line.split_ascii_whitespace().collect();
        match toks[0] {
            "p" => {
                if header.is_some() || toks.len() != 4 || toks[1] != "mcnf" {
                    return Err(err(line_no, "expected 'p mcnf <n> <#disjuncts>'"));
                }
                let n = toks[2].parse().map_err(|_| err(line_no, "bad n"))?;
                let t = toks[3].parse().map_err(|_| err(line_no, "bad disjunct count"))?;
                header = Some((n, t));
            }
            "d" => {
                let (n, _) = header.ok_or_else(|| err(line_no, "'d' before 'p mcnf' header"))?;
                if let Some(cnf) = finish(&mut current, n, line_no)? {
                    disjuncts.push(cnf);
                }
                if toks.len() != 3 {
                    return Err(err(line_no, "expected 'd <#clauses> <k>'"));
                }
                let c: usize = toks[1].parse().map_err(|_| err(line_no, "bad clause count"))?;
                let k: usize = toks[2].parse().map_err(|_| err(line_no, "bad width"))?;
                current = Some((c, k, Vec::new()));
            }
            _ => {
                let cur = current
                    .as_mut()
                    .ok_or_else(|| err(line_no, "clause line outside a disjunct"))?;
                let mut lits = Vec::new();
                let mut terminated = false;
                for tok in &toks {
                    let v: i64 = tok.parse().map_err(|_| err(line_no, "bad literal"))?;
                    if v == 0 {
                        terminated = true;
                        break;
                    }
                    lits.push(((v.unsigned_abs() as usize) - 1, v < 0));
                }
                if !terminated {
                    return Err(err(line_no, "clause line missing terminating 0"));
                }
                cur.2.push(Clause::new(lits)?);
            }
        }
    }
    let (n, t) = header.ok_or_else(|| err(1, "missing 'p mcnf' header"))?;
    let last_line = text.lines().count().max(1);
    if let Some(cnf) = finish(&mut current, n, last_line)? {
        disjuncts.push(cnf);
    }
    if disjuncts.len() != t {
        return Err(err(last_line, "disjunct count disagrees with header"));
    }
    let (bound_p_log2, bound_q, bound_r, disjoint) = bounds.unwrap_or_else(|| {
        let p = disjuncts.len().next_power_of_two().trailing_zeros();
        let q = disjuncts.iter().map(|d| d.clauses().len() as u64).max().unwrap_or(0);
        let r = disjuncts.iter().map(Kcnf::max_width).max().unwrap_or(0);
        (p, q, r, false)
    });
    Ok(OrOfKcnf {
        n,
        disjuncts,
        bound_p_log2,
        bound_q,
        bound_r,
        disjoint,
    })
}
