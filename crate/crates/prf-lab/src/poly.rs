//! Multilinear polynomials over GF(2).
//!
//! A polynomial is a set of monomials, each a subset of the variables
//! (bitmask); the empty monomial is the constant 1. Text form:
//! `x1*x2 + x3 + 1`.

use crate::error::PrfError;
use circuit_core::TruthTable;

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Gf2Poly {
    n: usize,
    /// Sorted by (degree, mask); no duplicates.
    monomials: Vec<u64>,
}

/// Canonical monomial order: degree first, then mask value.
pub fn monomial_order(a: u64, b: u64) -> std::cmp::Ordering {
    (a.count_ones(), a).cmp(&(b.count_ones(), b))
}

impl Gf2Poly {
    pub fn new(n: usize, mut monomials: Vec<u64>) -> Result<Gf2Poly, PrfError> {
        if n > 63 {
            return Err(PrfError::InvalidParams("at most 63 variables".into()));
        }
        let mask = (1u64 << n) - 1;
        if monomials.iter().any(|&m| m & !mask != 0) {
            return Err(PrfError::InvalidParams(
                "monomial uses a variable out of range".into(),
            ));
        }
        monomials.sort_by(|&a, &b| monomial_order(a, b));
        monomials.dedup();
        Ok(Gf2Poly { n, monomials })
    }

    pub fn zero(n: usize) -> Gf2Poly {
        Gf2Poly {
            n,
            monomials: Vec::new(),
        }
    }

    pub fn one(n: usize) -> Gf2Poly {
        Gf2Poly {
            n,
            monomials: vec![0],
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn monomials(&self) -> &[u64] {
        &self.monomials
    }

    pub fn degree(&self) -> usize {
        self.monomials
            .iter()
            .map(|m| m.count_ones() as usize)
            .max()
            .unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.monomials.is_empty()
    }

    pub fn eval(&self, x: u64) -> bool {
        self.monomials
            .iter()
            .filter(|&&m| x & m == m)
            .count()
            & 1
            == 1
    }

    pub fn truth_table(&self) -> TruthTable {
        let mut acc = TruthTable::constant(self.n, false);
        for &m in &self.monomials {
            acc = acc.xor(&monomial_table(self.n, m));
        }
        acc
    }

    pub fn to_text(&self) -> String {
        if self.monomials.is_empty() {
            return "0".into();
        }
        self.monomials
            .iter()
            .map(|&m| {
                if m == 0 {
                    "1".to_string()
                } else {
                    (0..self.n)
                        .filter(|i| m >> i & 1 == 1)
                        .map(|i| format!("x{}", i + 1))
                        .collect::<Vec<_>>()
                        .join("*")
                }
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }

    pub fn parse(n: usize, text: &str) -> Result<Gf2Poly, PrfError> {
        let text = text.trim();
        if text == "0" {
            return Ok(Gf2Poly::zero(n));
        }
        let mut monomials = Vec::new();
        for term in text.split('+') {
            let term = term.trim();
            if term.is_empty() {
                return Err(PrfError::InvalidParams("empty polynomial term".into()));
            }
            if term == "1" {
                monomials.push(0);
                continue;
            }
            let mut mask = 0u64;
            for factor in term.split('*') {
                let factor = factor.trim();
                let idx: usize = factor
                    .strip_prefix('x')
                    .and_then(|s| s.parse().ok())
                    .ok_or_else(|| {
                        PrfError::InvalidParams(format!("bad factor '{factor}' in '{term}'"))
                    })?;
                if idx == 0 || idx > n {
                    return Err(PrfError::InvalidParams(format!(
                        "variable x{idx} out of range (n = {n})"
                    )));
                }
                mask |= 1 << (idx - 1);
            }
            monomials.push(mask);
        }
        // XOR semantics: a monomial appearing twice cancels.
        monomials.sort_by(|&a, &b| monomial_order(a, b));
        let mut kept = Vec::with_capacity(monomials.len());
        for m in monomials {
            if kept.last() == Some(&m) {
                kept.pop();
            } else {
                kept.push(m);
            }
        }
        Gf2Poly::new(n, kept)
    }
}

/// Truth table of a single monomial (AND of its variables).
pub fn monomial_table(n: usize, mono: u64) -> TruthTable {
    let mut acc = TruthTable::constant(n, true);
    for i in 0..n {
        if mono >> i & 1 == 1 {
            acc = acc.and(&TruthTable::of_var(n, i));
        }
    }
    acc
}

/// All monomials of degree at most `d` in canonical order.
pub fn monomials_up_to_degree(n: usize, d: usize) -> Vec<u64> {
    let mut out: Vec<u64> = (0..1u64 << n)
        .filter(|m| (m.count_ones() as usize) <= d)
        .collect();
    out.sort_by(|&a, &b| monomial_order(a, b));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_format_round_trip() {
        let p = Gf2Poly::parse(4, "x1*x2 + x3 + 1").unwrap();
        assert_eq!(p.degree(), 2);
        assert_eq!(p.to_text(), "1 + x3 + x1*x2");
        let q = Gf2Poly::parse(4, &p.to_text()).unwrap();
        assert_eq!(p, q);
        assert!(Gf2Poly::parse(2, "x5").is_err());
    }

    #[test]
    fn duplicate_terms_cancel() {
        let p = Gf2Poly::parse(3, "x1 + x1").unwrap();
        assert!(p.is_zero());
    }

    #[test]
    fn eval_matches_table() {
        let p = Gf2Poly::parse(4, "x1*x2 + x3*x4").unwrap();
        let t = p.truth_table();
        for x in 0..16u64 {
            assert_eq!(t.get(x as usize), p.eval(x));
        }
    }

    #[test]
    fn monomial_count_formula() {
        // 1 + n monomials of degree <= 1.
        assert_eq!(monomials_up_to_degree(4, 1).len(), 5);
        assert_eq!(monomials_up_to_degree(5, 2).len(), 1 + 5 + 10);
    }
}
