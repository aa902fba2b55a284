//! Correlation with low-degree GF(2) polynomials, in exact dyadic
//! arithmetic: every correlation is an integer over 2ⁿ.

use crate::error::PrfError;
use crate::poly::{monomial_table, monomials_up_to_degree, Gf2Poly};
use circuit_core::TruthTable;
use serde::{Deserialize, Serialize};

/// Budget on the number of monomials enumerated by
/// [`correlation_with_degree`] (the search walks `2^k` polynomials).
pub const MAX_ENUM_MONOMIALS: usize = 20;

/// Exact correlation value `numerator / 2^log2_denominator`.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct Correlation {
    pub numerator: u64,
    pub log2_denominator: u32,
}

impl Correlation {
    fn from_agreements(agree: u64, n: u32) -> Correlation {
        let total = 1u64 << n;
        Correlation {
            numerator: (2 * agree).abs_diff(total),
            log2_denominator: n,
        }
    }

    pub fn value(&self) -> f64 {
        self.numerator as f64 / (1u64 << self.log2_denominator) as f64
    }

    pub fn is_one(&self) -> bool {
        self.numerator == 1 << self.log2_denominator
    }

    /// Exact comparison with a fraction `p/q`.
    pub fn equals_fraction(&self, p: u64, q: u64) -> bool {
        self.numerator as u128 * q as u128 == p as u128 * (1u128 << self.log2_denominator)
    }

    /// Reduced numerator/denominator pair.
    pub fn reduced(&self) -> (u64, u64) {
        let mut num = self.numerator;
        let mut den = 1u64 << self.log2_denominator;
        if num == 0 {
            return (0, 1);
        }
        while num.is_multiple_of(2) && den.is_multiple_of(2) {
            num /= 2;
            den /= 2;
        }
        (num, den)
    }
}

/// `|Pr[f = g] − Pr[f ≠ g]|` over uniform inputs.
pub fn correlation(f: &TruthTable, g: &TruthTable) -> Result<Correlation, PrfError> {
    if f.n() != g.n() {
        return Err(PrfError::InvalidParams(format!(
            "dimension mismatch: {} vs {}",
            f.n(),
            g.n()
        )));
    }
    Ok(Correlation::from_agreements(f.agreements(g), f.n() as u32))
}

/// Exact maximum of `Cor(f, g)` over all polynomials `g` of degree ≤ `d`,
/// with a maximizing polynomial. Walks all `2^k` polynomials over the
/// canonical monomial list in Gray-code order, one monomial flip per step.
pub fn correlation_with_degree(
    f: &TruthTable,
    d: usize,
) -> Result<(Correlation, Gf2Poly), PrfError> {
    let n = f.n();
    let monos = monomials_up_to_degree(n, d);
    let k = monos.len();
    if k > MAX_ENUM_MONOMIALS {
        return Err(PrfError::BudgetExceeded {
            what: "polynomial enumeration",
            needed: k as u128,
            budget: MAX_ENUM_MONOMIALS as u128,
        });
    }
    let tables: Vec<TruthTable> = monos.iter().map(|&m| monomial_table(n, m)).collect();

    let mut current = TruthTable::constant(n, false);
    let mut subset: u64 = 0;
    let mut best = Correlation::from_agreements(f.agreements(&current), n as u32);
    let mut best_subset = 0u64;
    for i in 1u64..1 << k {
        let flip = i.trailing_zeros() as usize;
        current = current.xor(&tables[flip]);
        subset ^= 1 << flip;
        let cor = Correlation::from_agreements(f.agreements(&current), n as u32);
        if cor.numerator > best.numerator {
            best = cor;
            best_subset = subset;
        }
    }
    let witness = Gf2Poly::new(
        n,
        (0..k).filter(|&j| best_subset >> j & 1 == 1).map(|j| monos[j]).collect(),
    )?;
    Ok((best, witness))
}
