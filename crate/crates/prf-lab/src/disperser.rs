//! Dispersers for varieties: exhaustive checks at tiny scale, sampled
//! evidence otherwise, the correlation-to-disperser property, and the
//! random-function counting bound.

use crate::correlation::correlation_with_degree;
use crate::error::PrfError;
use crate::poly::{monomials_up_to_degree, Gf2Poly};
use circuit_core::TruthTable;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;
use serde::{Deserialize, Serialize};

/// Cap on enumerated varieties in exhaustive checks.
pub const MAX_VARIETIES: u128 = 1 << 21;

/// A variety presented by its defining polynomials.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct VarietyWitness {
    pub polynomials: Vec<String>,
    pub size: u64,
    /// The constant value the function takes on it.
    pub constant_value: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub enum Verdict {
    /// Exhaustively verified.
    Disperser,
    /// A witness variety refutes the property.
    NotDisperser,
    /// Sampling found nothing; not a proof.
    NoCounterexampleFound,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct DisperserReport {
    pub verdict: Verdict,
    pub d: usize,
    pub m: usize,
    pub s: u64,
    pub varieties_checked: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<VarietyWitness>,
}

fn roots_of(polys: &[&Gf2Poly], n: usize) -> TruthTable {
    let mut acc = TruthTable::constant(n, true);
    for p in polys {
        acc = acc.and(&p.truth_table().not());
    }
    acc
}

/// `Some(value)` when `f` is constant on the nonempty point set `set`.
fn constant_on(f: &TruthTable, set: &TruthTable) -> Option<bool> {
    let ones = f.and(set).count_ones();
    if ones == 0 {
        return Some(false);
    }
    if ones == set.count_ones() {
        return Some(true);
    }
    None
}

fn witness_from(polys: &[&Gf2Poly], size: u64, value: bool) -> VarietyWitness {
    VarietyWitness {
        polynomials: polys.iter().map(|p| p.to_text()).collect(),
        size,
        constant_value: value,
    }
}

/// Exhaustive disperser check over all (d, 1)-varieties.
pub fn is_disperser_exhaustive(
    f: &TruthTable,
    d: usize,
    s: u64,
) -> Result<DisperserReport, PrfError> {
    let n = f.n();
    let monos = monomials_up_to_degree(n, d);
    if monos.len() > 24 {
        return Err(PrfError::BudgetExceeded {
            what: "degree-d polynomial enumeration",
            needed: monos.len() as u128,
            budget: 24,
        });
    }
    let count = 1u128 << monos.len();
    if count > MAX_VARIETIES {
        return Err(PrfError::BudgetExceeded {
            what: "variety enumeration",
            needed: count,
            budget: MAX_VARIETIES,
        });
    }
    let mut checked = 0u64;
    for subset in 0..count {
        let poly = Gf2Poly::new(
            n,
            (0..monos.len())
                .filter(|&j| subset >> j & 1 == 1)
                .map(|j| monos[j])
                .collect(),
        )?;
        let roots = poly.truth_table().not();
        checked += 1;
        let size = roots.count_ones();
        if size <= s {
            continue;
        }
        if let Some(value) = constant_on(f, &roots) {
            return Ok(DisperserReport {
                verdict: Verdict::NotDisperser,
                d,
                m: 1,
                s,
                varieties_checked: checked,
                witness: Some(witness_from(&[&poly], size, value)),
            });
        }
    }
    Ok(DisperserReport {
        verdict: Verdict::Disperser,
        d,
        m: 1,
        s,
        varieties_checked: checked,
    witness: None,
    })
}

/// Check `f` against an explicit list of varieties, each given by its
/// defining polynomials.
pub fn is_disperser_on(
    f: &TruthTable,
    varieties: &[Vec<Gf2Poly>],
    s: u64,
) -> Result<DisperserReport, PrfError> {
    let mut d = 0;
    let mut m = 0;
    for (i, polys) in varieties.iter().enumerate() {
        m = m.max(polys.len());
        for p in polys {
            if p.n() != f.n() {
                return Err(PrfError::InvalidParams(format!(
                    "variety {i} is over {} variables, function over {}",
                    p.n(),
                    f.n()
                )));
            }
            d = d.max(p.degree());
        }
        let refs: Vec<&Gf2Poly> = polys.iter().collect();
        let roots = roots_of(&refs, f.n());
        let size = roots.count_ones();
        if size > s {
            if let Some(value) = constant_on(f, &roots) {
                return Ok(DisperserReport {
                    verdict: Verdict::NotDisperser,
                    d,
                    m,
                    s,
                    varieties_checked: (i + 1) as u64,
                    witness: Some(witness_from(&refs, size, value)),
                });
            }
        }
    }
    Ok(DisperserReport {
        verdict: Verdict::Disperser,
        d,
        m,
        s,
        varieties_checked: varieties.len() as u64,
        witness: None,
    })
}

/// Sampled disperser check: evidence only, never a proof.
pub fn is_disperser_sampled(
    f: &TruthTable,
    d: usize,
    m: usize,
    s: u64,
    samples: u64,
    seed: u64,
) -> Result<DisperserReport, PrfError> {
    let n = f.n();
    let monos = monomials_up_to_degree(n, d);
    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    for it in 0..samples {
        let polys: Vec<Gf2Poly> = (0..m)
            .map(|_| {
                let picked = monos
                    .iter()
                    .copied()
                    .filter(|_| rng.gen::<bool>())
                    .collect();
                Gf2Poly::new(n, picked)
            })
            .collect::<Result<_, _>>()?;
        let refs: Vec<&Gf2Poly> = polys.iter().collect();
        let roots = roots_of(&refs, n);
        let size = roots.count_ones();
        if size > s {
            if let Some(value) = constant_on(f, &roots) {
                return Ok(DisperserReport {
                    verdict: Verdict::NotDisperser,
                    d,
                    m,
                    s,
                    varieties_checked: it + 1,
                    witness: Some(witness_from(&refs, size, value)),
                });
            }
        }
    }
    Ok(DisperserReport {
        verdict: Verdict::NoCounterexampleFound,
        d,
        m,
        s,
        varieties_checked: samples,
        witness: None,
    })
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct FourierCheckReport {
    /// Exact `Cor(f, d)` as numerator over 2ⁿ.
    pub epsilon_numerator: u64,
    pub epsilon_log2_denominator: u32,
    /// `ε = 1` makes the claim empty.
    pub vacuous: bool,
    pub varieties_checked: u64,
    /// Varieties of size > ε·2ⁿ on which `f` is constant. The property is
    /// unconditional: any entry here is an implementation bug.
    pub violations: Vec<VarietyWitness>,
}

/// Verify, over all enumerable (d, m ≤ 2)-varieties, that `f` is
/// non-constant on every variety larger than `Cor(f, d)·2ⁿ`.
pub fn fourier_disperser_check(f: &TruthTable, d: usize) -> Result<FourierCheckReport, PrfError> {
    let n = f.n();
    if n > 5 || d > 2 {
        return Err(PrfError::BudgetExceeded {
            what: "fourier disperser check (needs n <= 5, d <= 2)",
            needed: n.max(d) as u128,
            budget: 5,
        });
    }
    let (eps, _) = correlation_with_degree(f, d)?;
    // |roots| > ε·2ⁿ compares exactly against the numerator.
    let threshold = eps.numerator;
    let monos = monomials_up_to_degree(n, d);
    let polys: Vec<Gf2Poly> = (0..1u64 << monos.len())
        .map(|subset| {
            Gf2Poly::new(
                n,
                (0..monos.len())
                    .filter(|&j| subset >> j & 1 == 1)
                    .map(|j| monos[j])
                    .collect(),
            )
        })
        .collect::<Result<_, _>>()?;
    let pairs = (polys.len() as u128) * (polys.len() as u128 + 1) / 2;
    if pairs > MAX_VARIETIES {
        return Err(PrfError::BudgetExceeded {
            what: "variety pair enumeration",
            needed: pairs,
            budget: MAX_VARIETIES,
        });
    }
    let tables: Vec<TruthTable> = polys.iter().map(|p| p.truth_table().not()).collect();
    let mut checked = 0u64;
    let mut violations = Vec::new();
    for i in 0..polys.len() {
        for j in i..polys.len() {
            let roots = if i == j {
                tables[i].clone()
            } else {
                tables[i].and(&tables[j])
            };
            checked += 1;
            let size = roots.count_ones();
            if size <= threshold {
                continue;
            }
            if let Some(value) = constant_on(f, &roots) {
                let refs: Vec<&Gf2Poly> = if i == j {
                    vec![&polys[i]]
                } else {
                    vec![&polys[i], &polys[j]]
                };
                violations.push(witness_from(&refs, size, value));
            }
        }
    }
    Ok(FourierCheckReport {
        epsilon_numerator: eps.numerator,
        epsilon_log2_denominator: eps.log2_denominator,
        vacuous: eps.is_one(),
        varieties_checked: checked,
        violations,
    })
}

#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct CountingBound {
    /// Exact monomial count Σ_{i≤d} C(n, i).
    pub k_exact: u64,
    /// The 2dn^d relaxation.
    pub k_relaxed: f64,
    /// log₂ of the bound on the number of non-dispersers, exact k.
    pub log2_count_exact: f64,
    pub log2_count_relaxed: f64,
    /// log₂ of the bound on the fraction of non-dispersers.
    pub log2_fraction_exact: f64,
    pub log2_fraction_relaxed: f64,
}

/// Counting bound for random functions: at most `2^{mk + 1 + 2ⁿ − s}`
/// functions are constant on some (d, m)-variety of size > s.
pub fn disperser_counting_bound(
    n: usize,
    d: usize,
    m: u64,
    s: u64,
) -> Result<CountingBound, PrfError> {
    if n == 0 || d == 0 || m == 0 {
        return Err(PrfError::InvalidParams(
            "counting bound needs positive n, d, m".into(),
        ));
    }
    if n > 40 {
        return Err(PrfError::InvalidParams("n too large for 2^n arithmetic".into()));
    }
    let mut k_exact = 0u64;
    let mut binom = 1u64;
    for i in 0..=d.min(n) {
        if i > 0 {
            binom = binom * (n as u64 - i as u64 + 1) / i as u64;
        }
        k_exact += binom;
    }
    let k_relaxed = 2.0 * d as f64 * (n as f64).powi(d as i32);
    let pow2n = (1u128 << n) as f64;
    let log2_count_exact = m as f64 * k_exact as f64 + 1.0 + pow2n - s as f64;
    let log2_count_relaxed = m as f64 * k_relaxed + 1.0 + pow2n - s as f64;
    Ok(CountingBound {
        k_exact,
        k_relaxed,
        log2_count_exact,
        log2_count_relaxed,
        log2_fraction_exact: log2_count_exact - pow2n,
        log2_fraction_relaxed: log2_count_relaxed - pow2n,
    })
}
