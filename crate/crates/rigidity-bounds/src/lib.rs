//! Rigidity bound evaluators and an exact rigidity search at desk scale:
//! binary entropy, the code-based rigidity lower bound with its entropy
//! maximization, the Zyablov rate, the random-matrix rigidity formula, and
//! exhaustive `R_M(r)` on tiny matrices.

mod error;
mod exact;

pub use error::BoundsError;
pub use exact::{rigidity_exact, RigidityWitness, EXACT_BUDGET_BITS};

use linear_gf2::Gf2Matrix;
use serde::{Deserialize, Serialize};

/// Binary entropy `H(x) = −x·log₂x − (1−x)·log₂(1−x)`, with `H(0) = H(1) = 0`
/// by continuity.
pub fn binary_entropy(x: f64) -> Result<f64, BoundsError> {
    if !(0.0..=1.0).contains(&x) || x.is_nan() {
        return Err(BoundsError::InvalidParams(format!(
            "entropy argument {x} outside [0, 1]"
        )));
    }
    if x == 0.0 || x == 1.0 {
        return Ok(0.0);
    }
    Ok(-x * x.log2() - (1.0 - x) * (1.0 - x).log2())
}

/// Deterministic maximizer: a uniform grid scan followed by golden-section
/// refinement around the best cell.
fn grid_golden_max(
    lo: f64,
    hi: f64,
    grid: usize,
    tol: f64,
    f: impl Fn(f64) -> f64,
) -> (f64, f64) {
    let step = (hi - lo) / grid as f64;
    let mut best_x = lo;
    let mut best_v = f64::NEG_INFINITY;
    for i in 0..=grid {
        let x = lo + step * i as f64;
        let v = f(x);
        if v > best_v {
            best_v = v;
            best_x = x;
        }
    }
    let mut a = (best_x - step).max(lo);
    let mut b = (best_x + step).min(hi);
    let phi = (5f64.sqrt() - 1.0) / 2.0;
    let mut c = b - phi * (b - a);
    let mut d = a + phi * (b - a);
    let mut fc = f(c);
    let mut fd = f(d);
    while b - a > tol {
        if fc >= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - phi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + phi * (b - a);
            fd = f(d);
        }
    }
    let x = 0.5 * (a + b);
    (x, f(x))
}

/// Code parameters: relative distance and rate.
#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct CodeParams {
    pub delta: f64,
    pub rate: f64,
}

impl CodeParams {
    pub fn new(delta: f64, rate: f64) -> Result<CodeParams, BoundsError> {
        if !(delta > 0.0 && delta < 1.0 && rate > 0.0 && rate < 1.0) {
            return Err(BoundsError::InvalidParams(format!(
                "need 0 < delta, rate < 1; got delta={delta}, rate={rate}"
            )));
        }
        Ok(CodeParams { delta, rate })
    }
}

#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct CodeRigidityBound {
    pub alpha_star: f64,
    /// Leading-term rank fraction: the matrix is rigid (R > 16) for ranks up
    /// to `r_over_n · n`, with the o(n) term dropped.
    pub r_over_n: f64,
    /// Set when the entropy argument exceeds 1 for every α.
    pub vacuous: bool,
}

/// Rank fraction below which a generator matrix of a (δ, R) code stays
/// 16-rigid: `max_α α·H(δ(1−α) / (2α(1−α)R + 32α))`, entropy argument
/// clamped to [0, 1/2].
pub fn code_rigidity_bound(p: CodeParams) -> Result<CodeRigidityBound, BoundsError> {
    let CodeParams { delta, rate } = p;
    let arg = |alpha: f64| delta * (1.0 - alpha) / (2.0 * alpha * (1.0 - alpha) * rate + 32.0 * alpha);
    let value = |alpha: f64| -> f64 {
        if !(0.0..1.0).contains(&alpha) || alpha == 0.0 {
            return f64::NEG_INFINITY;
        }
        let a = arg(alpha);
        if a > 1.0 {
            return f64::NEG_INFINITY;
        }
        alpha * binary_entropy(a.min(0.5)).expect("argument clamped into domain")
    };
    let (alpha_star, best) = grid_golden_max(0.0, 1.0, 10_000, 1e-9, value);
    if best == f64::NEG_INFINITY {
        return Ok(CodeRigidityBound {
            alpha_star: f64::NAN,
            r_over_n: 0.0,
            vacuous: true,
        });
    }
    Ok(CodeRigidityBound {
        alpha_star,
        r_over_n: best,
        vacuous: false,
    })
}

#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct ZyablovRate {
    pub mu_star: f64,
    pub rate: f64,
}

/// Zyablov rate/distance trade-off: `R = max_{δ≤μ≤1/2} (1−H(μ))(1−δ/μ)`.
pub fn zyablov_rate(delta: f64) -> Result<ZyablovRate, BoundsError> {
    if delta <= 0.0 || delta.is_nan() {
        return Err(BoundsError::InvalidParams(format!(
            "relative distance must be positive, got {delta}"
        )));
    }
    if delta >= 0.5 {
        return Ok(ZyablovRate {
            mu_star: 0.5,
            rate: 0.0,
        });
    }
    let f = |mu: f64| {
        (1.0 - binary_entropy(mu).expect("mu within [0,1]")) * (1.0 - delta / mu)
    };
    let (mu_star, rate) = grid_golden_max(delta, 0.5, 10_000, 1e-12, f);
    Ok(ZyablovRate { mu_star, rate })
}

#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct ValiantBound {
    pub value: f64,
    pub applicable: bool,
    pub r_limit: f64,
}

/// Random-matrix rigidity: `R(r) ≥ ((n−r)² − 2n − log n) / (n·log(2n²))`
/// for `r < n − √(2n + log n)`.
pub fn valiant_random_rigidity_bound(n: f64, r: f64) -> Result<ValiantBound, BoundsError> {
    if n < 2.0 || r < 0.0 {
        return Err(BoundsError::InvalidParams(format!(
            "need n >= 2 and r >= 0, got n={n}, r={r}"
        )));
    }
    let r_limit = n - (2.0 * n + n.log2()).sqrt();
    let applicable = r < r_limit;
    let value = ((n - r).powi(2) - 2.0 * n - n.log2()) / (n * (2.0 * n * n).log2());
    Ok(ValiantBound {
        value,
        applicable,
        r_limit,
    })
}

/// The specialization `r = n − 6·√(n·log n)` under which a random matrix
/// stays 16-rigid.
pub fn valiant_specialization_rank(n: f64) -> f64 {
    n - 6.0 * (n * n.log2()).sqrt()
}

/// Upper triangular 0/1 matrix: entry `(i, j) = 1` iff `j ≥ i`.
pub fn triangular_matrix(n: usize) -> Result<Gf2Matrix, BoundsError> {
    if n == 0 || n > 64 {
        return Err(BoundsError::InvalidParams(format!(
            "triangular matrix needs 1 <= n <= 64, got {n}"
        )));
    }
    Ok(Gf2Matrix::upper_triangular(n))
}

/// Whether `1/value` rounds to the given integer denominator, i.e. the
/// computed fraction matches a published "r > n/k" constant at its printed
/// precision.
pub fn matches_reciprocal(value: f64, denominator: f64) -> bool {
    value > 0.0 && (1.0 / value - denominator).abs() <= 0.5
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn entropy_anchor_points() {
        assert_eq!(binary_entropy(0.5).unwrap(), 1.0);
        assert_eq!(binary_entropy(0.0).unwrap(), 0.0);
        assert_eq!(binary_entropy(1.0).unwrap(), 0.0);
        assert!((binary_entropy(0.11).unwrap() - 0.4999).abs() < 1e-4);
        for x in [0.1, 0.23, 0.42] {
            let h = binary_entropy(x).unwrap();
            let h2 = binary_entropy(1.0 - x).unwrap();
            assert!((h - h2).abs() < 1e-12, "H symmetric");
        }
        assert!(binary_entropy(-0.1).is_err());
        assert!(binary_entropy(1.1).is_err());
    }

    #[test]
    fn justesen_parameters_reach_one_sixty_fourth() {
        let b = code_rigidity_bound(CodeParams::new(0.077, 0.15).unwrap()).unwrap();
        assert!(!b.vacuous);
        assert!(
            (b.alpha_star - 0.182).abs() <= 0.01,
            "alpha* = {}",
            b.alpha_star
        );
        assert!(matches_reciprocal(b.r_over_n, 64.0), "r/n = {}", b.r_over_n);
    }

    #[test]
    fn zyablov_code_reaches_one_fifteenth() {
        let z = zyablov_rate(0.49).unwrap();
        assert!((z.mu_star - 0.493).abs() <= 0.005, "mu* = {}", z.mu_star);
        assert!(
            z.rate >= 4e-7 && z.rate <= 1.6e-6,
            "rate = {}",
            z.rate
        );
        let b = code_rigidity_bound(CodeParams::new(0.49, z.rate).unwrap()).unwrap();
        assert!((b.alpha_star - 0.252).abs() <= 0.01, "alpha* = {}", b.alpha_star);
        assert!(matches_reciprocal(b.r_over_n, 15.0), "r/n = {}", b.r_over_n);
    }

    #[test]
    fn tiny_distance_gives_vanishing_bound() {
        let b = code_rigidity_bound(CodeParams::new(1e-9, 0.5).unwrap()).unwrap();
        assert!(b.r_over_n < 1e-6);
    }

    #[test]
    fn zyablov_rate_vanishes_at_half() {
        assert_eq!(zyablov_rate(0.5).unwrap().rate, 0.0);
        let near = zyablov_rate(0.4999).unwrap();
        assert!(near.rate < 1e-9);
    }

    #[test]
    fn zyablov_against_dense_grid_oracle() {
        let delta = 0.1;
        let z = zyablov_rate(delta).unwrap();
        let mut best = 0.0f64;
        let grid = 2_000_000;
        for i in 0..=grid {
            let mu = delta + (0.5 - delta) * i as f64 / grid as f64;
            let v = (1.0 - binary_entropy(mu).unwrap()) * (1.0 - delta / mu);
            best = best.max(v);
        }
        assert!((z.rate - best).abs() < 1e-6, "{} vs {best}", z.rate);
    }

    #[test]
    fn valiant_formula_and_specialization() {
        let n = 1e6;
        let r = valiant_specialization_rank(n);
        let b = valiant_random_rigidity_bound(n, r).unwrap();
        assert!(b.applicable);
        assert!(b.value > 16.0, "bound = {}", b.value);
        // At the applicability boundary the numerator crosses zero.
        let edge = valiant_random_rigidity_bound(n, b.r_limit).unwrap();
        assert!(!edge.applicable);
        assert!(edge.value.abs() < 1e-3);
    }

    #[test]
    fn valiant_value_against_restructured_arithmetic() {
        let (n, r) = (1e4, 5000.0);
        let b = valiant_random_rigidity_bound(n, r).unwrap();
        // Same quantity with the algebra rearranged.
        let num = (n - r) * (n - r) - 2.0 * n - n.ln() / 2f64.ln();
        let den = n * (1.0 + 2.0 * n.ln() / 2f64.ln());
        assert!((b.value - num / den).abs() < 1e-9);
    }
}
