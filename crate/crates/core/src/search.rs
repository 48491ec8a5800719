//! Exploration beyond the fixed witnesses.
//!
//! [`optimize_c`] maximizes the certified `Qₘ` quotient over the parameter
//! `c`; its result is a certified lower bound. [`heuristic_witness_search`]
//! perturbs free coefficients and divides by a *numerical* sup-norm estimate,
//! which can only underestimate the norm, so its quotients may overshoot the
//! true constant and are never certified.

use std::collections::BTreeMap;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::bounds::certified_quotient;
use crate::error::{Error, Result};
use crate::exponents::{exponent_for, hl_exponent, rational_to_f64, ExtendedExponent};
use crate::poly::{witness_qm, HomogeneousPolynomial, MultiIndex};
use crate::supnorm::{supnorm_search, OptimizerConfig, WitnessFamily};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SearchConfig {
    pub c_min: f64,
    pub c_max: f64,
    pub grid_points: usize,
    /// Golden-section steps for [`optimize_c`]; proposals for
    /// [`heuristic_witness_search`].
    pub refine_iterations: usize,
    pub seed: u64,
    pub coefficient_count_limit: usize,
    /// Inner sup-norm search used by the heuristic mode.
    pub optimizer: OptimizerConfig,
}

impl Default for SearchConfig {
    fn default() -> Self {
        Self {
            c_min: 0.0,
            c_max: 100.0,
            grid_points: 512,
            refine_iterations: 60,
            seed: 0,
            coefficient_count_limit: 8,
            optimizer: OptimizerConfig { starts: 16, max_iterations: 2000, ..OptimizerConfig::default() },
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SearchResult {
    pub best_value: f64,
    /// True only for values produced by [`certified_quotient`].
    pub certified: bool,
    pub witness: HomogeneousPolynomial,
    pub parameters: BTreeMap<String, f64>,
}

/// Grid scan of the certified `Qₘ(c)` quotient over `[c_min, c_max]`
/// (endpoints included), then golden-section refinement inside the cells
/// adjacent to the best grid point.
pub fn optimize_c(m: u32, p: ExtendedExponent, config: &SearchConfig) -> Result<SearchResult> {
    if !(config.c_min.is_finite() && config.c_max.is_finite() && config.c_min < config.c_max) {
        return Err(Error::InvalidConfig(format!(
            "need finite c_min < c_max, got [{}, {}]",
            config.c_min, config.c_max
        )));
    }
    if config.grid_points == 0 || config.refine_iterations == 0 {
        return Err(Error::InvalidConfig("grid_points and refine_iterations must be positive".into()));
    }
    if p.is_infinite() {
        return Err(Error::Domain("optimize_c needs finite p".into()));
    }
    hl_exponent(m, p)?;

    let quotient = |c: f64| -> Result<f64> {
        Ok(certified_quotient(&WitnessFamily::Qm { m, c }, p)?.value)
    };

    let points = config.grid_points.max(2);
    let step = (config.c_max - config.c_min) / (points - 1) as f64;
    let grid: Vec<f64> = (0..points)
        .map(|i| if i + 1 == points { config.c_max } else { config.c_min + step * i as f64 })
        .collect();
    let mut best = (grid[0], quotient(grid[0])?);
    let mut best_index = 0;
    for (i, &c) in grid.iter().enumerate().skip(1) {
        let v = quotient(c)?;
        if v > best.1 {
            best = (c, v);
            best_index = i;
        }
    }

    let lo = grid[best_index.saturating_sub(1)];
    let hi = grid[(best_index + 1).min(points - 1)];
    let refined = golden_section_max(|c| quotient(c).unwrap_or(f64::NEG_INFINITY), lo, hi, config.refine_iterations);
    // Neighbours are re-checked so a non-unimodal cell cannot lose the grid optimum.
    for (c, v) in [refined, (lo, quotient(lo)?), (hi, quotient(hi)?)] {
        if v > best.1 {
            best = (c, v);
        }
    }

    let (c, value) = best;
    let mut parameters = BTreeMap::new();
    parameters.insert("c".to_string(), c);
    Ok(SearchResult { best_value: value, certified: true, witness: witness_qm(m, c)?, parameters })
}

/// Golden-section search for a maximum of `f` on `[a, b]`. Returns `(x, f(x))`.
fn golden_section_max(f: impl Fn(f64) -> f64, mut a: f64, mut b: f64, iterations: usize) -> (f64, f64) {
    const INV_PHI: f64 = 0.618_033_988_749_894_8;
    let mut x1 = b - INV_PHI * (b - a);
    let mut x2 = a + INV_PHI * (b - a);
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    for _ in 0..iterations {
        if f1 >= f2 {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - INV_PHI * (b - a);
            f1 = f(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + INV_PHI * (b - a);
            f2 = f(x2);
        }
    }
    if f1 >= f2 {
        (x1, f1)
    } else {
        (x2, f2)
    }
}

/// `‖a‖_ρ / supnorm_search(P)`. Not a certified bound: the denominator is a
/// lower estimate of the true norm.
pub fn estimated_quotient(
    poly: &HomogeneousPolynomial,
    p: ExtendedExponent,
    optimizer: &OptimizerConfig,
) -> Result<f64> {
    let rho = rational_to_f64(&exponent_for(poly.degree(), p)?);
    let norm = supnorm_search(poly, p, optimizer)?.value;
    if norm <= 0.0 {
        return Err(Error::NonFinite("sup-norm estimate is zero".into()));
    }
    Ok(poly.coefficient_norm(rho)? / norm)
}

/// Random-perturbation ascent of [`estimated_quotient`] over the
/// coefficients of an `m`-homogeneous polynomial in `n` variables.
///
/// Each proposal either perturbs an existing coefficient or introduces a new
/// monomial (while under `coefficient_count_limit`), by a complex Gaussian of
/// the current scale. Rejections shrink the scale by 0.9. With no `start`,
/// the search begins from `z₁⋯zₘ` when `n ≥ m`, else from random terms.
/// The result is always uncertified.
pub fn heuristic_witness_search(
    n: usize,
    m: u32,
    p: ExtendedExponent,
    config: &SearchConfig,
    start: Option<&HomogeneousPolynomial>,
) -> Result<SearchResult> {
    if n < 2 || m < 2 {
        return Err(Error::Domain(format!("need n, m >= 2, got n = {n}, m = {m}")));
    }
    if config.coefficient_count_limit == 0 {
        return Err(Error::InvalidConfig("coefficient_count_limit must be positive".into()));
    }
    exponent_for(m, p)?;
    config.optimizer.validate()?;

    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut current = match start {
        Some(s) => {
            if s.dimension() != n || s.degree() != m {
                return Err(Error::DimensionMismatch { expected: n, got: s.dimension() });
            }
            if s.len() > config.coefficient_count_limit {
                return Err(Error::InvalidConfig("start polynomial exceeds the term limit".into()));
            }
            s.clone()
        }
        None => default_start(n, m, config.coefficient_count_limit, &mut rng)?,
    };
    if current.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let mut value = estimated_quotient(&current, p, &config.optimizer)?;
    let mut scale = 0.5
        * current
            .terms()
            .map(|(_, c)| c.norm())
            .fold(0.0, f64::max);
    let mut accepted = 0usize;

    for _ in 0..config.refine_iterations {
        let mut terms: BTreeMap<MultiIndex, Complex64> =
            current.terms().map(|(a, c)| (a.clone(), *c)).collect();
        let kick = Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal)) * scale;
        let grow = terms.len() < config.coefficient_count_limit && rng.random_bool(0.5);
        let alpha = if grow {
            random_monomial(n, m, &mut rng)
        } else {
            let k = rng.random_range(0..terms.len());
            terms.keys().nth(k).expect("index in range").clone()
        };
        *terms.entry(alpha).or_default() += kick;

        let proposal = HomogeneousPolynomial::new(n, m, terms)?;
        let candidate = if proposal.is_zero() {
            None
        } else {
            estimated_quotient(&proposal, p, &config.optimizer).ok()
        };
        match candidate {
            Some(v) if v > value => {
                current = proposal;
                value = v;
                accepted += 1;
            }
            _ => scale *= 0.9,
        }
    }

    let mut parameters = BTreeMap::new();
    parameters.insert("accepted".to_string(), accepted as f64);
    parameters.insert("proposals".to_string(), config.refine_iterations as f64);
    parameters.insert("rho".to_string(), rational_to_f64(&exponent_for(m, p)?));
    Ok(SearchResult { best_value: value, certified: false, witness: current, parameters })
}

/// Uniform choice of variable for each of the `m` degree units.
fn random_monomial(n: usize, m: u32, rng: &mut ChaCha8Rng) -> MultiIndex {
    let mut alpha = vec![0u32; n];
    for _ in 0..m {
        alpha[rng.random_range(0..n)] += 1;
    }
    MultiIndex::new(alpha)
}

fn default_start(n: usize, m: u32, limit: usize, rng: &mut ChaCha8Rng) -> Result<HomogeneousPolynomial> {
    if n >= m as usize {
        let alpha: Vec<u32> = (0..n).map(|j| u32::from(j < m as usize)).collect();
        return HomogeneousPolynomial::new(n, m, [(alpha, Complex64::new(1.0, 0.0))]);
    }
    let mut terms = BTreeMap::new();
    for _ in 0..limit.min(3) {
        let c = Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal));
        terms.insert(random_monomial(n, m, rng), c);
    }
    HomogeneousPolynomial::new(n, m, terms)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bounds::{lower_bound_777, lower_bound_main, threshold_c};
    use crate::poly::witness_pm;

    fn p(s: &str) -> ExtendedExponent {
        s.parse().unwrap()
    }

    #[test]
    fn optimize_c_dominates_fixed_c() {
        let pp = p("8");
        let res = optimize_c(4, pp, &SearchConfig::default()).unwrap();
        assert!(res.certified);
        let t = threshold_c(4, pp).unwrap();
        for eps in [0.01, 0.5, 1.0, 10.0, 50.0, 100.0 - t] {
            let fixed = lower_bound_777(4, pp, eps).unwrap().value;
            // the two evaluation routes agree to rounding
            assert!(res.best_value >= fixed * (1.0 - 1e-12), "eps={eps} {} < {fixed}", res.best_value);
        }
        assert!(res.best_value < lower_bound_main(4, pp).unwrap().value);
        let c = res.parameters["c"];
        let again = certified_quotient(&WitnessFamily::Qm { m: 4, c }, pp).unwrap().value;
        assert!((again - res.best_value).abs() <= 1e-12);
    }

    #[test]
    fn optimize_c_errors() {
        let cfg = SearchConfig { c_min: 1.0, c_max: 1.0, ..SearchConfig::default() };
        assert!(matches!(optimize_c(4, p("8"), &cfg), Err(Error::InvalidConfig(_))));
        assert!(optimize_c(4, p("7"), &SearchConfig::default()).is_err());
        assert!(optimize_c(1, p("8"), &SearchConfig::default()).is_err());
        assert!(optimize_c(4, p("inf"), &SearchConfig::default()).is_err());
    }

    #[test]
    fn golden_section_finds_parabola_peak() {
        let (x, fx) = golden_section_max(|x| -(x - 0.3) * (x - 0.3), -1.0, 2.0, 80);
        assert!((x - 0.3).abs() < 1e-7);
        assert!(fx <= 0.0 && fx > -1e-14);
    }

    fn quick() -> SearchConfig {
        SearchConfig {
            refine_iterations: 10,
            optimizer: OptimizerConfig { starts: 8, max_iterations: 500, ..OptimizerConfig::default() },
            ..SearchConfig::default()
        }
    }

    #[test]
    fn heuristic_does_not_regress_from_start() {
        let start = witness_pm(2).unwrap();
        let res = heuristic_witness_search(2, 2, p("4"), &quick(), Some(&start)).unwrap();
        assert!(!res.certified);
        assert!(res.best_value >= 2f64.sqrt() - 1e-6);
    }

    #[test]
    fn heuristic_zero_iterations_is_start_quotient() {
        let start = witness_pm(2).unwrap();
        let cfg = SearchConfig { refine_iterations: 0, ..quick() };
        let res = heuristic_witness_search(2, 2, p("4"), &cfg, Some(&start)).unwrap();
        assert_eq!(res.witness, start);
        let q = estimated_quotient(&start, p("4"), &cfg.optimizer).unwrap();
        assert_eq!(res.best_value, q);
    }

    #[test]
    fn heuristic_is_deterministic() {
        let a = heuristic_witness_search(3, 2, p("5"), &quick(), None).unwrap();
        let b = heuristic_witness_search(3, 2, p("5"), &quick(), None).unwrap();
        assert_eq!(a, b);
        assert!(a.witness.len() <= quick().coefficient_count_limit);
    }

    #[test]
    fn heuristic_errors() {
        assert!(heuristic_witness_search(1, 2, p("4"), &quick(), None).is_err());
        assert!(heuristic_witness_search(2, 2, p("2"), &quick(), None).is_err());
        let wrong = witness_pm(3).unwrap();
        assert!(heuristic_witness_search(2, 2, p("4"), &quick(), Some(&wrong)).is_err());
    }
}
