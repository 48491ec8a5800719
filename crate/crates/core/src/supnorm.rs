//! Sup-norms `‖P‖ = sup_{‖z‖_p ≤ 1} |P(z)|` over complex `ℓ_p^n` balls.
//!
//! Two sources, kept apart on purpose:
//!
//! * [`closed_form_norm`] gives exact values or guaranteed upper bounds for the
//!   witness families. Only these may feed a certified lower bound.
//! * [`supnorm_search`] maximizes `|P|` numerically for arbitrary `P`. Every
//!   reported value is `|P(z)|` at a feasible point, so it never exceeds the
//!   true norm, but it may fall short of it.
//!
//! The search works in polar coordinates `z_j = r_j·e^{iθ_j}` and ascends
//! `log |P(z)|²`. Magnitudes are pulled back to the `ℓ_p` sphere after every
//! step by rescaling (or clamped to `[0, 1]` when `p = ∞`); by homogeneity the
//! sup over the ball is attained on the sphere.

use std::f64::consts::TAU;
use std::fmt;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exponents::{pow2, ExtendedExponent, Rational};
use crate::poly::{witness_pm, witness_qm, HomogeneousPolynomial};

/// Settings for [`supnorm_search`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OptimizerConfig {
    pub starts: usize,
    pub max_iterations: usize,
    /// Stop once the projected gradient of `log |P|²` is this small.
    pub gradient_tolerance: f64,
    pub seed: u64,
    /// Backtracking factor of the line search.
    pub step_shrink: f64,
}

impl Default for OptimizerConfig {
    fn default() -> Self {
        Self {
            starts: 32,
            max_iterations: 5000,
            gradient_tolerance: 1e-10,
            seed: 0,
            step_shrink: 0.5,
        }
    }
}

impl OptimizerConfig {
    pub fn with_seed(seed: u64) -> Self {
        Self { seed, ..Self::default() }
    }

    pub fn validate(&self) -> Result<()> {
        if self.starts == 0 {
            return Err(Error::InvalidConfig("starts must be positive".into()));
        }
        if self.max_iterations == 0 {
            return Err(Error::InvalidConfig("max_iterations must be positive".into()));
        }
        if !(self.gradient_tolerance > 0.0 && self.gradient_tolerance.is_finite()) {
            return Err(Error::InvalidConfig("gradient_tolerance must be a positive real".into()));
        }
        if !(self.step_shrink > 0.0 && self.step_shrink < 1.0) {
            return Err(Error::InvalidConfig("step_shrink must lie in (0, 1)".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SearchStatus {
    Converged,
    MaxIterations,
}

impl fmt::Display for SearchStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Converged => "converged",
            Self::MaxIterations => "max-iterations",
        })
    }
}

/// A feasible point and `|P|` there: a lower estimate of the sup-norm.
#[derive(Debug, Clone, PartialEq)]
pub struct NormEstimate {
    pub value: f64,
    pub maximizer: Vec<Complex64>,
    pub status: SearchStatus,
    pub starts_used: usize,
}

/// The polynomials with known sup-norm closed forms.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "kebab-case")]
pub enum WitnessFamily {
    /// `z₁² − z₂² + c·z₁z₂` on `ℓ_∞²`.
    Q2Tilde { c: f64 },
    /// `z₁² − z₂² + c·z₁z₂` on `ℓ_p²`.
    Q2 { c: f64 },
    /// `z₃⋯zₘ·Q₂(z₁, z₂)` on `ℓ_pᵐ`.
    Qm { m: u32, c: f64 },
    /// `z₁z₂` on `ℓ_p²`.
    P2,
    /// `z₁⋯zₘ` on `ℓ_pᵐ`.
    Pm { m: u32 },
}

impl WitnessFamily {
    pub fn degree(&self) -> u32 {
        match *self {
            Self::Q2Tilde { .. } | Self::Q2 { .. } | Self::P2 => 2,
            Self::Qm { m, .. } | Self::Pm { m } => m,
        }
    }

    pub fn polynomial(&self) -> Result<HomogeneousPolynomial> {
        match *self {
            Self::Q2Tilde { c } | Self::Q2 { c } => witness_qm(2, c),
            Self::Qm { m, c } => witness_qm(m, c),
            Self::P2 => witness_pm(2),
            Self::Pm { m } => witness_pm(m),
        }
    }

    pub fn label(&self) -> String {
        match *self {
            Self::Q2Tilde { c } => format!("Q2~(c={c})"),
            Self::Q2 { c } => format!("Q2(c={c})"),
            Self::Qm { m, c } => format!("Qm(m={m},c={c})"),
            Self::P2 => "P2".to_string(),
            Self::Pm { m } => format!("Pm(m={m})"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum BoundKind {
    /// Equal to the true sup-norm.
    Exact,
    /// At least the true sup-norm.
    Upper,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NormBound {
    pub value: f64,
    pub kind: BoundKind,
    pub family: String,
}

/// Number of padding variables whose contribution `2^{-k/p}` the closed
/// forms account for; odd degrees drop one of them.
fn even_part(k: u32) -> u32 {
    k - k % 2
}

/// Closed-form sup-norm of a witness family on `ℓ_p`.
///
/// `Q̃₂` lives on `ℓ_∞` and requires `p = ∞`; every other family requires a
/// finite `p ≥ 2`.
pub fn closed_form_norm(family: &WitnessFamily, p: ExtendedExponent) -> Result<NormBound> {
    let incompatible = || Error::NoClosedForm { family: family.label(), p: p.to_string() };
    let label = family.label();
    if let WitnessFamily::Q2Tilde { c } = *family {
        if !p.is_infinite() {
            return Err(incompatible());
        }
        return Ok(NormBound { value: q2_tilde_norm(c)?, kind: BoundKind::Exact, family: label });
    }
    let p = match p {
        ExtendedExponent::Finite(r) if r >= Rational::from_integer(2) => r,
        _ => return Err(incompatible()),
    };
    // 2^{-k/p}
    let decay = |k: u32| pow2(&(-Rational::from_integer(i128::from(k)) / p));
    let (value, kind) = match *family {
        WitnessFamily::Q2Tilde { .. } => unreachable!(),
        // ‖Q₂‖ on ℓ_p² is at most its norm on the polydisc.
        WitnessFamily::Q2 { c } => (q2_tilde_norm(c)?, BoundKind::Upper),
        WitnessFamily::Qm { m, c } => {
            if m < 2 {
                return Err(Error::Domain(format!("Q_m needs m >= 2, got {m}")));
            }
            (decay(even_part(m) - 2) * q2_tilde_norm(c)?, BoundKind::Upper)
        }
        WitnessFamily::P2 => (decay(2), BoundKind::Exact),
        WitnessFamily::Pm { m } => match m {
            0 | 1 => return Err(Error::Domain(format!("P_m needs m >= 2, got {m}"))),
            2 => (decay(2), BoundKind::Exact),
            _ => (decay(even_part(m)), BoundKind::Upper),
        },
    };
    Ok(NormBound { value, kind, family: label })
}

fn q2_tilde_norm(c: f64) -> Result<f64> {
    if !c.is_finite() {
        return Err(Error::NonFinite("witness parameter c".into()));
    }
    Ok((4.0 + c * c).sqrt())
}

/// Multi-start maximization of `|P|` over the unit sphere of `ℓ_p^n`.
pub fn supnorm_search(
    poly: &HomogeneousPolynomial,
    p: ExtendedExponent,
    config: &OptimizerConfig,
) -> Result<NormEstimate> {
    supnorm_search_with_starts(poly, p, config, &[])
}

/// [`supnorm_search`] with additional caller-supplied starting points, run
/// after the random ones. Points are rescaled onto the sphere first.
pub fn supnorm_search_with_starts(
    poly: &HomogeneousPolynomial,
    p: ExtendedExponent,
    config: &OptimizerConfig,
    extra_starts: &[Vec<Complex64>],
) -> Result<NormEstimate> {
    config.validate()?;
    if poly.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let n = poly.dimension();
    if let Some(bad) = extra_starts.iter().find(|z| z.len() != n) {
        return Err(Error::DimensionMismatch { expected: n, got: bad.len() });
    }
    if n == 1 {
        // a·z^m on the unit circle.
        let (_, a) = poly.terms().next().expect("nonzero polynomial has a term");
        return Ok(NormEstimate {
            value: a.norm(),
            maximizer: vec![Complex64::new(1.0, 0.0)],
            status: SearchStatus::Converged,
            starts_used: 0,
        });
    }

    let sphere = Sphere::new(p);
    let total = config.starts + extra_starts.len();
    let runs: Vec<StartOutcome> = (0..total)
        .into_par_iter()
        .map(|k| {
            let start = if k < config.starts {
                random_start(n, &sphere, config.seed, k as u64)
            } else {
                PolarPoint::from_complex(&extra_starts[k - config.starts])
            };
            ascend(poly, &sphere, config, start)
        })
        .collect();

    // First strictly larger value wins, so ties go to the lowest start index.
    let mut best: Option<StartOutcome> = None;
    for run in runs {
        if !run.value.is_finite() {
            return Err(Error::NonFinite("polynomial value during search".into()));
        }
        if best.as_ref().is_none_or(|b| run.value > b.value) {
            best = Some(run);
        }
    }
    let best = best.expect("at least one start");
    Ok(NormEstimate {
        value: best.value,
        maximizer: best.point.to_complex(),
        status: best.status,
        starts_used: total,
    })
}

#[derive(Debug, Clone, Copy)]
enum Sphere {
    Finite(f64),
    Polydisc,
}

impl Sphere {
    fn new(p: ExtendedExponent) -> Self {
        match p {
            ExtendedExponent::Infinity => Self::Polydisc,
            ExtendedExponent::Finite(_) => Self::Finite(p.to_f64()),
        }
    }

    fn norm(&self, r: &[f64]) -> f64 {
        let largest = r.iter().copied().fold(0.0, f64::max);
        match *self {
            Self::Polydisc => largest,
            Self::Finite(p) => {
                if largest == 0.0 {
                    return 0.0;
                }
                let s: f64 = r.iter().map(|x| (x / largest).powf(p)).sum();
                largest * s.powf(p.recip())
            }
        }
    }

    /// Maps non-negative magnitudes onto the unit sphere. Returns `false` if
    /// the vector collapsed to zero.
    fn project(&self, r: &mut [f64]) -> bool {
        for x in r.iter_mut() {
            *x = x.max(0.0);
        }
        match *self {
            Self::Polydisc => {
                for x in r.iter_mut() {
                    *x = x.min(1.0);
                }
                r.iter().any(|&x| x > 0.0)
            }
            Self::Finite(_) => {
                let norm = self.norm(r);
                if !(norm > 0.0 && norm.is_finite()) {
                    return false;
                }
                for x in r.iter_mut() {
                    *x /= norm;
                }
                // Rounding may leave the norm a few ulps above one.
                let mut guard = 0;
                while self.norm(r) > 1.0 && guard < 64 {
                    for x in r.iter_mut() {
                        *x *= 1.0 - f64::EPSILON;
                    }
                    guard += 1;
                }
                true
            }
        }
    }

    /// Turns `∂F/∂r` into an ascent direction for the magnitudes, with the
    /// components that would leave the feasible set removed.
    ///
    /// For finite `p` the direction lives in `u = r^p`, where the sphere is the
    /// probability simplex; coordinates that should vanish then reach zero in
    /// finitely many steps instead of decaying like `r^{p−1}`.
    fn ascent_direction(&self, r: &[f64], g: &[f64]) -> Vec<f64> {
        match *self {
            Self::Polydisc => g
                .iter()
                .zip(r)
                .map(|(&gi, &ri)| if (ri >= 1.0 && gi > 0.0) || (ri <= 0.0 && gi < 0.0) { 0.0 } else { gi })
                .collect(),
            Self::Finite(p) => {
                let gu: Vec<f64> = g
                    .iter()
                    .zip(r)
                    .map(|(&gi, &ri)| gi * ri.max(MAGNITUDE_FLOOR).powf(1.0 - p) / p)
                    .collect();
                let mut free: Vec<bool> = r.iter().zip(&gu).map(|(&ri, &gi)| ri > 0.0 || gi > 0.0).collect();
                let mean = loop {
                    let count = free.iter().filter(|&&f| f).count();
                    if count == 0 {
                        return vec![0.0; r.len()];
                    }
                    let mean = gu.iter().zip(&free).filter(|(_, &f)| f).map(|(g, _)| g).sum::<f64>()
                        / count as f64;
                    let mut changed = false;
                    for j in 0..r.len() {
                        if free[j] && r[j] <= 0.0 && gu[j] - mean < 0.0 {
                            free[j] = false;
                            changed = true;
                        }
                    }
                    if !changed {
                        break mean;
                    }
                };
                gu.iter().zip(&free).map(|(&gi, &f)| if f { gi - mean } else { 0.0 }).collect()
            }
        }
    }

    /// Magnitudes after a step of length `t` along `d` (see
    /// [`Self::ascent_direction`]), mapped back onto the sphere.
    fn step(&self, r: &[f64], d: &[f64], t: f64) -> Option<Vec<f64>> {
        let mut next: Vec<f64> = match *self {
            Self::Polydisc => r.iter().zip(d).map(|(ri, di)| ri + t * di).collect(),
            Self::Finite(p) => r
                .iter()
                .zip(d)
                .map(|(ri, di)| (ri.powf(p) + t * di).max(0.0).powf(p.recip()))
                .collect(),
        };
        self.project(&mut next).then_some(next)
    }
}

#[derive(Debug, Clone, PartialEq)]
struct PolarPoint {
    r: Vec<f64>,
    theta: Vec<f64>,
}

impl PolarPoint {
    fn from_complex(z: &[Complex64]) -> Self {
        let (r, theta) = z.iter().map(|w| w.to_polar()).unzip();
        Self { r, theta }
    }

    fn to_complex(&self) -> Vec<Complex64> {
        self.r
            .iter()
            .zip(&self.theta)
            .map(|(&r, &t)| Complex64::from_polar(r, t))
            .collect()
    }

    fn dims(&self) -> usize {
        self.r.len()
    }
}

/// Random phases and `|N(0,1)|^{2/p}` magnitudes, from a stream keyed by
/// `(seed, index)` so each start is reproducible on its own.
fn random_start(n: usize, sphere: &Sphere, seed: u64, index: u64) -> PolarPoint {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    let shape = match *sphere {
        Sphere::Finite(p) => 2.0 / p,
        Sphere::Polydisc => 0.0,
    };
    let theta = (0..n).map(|_| rng.random::<f64>() * TAU).collect();
    let r = (0..n)
        .map(|_| {
            let g: f64 = rng.sample(StandardNormal);
            // keep strictly positive so the start is in the relative interior
            g.abs().max(1e-3).powf(shape)
        })
        .collect();
    PolarPoint { r, theta }
}

struct StartOutcome {
    value: f64,
    point: PolarPoint,
    status: SearchStatus,
}

/// `log |P|²` and its gradient in `(r, θ)`.
struct Objective<'a> {
    poly: &'a HomogeneousPolynomial,
}

impl Objective<'_> {
    fn value(&self, x: &PolarPoint) -> f64 {
        self.poly.evaluate_unchecked(&x.to_complex()).norm_sqr().ln()
    }

    /// Returns `(F, ∂F/∂r, ∂F/∂θ)`. With `w_j = e^{iθ_j}·∂_jP / P`:
    /// `∂F/∂r_j = 2 Re w_j` and `∂F/∂θ_j = −2 r_j Im w_j`.
    fn value_and_gradient(&self, x: &PolarPoint) -> (f64, Vec<f64>, Vec<f64>) {
        let z = x.to_complex();
        let (value, grad) = self.poly.value_and_gradient(&z);
        let f = value.norm_sqr().ln();
        if value == Complex64::new(0.0, 0.0) {
            return (f, vec![0.0; z.len()], vec![0.0; z.len()]);
        }
        let mut gr = Vec::with_capacity(z.len());
        let mut gt = Vec::with_capacity(z.len());
        for j in 0..z.len() {
            let w = Complex64::from_polar(1.0, x.theta[j]) * grad[j] / value;
            gr.push(2.0 * w.re);
            gt.push(-2.0 * x.r[j] * w.im);
        }
        (f, gr, gt)
    }
}

const ARMIJO: f64 = 1e-4;
/// Stand-in for `r = 0` when converting gradients to `u = r^p`.
const MAGNITUDE_FLOOR: f64 = 1e-12;
const MIN_STEP: f64 = 1e-16;
const MAX_STEP: f64 = 1e3;
const COORDINATE_START: f64 = 1e-3;
const COORDINATE_MIN: f64 = 1e-13;

fn ascend(
    poly: &HomogeneousPolynomial,
    sphere: &Sphere,
    config: &OptimizerConfig,
    mut x: PolarPoint,
) -> StartOutcome {
    let objective = Objective { poly };
    if !sphere.project(&mut x.r) {
        x.r = vec![1.0; x.dims()];
        sphere.project(&mut x.r);
    }
    let retract = |x: &mut PolarPoint| sphere.project(&mut x.r);

    let mut step = 0.1;
    let mut status = SearchStatus::MaxIterations;
    let mut iterations = 0;
    let (mut f, mut gr, mut gt) = objective.value_and_gradient(&x);

    if f.is_finite() {
        while iterations < config.max_iterations {
            iterations += 1;
            let dr = sphere.ascent_direction(&x.r, &gr);
            let slope: f64 = dr.iter().chain(&gt).map(|g| g * g).sum();
            if slope.sqrt() <= config.gradient_tolerance {
                status = SearchStatus::Converged;
                break;
            }

            let mut accepted = None;
            while step >= MIN_STEP {
                if let Some(r) = sphere.step(&x.r, &dr, step) {
                    let theta = x.theta.iter().zip(&gt).map(|(t, g)| t + step * g).collect();
                    let trial = PolarPoint { r, theta };
                    let ft = objective.value(&trial);
                    if ft >= f + ARMIJO * step * slope && ft > f {
                        accepted = Some(trial);
                        break;
                    }
                }
                step *= config.step_shrink;
            }

            match accepted {
                Some(next) => {
                    x = next;
                    step = (step * 2.0).min(MAX_STEP);
                }
                None => {
                    // Line search stalled above tolerance.
                    match coordinate_search(&objective, &retract, &x, f, &mut iterations, config) {
                        Some(next) => {
                            x = next;
                            step = 0.1;
                        }
                        None => {
                            status = SearchStatus::Converged;
                            break;
                        }
                    }
                }
            }
            (f, gr, gt) = objective.value_and_gradient(&x);
        }
    }

    for t in x.theta.iter_mut() {
        *t = t.rem_euclid(TAU);
    }
    // Re-evaluate at the (feasible) final point.
    let value = poly.evaluate_unchecked(&x.to_complex()).norm();
    StartOutcome { value, point: x, status }
}

/// Compass search over the `2n` polar coordinates. Returns an improved point,
/// or `None` if no coordinate move down to the minimum step improves `F`.
fn coordinate_search(
    objective: &Objective<'_>,
    retract: &impl Fn(&mut PolarPoint) -> bool,
    x: &PolarPoint,
    f: f64,
    iterations: &mut usize,
    config: &OptimizerConfig,
) -> Option<PolarPoint> {
    let n = x.dims();
    let mut h = COORDINATE_START;
    while h >= COORDINATE_MIN && *iterations < config.max_iterations {
        *iterations += 1;
        for k in 0..2 * n {
            for sign in [1.0, -1.0] {
                let mut trial = x.clone();
                if k < n {
                    trial.r[k] += sign * h;
                } else {
                    trial.theta[k - n] += sign * h;
                }
                if retract(&mut trial) && objective.value(&trial) > f {
                    return Some(trial);
                }
            }
        }
        h *= 0.5;
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> ExtendedExponent {
        s.parse().unwrap()
    }

    #[test]
    fn closed_form_examples() {
        let b = closed_form_norm(&WitnessFamily::Q2Tilde { c: 0.0 }, p("inf")).unwrap();
        assert_eq!((b.value, b.kind), (2.0, BoundKind::Exact));

        let b = closed_form_norm(&WitnessFamily::P2, p("4")).unwrap();
        assert_eq!(b.kind, BoundKind::Exact);
        assert!((b.value - 0.5f64.sqrt()).abs() < 1e-15);

        let b = closed_form_norm(&WitnessFamily::Pm { m: 4 }, p("8")).unwrap();
        assert_eq!(b.kind, BoundKind::Upper);
        assert!((b.value - 0.5f64.sqrt()).abs() < 1e-15);

        // odd m drops one padding variable
        let b = closed_form_norm(&WitnessFamily::Pm { m: 5 }, p("8")).unwrap();
        assert!((b.value - 2f64.powf(-0.5)).abs() < 1e-15);

        let b = closed_form_norm(&WitnessFamily::Qm { m: 4, c: 1.0 }, p("8")).unwrap();
        assert!((b.value - 2f64.powf(-0.25) * 5f64.sqrt()).abs() < 1e-15);
        let b = closed_form_norm(&WitnessFamily::Qm { m: 5, c: 1.0 }, p("10")).unwrap();
        assert!((b.value - 2f64.powf(-0.2) * 5f64.sqrt()).abs() < 1e-15);
        let b = closed_form_norm(&WitnessFamily::Q2 { c: 3.0 }, p("4")).unwrap();
        assert_eq!((b.value, b.kind), (13f64.sqrt(), BoundKind::Upper));
    }

    #[test]
    fn closed_form_rejects_incompatible_p() {
        assert!(matches!(
            closed_form_norm(&WitnessFamily::Q2Tilde { c: 1.0 }, p("4")),
            Err(Error::NoClosedForm { .. })
        ));
        assert!(closed_form_norm(&WitnessFamily::P2, p("inf")).is_err());
        assert!(closed_form_norm(&WitnessFamily::P2, p("3/2")).is_err());
        assert!(closed_form_norm(&WitnessFamily::Pm { m: 1 }, p("4")).is_err());
    }

    #[test]
    fn search_p2() {
        let est = supnorm_search(&witness_pm(2).unwrap(), p("4"), &OptimizerConfig::default()).unwrap();
        assert!((est.value - 0.5f64.sqrt()).abs() < 1e-6, "{}", est.value);
        let z = &est.maximizer;
        let norm: f64 = z.iter().map(|w| w.norm().powi(4)).sum::<f64>().powf(0.25);
        assert!((norm - 1.0).abs() < 1e-12);
    }

    #[test]
    fn search_q2_tilde() {
        let est =
            supnorm_search(&witness_q2(0.0), p("inf"), &OptimizerConfig::default()).unwrap();
        assert!((est.value - 2.0).abs() < 1e-6, "{}", est.value);
    }

    fn witness_q2(c: f64) -> HomogeneousPolynomial {
        crate::poly::witness_q2(c).unwrap()
    }

    #[test]
    fn search_p3_lagrange() {
        let est = supnorm_search(&witness_pm(3).unwrap(), p("6"), &OptimizerConfig::default()).unwrap();
        assert!((est.value - 3f64.powf(-0.5)).abs() < 1e-6, "{}", est.value);
    }

    #[test]
    fn one_dimensional_bypass() {
        let poly = HomogeneousPolynomial::new(1, 3, [(vec![3], Complex64::new(3.0, 4.0))]).unwrap();
        let est = supnorm_search(&poly, p("7"), &OptimizerConfig::default()).unwrap();
        assert_eq!(est.value, 5.0);
        assert_eq!(est.starts_used, 0);
    }

    #[test]
    fn errors() {
        let zero = HomogeneousPolynomial::zero(2, 2).unwrap();
        assert_eq!(
            supnorm_search(&zero, p("4"), &OptimizerConfig::default()),
            Err(Error::ZeroPolynomial)
        );
        let bad = OptimizerConfig { step_shrink: 1.0, ..OptimizerConfig::default() };
        assert!(matches!(
            supnorm_search(&witness_q2(1.0), p("4"), &bad),
            Err(Error::InvalidConfig(_))
        ));
        let huge = HomogeneousPolynomial::new(2, 2, [(vec![1, 1], Complex64::new(f64::MAX, 0.0)), (vec![2, 0], Complex64::new(f64::MAX, 0.0))]).unwrap();
        assert!(matches!(
            supnorm_search(&huge, p("inf"), &OptimizerConfig::default()),
            Err(Error::NonFinite(_))
        ));
    }

    #[test]
    fn deterministic_for_fixed_seed() {
        let poly = witness_qm(4, 2.5).unwrap();
        let cfg = OptimizerConfig::with_seed(17);
        let a = supnorm_search(&poly, p("8"), &cfg).unwrap();
        let b = supnorm_search(&poly, p("8"), &cfg).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn warm_start_is_used() {
        let poly = witness_pm(2).unwrap();
        let cfg = OptimizerConfig { starts: 1, ..OptimizerConfig::default() };
        let s = 0.5f64.powf(0.25);
        let est = supnorm_search_with_starts(
            &poly,
            p("4"),
            &cfg,
            &[vec![Complex64::new(s, 0.0), Complex64::new(s, 0.0)]],
        )
        .unwrap();
        assert_eq!(est.starts_used, 2);
        assert!((est.value - 0.5f64.sqrt()).abs() < 1e-9);
    }
}
