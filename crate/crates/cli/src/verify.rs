//! The reproduction suite behind `hlbound verify`.
//!
//! Eight numbered criteria, each a list of named checks with expected value,
//! actual value and tolerance. Criteria are grouped (`--filter norms` runs
//! the two optimizer criteria) and evaluated against a [`Subject`], which
//! defaults to the library but can be swapped to exercise the failure path.

use std::fmt::Display;
use std::io::Write;
use std::time::{Duration, Instant};

use hlbound::bounds::{self, ChainCheck};
use hlbound::exponents::{self, Rational};
use hlbound::poly::{witness_pm, witness_q2, witness_qm};
use hlbound::search;
use hlbound::supnorm::{self, NormEstimate, OptimizerConfig, WitnessFamily};
use hlbound::{Complex64, ExtendedExponent, HomogeneousPolynomial};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{CliError, Result};
use crate::oracle;
use crate::tolerances as tol;

type LibResult<T> = hlbound::Result<T>;

/// The operations under test. Every method defaults to the library.
pub trait Subject {
    fn hl_exponent(&self, m: u32, p: ExtendedExponent) -> LibResult<Rational> {
        exponents::hl_exponent(m, p)
    }
    fn hl_exponent_low(&self, m: u32, p: ExtendedExponent) -> LibResult<Rational> {
        exponents::hl_exponent_low(m, p)
    }
    fn lower_bound_main(&self, m: u32, p: ExtendedExponent) -> LibResult<f64> {
        bounds::lower_bound_main(m, p).map(|r| r.value)
    }
    fn upper_bound(&self, m: u32, p: ExtendedExponent, cmult: f64) -> LibResult<f64> {
        bounds::upper_bound(m, p, cmult).map(|r| r.value)
    }
    fn threshold_c(&self, m: u32, p: ExtendedExponent) -> LibResult<f64> {
        bounds::threshold_c(m, p)
    }
    fn lower_bound_777(&self, m: u32, p: ExtendedExponent, epsilon: f64) -> LibResult<f64> {
        bounds::lower_bound_777(m, p, epsilon).map(|r| r.value)
    }
    fn verify_chain(&self, m: u32, p: ExtendedExponent, c: f64) -> LibResult<ChainCheck> {
        bounds::verify_chain(m, p, c)
    }
    fn bh_reference_lower(&self, m: u32) -> LibResult<f64> {
        bounds::bh_reference_lower(m)
    }
    fn real_reference_lower(&self, m: u32, p: ExtendedExponent) -> LibResult<f64> {
        bounds::real_reference_lower(m, p)
    }
    fn closed_form_norm(&self, family: &WitnessFamily, p: ExtendedExponent) -> LibResult<f64> {
        supnorm::closed_form_norm(family, p).map(|b| b.value)
    }
    fn supnorm_search(
        &self,
        poly: &HomogeneousPolynomial,
        p: ExtendedExponent,
        config: &OptimizerConfig,
        warm_starts: &[Vec<Complex64>],
    ) -> LibResult<NormEstimate> {
        supnorm::supnorm_search_with_starts(poly, p, config, warm_starts)
    }
    fn estimated_quotient(
        &self,
        poly: &HomogeneousPolynomial,
        p: ExtendedExponent,
        config: &OptimizerConfig,
    ) -> LibResult<f64> {
        search::estimated_quotient(poly, p, config)
    }
    fn evaluate(&self, poly: &HomogeneousPolynomial, z: &[Complex64]) -> LibResult<Complex64> {
        poly.evaluate(z)
    }
    fn complex_gradient(&self, poly: &HomogeneousPolynomial, z: &[Complex64]) -> LibResult<Vec<Complex64>> {
        poly.complex_gradient(z)
    }
    fn coefficient_norm(&self, poly: &HomogeneousPolynomial, rho: f64) -> LibResult<f64> {
        poly.coefficient_norm(rho)
    }
}

/// The library itself.
pub struct Library;

impl Subject for Library {}

#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub name: String,
    pub expected: String,
    pub actual: String,
    pub tolerance: String,
    pub passed: bool,
}

#[derive(Default)]
struct Checks(Vec<Check>);

impl Checks {
    fn push(&mut self, name: impl Into<String>, expected: impl Display, actual: impl Display, tolerance: impl Display, passed: bool) {
        self.0.push(Check {
            name: name.into(),
            expected: expected.to_string(),
            actual: actual.to_string(),
            tolerance: tolerance.to_string(),
            passed,
        });
    }

    fn error(&mut self, name: impl Into<String>, expected: impl Display, e: impl Display) {
        self.push(name, expected, format!("error: {e}"), "-", false);
    }

    /// `|actual − expected| ≤ tolerance`.
    fn close(&mut self, name: impl Into<String>, actual: LibResult<f64>, expected: f64, tolerance: f64) {
        match actual {
            Ok(a) => {
                let passed = (a - expected).abs() <= tolerance;
                self.push(name, fmt(expected), fmt(a), format!("{tolerance:e}"), passed)
            }
            Err(e) => self.error(name, fmt(expected), e),
        }
    }

    fn exact<T: Display + PartialEq>(&mut self, name: impl Into<String>, actual: LibResult<T>, expected: T) {
        match actual {
            Ok(a) => {
                let passed = a == expected;
                self.push(name, &expected, a, "exact", passed)
            }
            Err(e) => self.error(name, expected, e),
        }
    }
}

fn fmt(x: f64) -> String {
    format!("{x:.10}")
}

pub struct Criterion {
    pub number: u8,
    pub group: &'static str,
    pub title: &'static str,
    pub budget: Option<Duration>,
    run: fn(&dyn Subject, &mut Checks),
}

pub const CRITERIA: [Criterion; 8] = [
    Criterion { number: 1, group: "anchor", title: "anchor sandwich sqrt(2) <= C <= 3.1915", budget: None, run: anchor },
    Criterion { number: 2, group: "exponents", title: "exact Hardy-Littlewood exponents", budget: None, run: exponents_check },
    Criterion {
        number: 3,
        group: "norms",
        title: "optimizer against closed-form norms",
        budget: Some(tol::BUDGET_CLOSED_FORM),
        run: closed_forms,
    },
    Criterion {
        number: 4,
        group: "norms",
        title: "soundness sweep of the optimizer",
        budget: Some(tol::BUDGET_SOUNDNESS),
        run: soundness,
    },
    Criterion { number: 5, group: "thm777", title: "c-threshold and the 777 bound", budget: None, run: thm777 },
    Criterion { number: 6, group: "chain", title: "chain inequality L < M <= R", budget: None, run: chain },
    Criterion { number: 7, group: "reference", title: "reference formulas", budget: None, run: reference },
    Criterion {
        number: 8,
        group: "properties",
        title: "randomized property suite",
        budget: Some(tol::BUDGET_PROPERTIES),
        run: properties,
    },
];

#[derive(Debug, Clone)]
pub struct CriterionReport {
    pub number: u8,
    pub group: &'static str,
    pub title: &'static str,
    pub checks: Vec<Check>,
    pub elapsed: Duration,
    pub budget: Option<Duration>,
}

impl CriterionReport {
    pub fn within_budget(&self) -> bool {
        self.budget.is_none_or(|b| self.elapsed <= b)
    }

    pub fn passed(&self) -> bool {
        !self.checks.is_empty() && self.checks.iter().all(|c| c.passed) && self.within_budget()
    }

    /// Names of the failed checks, plus the budget if it was exceeded.
    pub fn failures(&self) -> Vec<String> {
        let mut out: Vec<String> = self.checks.iter().filter(|c| !c.passed).map(|c| c.name.clone()).collect();
        if !self.within_budget() {
            out.push(format!("runtime {:.1?} over budget {:?}", self.elapsed, self.budget.unwrap_or_default()));
        }
        out
    }

    /// One line: `criterion 3 [norms] PASS  optimizer against ... (1.2s)`.
    pub fn summary(&self) -> String {
        format!(
            "criterion {} [{}] {}  {} ({:.2?})",
            self.number,
            self.group,
            if self.passed() { "PASS" } else { "FAIL" },
            self.title,
            self.elapsed,
        )
    }
}

/// Criteria whose number or group equals `filter`; all of them without one.
pub fn select(filter: Option<&str>) -> Result<Vec<&'static Criterion>> {
    let chosen: Vec<&Criterion> = match filter {
        None => CRITERIA.iter().collect(),
        Some(f) => {
            let f = f.trim();
            CRITERIA.iter().filter(|c| c.group == f || c.number.to_string() == f).collect()
        }
    };
    if chosen.is_empty() {
        let groups: Vec<String> = CRITERIA.iter().map(|c| format!("{}/{}", c.number, c.group)).collect();
        return Err(CliError::Input(format!(
            "filter {:?} matches no criterion (available: {})",
            filter.unwrap_or_default(),
            groups.join(", ")
        )));
    }
    Ok(chosen)
}

pub fn run_criterion(subject: &dyn Subject, criterion: &Criterion) -> CriterionReport {
    let start = Instant::now();
    let mut checks = Checks::default();
    (criterion.run)(subject, &mut checks);
    CriterionReport {
        number: criterion.number,
        group: criterion.group,
        title: criterion.title,
        checks: checks.0,
        elapsed: start.elapsed(),
        budget: criterion.budget,
    }
}

pub fn run(subject: &dyn Subject, filter: Option<&str>) -> Result<Vec<CriterionReport>> {
    Ok(select(filter)?.into_iter().map(|c| run_criterion(subject, c)).collect())
}

pub fn render<W: Write>(reports: &[CriterionReport], mut out: W) -> std::io::Result<()> {
    let width = reports.iter().flat_map(|r| r.checks.iter().map(|c| c.name.chars().count())).max().unwrap_or(5).max(5);
    writeln!(out, "{:<3} {:<width$}  {:>18}  {:>18}  {:>10}  result", "#", "check", "expected", "actual", "tolerance")?;
    for r in reports {
        for c in &r.checks {
            writeln!(
                out,
                "{:<3} {:<width$}  {:>18}  {:>18}  {:>10}  {}",
                r.number,
                c.name,
                c.expected,
                c.actual,
                c.tolerance,
                if c.passed { "ok" } else { "FAIL" }
            )?;
        }
    }
    writeln!(out)?;
    for r in reports {
        writeln!(out, "{}", r.summary())?;
        for f in r.failures() {
            writeln!(out, "    failed: {f}")?;
        }
    }
    let passed = reports.iter().filter(|r| r.passed()).count();
    writeln!(out, "{passed}/{} criteria passed", reports.len())
}

fn int(k: u32) -> ExtendedExponent {
    ExtendedExponent::Finite(Rational::from_integer(i128::from(k)))
}

fn anchor(s: &dyn Subject, out: &mut Checks) {
    let p = int(4);
    out.close("lower_bound_main(2, 4) = sqrt(2)", s.lower_bound_main(2, p), 2f64.sqrt(), tol::ANCHOR_LOWER);
    let cmult = tol::ANCHOR_UPPER_VALUE / 2f64.powf(1.5);
    out.close("upper_bound(2, 4, 3.1915/2^1.5)", s.upper_bound(2, p, cmult), tol::ANCHOR_UPPER_VALUE, tol::ANCHOR_UPPER);
}

fn exponents_check(s: &dyn Subject, out: &mut Checks) {
    for m in 2..=10u32 {
        out.exact(format!("hl_exponent({m}, {})", 2 * m), s.hl_exponent(m, int(2 * m)), Rational::from_integer(2));
    }
    for m in 2..=10u32 {
        let mm = i128::from(m);
        out.exact(format!("hl_exponent({m}, inf)"), s.hl_exponent(m, ExtendedExponent::Infinity), Rational::new(2 * mm, mm + 1));
    }
    out.exact("hl_exponent_low(3, 5)", s.hl_exponent_low(3, int(5)), Rational::new(5, 2));
}

fn closed_forms(s: &dyn Subject, out: &mut Checks) {
    let cfg = OptimizerConfig::default();
    for k in [4u32, 8, 16] {
        let est = s.supnorm_search(&witness_pm(2).unwrap(), int(k), &cfg, &[]).map(|e| e.value);
        out.close(format!("sup |z1 z2| on l_{k}"), est, 2f64.powf(-2.0 / f64::from(k)), tol::CLOSED_FORM);
    }
    for c in [0.0, 1.0, 2.0, 5.0] {
        let est = s.supnorm_search(&witness_q2(c).unwrap(), ExtendedExponent::Infinity, &cfg, &[]).map(|e| e.value);
        out.close(format!("sup |Q2~(c={c})| on l_inf"), est, (4.0 + c * c).sqrt(), tol::CLOSED_FORM);
    }
}

fn soundness(s: &dyn Subject, out: &mut Checks) {
    let cfg = OptimizerConfig::default();
    let mut rng = ChaCha8Rng::seed_from_u64(tol::SEED);
    for m in 2..=5u32 {
        for k in [2 * m, 4 * m] {
            let p = int(k);
            let pf = f64::from(k);
            let mut worst = f64::NEG_INFINITY;
            let mut failure = None;
            for _ in 0..tol::SOUNDNESS_SAMPLES {
                let c = rng.random_range(0.0..=tol::SOUNDNESS_C_MAX);
                let family = WitnessFamily::Qm { m, c };
                let bound = s.closed_form_norm(&family, p);
                let est = s.supnorm_search(&witness_qm(m, c).unwrap(), p, &cfg, &[]);
                match (est, bound) {
                    (Ok(e), Ok(b)) => worst = worst.max(e.value - b),
                    (Err(e), _) | (_, Err(e)) => failure = Some(e),
                }
            }
            let name = format!("Qm(m={m}) <= closed form, p={k}, {} c", tol::SOUNDNESS_SAMPLES);
            match failure {
                Some(e) => out.error(name, "excess <= 0", e),
                None => out.push(
                    name,
                    "excess <= 0",
                    format!("{worst:.3e}"),
                    format!("{:e}", tol::SOUNDNESS_SLACK),
                    worst <= tol::SOUNDNESS_SLACK,
                ),
            }

            let est = s.supnorm_search(&witness_pm(m).unwrap(), p, &cfg, &[]).map(|e| e.value);
            let lagrange = f64::from(m).powf(-f64::from(m) / pf);
            out.close(format!("sup |P{m}| on l_{k} = m^(-m/p)"), est.clone(), lagrange, tol::LAGRANGE);
            let even = f64::from(m - m % 2);
            let cap = 2f64.powf(-even / pf);
            match est {
                Ok(v) => out.push(
                    format!("sup |P{m}| on l_{k} <= 2^(-{even}/p)"),
                    fmt(cap),
                    fmt(v),
                    format!("{:e}", tol::SOUNDNESS_SLACK),
                    v <= cap + tol::SOUNDNESS_SLACK,
                ),
                Err(e) => out.error(format!("sup |P{m}| on l_{k} <= 2^(-{even}/p)"), fmt(cap), e),
            }
        }
    }
}

/// The `(m, p)` grid shared by the threshold and chain criteria.
fn thm777_grid() -> Vec<(u32, u32)> {
    (4..=7u32).flat_map(|m| [(m, 2 * m), (m, 2 * m + 4)]).collect()
}

fn thm777(s: &dyn Subject, out: &mut Checks) {
    for (m, k, quoted) in [(4u32, 8u32, tol::THRESHOLD_4_8), (5, 10, tol::THRESHOLD_5_10)] {
        let Some(digits) = oracle::threshold_decimal(m, i128::from(k), 1) else {
            out.push(format!("oracle threshold({m}, {k})"), "value", "outside domain", "-", false);
            continue;
        };
        let n = oracle::significant_digits(&digits);
        out.push(format!("oracle threshold({m}, {k}) digits"), format!(">= {}", tol::ORACLE_DIGITS), n, "-", n >= tol::ORACLE_DIGITS);
        let reference: f64 = digits.parse().unwrap_or(f64::NAN);
        out.close(format!("threshold_c({m}, {k}) vs oracle"), s.threshold_c(m, int(k)), reference, tol::THRESHOLD);
        out.close(format!("threshold_c({m}, {k}) vs {quoted}"), s.threshold_c(m, int(k)), quoted, tol::THRESHOLD);
    }
    let epsilons = [0.01, 1.0, 100.0];
    for (m, k) in thm777_grid() {
        let p = int(k);
        let values: LibResult<Vec<f64>> = epsilons.iter().map(|&e| s.lower_bound_777(m, p, e)).collect();
        let main = s.lower_bound_main(m, p);
        match (values, main) {
            (Ok(v), Ok(main)) => {
                let min = v.iter().copied().fold(f64::INFINITY, f64::min);
                let max = v.iter().copied().fold(f64::NEG_INFINITY, f64::max);
                out.push(format!("lower_bound_777({m}, {k}, eps) > 1"), "> 1", fmt(min), "strict", min > 1.0);
                out.push(format!("lower_bound_777({m}, {k}, eps) < main"), format!("< {}", fmt(main)), fmt(max), "strict", max < main);
            }
            (Err(e), _) | (_, Err(e)) => out.error(format!("lower_bound_777({m}, {k}, eps)"), "> 1", e),
        }
        let pad = f64::from(if m % 2 == 0 { m - 2 } else { m - 3 });
        out.close(
            format!("lower_bound_777({m}, {k}, 1e9) -> 2^({pad}/p)"),
            s.lower_bound_777(m, p, tol::LIMIT_EPSILON),
            2f64.powf(pad / f64::from(k)),
            tol::LIMIT,
        );
    }
}

fn chain(s: &dyn Subject, out: &mut Checks) {
    let mut rng = ChaCha8Rng::seed_from_u64(tol::SEED ^ 6);
    for (m, k) in thm777_grid() {
        let p = int(k);
        let t = match s.threshold_c(m, p) {
            Ok(t) => t,
            Err(e) => {
                out.error(format!("chain({m}, {k})"), "threshold", e);
                continue;
            }
        };
        let mut above_ok = 0;
        let mut embed_ok = 0;
        let mut below = 0;
        let mut error = None;
        for _ in 0..tol::CHAIN_SAMPLES {
            // offset in (0, CHAIN_SPREAD]
            let c = t + (1.0 - rng.random::<f64>()) * tol::CHAIN_SPREAD;
            match s.verify_chain(m, p, c) {
                Ok(ch) if ch.all() => above_ok += 1,
                Ok(_) => {}
                Err(e) => error = Some(e),
            }
            let c = rng.random_range(0.0..2.0 * t);
            if c <= t {
                below += 1;
            }
            match s.verify_chain(m, p, c) {
                Ok(ch) if ch.middle_le_right => embed_ok += 1,
                Ok(_) => {}
                Err(e) => error = Some(e),
            }
        }
        let n = tol::CHAIN_SAMPLES;
        if let Some(e) = error {
            out.error(format!("chain({m}, {k})"), "all true", e);
            continue;
        }
        out.push(format!("chain({m}, {k}) all true, c > threshold"), n, above_ok, "all", above_ok == n);
        out.push(
            format!("chain({m}, {k}) M <= R, c >= 0 ({below} below)"),
            n,
            embed_ok,
            "all",
            embed_ok == n && below > 0,
        );
    }
}

fn reference(s: &dyn Subject, out: &mut Checks) {
    out.close("bh_reference_lower(2) = 1.5^(1/4)", s.bh_reference_lower(2), 1.5f64.powf(0.25), tol::BH_REFERENCE);
    for m in 2..=6u32 {
        let floor = 2f64.powf(f64::from(m) / 16.0);
        let values: LibResult<Vec<f64>> = (2 * m..=4 * m).map(|k| s.real_reference_lower(m, int(k))).collect();
        let name = format!("real_reference_lower({m}, {}..{}) >= 2^(m/16)", 2 * m, 4 * m);
        match values {
            Ok(v) => {
                let min = v.iter().copied().fold(f64::INFINITY, f64::min);
                out.push(name, format!(">= {}", fmt(floor)), fmt(min), ">=", min >= floor);
            }
            Err(e) => out.error(name, fmt(floor), e),
        }
    }
}

fn random_polynomial(rng: &mut ChaCha8Rng) -> HomogeneousPolynomial {
    let n = rng.random_range(2..=3usize);
    let m = rng.random_range(2..=3u32);
    let count = rng.random_range(1..=4);
    let terms: std::collections::BTreeMap<Vec<u32>, Complex64> = (0..count)
        .map(|_| {
            let mut alpha = vec![0u32; n];
            for _ in 0..m {
                alpha[rng.random_range(0..n)] += 1;
            }
            (alpha, Complex64::new(rng.random_range(-2.0..2.0), rng.random_range(-2.0..2.0)))
        })
        .collect();
    HomogeneousPolynomial::new(n, m, terms).expect("valid by construction")
}

fn random_point(rng: &mut ChaCha8Rng, n: usize) -> Vec<Complex64> {
    (0..n).map(|_| Complex64::new(rng.random_range(-0.7..0.7), rng.random_range(-0.7..0.7))).collect()
}

fn random_scalar(rng: &mut ChaCha8Rng) -> Complex64 {
    loop {
        let z = Complex64::new(rng.random_range(-3.0..3.0), rng.random_range(-3.0..3.0));
        if z.norm() > 1e-3 {
            return z;
        }
    }
}

/// Collects the worst metric of a randomized property; any library error
/// fails the property.
struct Worst {
    value: f64,
    error: Option<String>,
}

impl Worst {
    fn new() -> Self {
        Self { value: 0.0, error: None }
    }

    fn take(&mut self, r: LibResult<f64>) {
        match r {
            Ok(v) if v.is_nan() => self.error = Some("NaN".into()),
            Ok(v) => self.value = self.value.max(v),
            Err(e) => self.error = Some(e.to_string()),
        }
    }

    fn report(self, out: &mut Checks, name: String, tolerance: f64) {
        match self.error {
            Some(e) => out.error(name, format!("<= {tolerance:e}"), e),
            None => out.push(name, "0", format!("{:.3e}", self.value), format!("{tolerance:e}"), self.value <= tolerance),
        }
    }
}

fn properties(s: &dyn Subject, out: &mut Checks) {
    let n = tol::PROPERTY_CASES;
    let mut rng = ChaCha8Rng::seed_from_u64(tol::SEED ^ 8);
    let light = |seed: u64| OptimizerConfig { starts: 8, seed, ..OptimizerConfig::default() };

    let mut worst = Worst::new();
    for _ in 0..n {
        let poly = random_polynomial(&mut rng);
        let z = random_point(&mut rng, poly.dimension());
        let lambda = random_scalar(&mut rng);
        let scaled: Vec<Complex64> = z.iter().map(|w| w * lambda).collect();
        let magnitude: f64 = poly
            .terms()
            .map(|(a, c)| c.norm() * a.as_slice().iter().zip(&scaled).map(|(&e, w)| w.norm().powi(e as i32)).product::<f64>())
            .sum();
        worst.take((|| {
            let lhs = s.evaluate(&poly, &scaled)?;
            let rhs = lambda.powu(poly.degree()) * s.evaluate(&poly, &z)?;
            Ok((lhs - rhs).norm() / magnitude.max(f64::MIN_POSITIVE))
        })());
    }
    worst.report(out, format!("homogeneity P(lz) = l^m P(z), {n} cases"), tol::HOMOGENEITY);

    let mut worst = Worst::new();
    for _ in 0..n {
        let poly = random_polynomial(&mut rng);
        let z = random_point(&mut rng, poly.dimension());
        worst.take((|| {
            let grad = s.complex_gradient(&poly, &z)?;
            let h = tol::GRADIENT_STEP;
            let mut err: f64 = 0.0;
            for j in 0..z.len() {
                let (mut plus, mut minus) = (z.clone(), z.clone());
                plus[j] += h;
                minus[j] -= h;
                let fd = (s.evaluate(&poly, &plus)? - s.evaluate(&poly, &minus)?) / (2.0 * h);
                err = err.max((fd - grad.get(j).copied().unwrap_or_default()).norm());
            }
            Ok(err)
        })());
    }
    worst.report(out, format!("gradient vs central differences, {n} cases"), tol::GRADIENT_FD);

    let rhos = [1.0, 1.25, 1.5, 2.0, 3.0, 4.0, 8.0, f64::INFINITY];
    let mut worst = Worst::new();
    for _ in 0..n {
        let poly = random_polynomial(&mut rng);
        worst.take((|| {
            let norms: Vec<f64> = rhos.iter().map(|&r| s.coefficient_norm(&poly, r)).collect::<LibResult<_>>()?;
            Ok(norms.windows(2).map(|w| (w[1] - w[0]) / w[0]).fold(0.0, f64::max))
        })());
    }
    worst.report(out, format!("coefficient norm non-increasing in rho, {n} cases"), tol::COEFFICIENT_NORM);

    let exponents: Vec<ExtendedExponent> =
        ["2", "5/2", "3", "4", "6", "10", "inf"].iter().map(|e| e.parse().expect("literal")).collect();
    let mut worst = Worst::new();
    for case in 0..n {
        let poly = random_polynomial(&mut rng);
        let i = rng.random_range(0..exponents.len() - 1);
        let j = rng.random_range(i + 1..exponents.len());
        let cfg = light(case as u64);
        worst.take((|| {
            let small = s.supnorm_search(&poly, exponents[i], &cfg, &[])?;
            // the smaller-p maximizer is feasible for the larger p
            let large = s.supnorm_search(&poly, exponents[j], &cfg, std::slice::from_ref(&small.maximizer))?;
            Ok((small.value - large.value) / large.value.max(1.0))
        })());
    }
    worst.report(out, format!("sup-norm non-decreasing in p, {n} cases"), tol::OPTIMIZER_RELATIVE);

    let quotient_exponents: Vec<ExtendedExponent> =
        ["4", "6", "9", "inf"].iter().map(|e| e.parse().expect("literal")).collect();
    let mut worst = Worst::new();
    for case in 0..n {
        let poly = random_polynomial(&mut rng);
        let lambda = random_scalar(&mut rng);
        let p = quotient_exponents[rng.random_range(0..quotient_exponents.len())];
        let cfg = light(case as u64);
        worst.take((|| {
            let scaled = poly.scaled(lambda)?;
            let a = s.estimated_quotient(&poly, p, &cfg)?;
            let b = s.estimated_quotient(&scaled, p, &cfg)?;
            Ok((a - b).abs() / a.abs().max(1.0))
        })());
    }
    worst.report(out, format!("quotient invariant under P -> lP, {n} cases"), tol::OPTIMIZER_RELATIVE);

    let mut mismatches = 0;
    let mut error = None;
    for case in 0..n {
        let poly = random_polynomial(&mut rng);
        let p = exponents[rng.random_range(0..exponents.len())];
        let cfg = light(case as u64);
        match (s.supnorm_search(&poly, p, &cfg, &[]), s.supnorm_search(&poly, p, &cfg, &[])) {
            (Ok(a), Ok(b)) => {
                let same = a.value.to_bits() == b.value.to_bits()
                    && a.maximizer.len() == b.maximizer.len()
                    && a.maximizer.iter().zip(&b.maximizer).all(|(x, y)| {
                        x.re.to_bits() == y.re.to_bits() && x.im.to_bits() == y.im.to_bits()
                    });
                if !same {
                    mismatches += 1;
                }
            }
            (Err(e), _) | (_, Err(e)) => error = Some(e),
        }
    }
    let name = format!("optimizer deterministic under fixed seed, {n} cases");
    match error {
        Some(e) => out.error(name, "0 mismatches", e),
        None => out.push(name, 0, mismatches, "bitwise", mismatches == 0),
    }
}
