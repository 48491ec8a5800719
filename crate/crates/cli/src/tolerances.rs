//! Every threshold used by `verify` and the acceptance target.

use std::time::Duration;

/// `lower_bound_main(2, 4)` against `√2`.
pub const ANCHOR_LOWER: f64 = 1e-12;
/// `upper_bound(2, 4, 3.1915/2^{3/2})` against 3.1915 (four printed decimals).
pub const ANCHOR_UPPER: f64 = 1e-4;
pub const ANCHOR_UPPER_VALUE: f64 = 3.1915;

/// Optimizer against exact closed forms.
pub const CLOSED_FORM: f64 = 1e-6;
/// Optimizer value may exceed a closed-form upper bound by rounding only.
pub const SOUNDNESS_SLACK: f64 = 1e-9;
/// Optimizer against the Lagrange-multiplier value `m^{−m/p}`.
pub const LAGRANGE: f64 = 1e-5;
pub const SOUNDNESS_SAMPLES: usize = 20;
pub const SOUNDNESS_C_MAX: f64 = 10.0;

/// `threshold_c` against the high-precision oracle and the quoted decimals.
pub const THRESHOLD: f64 = 1e-5;
pub const THRESHOLD_4_8: f64 = 1.681793;
pub const THRESHOLD_5_10: f64 = 2.063890;
/// Minimum significant digits the oracle must deliver.
pub const ORACLE_DIGITS: usize = 50;
/// `lower_bound_777(m, p, ε)` at large `ε` against its limit.
pub const LIMIT: f64 = 1e-4;
pub const LIMIT_EPSILON: f64 = 1e9;

pub const CHAIN_SAMPLES: usize = 100;
/// Offsets above the threshold drawn from `(0, CHAIN_SPREAD)`.
pub const CHAIN_SPREAD: f64 = 50.0;

/// `bh_reference_lower(2)` against `1.5^{1/4}`.
pub const BH_REFERENCE: f64 = 1e-12;

pub const PROPERTY_CASES: usize = 200;
/// Central differences against the analytic gradient.
pub const GRADIENT_FD: f64 = 1e-6;
pub const GRADIENT_STEP: f64 = 1e-5;
/// `P(λz) = λ^m P(z)` relative to the sum of term magnitudes.
pub const HOMOGENEITY: f64 = 1e-12;
/// Relative slack for properties of optimizer outputs (monotonicity in `p`,
/// scale invariance of the estimated quotient).
pub const OPTIMIZER_RELATIVE: f64 = 1e-9;
/// Relative slack for monotonicity of the coefficient norm in `ρ`.
pub const COEFFICIENT_NORM: f64 = 1e-14;

pub const BUDGET_CLOSED_FORM: Duration = Duration::from_secs(10);
pub const BUDGET_SOUNDNESS: Duration = Duration::from_secs(60);
pub const BUDGET_PROPERTIES: Duration = Duration::from_secs(60);

/// Seed for every randomized check.
pub const SEED: u64 = 0x5eed_2024;
