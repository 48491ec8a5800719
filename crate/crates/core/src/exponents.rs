//! Exact coefficient-norm exponents of the polynomial Hardy–Littlewood
//! inequality.
//!
//! For `2m ≤ p ≤ ∞` the optimal exponent is `2mp / (mp + p − 2m)`, which
//! tends to the Bohnenblust–Hille value `2m / (m + 1)` as `p → ∞`. For
//! `m < p < 2m` it is `p / (p − m)`. Everything here is computed in exact
//! rational arithmetic; floats only appear at the call sites that need them.

use std::fmt;
use std::str::FromStr;

use num_rational::Ratio;
use num_traits::{One, ToPrimitive};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Exact rational number, always stored reduced with a positive denominator.
pub type Rational = Ratio<i128>;

/// The index `p` of an `ℓ_p` space: a rational `p ≥ 1` or `∞`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub enum ExtendedExponent {
    Finite(Rational),
    Infinity,
}

impl ExtendedExponent {
    pub fn finite(value: Rational) -> Result<Self> {
        if value < Rational::one() {
            return Err(Error::Domain(format!("p must be at least 1, got {value}")));
        }
        Ok(Self::Finite(value))
    }

    pub fn integer(value: i128) -> Result<Self> {
        Self::finite(Rational::from_integer(value))
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, Self::Infinity)
    }

    pub fn as_rational(&self) -> Option<Rational> {
        match self {
            Self::Finite(r) => Some(*r),
            Self::Infinity => None,
        }
    }

    /// `f64::INFINITY` for `p = ∞`.
    pub fn to_f64(&self) -> f64 {
        match self {
            Self::Finite(r) => rational_to_f64(r),
            Self::Infinity => f64::INFINITY,
        }
    }

    /// Compare against the integer `k`: `Less`, `Equal` or `Greater`.
    pub fn cmp_integer(&self, k: i128) -> std::cmp::Ordering {
        match self {
            Self::Finite(r) => r.cmp(&Rational::from_integer(k)),
            Self::Infinity => std::cmp::Ordering::Greater,
        }
    }
}

impl fmt::Display for ExtendedExponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Finite(r) => write!(f, "{r}"),
            Self::Infinity => f.write_str("inf"),
        }
    }
}

/// Accepts `inf`, integers, decimals (`2.5`) and fractions (`5/2`); decimals
/// are converted to exact rationals.
impl FromStr for ExtendedExponent {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        let bad = || Error::ParseExponent(s.to_string());
        if matches!(t.to_ascii_lowercase().as_str(), "inf" | "infinity" | "∞") {
            return Ok(Self::Infinity);
        }
        let value = if let Some((num, den)) = t.split_once('/') {
            let num: i128 = num.trim().parse().map_err(|_| bad())?;
            let den: i128 = den.trim().parse().map_err(|_| bad())?;
            if den == 0 {
                return Err(bad());
            }
            Rational::new(num, den)
        } else {
            parse_decimal(t).ok_or_else(bad)?
        };
        Self::finite(value)
    }
}

impl TryFrom<String> for ExtendedExponent {
    type Error = Error;

    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

impl From<ExtendedExponent> for String {
    fn from(p: ExtendedExponent) -> String {
        p.to_string()
    }
}

fn parse_decimal(t: &str) -> Option<Rational> {
    let (neg, body) = match t.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, t.strip_prefix('+').unwrap_or(t)),
    };
    let (int_part, frac_part) = body.split_once('.').unwrap_or((body, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return None;
    }
    if !int_part.chars().chain(frac_part.chars()).all(|c| c.is_ascii_digit()) {
        return None;
    }
    let digits = format!("{int_part}{frac_part}");
    let numer: i128 = digits.parse().ok()?;
    let denom = 10i128.checked_pow(u32::try_from(frac_part.len()).ok()?)?;
    let r = Rational::new(numer, denom);
    Some(if neg { -r } else { r })
}

pub fn rational_to_f64(r: &Rational) -> f64 {
    // Reduced i128 ratios convert exactly whenever both parts fit in 2^53.
    r.numer().to_f64().unwrap_or(f64::NAN) / r.denom().to_f64().unwrap_or(f64::NAN)
}

/// `2^r` evaluated in double precision from an exact exponent.
pub fn pow2(r: &Rational) -> f64 {
    2f64.powf(rational_to_f64(r))
}

fn check_degree(m: u32) -> Result<()> {
    if m < 2 {
        return Err(Error::Domain(format!("degree m must be at least 2, got {m}")));
    }
    Ok(())
}

/// `2mp / (mp + p − 2m)` for `p ≥ 2m`, and `2m / (m + 1)` at `p = ∞`.
pub fn hl_exponent(m: u32, p: ExtendedExponent) -> Result<Rational> {
    check_degree(m)?;
    let mm = i128::from(m);
    match p {
        ExtendedExponent::Infinity => Ok(Rational::new(2 * mm, mm + 1)),
        ExtendedExponent::Finite(p) => {
            if p < Rational::from_integer(2 * mm) {
                return Err(Error::Domain(format!(
                    "the exponent 2mp/(mp+p-2m) needs p >= 2m = {}, got p = {p}",
                    2 * mm
                )));
            }
            let m = Rational::from_integer(mm);
            let two = Rational::from_integer(2);
            Ok(two * m * p / (m * p + p - two * m))
        }
    }
}

/// `p / (p − m)` for `m < p < 2m`.
pub fn hl_exponent_low(m: u32, p: ExtendedExponent) -> Result<Rational> {
    check_degree(m)?;
    let mm = Rational::from_integer(i128::from(m));
    match p {
        ExtendedExponent::Finite(p) if p > mm && p < mm * 2 => Ok(p / (p - mm)),
        _ => Err(Error::Domain(format!(
            "the exponent p/(p-m) needs m < p < 2m with m = {m}, got p = {p}"
        ))),
    }
}

/// Picks the regime: [`hl_exponent`] for `p ≥ 2m` (or `∞`), [`hl_exponent_low`]
/// for `m < p < 2m`.
pub fn exponent_for(m: u32, p: ExtendedExponent) -> Result<Rational> {
    check_degree(m)?;
    let mm = i128::from(m);
    if p.cmp_integer(mm).is_le() {
        return Err(Error::Domain(format!(
            "no Hardy-Littlewood inequality for p <= m (m = {m}, p = {p})"
        )));
    }
    if p.cmp_integer(2 * mm).is_ge() {
        hl_exponent(m, p)
    } else {
        hl_exponent_low(m, p)
    }
}

/// `1/ρ` for the regime's exponent `ρ`; the outer power of the coefficient norm.
pub fn outer_exponent(m: u32, p: ExtendedExponent) -> Result<Rational> {
    Ok(exponent_for(m, p)?.recip())
}
