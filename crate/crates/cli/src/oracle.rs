//! Arbitrary-precision evaluation of the c-threshold, independent of the
//! floating-point implementation in `hlbound::bounds`.
//!
//! Numbers are fixed point: an integer `x` stands for `x / 10^DIGITS`. Every
//! power of two with rational exponent `a/b` is an exact integer `b`-th root,
//! so the only rounding is the floor in each root, division and square root.

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::One;

/// Working precision. Guard digits are dropped from the result.
const DIGITS: u32 = 70;
const GUARD: u32 = 10;

fn scale() -> BigUint {
    BigUint::from(10u32).pow(DIGITS)
}

/// `⌊2^{num/den} · 10^DIGITS⌋`.
fn pow2_fixed(num: i128, den: i128) -> BigUint {
    assert!(den > 0);
    let g = num.gcd(&den);
    let (num, den) = (num / g, den / g);
    let den = u32::try_from(den).expect("root degree fits in u32");
    let scaled = scale().pow(den);
    let two_pow = BigUint::one() << num.unsigned_abs();
    let radicand = if num >= 0 { two_pow * scaled } else { scaled / two_pow };
    radicand.nth_root(den)
}

/// Decimal expansion of the threshold with `DIGITS − GUARD` fractional
/// digits, or `None` outside the formula's domain.
///
/// `m ≥ 4`, `p = p_num/p_den ≥ 2m`. The squared threshold is
/// `(2^{(2p+k−2m)/p} − 2^{(mp+p−2m)/(mp)}) / (1 − 2^{−(2m−k)/p})` with
/// `k = 4` for even `m` and `k = 6` for odd `m`.
pub fn threshold_decimal(m: u32, p_num: i128, p_den: i128) -> Option<String> {
    if m < 4 || p_den <= 0 || p_num < 2 * i128::from(m) * p_den {
        return None;
    }
    let mm = i128::from(m);
    let k = if m % 2 == 0 { 4 } else { 6 };
    // (2p + k − 2m)/p with p = P/Q is (2P + (k − 2m)Q)/P
    let a = pow2_fixed(2 * p_num + (k - 2 * mm) * p_den, p_num);
    // (mp + p − 2m)/(mp) = (mP + P − 2mQ)/(mP)
    let b = pow2_fixed(mm * p_num + p_num - 2 * mm * p_den, mm * p_num);
    // 2^{−(2m − k)/p} = 2^{−(2m − k)Q/P}
    let d = pow2_fixed(-(2 * mm - k) * p_den, p_num);
    let s = scale();
    if a <= b || d >= s {
        return None;
    }
    let ratio = (a - b) * &s / (&s - d);
    let root = (ratio * &s).sqrt();
    Some(to_decimal(&root, DIGITS - GUARD))
}

fn to_decimal(x: &BigUint, keep: u32) -> String {
    let truncated = x / BigUint::from(10u32).pow(DIGITS - keep);
    let digits = truncated.to_str_radix(10);
    let keep = keep as usize;
    if keep == 0 {
        return digits;
    }
    let padded = if digits.len() <= keep { format!("{}{digits}", "0".repeat(keep + 1 - digits.len())) } else { digits };
    let (int, frac) = padded.split_at(padded.len() - keep);
    format!("{int}.{frac}")
}

/// Significant digits of a decimal string, ignoring sign, point and leading
/// zeros.
pub fn significant_digits(s: &str) -> usize {
    s.chars().filter(char::is_ascii_digit).skip_while(|&c| c == '0').count()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn powers_of_two() {
        let s = scale();
        assert_eq!(pow2_fixed(3, 1), BigUint::from(8u32) * &s);
        assert_eq!(pow2_fixed(-2, 2), &s / BigUint::from(2u32));
        let sqrt2 = to_decimal(&pow2_fixed(1, 2), 30);
        assert_eq!(sqrt2, "1.414213562373095048801688724209");
    }

    #[test]
    fn threshold_reference_digits() {
        // cross-checked with an independent 60-digit evaluation
        let t48 = threshold_decimal(4, 8, 1).unwrap();
        assert!(t48.starts_with("1.68179283050742908606225095"), "{t48}");
        let t510 = threshold_decimal(5, 10, 1).unwrap();
        assert!(t510.starts_with("2.06388612095079973284932428"), "{t510}");
        assert!(significant_digits(&t48) >= 50);
    }

    #[test]
    fn rational_p_matches_integer_p() {
        assert_eq!(threshold_decimal(4, 16, 2), threshold_decimal(4, 8, 1));
    }

    #[test]
    fn outside_domain() {
        assert_eq!(threshold_decimal(3, 6, 1), None);
        assert_eq!(threshold_decimal(4, 7, 1), None);
    }
}
