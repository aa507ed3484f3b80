//! Text rendering of exact rationals.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::ExactRational;

/// Decimal expansion truncated (toward zero) to `digits` places:
/// `1441949/733435` → `"1.966"` at three digits.
pub fn truncated(x: &ExactRational, digits: u32) -> String {
    let scale = BigInt::from(10u32).pow(digits);
    let scaled = (x.numer().abs() * &scale) / x.denom().abs();
    let (int, frac) = scaled.div_rem(&scale);
    let sign = if x.is_negative() && !scaled.is_zero() {
        "-"
    } else {
        ""
    };
    if digits == 0 {
        return format!("{sign}{int}");
    }
    format!(
        "{sign}{int}.{:0>width$}",
        frac.to_string(),
        width = digits as usize
    )
}

/// Decimal expansion rounded half away from zero to `digits` places.
pub fn rounded(x: &ExactRational, digits: u32) -> String {
    let half = ExactRational::new(1.into(), BigInt::from(10u32).pow(digits) * 2);
    let shifted = if x.is_negative() { x - half } else { x + half };
    truncated(&shifted, digits)
}

/// `n/d`, or just `n` for integers.
pub fn fraction(x: &ExactRational) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Integer with digits grouped by three: `4341016` → `"4 341 016"`.
pub fn grouped(n: i64) -> String {
    let digits = n.unsigned_abs().to_string();
    let mut out = String::new();
    for (i, ch) in digits.chars().enumerate() {
        if i > 0 && (digits.len() - i).is_multiple_of(3) {
            out.push(' ');
        }
        out.push(ch);
    }
    if n < 0 {
        format!("-{out}")
    } else {
        out
    }
}
