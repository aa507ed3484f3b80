//! Exact comparisons against expressions in `√p` and `log p`.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::farey::FareyConfig;
use super::{rat, ExactRational};

/// Outcome of a comparison decided through a rational enclosure.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Decision {
    Holds,
    Fails,
    Undecided,
}

/// `x <= coef·√p + offset` with `coef >= 0`, decided by squaring.
pub fn le_affine_sqrt(
    x: &ExactRational,
    coef: &ExactRational,
    offset: &ExactRational,
    p: u64,
) -> bool {
    debug_assert!(!coef.is_negative());
    let lhs = x - offset;
    if !lhs.is_positive() {
        return true;
    }
    &lhs * &lhs <= coef * coef * ExactRational::from_integer(p.into())
}

/// `x < coef·√p + offset` with `coef >= 0`.
pub fn lt_affine_sqrt(
    x: &ExactRational,
    coef: &ExactRational,
    offset: &ExactRational,
    p: u64,
) -> bool {
    debug_assert!(!coef.is_negative());
    let lhs = x - offset;
    if lhs.is_negative() {
        return true;
    }
    if lhs.is_zero() {
        return coef.is_positive() && p > 0;
    }
    &lhs * &lhs < coef * coef * ExactRational::from_integer(p.into())
}

fn girstmair_coef(cfg: FareyConfig) -> ExactRational {
    rat(2, 1) + cfg.as_rational().recip()
}

/// `|s| <= (2 + 1/C)√p + 5`.
pub fn dedekind_bound_holds(s: &ExactRational, p: u64, cfg: FareyConfig) -> bool {
    le_affine_sqrt(&s.abs(), &girstmair_coef(cfg), &rat(5, 1), p)
}

/// `l <= (2 + 1/C)√p + 2`.
pub fn length_bound_holds(l: u64, p: u64, cfg: FareyConfig) -> bool {
    le_affine_sqrt(&rat(l as i128, 1), &girstmair_coef(cfg), &rat(2, 1), p)
}

/// `2 atanh(y)` for `0 <= y < 1`, enclosed by the truncated series and its
/// geometric tail bound.
fn two_atanh_enclosure(y: &ExactRational, terms: u32) -> (ExactRational, ExactRational) {
    let y2 = y * y;
    let mut power = y.clone();
    let mut sum = ExactRational::zero();
    for k in 0..terms {
        sum += &power / ExactRational::from_integer(BigInt::from(2 * k + 1));
        power *= &y2;
    }
    // tail <= y^(2N+1) / ((2N+1)(1 - y²))
    let tail = &power
        / (ExactRational::from_integer(BigInt::from(2 * terms + 1)) * (ExactRational::one() - &y2));
    let two = rat(2, 1);
    (&two * &sum, &two * (sum + tail))
}

/// Rational enclosure `lo <= ln(x) <= hi` for `x > 0`. The width is about
/// `9^-terms`.
pub fn ln_enclosure(x: &ExactRational, terms: u32) -> (ExactRational, ExactRational) {
    assert!(x.is_positive(), "logarithm of a non-positive number");
    if x < &ExactRational::one() {
        let (lo, hi) = ln_enclosure(&x.recip(), terms);
        return (-hi, -lo);
    }
    // x = 2^k m with 1 <= m < 2
    let mut m = x.clone();
    let mut k: i128 = 0;
    let two = rat(2, 1);
    while m >= two {
        m /= &two;
        k += 1;
    }
    let one = ExactRational::one();
    let y = (&m - &one) / (&m + &one);
    let (m_lo, m_hi) = two_atanh_enclosure(&y, terms);
    let (l2_lo, l2_hi) = two_atanh_enclosure(&rat(1, 3), terms);
    let k = rat(k, 1);
    (&k * l2_lo + m_lo, &k * l2_hi + m_hi)
}

/// `count <= C √p (ln p + 2 ln 2) = C √p ln(4p)`.
pub fn farey_count_bound(count: u64, p: u64, cfg: FareyConfig) -> Decision {
    let (lo, hi) = ln_enclosure(&rat(4 * p as i128, 1), 40);
    let c = cfg.as_rational();
    let n = rat(count as i128, 1);
    let pr = rat(p as i128, 1);
    // both sides are non-negative once ln(4p) > 0, which holds for p >= 1
    let n2 = &n * &n;
    let scale = &c * &c * &pr;
    if n2 <= &scale * &lo * &lo {
        Decision::Holds
    } else if n2 > &scale * &hi * &hi {
        Decision::Fails
    } else {
        Decision::Undecided
    }
}
