//! Negative-regular (Hirzebruch-Jung) continued fractions
//! `p/q = e_1 - 1/(e_2 - 1/(... - 1/e_s))` with every `e_i >= 2`.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::prime::Residue;
use super::{rat, ExactRational};
use crate::{Error, Result};

/// Iterator over the partial quotients of `p/q`, driven by the remainder
/// recursion `b_{i-2} = b_{i-1} e_i - b_i`, `0 <= b_i < b_{i-1}`.
#[derive(Debug, Clone)]
pub struct NcfQuotients {
    prev: u64,
    cur: u64,
}

impl NcfQuotients {
    pub fn new(r: Residue) -> Self {
        NcfQuotients {
            prev: r.p(),
            cur: r.q(),
        }
    }
}

impl Iterator for NcfQuotients {
    type Item = u64;

    fn next(&mut self) -> Option<u64> {
        if self.cur == 0 {
            return None;
        }
        let e = self.prev.div_ceil(self.cur);
        let next = e * self.cur - self.prev;
        self.prev = self.cur;
        self.cur = next;
        Some(e)
    }
}

/// The full expansion with its remainder sequence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NcfExpansion {
    quotients: Vec<u64>,
    /// `b_{-1} = p, b_0 = q, b_1, ..., b_s = 0`.
    remainders: Vec<u64>,
}

impl NcfExpansion {
    pub fn quotients(&self) -> &[u64] {
        &self.quotients
    }

    /// `remainders()[i + 1]` is `b_i`, so the slice starts at `b_{-1} = p`.
    pub fn remainders(&self) -> &[u64] {
        &self.remainders
    }

    /// `b_i` for `-1 <= i <= s`.
    pub fn b(&self, i: isize) -> u64 {
        self.remainders[(i + 1) as usize]
    }

    pub fn len(&self) -> usize {
        self.quotients.len()
    }

    pub fn is_empty(&self) -> bool {
        self.quotients.is_empty()
    }

    pub fn sum(&self) -> u64 {
        self.quotients.iter().sum()
    }
}

pub fn ncf_expand(r: Residue) -> NcfExpansion {
    let mut quotients = Vec::new();
    let mut remainders = vec![r.p(), r.q()];
    let mut it = NcfQuotients::new(r);
    while let Some(e) = it.next() {
        quotients.push(e);
        remainders.push(it.cur);
    }
    NcfExpansion {
        quotients,
        remainders,
    }
}

/// Length and quotient sum, without materialising the expansion.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct NcfSummary {
    pub length: u64,
    pub sum: u64,
}

pub fn ncf_summary(r: Residue) -> NcfSummary {
    NcfQuotients::new(r).fold(NcfSummary { length: 0, sum: 0 }, |acc, e| NcfSummary {
        length: acc.length + 1,
        sum: acc.sum + e,
    })
}

/// Evaluates `[e_1, ..., e_s]` through the convergent recurrences
/// `P_{i+1} = e_{i+1} P_i - P_{i-1}`, `Q_{i+1} = e_{i+1} Q_i - Q_{i-1}`.
pub fn ncf_eval(e: &[i64]) -> Result<ExactRational> {
    if e.is_empty() {
        return Err(Error::EmptyContinuedFraction);
    }
    if let Some((index, &value)) = e.iter().enumerate().find(|(_, &x)| x < 2) {
        return Err(Error::PartialQuotientTooSmall {
            index: index + 1,
            value,
        });
    }
    let (mut p_prev, mut p_cur) = (BigInt::zero(), BigInt::one());
    let (mut q_prev, mut q_cur) = (-BigInt::one(), BigInt::zero());
    for &ei in e {
        let ei = BigInt::from(ei);
        let p_next = &ei * &p_cur - &p_prev;
        let q_next = &ei * &q_cur - &q_prev;
        p_prev = std::mem::replace(&mut p_cur, p_next);
        q_prev = std::mem::replace(&mut q_cur, q_next);
    }
    Ok(ExactRational::new(p_cur, q_cur))
}

/// `l(q, p)`.
pub fn length(r: Residue) -> u64 {
    NcfQuotients::new(r).count() as u64
}

/// `c(q, p) = (q + q')/p + Σ (e_i - 2)`.
pub fn canonical_part(r: Residue) -> ExactRational {
    let summary = ncf_summary(r);
    let qq = (r.q() + r.inverse().q()) as i128;
    rat(qq, r.p() as i128) + rat(summary.sum as i128 - 2 * summary.length as i128, 1)
}

/// Sum of the partial quotients of the regular continued fraction
/// `n/m = [0; f_1, ..., f_r]` (canonical form, `f_r >= 2`).
pub fn rcf_total(n: u64, m: u64) -> Result<u64> {
    if n == 0 || n >= m || num_integer::gcd(n, m) != 1 {
        return Err(Error::NotReducedFraction { n, m });
    }
    let (mut a, mut b) = (m, n);
    let mut total = 0;
    while b != 0 {
        total += a / b;
        (a, b) = (b, a % b);
    }
    Ok(total)
}
