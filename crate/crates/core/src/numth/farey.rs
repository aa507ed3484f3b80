//! The Farey bad set: residues close to `p·c/d` for small denominators.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_integer::{gcd, Integer};

use super::prime::{isqrt, PrimeModulus};
use super::ExactRational;
use crate::{Error, Result};

/// Neighbourhood scale `C > 0`, stored as a reduced fraction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct FareyConfig {
    numer: u64,
    denom: u64,
}

impl Default for FareyConfig {
    fn default() -> Self {
        FareyConfig { numer: 1, denom: 1 }
    }
}

impl FareyConfig {
    pub fn new(numer: u64, denom: u64) -> Result<Self> {
        if numer == 0 || denom == 0 {
            return Err(Error::InvalidFareyScale(format!("{numer}/{denom}")));
        }
        let g = gcd(numer, denom);
        Ok(FareyConfig {
            numer: numer / g,
            denom: denom / g,
        })
    }

    pub fn numer(&self) -> u64 {
        self.numer
    }

    pub fn denom(&self) -> u64 {
        self.denom
    }

    pub fn is_one(&self) -> bool {
        self.numer == 1 && self.denom == 1
    }

    pub fn as_rational(&self) -> ExactRational {
        ExactRational::new(self.numer.into(), self.denom.into())
    }
}

impl fmt::Display for FareyConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.denom == 1 {
            write!(f, "{}", self.numer)
        } else {
            write!(f, "{}/{}", self.numer, self.denom)
        }
    }
}

impl FromStr for FareyConfig {
    type Err = Error;

    /// Accepts `3`, `3/2` or `1.5`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidFareyScale(s.to_string());
        let s = s.trim();
        if let Some((n, d)) = s.split_once('/') {
            let n = n.trim().parse().map_err(|_| bad())?;
            let d = d.trim().parse().map_err(|_| bad())?;
            return FareyConfig::new(n, d).map_err(|_| bad());
        }
        if let Some((int, frac)) = s.split_once('.') {
            if frac.is_empty() || frac.len() > 18 || !frac.bytes().all(|b| b.is_ascii_digit()) {
                return Err(bad());
            }
            let denom = 10u64.pow(frac.len() as u32);
            let int: u64 = if int.is_empty() {
                0
            } else {
                int.parse().map_err(|_| bad())?
            };
            let frac: u64 = frac.parse().map_err(|_| bad())?;
            let numer = int
                .checked_mul(denom)
                .and_then(|x| x.checked_add(frac))
                .ok_or_else(bad)?;
            return FareyConfig::new(numer, denom).map_err(|_| bad());
        }
        FareyConfig::new(s.parse().map_err(|_| bad())?, 1).map_err(|_| bad())
    }
}

/// Is `x` in the neighbourhood of `p·c/d`, i.e. `|x - pc/d| <= C √p / d²`?
/// Decided as `(|xd - pc| · d · denom(C))² <= numer(C)² · p`.
fn in_neighbourhood(x: u64, p: u64, c: u64, d: u64, cfg: FareyConfig) -> bool {
    let dev = (x as u128 * d as u128).abs_diff(p as u128 * c as u128);
    let fast = dev
        .checked_mul(d as u128)
        .and_then(|v| v.checked_mul(cfg.denom as u128))
        .and_then(|v| v.checked_mul(v))
        .zip(
            (cfg.numer as u128)
                .checked_mul(cfg.numer as u128)
                .and_then(|v| v.checked_mul(p as u128)),
        );
    match fast {
        Some((lhs, rhs)) => lhs <= rhs,
        None => {
            let lhs = BigUint::from(dev) * d * cfg.denom;
            let rhs = BigUint::from(cfg.numer).pow(2) * p;
            &lhs * &lhs <= rhs
        }
    }
}

/// Membership of `0 <= q < p` in the bad set. For every `d <= √p` only the
/// two numerators around `qd/p` can be nearest.
pub fn is_farey_neighbour(q: u64, p: PrimeModulus, cfg: FareyConfig) -> bool {
    let p = p.get();
    debug_assert!(q < p);
    (1..=isqrt(p)).any(|d| {
        let lo = (q as u128 * d as u128 / p as u128) as u64;
        [lo, lo + 1]
            .into_iter()
            .filter(|&c| c <= d && gcd(c, d) == 1)
            .any(|c| in_neighbourhood(q, p, c, d, cfg))
    })
}

/// Refuses bad-set enumeration above `max_p`; membership stays available.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BadSetBudget {
    pub max_p: u64,
}

impl Default for BadSetBudget {
    fn default() -> Self {
        BadSetBudget { max_p: 50_000_000 }
    }
}

/// Sorted list of all F-neighbours in `[0, p)`, enumerated by walking
/// outward from each Farey point.
pub fn bad_set(p: PrimeModulus, cfg: FareyConfig, budget: BadSetBudget) -> Result<Vec<u64>> {
    let pv = p.get();
    if pv > budget.max_p {
        return Err(Error::BudgetExceeded {
            what: "bad-set enumeration (p)",
            needed: pv as u128,
            budget: budget.max_p as u128,
        });
    }
    let mut members = Vec::new();
    for d in 1..=isqrt(pv) {
        for c in (0..=d).filter(|&c| gcd(c, d) == 1) {
            let (floor, rem) = (pv as u128 * c as u128).div_rem(&(d as u128));
            let ceil = floor as u64 + u64::from(rem != 0);
            let mut x = ceil;
            while x < pv && in_neighbourhood(x, pv, c, d, cfg) {
                members.push(x);
                x += 1;
            }
            let mut x = ceil.checked_sub(1);
            while let Some(v) = x.filter(|&v| in_neighbourhood(v, pv, c, d, cfg)) {
                members.push(v);
                x = v.checked_sub(1);
            }
        }
    }
    members.sort_unstable();
    members.dedup();
    Ok(members)
}
