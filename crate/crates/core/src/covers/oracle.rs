//! Dedekind-sum-free recomputation of χ from the eigensheaf decomposition:
//! `χ(X) = p χ(Y) + ½ Σ_i L^(i).(L^(i) + K_Y)`, with `Σ_i L^(i)²` expanded
//! through the floor sums `S(a, b; p) = Σ [ai/p][bi/p]`.

use std::collections::HashMap;

use super::CoverSpec;
use crate::numth::{floor_product_sum, rat};
use crate::{Error, ExactRational, Result};

/// Largest `p` accepted: the oracle is `O(p)` per node class.
pub const ORACLE_MAX_P: u64 = 10_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleValues {
    /// `Σ_i L^(i)²`.
    pub l_squared: ExactRational,
    /// `Σ_i L^(i).K_Y`.
    pub l_dot_k: ExactRational,
    pub chi: ExactRational,
    /// `12 χ - c2`, with `c2` from the topological Euler number of the cover.
    pub c1_sq: ExactRational,
}

pub fn floor_sum_oracle(spec: &CoverSpec) -> Result<OracleValues> {
    let p = spec.p().get();
    if p > ORACLE_MAX_P {
        return Err(Error::BudgetExceeded {
            what: "floor-sum oracle modulus",
            needed: p as u128,
            budget: ORACLE_MAX_P as u128,
        });
    }
    let ra = spec.resolved();
    let nu = &spec.assignment().nu;
    let pi = p as i128;
    let mut diag: HashMap<u64, i128> = HashMap::new();
    let mut s_aa = |a: u64| *diag.entry(a).or_insert_with(|| floor_product_sum(a, a, p));

    let d2: i128 = ra.divisors.iter().map(|d| d.self_int as i128).sum();
    let mut l_squared = rat((pi - 1) * (2 * pi - 1) * d2, 6 * pi);
    for (&(j, k), &count) in &ra.nodes {
        let (a, b) = (nu[j], nu[k]);
        let (ai, bi) = (a as i128, b as i128);
        let term = rat(
            (pi - 1) * (2 * pi - 1) * (ai * ai + bi * bi),
            6 * pi * ai * bi,
        ) - rat(s_aa(a) * bi, ai)
            - rat(s_aa(b) * ai, bi)
            + rat(2 * floor_product_sum(a, b, p), 1);
        l_squared += term * rat(count as i128, 1);
    }
    let dk: i128 = ra
        .divisors
        .iter()
        .map(|d| 2 * d.genus as i128 - 2 - d.self_int as i128)
        .sum();
    let l_dot_k = rat((pi - 1) * dk, 2);
    let chi = rat(pi * ra.chi_y() as i128, 1) + (&l_squared + &l_dot_k) * rat(1, 2);

    // e(X) = p e(Y) - (p - 1) e(D_red) + Σ_nodes l(q, p)
    let euler_d: i128 = ra
        .divisors
        .iter()
        .map(|d| 2 - 2 * d.genus as i128)
        .sum::<i128>()
        - ra.t2_total as i128;
    let lcf = spec.error_terms().lcf as i128;
    let c2 = pi * ra.surface_y.c2 as i128 - (pi - 1) * euler_d + lcf;
    let c1_sq = &chi * rat(12, 1) - rat(c2, 1);
    Ok(OracleValues {
        l_squared,
        l_dot_k,
        chi,
        c1_sq,
    })
}
