//! The partition system `S(A)`: one equation `Σ_j u_j μ_j = p` per block,
//! solved in positive integers.

mod assign;
mod format;
mod sample;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Zero};

pub use assign::{
    assign, is_good, node_residues, sample_good, sample_good_with, swapped_residue, GoodSample,
    GoodnessReport, MultiplicityAssignment, NodeResidue,
};
pub use format::{parse_partition, partition_to_toml};
pub use sample::{sample_uniform, Sampler};

use crate::arrangements::Arrangement;
use crate::numth::PrimeModulus;
use crate::{Error, Result};

/// Limit on the number of big-integer cells held by counting tables.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TableBudget {
    pub max_cells: u64,
}

impl Default for TableBudget {
    fn default() -> Self {
        TableBudget {
            max_cells: 20_000_000,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockEquation {
    /// Curve indices of the block, in declaration order.
    pub members: Vec<usize>,
    pub u: Vec<u64>,
}

impl BlockEquation {
    fn all_ones(&self) -> bool {
        self.u.iter().all(|&u| u == 1)
    }

    fn weight(&self) -> u64 {
        self.u.iter().sum()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiophSystem {
    target: u64,
    blocks: Vec<BlockEquation>,
}

impl DiophSystem {
    /// Blocks given by their weight vectors; members are numbered
    /// consecutively across blocks.
    pub fn new(target: u64, blocks: Vec<Vec<u64>>) -> Result<Self> {
        let mut next = 0;
        let blocks = blocks
            .into_iter()
            .map(|u| {
                let members = (next..next + u.len()).collect();
                next += u.len();
                BlockEquation { members, u }
            })
            .collect();
        Self::from_blocks(target, blocks)
    }

    fn from_blocks(target: u64, blocks: Vec<BlockEquation>) -> Result<Self> {
        if target == 0 || blocks.is_empty() {
            return Err(Error::PartitionMismatch("empty system".into()));
        }
        for (i, b) in blocks.iter().enumerate() {
            if b.u.is_empty() || b.u.contains(&0) {
                return Err(Error::PartitionMismatch(format!(
                    "block {} has a zero or missing weight",
                    i + 1
                )));
            }
            if b.u.iter().fold(0, |g, &u| g.gcd(&u)) != 1 {
                return Err(Error::PartitionMismatch(format!(
                    "weights of block {} are not coprime",
                    i + 1
                )));
            }
        }
        Ok(DiophSystem { target, blocks })
    }

    pub fn from_arrangement(a: &Arrangement, p: PrimeModulus) -> Result<Self> {
        crate::arrangements::validate(a)?;
        let blocks = a
            .block_members()
            .into_iter()
            .map(|members| {
                let u = members.iter().map(|&i| a.curves[i].u).collect();
                BlockEquation { members, u }
            })
            .collect();
        Self::from_blocks(p.get(), blocks)
    }

    pub fn target(&self) -> u64 {
        self.target
    }

    pub fn blocks(&self) -> &[BlockEquation] {
        &self.blocks
    }

    /// Total number of curves.
    pub fn d(&self) -> usize {
        self.blocks.iter().map(|b| b.u.len()).sum()
    }

    pub fn check(&self, sol: &PartitionSolution) -> Result<()> {
        if sol.blocks.len() != self.blocks.len() {
            return Err(Error::PartitionMismatch(format!(
                "expected {} blocks, got {}",
                self.blocks.len(),
                sol.blocks.len()
            )));
        }
        for (i, (b, mu)) in self.blocks.iter().zip(&sol.blocks).enumerate() {
            if b.u.len() != mu.len() {
                return Err(Error::PartitionMismatch(format!(
                    "block {} has {} curves, got {} parts",
                    i + 1,
                    b.u.len(),
                    mu.len()
                )));
            }
            if mu.iter().any(|&m| m == 0 || m >= self.target) {
                return Err(Error::PartitionMismatch(format!(
                    "block {} has a part outside (0, p)",
                    i + 1
                )));
            }
            let total: u128 =
                b.u.iter()
                    .zip(mu)
                    .map(|(&u, &m)| u as u128 * m as u128)
                    .sum();
            if total != self.target as u128 {
                return Err(Error::PartitionMismatch(format!(
                    "block {} sums to {total}, expected {}",
                    i + 1,
                    self.target
                )));
            }
        }
        Ok(())
    }

    /// `μ` indexed by curve, given a solution.
    pub fn curve_mu(&self, sol: &PartitionSolution) -> Result<Vec<u64>> {
        self.check(sol)?;
        let mut mu = vec![0; self.d()];
        for (b, parts) in self.blocks.iter().zip(&sol.blocks) {
            for (&i, &m) in b.members.iter().zip(parts) {
                mu[i] = m;
            }
        }
        Ok(mu)
    }
}

/// Positive solution of a [`DiophSystem`], one `μ`-vector per block.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PartitionSolution {
    pub blocks: Vec<Vec<u64>>,
}

impl std::fmt::Display for PartitionSolution {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self
            .blocks
            .iter()
            .map(|b| b.iter().map(u64::to_string).collect::<Vec<_>>().join("+"))
            .collect();
        f.write_str(&parts.join("; "))
    }
}

pub(crate) fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// Suffix counts for one block: `rows[k][r]` is the number of positive
/// solutions of `Σ_{j>=k} u_j μ_j = r`.
#[derive(Debug, Clone)]
pub(crate) struct SuffixTable {
    pub(crate) u: Vec<u64>,
    pub(crate) rows: Vec<Vec<BigUint>>,
}

impl SuffixTable {
    pub(crate) fn build(u: &[u64], target: u64, budget: TableBudget) -> Result<Self> {
        let cells = (u.len() as u128 + 1) * (target as u128 + 1);
        if cells > budget.max_cells as u128 {
            return Err(Error::BudgetExceeded {
                what: "partition counting table",
                needed: cells,
                budget: budget.max_cells as u128,
            });
        }
        let width = target as usize + 1;
        let d = u.len();
        let mut rows = vec![vec![BigUint::zero(); width]; d + 1];
        rows[d][0] = BigUint::one();
        for k in (0..d).rev() {
            let step = u[k] as usize;
            for r in step..width {
                let next = &rows[k + 1][r - step] + &rows[k][r - step];
                rows[k][r] = next;
            }
        }
        Ok(SuffixTable {
            u: u.to_vec(),
            rows,
        })
    }

    pub(crate) fn total(&self) -> &BigUint {
        &self.rows[0][self.rows[0].len() - 1]
    }
}

/// Number of positive solutions: the product of the block counts.
pub fn count_solutions(sys: &DiophSystem, budget: TableBudget) -> Result<BigUint> {
    let mut acc = BigUint::one();
    for b in &sys.blocks {
        if sys.target < b.weight() {
            return Ok(BigUint::zero());
        }
        let c = if b.all_ones() {
            binomial(sys.target - 1, b.u.len() as u64 - 1)
        } else {
            SuffixTable::build(&b.u, sys.target, budget)?
                .total()
                .clone()
        };
        acc *= c;
    }
    Ok(acc)
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use proptest::prelude::*;

    pub(crate) fn enumerate(u: &[u64], target: u64) -> Vec<Vec<u64>> {
        fn go(u: &[u64], left: u64, prefix: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
            match u {
                [] => {
                    if left == 0 {
                        out.push(prefix.clone());
                    }
                }
                [w, rest @ ..] => {
                    let mut m = 1;
                    while m * w <= left {
                        prefix.push(m);
                        go(rest, left - m * w, prefix, out);
                        prefix.pop();
                        m += 1;
                    }
                }
            }
        }
        let mut out = Vec::new();
        go(u, target, &mut Vec::new(), &mut out);
        out
    }

    fn count(u: &[u64], p: u64) -> BigUint {
        count_solutions(
            &DiophSystem::new(p, vec![u.to_vec()]).unwrap(),
            TableBudget::default(),
        )
        .unwrap()
    }

    #[test]
    fn small_counts() {
        assert_eq!(count(&[1, 1, 1], 7), BigUint::from(15u32));
        assert_eq!(count(&[1, 2], 5), BigUint::from(2u32));
        assert_eq!(count(&[2, 3, 5], 9), BigUint::zero());
        assert_eq!(count(&[2, 3], 4), BigUint::zero());
    }

    #[test]
    fn table_agrees_with_binomial() {
        let t = SuffixTable::build(&[1, 1, 1, 1], 50, TableBudget::default()).unwrap();
        assert_eq!(t.total(), &binomial(49, 3));
    }

    #[test]
    fn counts_multiply_across_blocks() {
        let sys = DiophSystem::new(11, vec![vec![1, 1, 1], vec![1, 2, 3]]).unwrap();
        let expected = enumerate(&[1, 1, 1], 11).len() * enumerate(&[1, 2, 3], 11).len();
        assert_eq!(
            count_solutions(&sys, TableBudget::default()).unwrap(),
            BigUint::from(expected)
        );
    }

    #[test]
    fn leading_term() {
        // count·(d-1)!·Πu / p^(d-1) → 1
        let u = [1u64, 2, 3];
        let mut prev = f64::INFINITY;
        for p in [101u64, 1009, 10007] {
            let c = count(&u, p);
            let ratio = c.to_string().parse::<f64>().unwrap() * 2.0 * 6.0 / (p as f64).powi(2);
            let err = (ratio - 1.0).abs();
            assert!(err < prev);
            prev = err;
        }
        assert!(prev < 0.01);
    }

    #[test]
    fn budget_is_enforced() {
        let err = count_solutions(
            &DiophSystem::new(1000, vec![vec![1, 2, 3]]).unwrap(),
            TableBudget { max_cells: 100 },
        )
        .unwrap_err();
        assert!(matches!(err, Error::BudgetExceeded { .. }));
        // all-ones blocks never build a table
        assert!(count_solutions(
            &DiophSystem::new(1000, vec![vec![1, 1, 1]]).unwrap(),
            TableBudget { max_cells: 1 }
        )
        .is_ok());
    }

    #[test]
    fn rejects_non_coprime_weights() {
        assert!(DiophSystem::new(7, vec![vec![2, 4]]).is_err());
        assert!(DiophSystem::new(7, vec![vec![0, 1]]).is_err());
    }

    #[test]
    fn solution_checks() {
        let sys = DiophSystem::new(7, vec![vec![1, 1, 1]]).unwrap();
        assert!(sys
            .check(&PartitionSolution {
                blocks: vec![vec![1, 2, 4]]
            })
            .is_ok());
        assert!(sys
            .check(&PartitionSolution {
                blocks: vec![vec![1, 2, 3]]
            })
            .is_err());
        assert!(sys
            .check(&PartitionSolution {
                blocks: vec![vec![1, 6]]
            })
            .is_err());
    }

    proptest! {
        #[test]
        fn count_matches_enumeration(
            u in proptest::collection::vec(1u64..=3, 1..=4),
            p in 1u64..=60,
        ) {
            let g = u.iter().fold(0, |g, &x| g.gcd(&x));
            prop_assume!(g == 1);
            prop_assert_eq!(count(&u, p), BigUint::from(enumerate(&u, p).len()));
        }
    }
}
