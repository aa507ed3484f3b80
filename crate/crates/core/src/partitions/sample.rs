//! Exact-uniform sampling of positive solutions.

use num_bigint::RandBigInt;
use num_traits::Zero;
use rand::seq::index;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{DiophSystem, PartitionSolution, SuffixTable, TableBudget};
use crate::{Error, Result};

#[derive(Debug, Clone)]
enum BlockSampler {
    /// All weights 1: a uniform `(d-1)`-subset of cut points in `1..p-1`.
    Compositions {
        parts: usize,
    },
    Table(SuffixTable),
}

/// Per-block sampling state, built once and reused across draws.
#[derive(Debug, Clone)]
pub struct Sampler {
    target: u64,
    blocks: Vec<BlockSampler>,
}

impl Sampler {
    pub fn new(sys: &DiophSystem, budget: TableBudget) -> Result<Self> {
        let target = sys.target();
        let mut blocks = Vec::with_capacity(sys.blocks().len());
        for b in sys.blocks() {
            if target < b.weight() {
                return Err(Error::NoSolutions);
            }
            blocks.push(if b.all_ones() {
                BlockSampler::Compositions { parts: b.u.len() }
            } else {
                let table = SuffixTable::build(&b.u, target, budget)?;
                if table.total().is_zero() {
                    return Err(Error::NoSolutions);
                }
                BlockSampler::Table(table)
            });
        }
        Ok(Sampler { target, blocks })
    }

    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> PartitionSolution {
        let blocks = self
            .blocks
            .iter()
            .map(|b| match b {
                BlockSampler::Compositions { parts } => {
                    sample_composition(self.target, *parts, rng)
                }
                BlockSampler::Table(t) => sample_from_table(t, self.target, rng),
            })
            .collect();
        PartitionSolution { blocks }
    }
}

fn sample_composition<R: Rng + ?Sized>(target: u64, parts: usize, rng: &mut R) -> Vec<u64> {
    let mut cuts: Vec<u64> = index::sample(rng, target as usize - 1, parts - 1)
        .into_iter()
        .map(|i| i as u64 + 1)
        .collect();
    cuts.sort_unstable();
    cuts.push(target);
    let mut prev = 0;
    cuts.into_iter()
        .map(|c| {
            let part = c - prev;
            prev = c;
            part
        })
        .collect()
}

fn sample_from_table<R: Rng + ?Sized>(t: &SuffixTable, target: u64, rng: &mut R) -> Vec<u64> {
    let d = t.u.len();
    let mut r = target as usize;
    let mut mu = Vec::with_capacity(d);
    for k in 0..d {
        let step = t.u[k] as usize;
        // T_k[r] = T_{k+1}[r - u_k] + T_k[r - u_k]: peel one unit of μ_k at a time
        let mut x = rng.gen_biguint_below(&t.rows[k][r]);
        let mut m = 1;
        loop {
            r -= step;
            let here = &t.rows[k + 1][r];
            if x < *here {
                break;
            }
            x -= here;
            m += 1;
        }
        mu.push(m);
    }
    debug_assert_eq!(r, 0);
    mu
}

/// One exact-uniform draw, seeded.
pub fn sample_uniform(sys: &DiophSystem, seed: u64) -> Result<PartitionSolution> {
    let sampler = Sampler::new(sys, TableBudget::default())?;
    Ok(sampler.sample(&mut ChaCha8Rng::seed_from_u64(seed)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partitions::tests::enumerate;
    use statrs::distribution::{ChiSquared, ContinuousCDF};
    use std::collections::HashMap;

    fn chi_square_uniform(
        sys: &DiophSystem,
        universe: &[Vec<u64>],
        draws_per_outcome: usize,
        seed: u64,
    ) -> (f64, f64) {
        let sampler = Sampler::new(sys, TableBudget::default()).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut freq: HashMap<Vec<u64>, usize> = universe.iter().map(|v| (v.clone(), 0)).collect();
        for _ in 0..draws_per_outcome * universe.len() {
            let sol = sampler.sample(&mut rng);
            *freq
                .get_mut(&sol.blocks[0])
                .expect("draw outside the solution set") += 1;
        }
        let expected = draws_per_outcome as f64;
        let stat: f64 = freq
            .values()
            .map(|&o| (o as f64 - expected).powi(2) / expected)
            .sum();
        let critical = ChiSquared::new((universe.len() - 1) as f64)
            .unwrap()
            .inverse_cdf(1.0 - 1e-3);
        (stat, critical)
    }

    #[test]
    fn compositions_are_uniform() {
        let sys = DiophSystem::new(13, vec![vec![1, 1, 1]]).unwrap();
        let universe = enumerate(&[1, 1, 1], 13);
        assert_eq!(universe.len(), 66);
        let (stat, critical) = chi_square_uniform(&sys, &universe, 1000, 7);
        assert!(stat < critical, "{stat} >= {critical}");
    }

    #[test]
    fn table_sampler_is_uniform() {
        let u = vec![1, 2, 3];
        let sys = DiophSystem::new(23, vec![u.clone()]).unwrap();
        let universe = enumerate(&u, 23);
        let (stat, critical) = chi_square_uniform(&sys, &universe, 1000, 11);
        assert!(stat < critical, "{stat} >= {critical}");
    }

    #[test]
    fn draws_solve_the_system() {
        let sys = DiophSystem::new(61169, vec![vec![1; 5]; 3]).unwrap();
        for seed in 0..20 {
            let sol = sample_uniform(&sys, seed).unwrap();
            sys.check(&sol).unwrap();
        }
        let sys = DiophSystem::new(1009, vec![vec![1, 2, 2, 3], vec![1, 1, 1]]).unwrap();
        for seed in 0..20 {
            sys.check(&sample_uniform(&sys, seed).unwrap()).unwrap();
        }
    }

    #[test]
    fn deterministic_given_seed() {
        let sys = DiophSystem::new(101, vec![vec![1, 1, 1, 1], vec![2, 3]]).unwrap();
        assert_eq!(
            sample_uniform(&sys, 5).unwrap(),
            sample_uniform(&sys, 5).unwrap()
        );
    }

    #[test]
    fn empty_solution_set() {
        let sys = DiophSystem::new(4, vec![vec![1, 1, 1, 1, 1]]).unwrap();
        assert_eq!(sample_uniform(&sys, 0).unwrap_err(), Error::NoSolutions);
        // weights fit but no solution exists
        let sys = DiophSystem::new(16, vec![vec![3, 5, 7]]).unwrap();
        assert_eq!(sample_uniform(&sys, 0).unwrap_err(), Error::NoSolutions);
    }
}
