//! Multiplicities on the log resolution, node residues and the goodness
//! filter.

use std::collections::BTreeMap;

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{DiophSystem, PartitionSolution, Sampler, TableBudget};
use crate::arrangements::{DivisorKind, ResolvedArrangement};
use crate::numth::{is_farey_neighbour, FareyConfig, PrimeModulus, Residue};
use crate::{Error, Result};

/// `ν` for every divisor of the resolution, indexed like
/// [`ResolvedArrangement::divisors`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiplicityAssignment {
    pub p: PrimeModulus,
    pub nu: Vec<u64>,
}

impl MultiplicityAssignment {
    pub fn residue(&self, i: usize) -> Residue {
        self.p
            .residue(self.nu[i])
            .expect("multiplicities lie in (0, p)")
    }
}

/// Proper transforms keep `μ`; an exceptional divisor gets the sum of `μ`
/// over the curves through its point, reduced mod `p`.
pub fn assign(
    resolved: &ResolvedArrangement,
    mu: &[u64],
    p: PrimeModulus,
) -> Result<MultiplicityAssignment> {
    let pv = p.get();
    let mut nu = Vec::with_capacity(resolved.divisors.len());
    for div in &resolved.divisors {
        let mut total: u64 = 0;
        for &i in &div.over {
            let m = *mu.get(i).ok_or_else(|| {
                Error::PartitionMismatch(format!("no multiplicity for curve {}", i + 1))
            })?;
            total = (total + m % pv) % pv;
        }
        if total == 0 {
            return Err(match div.kind {
                DivisorKind::Exceptional => Error::ExceptionalVanishes {
                    divisor: div.id.clone(),
                },
                DivisorKind::ProperTransform => Error::PartitionMismatch(format!(
                    "multiplicity of {} is divisible by p",
                    div.id
                )),
            });
        }
        nu.push(total);
    }
    Ok(MultiplicityAssignment { p, nu })
}

/// A node class of the resolution: `count` nodes on `D_i ∩ D_j` (`i < j`)
/// with residue `q = p - ν_i' ν_j`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct NodeResidue {
    pub pair: (usize, usize),
    pub q: Residue,
    pub count: u64,
}

fn residue_of(ma: &MultiplicityAssignment, first: usize, second: usize) -> Residue {
    let p = ma.p.get() as u128;
    let inv = ma.residue(first).inverse().q() as u128;
    let prod = (inv * ma.nu[second] as u128 % p) as u64;
    ma.p.residue(ma.p.get() - prod)
        .expect("product of units is a unit")
}

pub fn node_residues(
    ma: &MultiplicityAssignment,
    nodes: &BTreeMap<(usize, usize), u64>,
) -> Vec<NodeResidue> {
    nodes
        .iter()
        .map(|(&(i, j), &count)| NodeResidue {
            pair: (i, j),
            q: residue_of(ma, i, j),
            count,
        })
        .collect()
}

/// Residue of the node read in the opposite orientation, `p - ν_j' ν_i`.
pub fn swapped_residue(ma: &MultiplicityAssignment, pair: (usize, usize)) -> Residue {
    residue_of(ma, pair.1, pair.0)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GoodnessReport {
    pub good: bool,
    pub offending_nodes: Vec<NodeResidue>,
}

/// Good iff no node residue is a Farey neighbour.
pub fn is_good(residues: &[NodeResidue], cfg: FareyConfig) -> GoodnessReport {
    let offending_nodes: Vec<NodeResidue> = residues
        .iter()
        .filter(|n| is_farey_neighbour(n.q.q(), n.q.modulus(), cfg))
        .copied()
        .collect();
    GoodnessReport {
        good: offending_nodes.is_empty(),
        offending_nodes,
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GoodSample {
    pub solution: PartitionSolution,
    pub assignment: MultiplicityAssignment,
    pub residues: Vec<NodeResidue>,
    /// Draws used, including the accepted one.
    pub tries: u64,
}

/// Rejection loop: draw uniformly, assign, keep the first good draw. Draws
/// with a vanishing exceptional multiplicity count as bad.
pub fn sample_good_with<R: Rng + ?Sized>(
    sampler: &Sampler,
    sys: &DiophSystem,
    resolved: &ResolvedArrangement,
    rng: &mut R,
    max_tries: u64,
    cfg: FareyConfig,
) -> Result<GoodSample> {
    let p = PrimeModulus::new(sys.target())?;
    for tries in 1..=max_tries {
        let solution = sampler.sample(rng);
        let mu = sys.curve_mu(&solution)?;
        let assignment = match assign(resolved, &mu, p) {
            Ok(a) => a,
            Err(Error::ExceptionalVanishes { .. }) => continue,
            Err(e) => return Err(e),
        };
        let residues = node_residues(&assignment, &resolved.nodes);
        if is_good(&residues, cfg).good {
            return Ok(GoodSample {
                solution,
                assignment,
                residues,
                tries,
            });
        }
    }
    Err(Error::ExhaustedTries { tries: max_tries })
}

pub fn sample_good(
    sys: &DiophSystem,
    resolved: &ResolvedArrangement,
    seed: u64,
    max_tries: u64,
    cfg: FareyConfig,
) -> Result<GoodSample> {
    let sampler = Sampler::new(sys, TableBudget::default())?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    sample_good_with(&sampler, sys, resolved, &mut rng, max_tries, cfg)
}
