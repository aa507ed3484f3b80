//! Convergence experiments: good random partitions over a list of primes.

use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{report, ChernReport, CoverSpec};
use crate::arrangements::{log_chern_direct, resolve, Arrangement};
use crate::numth::{rat, FareyConfig, PrimeModulus};
use crate::partitions::{sample_good_with, DiophSystem, PartitionSolution, Sampler, TableBudget};
use crate::{Error, ExactRational, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScanConfig {
    pub primes: Vec<u64>,
    pub samples: usize,
    pub seed: u64,
    pub max_tries: u64,
    pub farey: FareyConfig,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScanRow {
    pub p: u64,
    pub sample: usize,
    pub solution: PartitionSolution,
    pub tries: u64,
    pub report: ChernReport,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrimeSummary {
    pub p: u64,
    pub min: ExactRational,
    pub median: ExactRational,
    pub max: ExactRational,
    /// `|median - c̄1²/c̄2|`.
    pub distance: ExactRational,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SkippedPrime {
    pub p: u64,
    pub reason: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScanResult {
    pub log_ratio: ExactRational,
    pub rows: Vec<ScanRow>,
    pub summaries: Vec<PrimeSummary>,
    pub skipped: Vec<SkippedPrime>,
}

fn median(sorted: &[ExactRational]) -> ExactRational {
    let n = sorted.len();
    if n % 2 == 1 {
        sorted[n / 2].clone()
    } else {
        (&sorted[n / 2 - 1] + &sorted[n / 2]) * rat(1, 2)
    }
}

/// Each prime draws from its own ChaCha stream (`seed`, stream `p`), so
/// adding or removing primes leaves the other rows unchanged.
pub fn convergence_scan(a: &Arrangement, cfg: &ScanConfig) -> Result<ScanResult> {
    let log_ratio = log_chern_direct(a)?.ratio().ok_or(Error::ZeroLogC2)?;
    let resolved = resolve(a)?;
    let mut rows = Vec::new();
    let mut summaries = Vec::new();
    let mut skipped = Vec::new();

    'primes: for &pv in &cfg.primes {
        let p = PrimeModulus::new(pv)?;
        let sys = DiophSystem::from_arrangement(a, p)?;
        let sampler = match Sampler::new(&sys, TableBudget::default()) {
            Ok(s) => s,
            Err(e @ Error::NoSolutions) => {
                skipped.push(SkippedPrime {
                    p: pv,
                    reason: e.to_string(),
                });
                continue;
            }
            Err(e) => return Err(e),
        };
        let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
        rng.set_stream(pv);
        let mut here = Vec::with_capacity(cfg.samples);
        for sample in 0..cfg.samples {
            let good = match sample_good_with(
                &sampler,
                &sys,
                &resolved,
                &mut rng,
                cfg.max_tries,
                cfg.farey,
            ) {
                Ok(g) => g,
                Err(e @ Error::ExhaustedTries { .. }) => {
                    skipped.push(SkippedPrime {
                        p: pv,
                        reason: format!("sample {}: {e}", sample + 1),
                    });
                    continue 'primes;
                }
                Err(e) => return Err(e),
            };
            let spec = CoverSpec::new(&resolved, good.assignment, cfg.farey)?;
            here.push(ScanRow {
                p: pv,
                sample: sample + 1,
                solution: good.solution,
                tries: good.tries,
                report: report(&spec)?,
            });
        }
        let mut ratios: Vec<ExactRational> = here
            .iter()
            .filter_map(|r| r.report.ratio_c.clone())
            .collect();
        ratios.sort();
        if let (Some(min), Some(max)) = (ratios.first(), ratios.last()) {
            let med = median(&ratios);
            summaries.push(PrimeSummary {
                p: pv,
                min: min.clone(),
                max: max.clone(),
                distance: num_traits::Signed::abs(&(&med - &log_ratio)),
                median: med,
            });
        }
        rows.extend(here);
    }
    Ok(ScanResult {
        log_ratio,
        rows,
        summaries,
        skipped,
    })
}
