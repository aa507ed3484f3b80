//! Chern invariants of the p-th root cover branched along the log
//! resolution of an arrangement.
//!
//! With `N = t2 + 2 Σ (g_i - 1)` and one residue `q = p - ν_i' ν_j` per node:
//!
//! - `χ   = p χ(Y) - (p² - 1)/(12p) Σ D_i² + (p - 1)/4 N - Σ s(q, p)`
//! - `c1² = p c̄1² - 2N + Σ D_i² / p - Σ c(q, p)`
//! - `c2  = p c̄2 - N + Σ l(q, p)`
//!
//! The three node sums use three different kernels (reciprocity, canonical
//! parts, lengths), so Noether's formula is a genuine cross-check.

mod oracle;
mod scan;

use num_traits::{Signed, ToPrimitive, Zero};

pub use oracle::{floor_sum_oracle, OracleValues, ORACLE_MAX_P};
pub use scan::{convergence_scan, PrimeSummary, ScanConfig, ScanResult, ScanRow, SkippedPrime};

use crate::arrangements::{Arrangement, ResolvedArrangement};
use crate::numth::{
    canonical_part, dedekind_fast, length, lt_affine_sqrt, rat, FareyConfig, PrimeModulus,
};
use crate::partitions::{
    assign, is_good, node_residues, DiophSystem, MultiplicityAssignment, NodeResidue,
    PartitionSolution,
};
use crate::{Error, ExactRational, Result};

/// Per-node corrections for one node class.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NodeTerm {
    pub node: NodeResidue,
    pub length: u64,
    pub dedekind: ExactRational,
    pub canonical: ExactRational,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ErrorTerms {
    /// `Σ s(q, p) D_i.D_j`.
    pub scf: ExactRational,
    /// `Σ c(q, p) D_i.D_j`.
    pub ccf: ExactRational,
    /// `Σ l(q, p) D_i.D_j`.
    pub lcf: u64,
}

#[derive(Debug, Clone)]
pub struct CoverSpec<'a> {
    p: PrimeModulus,
    resolved: &'a ResolvedArrangement,
    nu: MultiplicityAssignment,
    farey: FareyConfig,
    terms: Vec<NodeTerm>,
}

impl<'a> CoverSpec<'a> {
    pub fn new(
        resolved: &'a ResolvedArrangement,
        nu: MultiplicityAssignment,
        farey: FareyConfig,
    ) -> Result<Self> {
        let p = nu.p;
        if nu.nu.len() != resolved.divisors.len() {
            return Err(Error::PartitionMismatch(format!(
                "{} multiplicities for {} divisors",
                nu.nu.len(),
                resolved.divisors.len()
            )));
        }
        if let Some(i) = nu.nu.iter().position(|&v| v == 0 || v >= p.get()) {
            return Err(Error::ResidueOutOfRange {
                q: nu.nu[i],
                p: p.get(),
            });
        }
        let terms = node_residues(&nu, &resolved.nodes)
            .into_iter()
            .map(|node| NodeTerm {
                node,
                length: length(node.q),
                dedekind: dedekind_fast(node.q),
                canonical: canonical_part(node.q),
            })
            .collect();
        Ok(CoverSpec {
            p,
            resolved,
            nu,
            farey,
            terms,
        })
    }

    /// Solution of the arrangement's system → spec.
    pub fn from_solution(
        a: &Arrangement,
        resolved: &'a ResolvedArrangement,
        p: PrimeModulus,
        sol: &PartitionSolution,
        farey: FareyConfig,
    ) -> Result<Self> {
        let sys = DiophSystem::from_arrangement(a, p)?;
        let mu = sys.curve_mu(sol)?;
        Self::new(resolved, assign(resolved, &mu, p)?, farey)
    }

    pub fn p(&self) -> PrimeModulus {
        self.p
    }

    pub fn resolved(&self) -> &ResolvedArrangement {
        self.resolved
    }

    pub fn assignment(&self) -> &MultiplicityAssignment {
        &self.nu
    }

    pub fn terms(&self) -> &[NodeTerm] {
        &self.terms
    }

    pub fn error_terms(&self) -> ErrorTerms {
        let mut scf = ExactRational::zero();
        let mut ccf = ExactRational::zero();
        let mut lcf = 0;
        for t in &self.terms {
            let n = ExactRational::from_integer(t.node.count.into());
            scf += &t.dedekind * &n;
            ccf += &t.canonical * &n;
            lcf += t.length * t.node.count;
        }
        ErrorTerms { scf, ccf, lcf }
    }

    fn pr(&self) -> i128 {
        self.p.get() as i128
    }

    fn excess(&self) -> i128 {
        self.resolved.t2_total as i128 + 2 * self.resolved.genus_excess() as i128
    }

    pub fn chi_exact(&self) -> ExactRational {
        let p = self.pr();
        let d2 = self.resolved.self_int_sum() as i128;
        rat(p * self.resolved.chi_y() as i128, 1) - rat((p * p - 1) * d2, 12 * p)
            + rat((p - 1) * self.excess(), 4)
            - self.error_terms().scf
    }

    pub fn c1_sq_exact(&self) -> ExactRational {
        let p = self.pr();
        let log = self.resolved.log_chern();
        rat(p * log.c1bar_sq as i128 - 2 * self.excess(), 1)
            + rat(self.resolved.self_int_sum() as i128, p)
            - self.error_terms().ccf
    }

    pub fn c2_exact(&self) -> ExactRational {
        let log = self.resolved.log_chern();
        rat(
            self.pr() * log.c2bar as i128 - self.excess() + self.error_terms().lcf as i128,
            1,
        )
    }
}

fn integral(x: ExactRational, what: &'static str) -> Result<i64> {
    if !x.is_integer() {
        return Err(Error::NonIntegral {
            what,
            value: x.to_string(),
        });
    }
    x.to_integer().to_i64().ok_or(Error::NonIntegral {
        what,
        value: x.to_string(),
    })
}

pub fn chi(spec: &CoverSpec) -> Result<i64> {
    integral(spec.chi_exact(), "chi")
}

pub fn c1_sq(spec: &CoverSpec) -> Result<i64> {
    integral(spec.c1_sq_exact(), "c1^2")
}

pub fn c2(spec: &CoverSpec) -> Result<i64> {
    integral(spec.c2_exact(), "c2")
}

/// The error-term bounds for good assignments at `C = 1`, with
/// `N = Σ D_i.D_j`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BoundChecks {
    /// `|SCF| < N (3√p + 5)`.
    pub scf: bool,
    /// `LCF < N (3√p + 2)`.
    pub lcf: bool,
    /// `|CCF| < N (6√p + 7)`.
    pub ccf: bool,
}

impl BoundChecks {
    pub fn all(&self) -> bool {
        self.scf && self.lcf && self.ccf
    }
}

fn bound_checks(e: &ErrorTerms, nodes: u64, p: u64) -> BoundChecks {
    let n = nodes as i128;
    let check =
        |x: &ExactRational, a: i128, b: i128| lt_affine_sqrt(x, &rat(n * a, 1), &rat(n * b, 1), p);
    BoundChecks {
        scf: check(&e.scf.abs(), 3, 5),
        lcf: check(&rat(e.lcf as i128, 1), 3, 2),
        ccf: check(&e.ccf.abs(), 6, 7),
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChernReport {
    pub p: u64,
    pub chi: i64,
    pub c1_sq: i64,
    pub c2: i64,
    /// `c1² / c2`; `None` when `c2 = 0`.
    pub ratio_c: Option<ExactRational>,
    /// `c1² / χ`; `None` when `χ = 0`.
    pub ratio_chi: Option<ExactRational>,
    pub error_terms: ErrorTerms,
    pub good: bool,
    pub offending_nodes: Vec<NodeResidue>,
    pub bounds: BoundChecks,
    /// False only when the assignment is good and a bound fails.
    pub bounds_ok: bool,
}

fn ratio(n: i64, d: i64) -> Option<ExactRational> {
    (d != 0).then(|| ExactRational::new(n.into(), d.into()))
}

pub fn report(spec: &CoverSpec) -> Result<ChernReport> {
    let chi_v = chi(spec)?;
    let c1 = c1_sq(spec)?;
    let c2_v = c2(spec)?;
    if 12 * chi_v != c1 + c2_v {
        return Err(Error::NoetherViolation {
            twelve_chi: (12 * chi_v).to_string(),
            sum: (c1 + c2_v).to_string(),
        });
    }
    let goodness = is_good(
        &spec.terms.iter().map(|t| t.node).collect::<Vec<_>>(),
        spec.farey,
    );
    let error_terms = spec.error_terms();
    let bounds = bound_checks(&error_terms, spec.resolved.t2_total, spec.p.get());
    Ok(ChernReport {
        p: spec.p.get(),
        chi: chi_v,
        c1_sq: c1,
        c2: c2_v,
        ratio_c: ratio(c1, c2_v),
        ratio_chi: ratio(c1, chi_v),
        error_terms,
        good: goodness.good,
        offending_nodes: goodness.offending_nodes,
        bounds_ok: !goodness.good || bounds.all(),
        bounds,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arrangements::{
        gen_ceva, gen_general_lines, gen_pg2, gen_underline_ceva, resolve, Arrangement,
    };
    use crate::numth::{dedekind_sum, Residue};
    use crate::partitions::{sample_uniform, MultiplicityAssignment};
    use crate::render::truncated;
    use proptest::prelude::*;

    fn hesse_report(p: u64, mu: &[u64]) -> ChernReport {
        let a = gen_ceva(3).unwrap();
        let ra = resolve(&a).unwrap();
        let sol = PartitionSolution {
            blocks: vec![mu.to_vec()],
        };
        let spec = CoverSpec::from_solution(
            &a,
            &ra,
            PrimeModulus::new(p).unwrap(),
            &sol,
            FareyConfig::default(),
        )
        .unwrap();
        report(&spec).unwrap()
    }

    #[test]
    fn first_table_row() {
        let r = hesse_report(61169, &[1, 2, 3, 4, 5, 6, 7, 8, 61133]);
        assert_eq!((r.c1_sq, r.c2), (1441949, 733435));
        assert_eq!(r.chi, (1441949 + 733435) / 12);
        assert_eq!(r.chi, 181282);
    }

    #[test]
    fn random_looking_row() {
        let r = hesse_report(61169, &[1, 29, 89, 269, 1019, 3469, 7919, 15859, 32515]);
        assert_eq!((r.c1_sq, r.c2), (1465970, 552166));
        assert_eq!(truncated(r.ratio_c.as_ref().unwrap(), 3), "2.654");
    }

    #[test]
    fn flat_row_is_not_good() {
        let r = hesse_report(61169, &[1, 1, 1, 1, 1, 1, 1, 1, 61161]);
        assert_eq!((r.c1_sq, r.c2), (1386413, 1060303));
        assert_eq!(truncated(r.ratio_c.as_ref().unwrap(), 3), "1.307");
        assert!(!r.good);
        assert!(r.bounds_ok);
    }

    #[test]
    fn small_prime_row() {
        let r = hesse_report(83, &[1, 2, 3, 5, 7, 11, 13, 17, 24]);
        assert_eq!(truncated(r.ratio_chi.as_ref().unwrap(), 3), "7.331");
        assert_eq!(truncated(r.ratio_c.as_ref().unwrap(), 3), "1.570");
    }

    #[test]
    fn blown_up_ceva5_example() {
        let a = gen_underline_ceva(5).unwrap();
        let ra = resolve(&a).unwrap();
        let sol = PartitionSolution {
            blocks: vec![
                vec![1, 307, 7031, 11109, 42721],
                vec![589, 2007, 5007, 20001, 33565],
                vec![1009, 3001, 13003, 17807, 26349],
            ],
        };
        let spec = CoverSpec::from_solution(
            &a,
            &ra,
            PrimeModulus::new(61169).unwrap(),
            &sol,
            FareyConfig::default(),
        )
        .unwrap();
        let r = report(&spec).unwrap();
        assert_eq!((r.c1_sq, r.c2), (4341016, 1595264));
        assert_eq!(
            r.ratio_c,
            Some(ExactRational::new(542627.into(), 199408.into()))
        );
    }

    /// Engine on `r` general lines with `ν = (1, …, 1, p - q)`.
    fn general_lines_spec(ra: &ResolvedArrangement, p: u64, q: u64) -> CoverSpec<'_> {
        let r = ra.r();
        let mut nu = vec![1; r];
        nu[r - 1] = p - q;
        let ma = MultiplicityAssignment {
            p: PrimeModulus::new(p).unwrap(),
            nu,
        };
        CoverSpec::new(ra, ma, FareyConfig::default()).unwrap()
    }

    #[test]
    fn general_lines_closed_forms() {
        for r in 3..=8u64 {
            let ra = resolve(&gen_general_lines(r as usize).unwrap()).unwrap();
            for p in [101u64, 1009] {
                let pm = PrimeModulus::new(p).unwrap();
                for q in 1..r {
                    let spec = general_lines_spec(&ra, p, q);
                    let (ri, pi) = (r as i128, p as i128);
                    let s_neg = dedekind_sum(p - q, p);
                    let chi_closed = rat(pi, 1)
                        - rat((pi * pi - 1) * ri, 12 * pi)
                        - rat((pi - 1) * ri * (5 - ri), 8)
                        + rat((ri - 1) * (ri - 2) * (pi - 1) * (pi - 2), 24 * pi)
                        + rat(ri - 1, 1) * s_neg;
                    assert_eq!(spec.chi_exact(), chi_closed, "r={r} p={p} q={q}");
                    let l = length(Residue::new(q, pm).unwrap()) as i128;
                    let c2_closed = 3 * pi
                        + (1 - pi) * ri * (5 - ri) / 2
                        + (ri - 1) * (ri - 2) / 2 * (pi - 1)
                        + (ri - 1) * l;
                    assert_eq!(spec.c2_exact(), rat(c2_closed, 1));
                    if q == r - 1 {
                        // the only q for which O(1)^p ≅ O(D)
                        report(&spec).unwrap();
                    }
                }
            }
        }
    }

    #[test]
    fn orientation_invariance() {
        let a = gen_ceva(4).unwrap();
        let ra = resolve(&a).unwrap();
        let p = PrimeModulus::new(1009).unwrap();
        let sys = DiophSystem::from_arrangement(&a, p).unwrap();
        let sol = (0..)
            .map(|seed| sample_uniform(&sys, seed).unwrap())
            .find(|s| assign(&ra, &sys.curve_mu(s).unwrap(), p).is_ok());
        let spec =
            CoverSpec::from_solution(&a, &ra, p, &sol.unwrap(), FareyConfig::default()).unwrap();
        let e = spec.error_terms();
        let (mut scf, mut ccf, mut lcf) = (ExactRational::zero(), ExactRational::zero(), 0);
        for t in spec.terms() {
            let swapped = crate::partitions::swapped_residue(spec.assignment(), t.node.pair);
            let n = ExactRational::from_integer(t.node.count.into());
            scf += dedekind_fast(swapped) * &n;
            ccf += canonical_part(swapped) * &n;
            lcf += length(swapped) * t.node.count;
        }
        assert_eq!((e.scf, e.ccf, e.lcf), (scf, ccf, lcf));
    }

    #[test]
    fn leading_terms_at_the_largest_prime() {
        let r = hesse_report(
            544109,
            &[1, 1709, 3539, 7639, 15629, 31649, 62219, 150559, 271165],
        );
        let p = 544109.0;
        assert!((r.c1_sq as f64 / p / 24.0 - 1.0).abs() < 0.01);
        assert!((r.c2 as f64 / p / 9.0 - 1.0).abs() < 0.01);
    }

    #[test]
    fn bounds_hold_for_a_good_draw() {
        let a = gen_ceva(3).unwrap();
        let ra = resolve(&a).unwrap();
        let p = PrimeModulus::new(10103).unwrap();
        let sys = DiophSystem::from_arrangement(&a, p).unwrap();
        let s = crate::partitions::sample_good(&sys, &ra, 9, 200, FareyConfig::default()).unwrap();
        let spec = CoverSpec::new(&ra, s.assignment, FareyConfig::default()).unwrap();
        let r = report(&spec).unwrap();
        assert!(r.good && r.bounds.all() && r.bounds_ok);
    }

    #[test]
    fn bounds_compare_exactly() {
        let e = ErrorTerms {
            scf: rat(-8, 1),
            ccf: rat(13, 1),
            lcf: 8,
        };
        // p = 1: N(3 + 5) = 8, N(3 + 2) = 5, N(6 + 7) = 13 with N = 1
        let b = bound_checks(&e, 1, 1);
        assert_eq!((b.scf, b.lcf, b.ccf), (false, false, false));
        let b = bound_checks(&e, 2, 1);
        assert!(b.all());
    }

    fn small_arrangements() -> Vec<Arrangement> {
        vec![
            gen_general_lines(3).unwrap(),
            gen_general_lines(4).unwrap(),
            gen_ceva(3).unwrap(),
            gen_ceva(2).unwrap(),
            gen_pg2(2).unwrap(),
            gen_underline_ceva(3).unwrap(),
        ]
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(200))]
        #[test]
        fn noether_and_integrality(which in 0usize..6, pi in 0usize..45, seed in any::<u64>()) {
            let primes: Vec<u64> = (3u64..200).filter(|&n| crate::numth::is_prime(n)).collect();
            let p = primes[pi % primes.len()];
            let a = &small_arrangements()[which];
            let ra = resolve(a).unwrap();
            let pm = PrimeModulus::new(p).unwrap();
            let sys = DiophSystem::from_arrangement(a, pm).unwrap();
            let sol = sample_uniform(&sys, seed);
            prop_assume!(sol.is_ok());
            let ma = assign(&ra, &sys.curve_mu(&sol.unwrap()).unwrap(), pm);
            prop_assume!(ma.is_ok());
            let spec = CoverSpec::new(&ra, ma.unwrap(), FareyConfig::default()).unwrap();
            let r = report(&spec).unwrap();
            prop_assert_eq!(12 * r.chi, r.c1_sq + r.c2);
            let e = spec.error_terms();
            prop_assert_eq!(e.ccf, e.scf * rat(12, 1) + rat(e.lcf as i128, 1));
        }
    }
}
