//! Abstract incidence model of simple crossing divisible arrangements.
//!
//! An arrangement is a list of curves (genus, self-intersection, block and
//! weight `u`) and a list of points, each naming the curves through it. The
//! intersection number of two distinct curves is the number of points they
//! share. No coordinates are involved.

mod diagnostics;
mod format;
mod generators;
mod resolve;

use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::numth::ExactRational;

pub use diagnostics::{diagnostics, Check, LineDiagnostics};
pub use format::{from_toml, to_toml};
pub use generators::{
    gen_ceva, gen_general_lines, gen_p1xp1, gen_pg2, gen_underline_ceva, Generator,
};
pub use resolve::{resolve, DivisorKind, ResolvedArrangement, ResolvedCurve};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ArrangementError {
    #[error("an arrangement needs at least 3 curves, found {d}")]
    TooFewCurves { d: usize },
    #[error("curve id `{id}` is declared twice")]
    DuplicateCurve { id: String },
    #[error("point {point} names unknown curve `{id}`")]
    UnknownCurve { point: usize, id: String },
    #[error("point {point} must lie on at least two distinct curves")]
    DegeneratePoint { point: usize },
    #[error("point {point} lies on all {d} curves (d-point)")]
    DPoint { point: usize, d: usize },
    #[error("curve `{curve}` is in block {block}, but there are {blocks} blocks")]
    BlockOutOfRange {
        curve: String,
        block: usize,
        blocks: usize,
    },
    #[error("curve `{curve}` has weight u = 0")]
    ZeroWeight { curve: String },
    #[error("block {block} has {size} curves, at least 3 are required")]
    BlockTooSmall { block: usize, size: usize },
    #[error("weights in block {block} have gcd {gcd}, expected 1")]
    BlockNotCoprime { block: usize, gcd: u64 },
    #[error("lines `{a}` and `{b}` share {shared} points, expected exactly 1")]
    LinePairCoverage { a: String, b: String, shared: u64 },
    #[error("line arrangement pair count fails: sum C(n,2) t_n = {lhs}, C(d,2) = {rhs}")]
    LinePairCount { lhs: u64, rhs: u64 },
    #[error("surface {name}: c1^2 + c2 = {sum} is not divisible by 12")]
    SurfaceNotNoether { name: String, sum: i64 },
    #[error("diagnostics apply to line arrangements in the projective plane only")]
    NotLineArrangement,
}

/// Chern numbers of the ambient surface.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurfaceClass {
    pub name: String,
    pub c1_sq: i64,
    pub c2: i64,
}

impl SurfaceClass {
    pub fn projective_plane() -> Self {
        SurfaceClass {
            name: "P2".into(),
            c1_sq: 9,
            c2: 3,
        }
    }

    pub fn p1xp1() -> Self {
        SurfaceClass {
            name: "P1xP1".into(),
            c1_sq: 8,
            c2: 4,
        }
    }

    /// `χ(O) = (c1² + c2)/12`, if integral.
    pub fn chi(&self) -> Option<i64> {
        let sum = self.c1_sq + self.c2;
        (sum % 12 == 0).then_some(sum / 12)
    }

    pub(crate) fn blown_up(&self, points: i64) -> SurfaceClass {
        SurfaceClass {
            name: if points == 0 {
                self.name.clone()
            } else {
                format!("Bl_{points} {}", self.name)
            },
            c1_sq: self.c1_sq - points,
            c2: self.c2 + points,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CurveDecl {
    pub id: String,
    pub genus: u64,
    pub self_int: i64,
    /// 1-based block index.
    pub block: usize,
    pub u: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct PointDecl {
    pub curves: Vec<String>,
}

impl PointDecl {
    pub fn new<S: Into<String>>(curves: impl IntoIterator<Item = S>) -> Self {
        PointDecl {
            curves: curves.into_iter().map(Into::into).collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Arrangement {
    #[serde(default)]
    pub line_arrangement: bool,
    pub blocks: usize,
    pub surface: SurfaceClass,
    pub curves: Vec<CurveDecl>,
    #[serde(default)]
    pub points: Vec<PointDecl>,
}

impl Arrangement {
    pub fn d(&self) -> usize {
        self.curves.len()
    }

    pub fn curve_index(&self, id: &str) -> Option<usize> {
        self.curves.iter().position(|c| c.id == id)
    }

    /// Points as lists of curve indices. Checks ids and point sizes only.
    pub fn incidence(&self) -> Result<Vec<Vec<usize>>, ArrangementError> {
        let mut index = HashMap::with_capacity(self.curves.len());
        for (i, c) in self.curves.iter().enumerate() {
            if index.insert(c.id.as_str(), i).is_some() {
                return Err(ArrangementError::DuplicateCurve { id: c.id.clone() });
            }
        }
        self.points
            .iter()
            .enumerate()
            .map(|(k, pt)| {
                let mut ids = pt
                    .curves
                    .iter()
                    .map(|id| {
                        index.get(id.as_str()).copied().ok_or_else(|| {
                            ArrangementError::UnknownCurve {
                                point: k + 1,
                                id: id.clone(),
                            }
                        })
                    })
                    .collect::<Result<Vec<_>, _>>()?;
                let n = ids.len();
                ids.sort_unstable();
                ids.dedup();
                if ids.len() != n || n < 2 {
                    return Err(ArrangementError::DegeneratePoint { point: k + 1 });
                }
                Ok(ids)
            })
            .collect()
    }

    /// Curve indices grouped by block, in declaration order.
    pub fn block_members(&self) -> Vec<Vec<usize>> {
        let mut members = vec![Vec::new(); self.blocks];
        for (i, c) in self.curves.iter().enumerate() {
            if (1..=self.blocks).contains(&c.block) {
                members[c.block - 1].push(i);
            }
        }
        members
    }

    /// `n_ij`: number of points shared by each pair of curves that meet.
    pub fn intersection_counts(&self) -> Result<BTreeMap<(usize, usize), u64>, ArrangementError> {
        let mut counts = BTreeMap::new();
        for pt in self.incidence()? {
            for (x, &i) in pt.iter().enumerate() {
                for &j in &pt[x + 1..] {
                    *counts.entry((i, j)).or_insert(0) += 1;
                }
            }
        }
        Ok(counts)
    }
}

/// `d` and the counts `t_n` of `n`-points.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct CombinatorialData {
    pub d: usize,
    pub t: BTreeMap<usize, u64>,
}

impl CombinatorialData {
    pub fn t(&self, n: usize) -> u64 {
        self.t.get(&n).copied().unwrap_or(0)
    }

    /// Number of points blown up by the log resolution.
    pub fn k(&self) -> u64 {
        self.t
            .iter()
            .filter(|(&n, _)| n >= 3)
            .map(|(_, &c)| c)
            .sum()
    }
}

fn choose2(n: u64) -> u64 {
    n * n.saturating_sub(1) / 2
}

pub fn validate(a: &Arrangement) -> Result<CombinatorialData, ArrangementError> {
    let d = a.d();
    if d < 3 {
        return Err(ArrangementError::TooFewCurves { d });
    }
    if a.surface.chi().is_none() {
        return Err(ArrangementError::SurfaceNotNoether {
            name: a.surface.name.clone(),
            sum: a.surface.c1_sq + a.surface.c2,
        });
    }
    let incidence = a.incidence()?;
    let mut t = BTreeMap::new();
    for (k, pt) in incidence.iter().enumerate() {
        if pt.len() >= d {
            return Err(ArrangementError::DPoint { point: k + 1, d });
        }
        *t.entry(pt.len()).or_insert(0) += 1;
    }

    for c in &a.curves {
        if c.block == 0 || c.block > a.blocks {
            return Err(ArrangementError::BlockOutOfRange {
                curve: c.id.clone(),
                block: c.block,
                blocks: a.blocks,
            });
        }
        if c.u == 0 {
            return Err(ArrangementError::ZeroWeight {
                curve: c.id.clone(),
            });
        }
    }
    for (b, members) in a.block_members().iter().enumerate() {
        if members.len() < 3 {
            return Err(ArrangementError::BlockTooSmall {
                block: b + 1,
                size: members.len(),
            });
        }
        let g = members
            .iter()
            .fold(0, |g, &i| num_integer::gcd(g, a.curves[i].u));
        if g != 1 {
            return Err(ArrangementError::BlockNotCoprime {
                block: b + 1,
                gcd: g,
            });
        }
    }

    if a.line_arrangement {
        let counts = a.intersection_counts()?;
        for i in 0..d {
            for j in i + 1..d {
                let shared = counts.get(&(i, j)).copied().unwrap_or(0);
                if shared != 1 {
                    return Err(ArrangementError::LinePairCoverage {
                        a: a.curves[i].id.clone(),
                        b: a.curves[j].id.clone(),
                        shared,
                    });
                }
            }
        }
        let lhs: u64 = t.iter().map(|(&n, &c)| choose2(n as u64) * c).sum();
        let rhs = choose2(d as u64);
        if lhs != rhs {
            return Err(ArrangementError::LinePairCount { lhs, rhs });
        }
    }
    Ok(CombinatorialData { d, t })
}

/// Log Chern numbers `c̄1²`, `c̄2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LogChernNumbers {
    pub c1bar_sq: i64,
    pub c2bar: i64,
}

impl LogChernNumbers {
    /// `c̄1² / c̄2`, undefined when `c̄2 = 0`.
    pub fn ratio(&self) -> Option<ExactRational> {
        (self.c2bar != 0).then(|| ExactRational::new(self.c1bar_sq.into(), self.c2bar.into()))
    }
}

/// Log Chern numbers straight from `t_n` and the curve data:
/// `c̄1² = c1²(Z) - Σ C_i² + Σ (3n - 4) t_n + 4 Σ (g_i - 1)`,
/// `c̄2 = c2(Z) + Σ (n - 1) t_n + 2 Σ (g_i - 1)`.
pub fn log_chern_direct(a: &Arrangement) -> Result<LogChernNumbers, ArrangementError> {
    let data = validate(a)?;
    let self_sum: i64 = a.curves.iter().map(|c| c.self_int).sum();
    let genus_sum: i64 = a.curves.iter().map(|c| c.genus as i64 - 1).sum();
    let (mut pts1, mut pts2) = (0i64, 0i64);
    for (&n, &count) in &data.t {
        pts1 += (3 * n as i64 - 4) * count as i64;
        pts2 += (n as i64 - 1) * count as i64;
    }
    Ok(LogChernNumbers {
        c1bar_sq: a.surface.c1_sq - self_sum + pts1 + 4 * genus_sum,
        c2bar: a.surface.c2 + pts2 + 2 * genus_sum,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn triangle() -> Arrangement {
        gen_general_lines(3).unwrap()
    }

    #[test]
    fn triangle_data() {
        let data = validate(&triangle()).unwrap();
        assert_eq!(data.d, 3);
        assert_eq!(data.t(2), 3);
        assert_eq!(data.k(), 0);
        assert_eq!(
            log_chern_direct(&triangle()).unwrap(),
            LogChernNumbers {
                c1bar_sq: 0,
                c2bar: 0
            }
        );
        assert_eq!(log_chern_direct(&triangle()).unwrap().ratio(), None);
    }

    #[test]
    fn dual_hesse_log_chern() {
        let a = gen_ceva(3).unwrap();
        let data = validate(&a).unwrap();
        assert_eq!((data.d, data.t(3), data.t.len()), (9, 12, 1));
        assert_eq!(
            log_chern_direct(&a).unwrap(),
            LogChernNumbers {
                c1bar_sq: 24,
                c2bar: 9
            }
        );
    }

    #[test]
    fn d_point_is_rejected() {
        let mut a = triangle();
        a.points = vec![PointDecl::new(["L1", "L2", "L3"])];
        a.line_arrangement = false;
        assert_eq!(
            validate(&a),
            Err(ArrangementError::DPoint { point: 1, d: 3 })
        );
    }

    #[test]
    fn block_gcd_is_checked() {
        let mut a = gen_general_lines(4).unwrap();
        for c in &mut a.curves {
            c.u = 2;
        }
        assert_eq!(
            validate(&a),
            Err(ArrangementError::BlockNotCoprime { block: 1, gcd: 2 })
        );
        a.curves[0].u = 3;
        assert!(validate(&a).is_ok());
    }

    #[test]
    fn small_block_is_rejected() {
        let mut a = gen_general_lines(4).unwrap();
        a.blocks = 2;
        a.curves[3].block = 2;
        assert_eq!(
            validate(&a),
            Err(ArrangementError::BlockTooSmall { block: 2, size: 1 })
        );
    }

    #[test]
    fn line_pair_coverage_is_checked() {
        let mut a = gen_general_lines(4).unwrap();
        a.points.pop();
        assert!(matches!(
            validate(&a),
            Err(ArrangementError::LinePairCoverage { .. })
        ));
        a.line_arrangement = false;
        assert!(validate(&a).is_ok());
    }

    #[test]
    fn id_problems() {
        let mut a = triangle();
        a.points.push(PointDecl::new(["L1", "X"]));
        assert_eq!(
            validate(&a),
            Err(ArrangementError::UnknownCurve {
                point: 4,
                id: "X".into()
            })
        );
        let mut a = triangle();
        a.points.push(PointDecl::new(["L1", "L1"]));
        assert_eq!(
            validate(&a),
            Err(ArrangementError::DegeneratePoint { point: 4 })
        );
        let mut a = triangle();
        a.curves[1].id = "L1".into();
        assert_eq!(
            validate(&a),
            Err(ArrangementError::DuplicateCurve { id: "L1".into() })
        );
    }

    #[test]
    fn too_few_curves_and_bad_surface() {
        let mut a = triangle();
        a.curves.pop();
        a.points.clear();
        assert_eq!(validate(&a), Err(ArrangementError::TooFewCurves { d: 2 }));
        let mut a = triangle();
        a.surface.c2 = 4;
        assert!(matches!(
            validate(&a),
            Err(ArrangementError::SurfaceNotNoether { .. })
        ));
    }
}
