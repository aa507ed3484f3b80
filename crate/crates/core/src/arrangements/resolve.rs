//! Log resolution: blow up every `n`-point with `n >= 3`.

use std::collections::BTreeMap;

use super::{validate, Arrangement, LogChernNumbers, SurfaceClass};
use crate::Result;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DivisorKind {
    ProperTransform,
    Exceptional,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ResolvedCurve {
    pub id: String,
    pub kind: DivisorKind,
    pub genus: u64,
    pub self_int: i64,
    /// Originating curve id, or `P<k>` for the k-th declared point.
    pub source: String,
    /// Indices of the original curves this divisor lies over: the curve
    /// itself for a proper transform, the curves through the point for an
    /// exceptional divisor.
    pub over: Vec<usize>,
}

/// The pair `(Y, Ā)`: proper transforms first (declaration order), then one
/// exceptional divisor per blown-up point (declaration order).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ResolvedArrangement {
    pub surface_y: SurfaceClass,
    pub divisors: Vec<ResolvedCurve>,
    /// `(i, j)` with `i < j` → number of nodes shared by `D_i`, `D_j`.
    pub nodes: BTreeMap<(usize, usize), u64>,
    pub t2_total: u64,
}

impl ResolvedArrangement {
    pub fn r(&self) -> usize {
        self.divisors.len()
    }

    pub fn self_int_sum(&self) -> i64 {
        self.divisors.iter().map(|d| d.self_int).sum()
    }

    /// `Σ (g(D_i) - 1)`.
    pub fn genus_excess(&self) -> i64 {
        self.divisors.iter().map(|d| d.genus as i64 - 1).sum()
    }

    /// `χ(O_Y)` from Noether's formula on `Y`.
    pub fn chi_y(&self) -> i64 {
        (self.surface_y.c1_sq + self.surface_y.c2) / 12
    }

    /// `c̄1² = c1²(Y) - Σ D_i² + 2 t2 + 4 Σ (g_i - 1)`,
    /// `c̄2 = c2(Y) + t2 + 2 Σ (g_i - 1)`.
    pub fn log_chern(&self) -> LogChernNumbers {
        let t2 = self.t2_total as i64;
        let g = self.genus_excess();
        LogChernNumbers {
            c1bar_sq: self.surface_y.c1_sq - self.self_int_sum() + 2 * t2 + 4 * g,
            c2bar: self.surface_y.c2 + t2 + 2 * g,
        }
    }
}

pub fn resolve(a: &Arrangement) -> Result<ResolvedArrangement> {
    let data = validate(a)?;
    let incidence = a.incidence()?;
    let d = a.d();

    let mut blown_up_on = vec![0i64; d];
    let mut divisors: Vec<ResolvedCurve> = a
        .curves
        .iter()
        .enumerate()
        .map(|(i, c)| ResolvedCurve {
            id: c.id.clone(),
            kind: DivisorKind::ProperTransform,
            genus: c.genus,
            self_int: c.self_int,
            source: c.id.clone(),
            over: vec![i],
        })
        .collect();
    let mut nodes = BTreeMap::new();

    for (k, pt) in incidence.iter().enumerate() {
        if pt.len() == 2 {
            *nodes.entry((pt[0], pt[1])).or_insert(0) += 1;
            continue;
        }
        let e = divisors.len();
        for &i in pt {
            blown_up_on[i] += 1;
            *nodes.entry((i, e)).or_insert(0) += 1;
        }
        divisors.push(ResolvedCurve {
            id: format!("E[{}]", k + 1),
            kind: DivisorKind::Exceptional,
            genus: 0,
            self_int: -1,
            source: format!("P{}", k + 1),
            over: pt.clone(),
        });
    }
    for (div, drop) in divisors.iter_mut().zip(blown_up_on) {
        div.self_int -= drop;
    }

    let t2_total = nodes.values().sum();
    Ok(ResolvedArrangement {
        surface_y: a.surface.blown_up(data.k() as i64),
        divisors,
        nodes,
        t2_total,
    })
}
