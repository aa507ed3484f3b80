//! Embedded reference tables and their runner.

use std::fmt;
use std::str::FromStr;

use serde::Deserialize;

use crate::arrangements::{resolve, Generator};
use crate::covers::{report, ChernReport, CoverSpec};
use crate::numth::{FareyConfig, PrimeModulus};
use crate::partitions::parse_partition;
use crate::render::{fraction, rounded, truncated};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TableId {
    /// Dual Hesse at `p = 61169`, nine partitions, exact `c1²` and `c2`.
    HesseFixedPrime,
    /// Dual Hesse over sixteen primes, truncated ratios.
    HessePrimes,
    /// Blown-up CEVA(5) at `p = 61169`, one row.
    Ceva5Blowup,
}

impl TableId {
    pub const ALL: [TableId; 3] = [
        TableId::HesseFixedPrime,
        TableId::HessePrimes,
        TableId::Ceva5Blowup,
    ];

    pub fn name(self) -> &'static str {
        match self {
            TableId::HesseFixedPrime => "hesse-fixed-prime",
            TableId::HessePrimes => "hesse-primes",
            TableId::Ceva5Blowup => "ceva5-blowup",
        }
    }

    pub fn source(self) -> &'static str {
        match self {
            TableId::HesseFixedPrime => include_str!("../data/hesse_fixed_prime.toml"),
            TableId::HessePrimes => include_str!("../data/hesse_primes.toml"),
            TableId::Ceva5Blowup => include_str!("../data/ceva5_blowup.toml"),
        }
    }
}

impl fmt::Display for TableId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for TableId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        TableId::ALL
            .into_iter()
            .find(|t| t.name() == s)
            .ok_or_else(|| Error::Parse {
                what: "table name",
                message: format!(
                    "unknown table `{s}`; expected one of {}",
                    TableId::ALL.map(TableId::name).join(", ")
                ),
            })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Deserialize)]
pub struct TableSpec {
    pub title: String,
    /// Generator invocation, e.g. `"ceva 3"`.
    pub arrangement: String,
    /// Default prime for rows without their own.
    pub p: Option<u64>,
    /// Decimal places of the printed ratios.
    pub digits: u32,
    pub rows: Vec<RowSpec>,
}

#[derive(Debug, Clone, PartialEq, Eq, Deserialize)]
pub struct RowSpec {
    pub partition: String,
    pub p: Option<u64>,
    pub c1_sq: Option<i64>,
    pub c2: Option<i64>,
    /// Truncated `c1²/c2`.
    pub ratio_c: Option<String>,
    /// Truncated `c1²/χ`.
    pub ratio_chi: Option<String>,
    /// `c1²/c2` as a reduced fraction.
    pub ratio_exact: Option<String>,
    /// Rounded `c1²/c2`.
    pub ratio_rounded: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Comparison {
    pub field: &'static str,
    pub expected: String,
    pub computed: String,
}

impl Comparison {
    pub fn pass(&self) -> bool {
        self.expected == self.computed
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RowOutcome {
    pub p: u64,
    pub partition: String,
    pub report: ChernReport,
    pub comparisons: Vec<Comparison>,
}

impl RowOutcome {
    pub fn pass(&self) -> bool {
        self.comparisons.iter().all(Comparison::pass)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TableOutcome {
    pub title: String,
    pub rows: Vec<RowOutcome>,
}

impl TableOutcome {
    pub fn pass(&self) -> bool {
        self.rows.iter().all(RowOutcome::pass)
    }
}

pub fn load_table(id: TableId) -> Result<TableSpec> {
    toml::from_str(id.source()).map_err(|e| Error::Parse {
        what: "embedded table",
        message: e.to_string(),
    })
}

pub fn run_spec(spec: &TableSpec) -> Result<TableOutcome> {
    let a = spec.arrangement.parse::<Generator>()?.build()?;
    let resolved = resolve(&a)?;
    let digits = spec.digits;
    let mut rows = Vec::with_capacity(spec.rows.len());
    for row in &spec.rows {
        let pv = row.p.or(spec.p).ok_or_else(|| Error::Parse {
            what: "embedded table",
            message: format!("row `{}` has no prime", row.partition),
        })?;
        let p = PrimeModulus::new(pv)?;
        let (_, sol) = parse_partition(&row.partition)?;
        let cover = CoverSpec::from_solution(&a, &resolved, p, &sol, FareyConfig::default())?;
        let r = report(&cover)?;
        let undefined = || "undefined".to_string();
        let mut comparisons = Vec::new();
        let mut push = |field, expected: &Option<String>, computed: String| {
            if let Some(e) = expected {
                comparisons.push(Comparison {
                    field,
                    expected: e.clone(),
                    computed,
                });
            }
        };
        push(
            "c1^2",
            &row.c1_sq.map(|v| v.to_string()),
            r.c1_sq.to_string(),
        );
        push("c2", &row.c2.map(|v| v.to_string()), r.c2.to_string());
        push(
            "c1^2/c2",
            &row.ratio_c,
            r.ratio_c
                .as_ref()
                .map_or_else(undefined, |x| truncated(x, digits)),
        );
        push(
            "c1^2/chi",
            &row.ratio_chi,
            r.ratio_chi
                .as_ref()
                .map_or_else(undefined, |x| truncated(x, digits)),
        );
        push(
            "c1^2/c2 exact",
            &row.ratio_exact,
            r.ratio_c.as_ref().map_or_else(undefined, fraction),
        );
        push(
            "c1^2/c2 rounded",
            &row.ratio_rounded,
            r.ratio_c
                .as_ref()
                .map_or_else(undefined, |x| rounded(x, digits)),
        );
        rows.push(RowOutcome {
            p: pv,
            partition: sol.to_string(),
            report: r,
            comparisons,
        });
    }
    Ok(TableOutcome {
        title: spec.title.clone(),
        rows,
    })
}

pub fn run_table(id: TableId) -> Result<TableOutcome> {
    run_spec(&load_table(id)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn embedded_tables_parse() {
        assert_eq!(load_table(TableId::HesseFixedPrime).unwrap().rows.len(), 9);
        assert_eq!(load_table(TableId::HessePrimes).unwrap().rows.len(), 16);
        assert_eq!(load_table(TableId::Ceva5Blowup).unwrap().rows.len(), 1);
    }

    #[test]
    fn names_round_trip() {
        for id in TableId::ALL {
            assert_eq!(id.name().parse::<TableId>().unwrap(), id);
        }
        assert!("hesse".parse::<TableId>().is_err());
    }

    #[test]
    fn single_row_table() {
        let out = run_table(TableId::Ceva5Blowup).unwrap();
        assert!(out.pass(), "{:?}", out.rows[0].comparisons);
        assert_eq!(out.rows[0].comparisons.len(), 4);
    }

    #[test]
    fn mismatch_is_reported() {
        let mut spec = load_table(TableId::HesseFixedPrime).unwrap();
        spec.rows.truncate(1);
        spec.rows[0].c2 = Some(733436);
        let out = run_spec(&spec).unwrap();
        assert!(!out.pass());
        let failing: Vec<_> = out.rows[0]
            .comparisons
            .iter()
            .filter(|c| !c.pass())
            .collect();
        assert_eq!(failing.len(), 1);
        assert_eq!(failing[0].field, "c2");
    }
}
