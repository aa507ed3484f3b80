//! Combinatorial realizability heuristics for complex line arrangements.
//! Advisory only.

use super::{log_chern_direct, validate, Arrangement, ArrangementError};
use crate::numth::ExactRational;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Check {
    pub name: &'static str,
    pub lhs: ExactRational,
    pub rhs: ExactRational,
    pub pass: bool,
}

impl Check {
    fn at_least(name: &'static str, lhs: ExactRational, rhs: ExactRational) -> Self {
        let pass = lhs >= rhs;
        Check {
            name,
            lhs,
            rhs,
            pass,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LineDiagnostics {
    /// `t2 + 3/4 t3 >= d + Σ_{n>4} (n - 4) t_n`.
    pub hirzebruch: Check,
    /// `t2 + 1/4 t3 >= 3`.
    pub two_three: Check,
    /// `8/3 c̄2 >= c̄1²`.
    pub log_ratio: Check,
}

impl LineDiagnostics {
    pub fn checks(&self) -> [&Check; 3] {
        [&self.hirzebruch, &self.two_three, &self.log_ratio]
    }

    pub fn all_pass(&self) -> bool {
        self.checks().iter().all(|c| c.pass)
    }
}

pub fn diagnostics(a: &Arrangement) -> Result<LineDiagnostics, ArrangementError> {
    if !a.line_arrangement {
        return Err(ArrangementError::NotLineArrangement);
    }
    let data = validate(a)?;
    let r = |n: i64, d: i64| ExactRational::new(n.into(), d.into());
    let t = |n: usize| data.t(n) as i64;
    let tail: i64 = data
        .t
        .iter()
        .filter(|(&n, _)| n > 4)
        .map(|(&n, &c)| (n as i64 - 4) * c as i64)
        .sum();
    let lc = log_chern_direct(a)?;
    Ok(LineDiagnostics {
        hirzebruch: Check::at_least(
            "t2 + 3/4 t3 >= d + sum_{n>4} (n-4) t_n",
            r(4 * t(2) + 3 * t(3), 4),
            r(data.d as i64 + tail, 1),
        ),
        two_three: Check::at_least("t2 + 1/4 t3 >= 3", r(4 * t(2) + t(3), 4), r(3, 1)),
        log_ratio: Check::at_least(
            "8/3 c2bar >= c1bar^2",
            r(8 * lc.c2bar, 3),
            r(lc.c1bar_sq, 1),
        ),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arrangements::{gen_ceva, gen_general_lines, gen_pg2, gen_underline_ceva};

    #[test]
    fn dual_hesse_is_tight() {
        let diag = diagnostics(&gen_ceva(3).unwrap()).unwrap();
        assert_eq!(diag.hirzebruch.lhs, diag.hirzebruch.rhs);
        assert!(diag.all_pass());
        assert_eq!(diag.log_ratio.lhs, diag.log_ratio.rhs);
    }

    #[test]
    fn fano_fails_hirzebruch() {
        let diag = diagnostics(&gen_pg2(2).unwrap()).unwrap();
        assert!(!diag.hirzebruch.pass);
        assert_eq!(diag.hirzebruch.lhs, ExactRational::new(21.into(), 4.into()));
        assert!(!diag.log_ratio.pass);
    }

    #[test]
    fn general_lines_pass() {
        assert!(diagnostics(&gen_general_lines(4).unwrap())
            .unwrap()
            .all_pass());
    }

    #[test]
    fn only_line_arrangements() {
        assert_eq!(
            diagnostics(&gen_underline_ceva(4).unwrap()),
            Err(ArrangementError::NotLineArrangement)
        );
    }
}
