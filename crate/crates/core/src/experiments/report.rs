//! Check rows and the CSV / JSON renderings of a run.

use serde::{Deserialize, Serialize};

use super::{Budget, Tolerances};
use crate::markov_source::MarkovModel;

/// One compared statistic. Rows without a tolerance are reported only.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckRow {
    pub check_id: String,
    pub s: Option<f64>,
    pub t: Option<f64>,
    pub empirical: f64,
    pub theory: Option<f64>,
    pub stderr: f64,
    pub tolerance: Option<f64>,
    pub pass: Option<bool>,
}

impl CheckRow {
    pub fn check(
        id: impl Into<String>,
        s: Option<f64>,
        t: Option<f64>,
        empirical: f64,
        theory: f64,
        stderr: f64,
        tolerance: f64,
    ) -> Self {
        Self {
            check_id: id.into(),
            s,
            t,
            empirical,
            theory: Some(theory),
            stderr,
            tolerance: Some(tolerance),
            pass: Some((empirical - theory).abs() <= tolerance),
        }
    }

    pub fn report(
        id: impl Into<String>,
        s: Option<f64>,
        t: Option<f64>,
        empirical: f64,
        theory: Option<f64>,
        stderr: f64,
    ) -> Self {
        Self {
            check_id: id.into(),
            s,
            t,
            empirical,
            theory,
            stderr,
            tolerance: None,
            pass: None,
        }
    }

    pub fn failed(&self) -> bool {
        self.pass == Some(false)
    }
}

/// Results of one experiment together with everything needed to rerun it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EstimatorSummary {
    pub experiment: String,
    pub version: String,
    pub model: MarkovModel,
    pub n: usize,
    pub reps: usize,
    pub seed: u64,
    pub budget: Budget,
    pub grid: Vec<f64>,
    pub tolerances: Tolerances,
    pub notes: Vec<String>,
    pub rows: Vec<CheckRow>,
}

pub const CSV_HEADER: &str = "check_id,s,t,empirical,theory,stderr,tolerance,pass";

impl EstimatorSummary {
    pub fn passed(&self) -> bool {
        !self.rows.iter().any(CheckRow::failed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckRow> {
        self.rows.iter().filter(|r| r.failed())
    }

    pub fn rows_with_id<'a>(&'a self, prefix: &'a str) -> impl Iterator<Item = &'a CheckRow> {
        self.rows
            .iter()
            .filter(move |r| r.check_id.starts_with(prefix))
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from(CSV_HEADER);
        out.push('\n');
        for row in &self.rows {
            out.push_str(&csv_line(row));
            out.push('\n');
        }
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("summary serializes")
    }
}

pub fn csv_line(row: &CheckRow) -> String {
    let opt = |x: Option<f64>| x.map(fmt_sig).unwrap_or_default();
    format!(
        "{},{},{},{},{},{},{},{}",
        row.check_id,
        opt(row.s),
        opt(row.t),
        fmt_sig(row.empirical),
        opt(row.theory),
        fmt_sig(row.stderr),
        opt(row.tolerance),
        row.pass.map(|p| p.to_string()).unwrap_or_default(),
    )
}

/// `x` with 12 significant digits, like C's `%.12g`.
pub fn fmt_sig(x: f64) -> String {
    const DIGITS: i32 = 12;
    if x == 0.0 || !x.is_finite() {
        return if x == 0.0 { "0".into() } else { x.to_string() };
    }
    let sci = format!("{:.*e}", (DIGITS - 1) as usize, x);
    let (mantissa, exp) = sci.split_once('e').expect("scientific format");
    let exp: i32 = exp.parse().expect("exponent");
    if !(-5..DIGITS).contains(&exp) {
        format!("{}e{}", trim_zeros(mantissa), exp)
    } else {
        trim_zeros(&format!("{:.*}", (DIGITS - 1 - exp) as usize, x)).to_string()
    }
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn significant_digits() {
        assert_eq!(fmt_sig(1.25), "1.25");
        assert_eq!(fmt_sig(0.0), "0");
        assert_eq!(fmt_sig(2.0), "2");
        assert_eq!(fmt_sig(1.0 / 3.0), "0.333333333333");
        assert_eq!(fmt_sig(-2.0 / 3.0 * 1e-7), "-6.66666666667e-8");
        assert_eq!(fmt_sig(123456789012345.0), "1.23456789012e14");
        assert_eq!(fmt_sig(99.99999999999999), "100");
        assert_eq!(fmt_sig(2.242063492063492), "2.24206349206");
    }

    #[test]
    fn row_verdicts() {
        let r = CheckRow::check("x", None, Some(0.5), 1.1, 1.0, 0.01, 0.2);
        assert_eq!(r.pass, Some(true));
        assert!(!r.failed());
        let r = CheckRow::check("x", None, None, 1.3, 1.0, 0.01, 0.2);
        assert!(r.failed());
        let r = CheckRow::report("x", Some(0.1), Some(0.2), 1.3, None, 0.01);
        assert_eq!(csv_line(&r), "x,0.1,0.2,1.3,,0.01,,");
    }
}
