//! Report rows and their JSON/CSV emission.

use serde::{Deserialize, Serialize};
use std::fmt::Write as _;

/// One measured quantity against one bound.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EstimateReport {
    /// The swept parameter (α for exponential sums, λ for the oscillatory
    /// integral); absent for checks that have none.
    pub alpha: Option<f64>,
    pub measured: f64,
    pub bound: f64,
    pub satisfied: bool,
    pub slack: f64,
    /// The bound is a floor: `measured >= bound`.
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub lower: bool,
}

impl EstimateReport {
    pub fn new(alpha: Option<f64>, measured: f64, bound: f64) -> Self {
        let slack = bound - measured;
        Self {
            alpha,
            measured,
            bound,
            satisfied: slack >= 0.0,
            slack,
            lower: false,
        }
    }

    /// `measured >= bound`; the slack is `measured - bound`.
    pub fn at_least(alpha: Option<f64>, measured: f64, bound: f64) -> Self {
        let slack = measured - bound;
        Self {
            alpha,
            measured,
            bound,
            satisfied: slack >= 0.0,
            slack,
            lower: true,
        }
    }

    /// Ratio `measured / bound`; `0` when both vanish.
    pub fn ratio(&self) -> f64 {
        if self.bound == 0.0 {
            if self.measured == 0.0 {
                0.0
            } else {
                f64::INFINITY
            }
        } else {
            self.measured / self.bound
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportRow {
    pub check: String,
    /// Hard rows come from unconditional statements; a failure fails the run.
    pub hard: bool,
    #[serde(flatten)]
    pub estimate: EstimateReport,
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct Summary {
    pub passed: u64,
    pub failed: u64,
    /// Failures among hard rows.
    pub hard_failed: u64,
    #[serde(rename = "maxConstantObserved")]
    pub max_constant_observed: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Provenance {
    pub version: String,
    pub seed: u64,
    pub config: serde_json::Value,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub suite: String,
    pub rows: Vec<ReportRow>,
    pub summary: Summary,
    #[serde(default, skip_serializing_if = "serde_json::Value::is_null")]
    pub details: serde_json::Value,
    pub provenance: Provenance,
}

impl VerificationReport {
    pub fn new(suite: impl Into<String>, seed: u64, config: serde_json::Value) -> Self {
        Self {
            suite: suite.into(),
            rows: Vec::new(),
            summary: Summary::default(),
            details: serde_json::Value::Null,
            provenance: Provenance {
                version: env!("CARGO_PKG_VERSION").to_string(),
                seed,
                config,
            },
        }
    }

    pub fn push(&mut self, check: impl Into<String>, hard: bool, estimate: EstimateReport) {
        if estimate.satisfied {
            self.summary.passed += 1;
        } else {
            self.summary.failed += 1;
            if hard {
                self.summary.hard_failed += 1;
            }
        }
        self.rows.push(ReportRow {
            check: check.into(),
            hard,
            estimate,
        });
    }

    /// Records an empirical constant; the summary keeps the maximum.
    pub fn observe_constant(&mut self, c: f64) {
        let m = self.summary.max_constant_observed.get_or_insert(c);
        if c > *m {
            *m = c;
        }
    }

    pub fn hard_failures(&self) -> impl Iterator<Item = &ReportRow> {
        self.rows.iter().filter(|r| r.hard && !r.estimate.satisfied)
    }

    pub fn passed(&self) -> bool {
        self.summary.hard_failed == 0
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Json,
    Csv,
}

fn opt(v: Option<f64>) -> String {
    v.map(|x| x.to_string()).unwrap_or_default()
}

/// JSON is one object; CSV is a header row plus one line per check row.
pub fn emit_report(report: &VerificationReport, format: Format) -> String {
    match format {
        Format::Json => serde_json::to_string(report).expect("report serialization is infallible"),
        Format::Csv => {
            let mut out = String::from("suite,check,hard,alpha,measured,bound,satisfied,slack\n");
            for row in &report.rows {
                let e = &row.estimate;
                let _ = writeln!(
                    out,
                    "{},{},{},{},{},{},{},{}",
                    report.suite,
                    row.check,
                    row.hard,
                    opt(e.alpha),
                    e.measured,
                    e.bound,
                    e.satisfied,
                    e.slack
                );
            }
            out
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_suite_summary() {
        let r = VerificationReport::new("empty", 0, serde_json::json!({}));
        assert_eq!(r.summary.passed, 0);
        assert_eq!(r.summary.failed, 0);
        assert!(r.passed());
        let json = emit_report(&r, Format::Json);
        assert!(json.contains(r#""passed":0"#));
    }

    #[test]
    fn one_passing_row() {
        let mut r = VerificationReport::new("one", 1, serde_json::json!({}));
        r.push("x", true, EstimateReport::new(Some(0.5), 1.0, 2.0));
        assert_eq!(r.summary.passed, 1);
        let csv = emit_report(&r, Format::Csv);
        assert_eq!(csv.lines().count(), 2);
        assert!(csv
            .lines()
            .nth(1)
            .unwrap()
            .starts_with("one,x,true,0.5,1,2,true,1"));
    }

    #[test]
    fn hard_failure_counts() {
        let mut r = VerificationReport::new("s", 1, serde_json::json!({}));
        r.push("soft", false, EstimateReport::new(None, 3.0, 2.0));
        assert!(r.passed());
        r.push("hard", true, EstimateReport::new(None, 3.0, 2.0));
        assert!(!r.passed());
        assert_eq!(r.hard_failures().count(), 1);
    }
}
