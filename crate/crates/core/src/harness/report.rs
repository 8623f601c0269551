//! Aggregate run report with a stable JSON form.

use serde::Serialize;

use crate::harness::config::{ConfigEcho, ExperimentConfig};
use crate::harness::verdict::{Status, Verdict, VERDICT_SCHEMA};

/// Everything a `verify` run produces. Serialization is deterministic:
/// struct field order, verdicts in experiment-name order, no timestamps.
#[derive(Debug, Serialize)]
pub struct RunReport {
    pub schema: u32,
    pub config: ConfigEcho,
    pub verdicts: Vec<Verdict>,
    pub summary: Summary,
}

#[derive(Debug, Serialize)]
pub struct Summary {
    pub pass: usize,
    pub fail: usize,
    pub report_only: usize,
}

impl RunReport {
    pub fn new(config: &ExperimentConfig, verdicts: Vec<Verdict>) -> Self {
        let count = |status: Status| verdicts.iter().filter(|v| v.status == status).count();
        let summary = Summary {
            pass: count(Status::Pass),
            fail: count(Status::Fail),
            report_only: count(Status::ReportOnly),
        };
        RunReport {
            schema: VERDICT_SCHEMA,
            config: config.echo(),
            verdicts,
            summary,
        }
    }

    pub fn all_passed(&self) -> bool {
        self.summary.fail == 0
    }

    pub fn to_json(&self) -> serde_json::Result<String> {
        serde_json::to_string_pretty(self)
    }

    /// One line per verdict.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for v in &self.verdicts {
            let status = match v.status {
                Status::Pass => "PASS",
                Status::Fail => "FAIL",
                Status::ReportOnly => "REPORT",
            };
            out.push_str(&format!("{status:>6}  {}\n", v.experiment));
            if let Some(cx) = &v.counterexample {
                out.push_str(&format!("        counterexample: {}\n", cx.claim));
            }
        }
        out.push_str(&format!(
            "summary: {} pass, {} fail, {} report-only\n",
            self.summary.pass, self.summary.fail, self.summary.report_only
        ));
        out
    }
}
