//! Machine-readable verification reports.

use serde::{Deserialize, Serialize};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// How a residual is compared with its tolerance.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Comparison {
    /// Pass when `residual <= tolerance`.
    AtMost,
    /// Pass when `residual > tolerance`; used by negative controls.
    Above,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckResult {
    pub name: String,
    pub max_residual: f64,
    pub tolerance: f64,
    pub comparison: Comparison,
    pub pass: bool,
    /// Reason the check did not run; skipped checks count as passing.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub skipped: Option<String>,
}

impl CheckResult {
    pub fn at_most(name: &str, residual: f64, tolerance: f64) -> Self {
        Self::compare(name, residual, tolerance, Comparison::AtMost)
    }

    pub fn above(name: &str, residual: f64, tolerance: f64) -> Self {
        Self::compare(name, residual, tolerance, Comparison::Above)
    }

    fn compare(name: &str, residual: f64, tolerance: f64, comparison: Comparison) -> Self {
        let pass = residual.is_finite()
            && match comparison {
                Comparison::AtMost => residual <= tolerance,
                Comparison::Above => residual > tolerance,
            };
        Self {
            name: name.to_owned(),
            max_residual: residual,
            tolerance,
            comparison,
            pass,
            skipped: None,
        }
    }

    pub fn skipped(name: &str, tolerance: f64, reason: &str) -> Self {
        Self {
            name: name.to_owned(),
            max_residual: 0.0,
            tolerance,
            comparison: Comparison::AtMost,
            pass: true,
            skipped: Some(reason.to_owned()),
        }
    }

    /// A check whose computation itself failed.
    pub fn errored(name: &str, tolerance: f64, err: &dyn std::fmt::Display) -> Self {
        Self {
            name: name.to_owned(),
            max_residual: f64::NAN,
            tolerance,
            comparison: Comparison::AtMost,
            pass: false,
            skipped: Some(format!("error: {err}")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub suite: String,
    pub seed: u64,
    /// Global tolerance override, if one was given.
    pub tolerance: Option<f64>,
    pub checks: Vec<CheckResult>,
    pub pass: bool,
    pub version: String,
}

impl SuiteReport {
    pub fn new(suite: &str, seed: u64, tolerance: Option<f64>, checks: Vec<CheckResult>) -> Self {
        let pass = checks.iter().all(|c| c.pass);
        Self {
            suite: suite.to_owned(),
            seed,
            tolerance,
            checks,
            pass,
            version: VERSION.to_owned(),
        }
    }

    pub fn push(&mut self, check: CheckResult) {
        self.pass &= check.pass;
        self.checks.push(check);
    }

    pub fn check(&self, name: &str) -> Option<&CheckResult> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn exit_code(&self) -> u8 {
        if self.pass {
            0
        } else {
            1
        }
    }

    /// One line per check, for terminals.
    pub fn summary(&self) -> String {
        let mut out = String::new();
        for c in &self.checks {
            let status = match (&c.skipped, c.pass) {
                (Some(_), true) => "SKIP",
                (_, true) => "PASS",
                (_, false) => "FAIL",
            };
            let op = match c.comparison {
                Comparison::AtMost => "<=",
                Comparison::Above => ">",
            };
            out.push_str(&format!(
                "{status} {:<28} {:>11.3e} {op} {:.0e}",
                c.name, c.max_residual, c.tolerance
            ));
            if let Some(r) = &c.skipped {
                out.push_str(&format!("  ({r})"));
            }
            out.push('\n');
        }
        out.push_str(&format!(
            "{}: {}\n",
            self.suite,
            if self.pass { "pass" } else { "FAIL" }
        ));
        out
    }
}
