//! Structured pass/fail reporting for verification checks.
//!
//! Every check distinguishes three outcomes: `Pass` (all reachable instances
//! verified), `Fail` (an exact counterexample was found, recorded as a
//! witness), and `Skipped` (nothing could be checked at this truncation).
//! Instances that fall outside the truncation window are never silently
//! treated as successes; they are counted in `skipped_instances`.

use serde::{Deserialize, Serialize};
use std::fmt::Write as _;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CheckStatus {
    Pass,
    Fail,
    Skipped,
}

/// Exact counterexample: where it happened and what the two sides were.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Witness {
    pub site: String,
    pub lhs: String,
    pub rhs: String,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CheckReport {
    #[serde(rename = "check")]
    pub name: String,
    pub status: CheckStatus,
    /// Instances verified exactly.
    pub checked_instances: u64,
    /// Instances that could not be decided inside the truncation window.
    #[serde(rename = "strata_skipped")]
    pub skipped_instances: u64,
    /// Counterexamples (capped; the first failures found in deterministic
    /// enumeration order).
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub witnesses: Vec<Witness>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

pub const MAX_WITNESSES: usize = 5;

impl CheckReport {
    pub fn new(name: impl Into<String>) -> Self {
        CheckReport {
            name: name.into(),
            status: CheckStatus::Skipped,
            checked_instances: 0,
            skipped_instances: 0,
            witnesses: Vec::new(),
            notes: Vec::new(),
        }
    }

    pub fn note(&mut self, s: impl Into<String>) {
        self.notes.push(s.into());
    }

    pub fn add_witness(&mut self, site: String, lhs: String, rhs: String) {
        if self.witnesses.len() < MAX_WITNESSES {
            self.witnesses.push(Witness { site, lhs, rhs });
        }
    }

    /// Settle the status from the counters: fail if any witness, skipped if
    /// nothing was checked, pass otherwise.
    pub fn finish(&mut self) {
        self.status = if !self.witnesses.is_empty() {
            CheckStatus::Fail
        } else if self.checked_instances == 0 {
            CheckStatus::Skipped
        } else {
            CheckStatus::Pass
        };
    }

    pub fn passed(&self) -> bool {
        self.status == CheckStatus::Pass
    }
}

/// A named bundle of checks on one object (a vertex algebra, a module, a
/// tensor construction, ...).
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct VerificationReport {
    pub subject: String,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
    pub checks: Vec<CheckReport>,
}

impl VerificationReport {
    pub fn new(subject: impl Into<String>) -> Self {
        VerificationReport {
            subject: subject.into(),
            notes: Vec::new(),
            checks: Vec::new(),
        }
    }

    pub fn note(&mut self, s: impl Into<String>) {
        self.notes.push(s.into());
    }

    pub fn push(&mut self, mut check: CheckReport) {
        if check.status == CheckStatus::Skipped && check.witnesses.is_empty() {
            check.finish();
        }
        self.checks.push(check);
    }

    pub fn overall(&self) -> CheckStatus {
        if self.checks.iter().any(|c| c.status == CheckStatus::Fail) {
            CheckStatus::Fail
        } else if !self.checks.is_empty()
            && self.checks.iter().all(|c| c.status == CheckStatus::Skipped)
        {
            CheckStatus::Skipped
        } else {
            CheckStatus::Pass
        }
    }

    pub fn passed(&self) -> bool {
        self.overall() == CheckStatus::Pass
    }

    pub fn render_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "== {} ==", self.subject);
        for n in &self.notes {
            let _ = writeln!(out, "  note: {n}");
        }
        for c in &self.checks {
            let tag = match c.status {
                CheckStatus::Pass => "PASS",
                CheckStatus::Fail => "FAIL",
                CheckStatus::Skipped => "SKIP",
            };
            let _ = writeln!(
                out,
                "[{tag}] {} (checked {}, out-of-window {})",
                c.name, c.checked_instances, c.skipped_instances
            );
            for n in &c.notes {
                let _ = writeln!(out, "       note: {n}");
            }
            for w in &c.witnesses {
                let _ = writeln!(out, "       at {}: lhs = {} ; rhs = {}", w.site, w.lhs, w.rhs);
            }
        }
        let _ = writeln!(
            out,
            "overall: {}",
            match self.overall() {
                CheckStatus::Pass => "PASS",
                CheckStatus::Fail => "FAIL",
                CheckStatus::Skipped => "SKIP",
            }
        );
        out
    }
}

/// Top-level result of a CLI verification suite: several reports plus
/// run metadata. Wall time is deliberately not stored here so that report
/// files are byte-identical across runs.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SuiteReport {
    pub suite: String,
    pub parameters: Vec<(String, String)>,
    pub reports: Vec<VerificationReport>,
}

impl SuiteReport {
    pub fn new(suite: impl Into<String>) -> Self {
        SuiteReport {
            suite: suite.into(),
            parameters: Vec::new(),
            reports: Vec::new(),
        }
    }

    pub fn param(&mut self, key: impl Into<String>, value: impl ToString) {
        self.parameters.push((key.into(), value.to_string()));
    }

    pub fn overall(&self) -> CheckStatus {
        let mut any_pass = false;
        for r in &self.reports {
            match r.overall() {
                CheckStatus::Fail => return CheckStatus::Fail,
                CheckStatus::Pass => any_pass = true,
                CheckStatus::Skipped => {}
            }
        }
        if self.reports.is_empty() || !any_pass {
            CheckStatus::Skipped
        } else {
            CheckStatus::Pass
        }
    }

    pub fn render_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "suite: {}", self.suite);
        for (k, v) in &self.parameters {
            let _ = writeln!(out, "  {k} = {v}");
        }
        for r in &self.reports {
            out.push_str(&r.render_text());
        }
        let _ = writeln!(
            out,
            "suite overall: {}",
            match self.overall() {
                CheckStatus::Pass => "PASS",
                CheckStatus::Fail => "FAIL",
                CheckStatus::Skipped => "SKIP",
            }
        );
        out
    }
}
