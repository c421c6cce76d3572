//! Fuzz reports: a machine-readable document and a text rendering.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub suite: String,
    pub property: String,
    pub instance_index: usize,
    /// A replayable scenario, or the raw inputs when no game is involved.
    pub instance: serde_json::Value,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteStats {
    pub suite: String,
    pub instances: usize,
    /// Property checks performed.
    pub checked: u64,
    /// Instances for which no admissible input could be generated.
    pub skipped: u64,
    pub violations: u64,
    pub budget_exceeded: u64,
    pub counters: BTreeMap<String, u64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FuzzReport {
    pub seed: u64,
    pub count: usize,
    pub suites: Vec<SuiteStats>,
    pub violations: Vec<Violation>,
    pub budget_exceeded: u64,
    /// Archived instances from exploratory suites; never counted as violations.
    pub findings: Vec<Violation>,
}

impl FuzzReport {
    pub fn is_clean(&self) -> bool {
        self.violations.is_empty() && self.budget_exceeded == 0
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "fuzz seed {} count {}", self.seed, self.count);
        for s in &self.suites {
            let _ = writeln!(
                out,
                "  {:<24} instances {:>5}  checks {:>8}  skipped {:>4}  violations {:>3}  budget {:>3}",
                s.suite, s.instances, s.checked, s.skipped, s.violations, s.budget_exceeded
            );
            for (k, v) in &s.counters {
                let _ = writeln!(out, "      {k}: {v}");
            }
        }
        for v in &self.violations {
            let _ = writeln!(
                out,
                "VIOLATION {} / {} at instance {}: {}",
                v.suite, v.property, v.instance_index, v.instance
            );
        }
        if !self.findings.is_empty() {
            let _ = writeln!(out, "{} finding(s) archived", self.findings.len());
        }
        let _ = writeln!(
            out,
            "{}",
            if self.is_clean() {
                "clean"
            } else if self.violations.is_empty() {
                "budget exhausted"
            } else {
                "violations found"
            }
        );
        out
    }
}
