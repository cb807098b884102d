//! Report assembly and rendering: JSON (the canonical machine format),
//! markdown and plain text carry the same fields.

use crate::catalog::CheckDescriptor;
use crate::runner::{CheckResult, Status};
use serde::Serialize;
use std::time::{SystemTime, UNIX_EPOCH};

#[derive(Clone, Debug, Serialize)]
pub struct Conventions {
    pub signature: &'static str,
    pub epsilon_orientation: &'static str,
    pub hbar: &'static str,
}

pub const CONVENTIONS: Conventions = Conventions {
    signature: "(+,-,-,-)",
    epsilon_orientation: "eps_0123 = +1",
    hbar: "1",
};

#[derive(Clone, Debug, Serialize)]
pub struct Totals {
    pub pass: usize,
    pub fail: usize,
    pub error: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub version: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timestamp: Option<u64>,
    pub conventions: Conventions,
    pub checks: Vec<CheckResult>,
    pub totals: Totals,
}

impl Report {
    /// Assembles a report. Without a timestamp the report is byte-identical
    /// across runs for a fixed seed and version, so wall-clock durations are
    /// zeroed as well.
    pub fn assemble(mut checks: Vec<CheckResult>, with_timestamp: bool) -> Report {
        let timestamp = if with_timestamp {
            Some(
                SystemTime::now()
                    .duration_since(UNIX_EPOCH)
                    .map(|d| d.as_secs())
                    .unwrap_or(0),
            )
        } else {
            for c in checks.iter_mut() {
                c.duration_ms = 0;
            }
            None
        };
        let count = |s: Status| checks.iter().filter(|c| c.status == s).count();
        let totals = Totals {
            pass: count(Status::Pass),
            fail: count(Status::Fail),
            error: count(Status::Error),
        };
        Report {
            version: env!("CARGO_PKG_VERSION"),
            timestamp,
            conventions: CONVENTIONS,
            checks,
            totals,
        }
    }

    /// Process exit code: 0 iff everything passed, 1 on any fail or error.
    pub fn exit_code(&self) -> i32 {
        if self.totals.fail == 0 && self.totals.error == 0 {
            0
        } else {
            1
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("conformal verification report v{}\n", self.version));
        if let Some(ts) = self.timestamp {
            out.push_str(&format!("timestamp: {ts}\n"));
        }
        out.push_str(&format!(
            "conventions: signature {}, {}, hbar = {}\n\n",
            self.conventions.signature,
            self.conventions.epsilon_orientation,
            self.conventions.hbar
        ));
        for c in &self.checks {
            let status = match c.status {
                Status::Pass => "PASS ",
                Status::Fail => "FAIL ",
                Status::Error => "ERROR",
            };
            out.push_str(&format!("{status} {} ({} ms)\n", c.id, c.duration_ms));
            if let Some(text) = &c.residual_text {
                out.push_str(&format!(
                    "      residual ({} terms): {}\n",
                    c.residual_terms, text
                ));
                out.push_str(&format!("      ref: {}\n", c.paper_ref));
            }
        }
        out.push_str(&format!(
            "\ntotals: {} pass, {} fail, {} error\n",
            self.totals.pass, self.totals.fail, self.totals.error
        ));
        out
    }

    pub fn to_markdown(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!(
            "# Conformal verification report v{}\n\n",
            self.version
        ));
        if let Some(ts) = self.timestamp {
            out.push_str(&format!("- timestamp: {ts}\n"));
        }
        out.push_str(&format!(
            "- conventions: signature `{}`, `{}`, hbar = {}\n\n",
            self.conventions.signature,
            self.conventions.epsilon_orientation,
            self.conventions.hbar
        ));
        out.push_str("| check | status | residual terms | duration (ms) |\n");
        out.push_str("|---|---|---:|---:|\n");
        for c in &self.checks {
            let status = match c.status {
                Status::Pass => "pass",
                Status::Fail => "**fail**",
                Status::Error => "**error**",
            };
            out.push_str(&format!(
                "| `{}` | {} | {} | {} |\n",
                c.id, status, c.residual_terms, c.duration_ms
            ));
        }
        let failures: Vec<&CheckResult> = self
            .checks
            .iter()
            .filter(|c| c.status != Status::Pass)
            .collect();
        if !failures.is_empty() {
            out.push_str("\n## Failures\n\n");
            for c in failures {
                out.push_str(&format!(
                    "- `{}` [{}]: {}\n",
                    c.id,
                    c.paper_ref,
                    c.residual_text.as_deref().unwrap_or("(no rendering)")
                ));
            }
        }
        out.push_str(&format!(
            "\n**totals:** {} pass, {} fail, {} error\n",
            self.totals.pass, self.totals.fail, self.totals.error
        ));
        out
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CatalogListing {
    pub version: &'static str,
    pub checks: Vec<CheckDescriptor>,
    pub total: usize,
}

impl CatalogListing {
    pub fn new(checks: Vec<CheckDescriptor>) -> Self {
        let total = checks.len();
        CatalogListing {
            version: env!("CARGO_PKG_VERSION"),
            checks,
            total,
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("listing serializes");
        s.push('\n');
        s
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for d in &self.checks {
            out.push_str(&format!(
                "{}  [{}]  ({}, {})\n",
                d.id, d.paper_ref, d.module, d.group
            ));
        }
        out.push_str(&format!("total: {} checks\n", self.total));
        out
    }

    pub fn to_markdown(&self) -> String {
        let mut out = String::new();
        out.push_str("| check | module | group | ref |\n|---|---|---|---|\n");
        for d in &self.checks {
            out.push_str(&format!(
                "| `{}` | {} | {} | {} |\n",
                d.id, d.module, d.group, d.paper_ref
            ));
        }
        out.push_str(&format!("\n**total:** {} checks\n", self.total));
        out
    }
}
