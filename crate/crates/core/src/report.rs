//! Law-check reports.
//!
//! A check either passes, fails with a printable witness, or is skipped with
//! a reason (typically a budget refusal or an out-of-universe verdict).
//! Reports are plain data: deterministic, serialisable, and comparable.

use serde::Serialize;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

/// One named check with its outcome.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Check {
    /// Stable identifier, e.g. `"vec/bool/assoc"`.
    pub id: String,
    pub status: Status,
    /// Concrete counterexample for failures, reason for skips.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
    /// Number of individual cases the check decided.
    pub cases: u64,
}

impl Check {
    pub fn pass(id: impl Into<String>, cases: u64) -> Self {
        Check {
            id: id.into(),
            status: Status::Pass,
            detail: None,
            cases,
        }
    }

    pub fn fail(id: impl Into<String>, witness: impl Into<String>, cases: u64) -> Self {
        Check {
            id: id.into(),
            status: Status::Fail,
            detail: Some(witness.into()),
            cases,
        }
    }

    pub fn skipped(id: impl Into<String>, reason: impl Into<String>) -> Self {
        Check {
            id: id.into(),
            status: Status::Skipped,
            detail: Some(reason.into()),
            cases: 0,
        }
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

/// An ordered bundle of checks produced by one law suite.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct Report {
    pub checks: Vec<Check>,
}

impl Report {
    pub fn new() -> Self {
        Report { checks: Vec::new() }
    }

    pub fn push(&mut self, check: Check) {
        self.checks.push(check);
    }

    pub fn extend(&mut self, other: Report) {
        self.checks.extend(other.checks);
    }

    /// True when no check failed (skips do not count as failures).
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.status != Status::Fail)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| c.status == Status::Fail)
    }

    pub fn total_cases(&self) -> u64 {
        self.checks.iter().map(|c| c.cases).sum()
    }

    /// Records an equation check: pass when `witness` is `None`.
    pub fn equation(&mut self, id: &str, cases: u64, witness: Option<String>) {
        match witness {
            None => self.push(Check::pass(id, cases)),
            Some(w) => self.push(Check::fail(id, w, cases)),
        }
    }
}
