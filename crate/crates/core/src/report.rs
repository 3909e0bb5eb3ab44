//! Check records shared by every verification routine.

use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Undecided,
}

/// One failed or undecided check, localized at a basis word or sample.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Finding {
    pub check: String,
    pub at: String,
    pub detail: String,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct CheckReport {
    pub name: String,
    pub checked: usize,
    pub failures: Vec<Finding>,
    pub undecided: Vec<Finding>,
    pub notes: Vec<String>,
}

impl CheckReport {
    pub fn new(name: impl Into<String>) -> Self {
        CheckReport { name: name.into(), ..Default::default() }
    }

    pub fn ok(&self) -> bool {
        self.failures.is_empty() && self.undecided.is_empty()
    }

    pub fn status(&self) -> Status {
        if !self.failures.is_empty() {
            Status::Fail
        } else if !self.undecided.is_empty() {
            Status::Undecided
        } else {
            Status::Pass
        }
    }

    /// Count one check; on failure the detail closure renders the witness.
    pub fn record(&mut self, check: &str, at: impl Into<String>, ok: bool, detail: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.failures.push(Finding { check: check.into(), at: at.into(), detail: detail() });
        }
    }

    pub fn fail(&mut self, check: &str, at: impl Into<String>, detail: impl Into<String>) {
        self.checked += 1;
        self.failures.push(Finding { check: check.into(), at: at.into(), detail: detail.into() });
    }

    pub fn undecided(&mut self, check: &str, at: impl Into<String>, detail: impl Into<String>) {
        self.checked += 1;
        self.undecided.push(Finding { check: check.into(), at: at.into(), detail: detail.into() });
    }

    pub fn note(&mut self, s: impl Into<String>) {
        self.notes.push(s.into());
    }

    pub fn absorb(&mut self, other: CheckReport) {
        self.checked += other.checked;
        self.failures.extend(other.failures);
        self.undecided.extend(other.undecided);
        self.notes.extend(other.notes);
    }

    /// First failure, if any, for error messages.
    pub fn first_failure(&self) -> Option<&Finding> {
        self.failures.first()
    }
}
