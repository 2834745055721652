//! Outcomes of verification suites.

use std::fmt;

use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Pass,
    Fail,
    /// Holds on every element of the finite window that was searched.
    WindowCertified,
}

impl Status {
    pub fn ok(self) -> bool {
        !matches!(self, Status::Fail)
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::WindowCertified => "window-certified",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckOutcome {
    pub check: String,
    pub status: Status,
    pub witness: Option<String>,
}

impl CheckOutcome {
    pub fn pass(check: &str) -> Self {
        CheckOutcome { check: check.into(), status: Status::Pass, witness: None }
    }

    pub fn certified(check: &str) -> Self {
        CheckOutcome { check: check.into(), status: Status::WindowCertified, witness: None }
    }

    pub fn fail(check: &str, witness: impl Into<String>) -> Self {
        CheckOutcome { check: check.into(), status: Status::Fail, witness: Some(witness.into()) }
    }

    pub fn ok(&self) -> bool {
        self.status.ok()
    }

    /// Turns a pass into window-certified.
    pub fn windowed(mut self) -> Self {
        if self.status == Status::Pass {
            self.status = Status::WindowCertified;
        }
        self
    }
}

/// Collects the first failure of a family of exact comparisons.
pub struct Tally {
    name: String,
    failure: Option<String>,
    count: usize,
}

impl Tally {
    pub fn new(name: &str) -> Self {
        Tally { name: name.into(), failure: None, count: 0 }
    }

    pub fn record(&mut self, ok: bool, witness: impl FnOnce() -> String) {
        self.count += 1;
        if !ok && self.failure.is_none() {
            self.failure = Some(witness());
        }
    }

    /// Records an error from evaluation as a failure.
    pub fn record_result<T>(&mut self, r: crate::Result<T>, what: impl FnOnce() -> String) -> Option<T> {
        match r {
            Ok(v) => Some(v),
            Err(e) => {
                self.record(false, || format!("{}: {e}", what()));
                None
            }
        }
    }

    pub fn count(&self) -> usize {
        self.count
    }

    pub fn finish(self) -> CheckOutcome {
        match self.failure {
            None => CheckOutcome::pass(&self.name),
            Some(w) => CheckOutcome::fail(&self.name, w),
        }
    }
}

pub fn all_ok(outcomes: &[CheckOutcome]) -> bool {
    outcomes.iter().all(CheckOutcome::ok)
}
