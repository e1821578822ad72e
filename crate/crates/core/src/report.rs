use serde::Serialize;
use serde_json::Value;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

/// One named check with the data that decided it.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub check: String,
    pub status: Status,
    pub witness: Value,
}

impl Check {
    pub fn new(check: impl Into<String>, passed: bool, witness: Value) -> Self {
        let status = if passed { Status::Pass } else { Status::Fail };
        Self { check: check.into(), status, witness }
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

/// A suite of checks as emitted by the verifier.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report {
    pub suite: String,
    pub params: Value,
    pub checks: Vec<Check>,
    pub elapsed_ms: u128,
}

impl Report {
    pub fn new(suite: impl Into<String>, params: Value) -> Self {
        Self { suite: suite.into(), params, checks: Vec::new(), elapsed_ms: 0 }
    }

    pub fn push(&mut self, check: Check) {
        self.checks.push(check);
    }

    pub fn extend(&mut self, checks: impl IntoIterator<Item = Check>) {
        self.checks.extend(checks);
    }

    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(Check::passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed())
    }
}
