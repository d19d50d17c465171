//! Check records and job reports.

use std::collections::BTreeMap;

use serde::Serialize;

/// Outcome of one check.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub enum Status {
    /// Established exactly, by rewriting or exact evaluation at the stated point.
    #[serde(rename = "PROVED")]
    Proved,
    /// Every sampled point agreed; not a symbolic proof.
    #[serde(rename = "PROBABLE")]
    Probable,
    #[serde(rename = "FAIL")]
    Fail,
    #[serde(rename = "ERROR")]
    Error,
}

impl Status {
    pub fn is_ok(self) -> bool {
        matches!(self, Status::Proved | Status::Probable)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckRecord {
    pub name: String,
    pub status: Status,
    /// Printed residual, `0` when it vanishes.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub residual: Option<String>,
    /// Concrete input on which a failure was observed.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
    #[serde(skip_serializing_if = "BTreeMap::is_empty")]
    pub params: BTreeMap<String, String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub wall_ms: Option<u64>,
}

impl CheckRecord {
    pub fn new(name: impl Into<String>, status: Status) -> CheckRecord {
        CheckRecord { name: name.into(), status, residual: None, witness: None, params: BTreeMap::new(), wall_ms: None }
    }

    pub fn proved(name: impl Into<String>) -> CheckRecord {
        CheckRecord::new(name, Status::Proved)
    }

    pub fn fail(name: impl Into<String>, residual: impl Into<String>, witness: impl Into<String>) -> CheckRecord {
        CheckRecord { residual: Some(residual.into()), witness: Some(witness.into()), ..CheckRecord::new(name, Status::Fail) }
    }

    pub fn error(name: impl Into<String>, msg: impl Into<String>) -> CheckRecord {
        CheckRecord { residual: Some(msg.into()), ..CheckRecord::new(name, Status::Error) }
    }

    pub fn param(mut self, k: impl Into<String>, v: impl Into<String>) -> CheckRecord {
        self.params.insert(k.into(), v.into());
        self
    }

    pub fn with_residual(mut self, r: impl Into<String>) -> CheckRecord {
        self.residual = Some(r.into());
        self
    }

    pub fn is_ok(&self) -> bool {
        self.status.is_ok()
    }
}

/// Combines sub-check records into a single verdict: the worst status wins.
pub fn worst(records: &[CheckRecord]) -> Status {
    records.iter().map(|r| r.status).max().unwrap_or(Status::Proved)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct JobReport {
    pub command: String,
    pub checks: Vec<CheckRecord>,
    #[serde(skip_serializing_if = "BTreeMap::is_empty")]
    pub outputs: BTreeMap<String, String>,
}

impl JobReport {
    pub fn new(command: impl Into<String>) -> JobReport {
        JobReport { command: command.into(), checks: Vec::new(), outputs: BTreeMap::new() }
    }

    pub fn push(&mut self, r: CheckRecord) {
        self.checks.push(r);
    }

    pub fn extend(&mut self, rs: impl IntoIterator<Item = CheckRecord>) {
        self.checks.extend(rs);
    }

    pub fn output(&mut self, k: impl Into<String>, v: impl Into<String>) {
        self.outputs.insert(k.into(), v.into());
    }

    /// 0 when every check is PROVED or PROBABLE, 1 on FAIL, 2 on ERROR.
    pub fn exit_code(&self) -> i32 {
        match worst(&self.checks) {
            Status::Proved | Status::Probable => 0,
            Status::Fail => 1,
            Status::Error => 2,
        }
    }

    /// Pretty JSON with checks sorted by name.
    pub fn to_json(&self) -> String {
        let mut sorted = self.clone();
        sorted.checks.sort_by(|a, b| a.name.cmp(&b.name));
        serde_json::to_string_pretty(&sorted).expect("reports serialize")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exit_codes_follow_worst_status() {
        let mut r = JobReport::new("x");
        assert_eq!(r.exit_code(), 0);
        r.push(CheckRecord::new("p", Status::Probable));
        assert_eq!(r.exit_code(), 0);
        r.push(CheckRecord::fail("f", "1", "t"));
        assert_eq!(r.exit_code(), 1);
        r.push(CheckRecord::error("e", "bad"));
        assert_eq!(r.exit_code(), 2);
    }

    #[test]
    fn json_is_sorted() {
        let mut r = JobReport::new("x");
        r.push(CheckRecord::proved("b"));
        r.push(CheckRecord::proved("a"));
        let j = r.to_json();
        assert!(j.find("\"a\"").unwrap() < j.find("\"b\"").unwrap());
        assert!(j.contains("PROVED"));
    }
}
