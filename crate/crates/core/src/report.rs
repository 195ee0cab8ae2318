//! Machine-readable verification reports.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::scalar::{Scalar, Tolerance};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Indeterminate,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Indeterminate => "indeterminate",
        };
        f.write_str(s)
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub residual: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl Check {
    pub fn boolean(name: impl Into<String>, ok: bool, witness: Option<String>) -> Check {
        Check {
            name: name.into(),
            status: if ok { Status::Pass } else { Status::Fail },
            residual: None,
            witness: if ok { None } else { witness.or_else(|| Some("n/a".into())) },
            note: None,
        }
    }

    pub fn pass(name: impl Into<String>) -> Check {
        Check::boolean(name, true, None)
    }

    pub fn fail(name: impl Into<String>, witness: impl Into<String>) -> Check {
        Check::boolean(name, false, Some(witness.into()))
    }

    pub fn indeterminate(name: impl Into<String>, note: impl Into<String>) -> Check {
        Check { name: name.into(), status: Status::Indeterminate, residual: None, witness: None, note: Some(note.into()) }
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Check {
        self.note = Some(note.into());
        self
    }

    pub fn with_residual(mut self, r: f64) -> Check {
        self.residual = Some(r);
        self
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Report {
    pub command: String,
    pub status: Status,
    pub checks: Vec<Check>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub values: BTreeMap<String, serde_json::Value>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub provenance: BTreeMap<String, String>,
}

impl Report {
    pub fn new(command: impl Into<String>) -> Report {
        Report {
            command: command.into(),
            status: Status::Pass,
            checks: Vec::new(),
            values: BTreeMap::new(),
            provenance: BTreeMap::new(),
        }
    }

    pub fn push(&mut self, check: Check) {
        self.checks.push(check);
        self.refresh();
    }

    /// Appends all checks of `other`, prefixing their names.
    pub fn absorb(&mut self, prefix: &str, other: Report) {
        for mut c in other.checks {
            c.name = format!("{prefix}.{}", c.name);
            self.checks.push(c);
        }
        for (k, v) in other.values {
            self.values.insert(format!("{prefix}.{k}"), v);
        }
        self.refresh();
    }

    pub fn set_value(&mut self, key: impl Into<String>, v: impl Serialize) {
        self.values.insert(key.into(), serde_json::to_value(v).unwrap_or(serde_json::Value::Null));
    }

    fn refresh(&mut self) {
        self.status = if self.checks.iter().any(|c| c.status == Status::Fail) {
            Status::Fail
        } else if self.checks.iter().any(|c| c.status == Status::Indeterminate) {
            Status::Indeterminate
        } else {
            Status::Pass
        };
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    /// Largest residual over all checks.
    pub fn max_residual(&self) -> f64 {
        self.checks.iter().filter_map(|c| c.residual).fold(0.0, f64::max)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| c.status == Status::Fail)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

/// Tracks the worst discrepancy of a family of scalar comparisons.
pub struct Residual {
    name: String,
    tol: Tolerance,
    worst: f64,
    failed: bool,
    witness: Option<String>,
    count: usize,
}

impl Residual {
    pub fn new(name: impl Into<String>, tol: Tolerance) -> Residual {
        Residual { name: name.into(), tol, worst: 0.0, failed: false, witness: None, count: 0 }
    }

    pub fn observe(&mut self, lhs: &Scalar, rhs: &Scalar, witness: impl FnOnce() -> String) {
        self.count += 1;
        let d = lhs.distance(rhs);
        let ok = lhs.close(rhs, &self.tol);
        if !ok && (!self.failed || d > self.worst) {
            self.witness = Some(format!("{}: {} != {}", witness(), lhs, rhs));
            self.failed = true;
        }
        if d > self.worst {
            self.worst = d;
        }
    }

    pub fn observe_vec(&mut self, lhs: &[Scalar], rhs: &[Scalar], witness: impl Fn() -> String) {
        for (k, (a, b)) in lhs.iter().zip(rhs).enumerate() {
            self.observe(a, b, || format!("{} [component {k}]", witness()));
        }
    }

    pub fn failed(&self) -> bool {
        self.failed
    }

    pub fn worst(&self) -> f64 {
        self.worst
    }

    pub fn count(&self) -> usize {
        self.count
    }

    pub fn into_check(self) -> Check {
        let note = format!("{} comparisons", self.count);
        Check {
            name: self.name,
            status: if self.failed { Status::Fail } else { Status::Pass },
            residual: Some(self.worst),
            witness: self.witness.filter(|_| self.failed),
            note: Some(note),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn status_follows_checks() {
        let mut r = Report::new("t");
        assert!(r.passed());
        r.push(Check::indeterminate("a", "window"));
        assert_eq!(r.status, Status::Indeterminate);
        r.push(Check::fail("b", "w"));
        assert_eq!(r.status, Status::Fail);
        assert_eq!(r.failures().count(), 1);
    }

    #[test]
    fn residual_tracks_first_failure() {
        let mut res = Residual::new("x", Tolerance::default());
        res.observe(&Scalar::one(), &Scalar::one(), || "ok".into());
        res.observe(&Scalar::one(), &Scalar::from_i64(3), || "w1".into());
        let c = res.into_check();
        assert_eq!(c.status, Status::Fail);
        assert_eq!(c.residual, Some(2.0));
        assert!(c.witness.unwrap().starts_with("w1"));
    }
}
