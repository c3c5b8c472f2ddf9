//! Structured pass/fail records for identity checks.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::exterior::GradedElement;
use crate::symbolic::Scalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckEntry {
    pub label: String,
    pub anchor: String,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub residual: Option<String>,
}

/// One suite's results. Entries keep insertion order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckReport {
    pub suite: String,
    pub checks: Vec<CheckEntry>,
    pub verdict: Status,
}

/// Anything whose vanishing is an identity to check.
pub trait Residual {
    fn vanishes(&self) -> bool;
    fn render(&self) -> String;
}

impl Residual for Scalar {
    fn vanishes(&self) -> bool {
        self.is_zero()
    }
    fn render(&self) -> String {
        self.to_string()
    }
}

impl Residual for GradedElement {
    fn vanishes(&self) -> bool {
        self.is_zero()
    }
    fn render(&self) -> String {
        self.to_string()
    }
}

impl<T: Residual> Residual for [T] {
    fn vanishes(&self) -> bool {
        self.iter().all(Residual::vanishes)
    }
    fn render(&self) -> String {
        let parts: Vec<String> = self.iter().map(Residual::render).collect();
        format!("[{}]", parts.join(", "))
    }
}

impl<T: Residual> Residual for Vec<T> {
    fn vanishes(&self) -> bool {
        self.as_slice().vanishes()
    }
    fn render(&self) -> String {
        self.as_slice().render()
    }
}

impl CheckReport {
    pub fn new(suite: impl Into<String>) -> Self {
        CheckReport {
            suite: suite.into(),
            checks: Vec::new(),
            verdict: Status::Pass,
        }
    }

    fn push(&mut self, entry: CheckEntry) {
        if entry.status == Status::Fail {
            self.verdict = Status::Fail;
        }
        self.checks.push(entry);
    }

    /// Records an identity `residual = 0`.
    pub fn check_zero<R: Residual + ?Sized>(
        &mut self,
        label: impl Into<String>,
        anchor: impl Into<String>,
        residual: &R,
    ) -> bool {
        let ok = residual.vanishes();
        self.push(CheckEntry {
            label: label.into(),
            anchor: anchor.into(),
            status: if ok { Status::Pass } else { Status::Fail },
            residual: (!ok).then(|| residual.render()),
        });
        ok
    }

    pub fn pass(&mut self, label: impl Into<String>, anchor: impl Into<String>) {
        self.push(CheckEntry {
            label: label.into(),
            anchor: anchor.into(),
            status: Status::Pass,
            residual: None,
        });
    }

    /// Records a failure that is not a residual (a violated hypothesis).
    pub fn fail(
        &mut self,
        label: impl Into<String>,
        anchor: impl Into<String>,
        detail: impl Into<String>,
    ) {
        self.push(CheckEntry {
            label: label.into(),
            anchor: anchor.into(),
            status: Status::Fail,
            residual: Some(detail.into()),
        });
    }

    /// Appends another report's entries, prefixing their labels.
    pub fn absorb(&mut self, prefix: &str, other: CheckReport) {
        for mut e in other.checks {
            if !prefix.is_empty() {
                e.label = format!("{prefix}: {}", e.label);
            }
            self.push(e);
        }
    }

    pub fn passed(&self) -> bool {
        self.verdict == Status::Pass
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckEntry> {
        self.checks.iter().filter(|e| e.status == Status::Fail)
    }

    pub fn find(&self, label_fragment: &str) -> Option<&CheckEntry> {
        self.checks.iter().find(|e| e.label.contains(label_fragment))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Status::Pass => write!(f, "PASS"),
            Status::Fail => write!(f, "FAIL"),
        }
    }
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "suite {}: {}", self.suite, self.verdict)?;
        for e in &self.checks {
            write!(f, "  [{}] {} ({})", e.status, e.label, e.anchor)?;
            if let Some(r) = &e.residual {
                write!(f, "\n      residual: {r}")?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn verdict_follows_entries() {
        let mut r = CheckReport::new("demo");
        assert!(r.check_zero("zero", "a", &Scalar::zero()));
        assert!(r.passed());
        assert!(!r.check_zero("nonzero", "b", &Scalar::coord("x")));
        assert!(!r.passed());
        let e = r.find("nonzero").unwrap();
        assert_eq!(e.residual.as_deref(), Some("x"));
    }

    #[test]
    fn json_schema() {
        let mut r = CheckReport::new("demo");
        r.pass("ok", "anchor");
        r.fail("bad", "anchor", "x");
        let v: serde_json::Value = serde_json::from_str(&r.to_json()).unwrap();
        assert_eq!(v["suite"], "demo");
        assert_eq!(v["verdict"], "fail");
        assert_eq!(v["checks"][0]["status"], "pass");
        assert!(v["checks"][0].get("residual").is_none());
        assert_eq!(v["checks"][1]["residual"], "x");
    }
}
