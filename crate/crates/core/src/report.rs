//! Structured pass/fail evidence emitted by the theorem verifiers.

use serde::Serialize;
use serde_json::Value;

/// Outcome of a check.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Holds,
    Violated,
    HypothesisUnmet,
}

impl Status {
    /// CLI exit code: 0 holds, 3 violated, 4 hypothesis unmet.
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Holds => 0,
            Status::Violated => 3,
            Status::HypothesisUnmet => 4,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct TheoremReport {
    /// Name of the property being certified.
    pub property: String,
    pub status: Status,
    /// Number of individual identities or inequalities evaluated.
    pub checks: u64,
    pub witnesses: Vec<Value>,
    pub violations: Vec<Value>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl TheoremReport {
    pub fn new(property: impl Into<String>) -> Self {
        TheoremReport {
            property: property.into(),
            status: Status::Holds,
            checks: 0,
            witnesses: Vec::new(),
            violations: Vec::new(),
            notes: Vec::new(),
        }
    }

    pub fn hypothesis_unmet(property: impl Into<String>, why: impl Into<String>) -> Self {
        let mut r = Self::new(property);
        r.status = Status::HypothesisUnmet;
        r.notes.push(why.into());
        r
    }

    /// Records one check; `violation` is built only on failure.
    pub fn check(&mut self, ok: bool, violation: impl FnOnce() -> Value) -> bool {
        self.checks += 1;
        if !ok {
            self.violations.push(violation());
            if self.status == Status::Holds {
                self.status = Status::Violated;
            }
        }
        ok
    }

    pub fn witness(&mut self, w: Value) {
        self.witnesses.push(w);
    }

    pub fn note(&mut self, s: impl Into<String>) {
        self.notes.push(s.into());
    }

    pub fn holds(&self) -> bool {
        self.status == Status::Holds
    }

    /// Folds another report's checks into this one.
    pub fn absorb(&mut self, other: TheoremReport) {
        self.checks += other.checks;
        self.witnesses.extend(other.witnesses);
        self.violations.extend(other.violations);
        self.notes.extend(other.notes);
        self.status = match (self.status, other.status) {
            (Status::HypothesisUnmet, _) | (_, Status::HypothesisUnmet) => Status::HypothesisUnmet,
            (Status::Violated, _) | (_, Status::Violated) => Status::Violated,
            _ => Status::Holds,
        };
    }
}
