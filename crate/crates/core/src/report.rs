//! Law-by-law verdicts shared by every checker.

use serde::Serialize;

/// One checked law. Serialized as `{law, holds, witness?}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LawReport {
    pub law: String,
    pub holds: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

impl LawReport {
    pub fn pass(law: impl Into<String>) -> Self {
        LawReport {
            law: law.into(),
            holds: true,
            witness: None,
        }
    }

    pub fn fail(law: impl Into<String>, witness: impl Into<String>) -> Self {
        LawReport {
            law: law.into(),
            holds: false,
            witness: Some(witness.into()),
        }
    }

    /// Passes when `violation` is `None`; otherwise the witness is rendered.
    pub fn from_violation<W>(law: impl Into<String>, violation: Option<W>, render: impl FnOnce(W) -> String) -> Self {
        match violation {
            None => LawReport::pass(law),
            Some(w) => LawReport::fail(law, render(w)),
        }
    }
}

/// A group of required laws plus informational observations that do not
/// affect the verdict.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct LawSet {
    pub laws: Vec<LawReport>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub info: Vec<LawReport>,
}

impl LawSet {
    pub fn new() -> Self {
        LawSet::default()
    }

    pub fn push(&mut self, report: LawReport) {
        self.laws.push(report);
    }

    pub fn note(&mut self, report: LawReport) {
        self.info.push(report);
    }

    pub fn extend(&mut self, other: LawSet) {
        self.laws.extend(other.laws);
        self.info.extend(other.info);
    }

    pub fn holds(&self) -> bool {
        self.laws.iter().all(|l| l.holds)
    }

    pub fn get(&self, law: &str) -> Option<&LawReport> {
        self.laws.iter().chain(&self.info).find(|l| l.law == law)
    }

    pub fn failures(&self) -> impl Iterator<Item = &LawReport> {
        self.laws.iter().filter(|l| !l.holds)
    }
}
