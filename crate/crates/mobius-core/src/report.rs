//! Structured results for axiom checkers: every square or identity that
//! was verified gets one entry, so a claim that an axiom holds is
//! auditable entry by entry.

use alloc::string::String;
use alloc::vec::Vec;

use crate::groupoid::Key;

/// One verified square or pointwise identity.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CheckEntry {
    /// Stable identifier, e.g. `"segal:n=1"` or `"dd:m=3,i=0,j=2"`.
    pub id: String,
    pub pass: bool,
    /// Class at which the check failed, when one exists.
    pub witness: Option<Key>,
}

/// All entries of one named check over one instance.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CheckReport {
    pub instance: String,
    pub check: String,
    pub squares: Vec<CheckEntry>,
}

impl CheckReport {
    pub fn new(instance: impl Into<String>, check: impl Into<String>) -> CheckReport {
        CheckReport {
            instance: instance.into(),
            check: check.into(),
            squares: Vec::new(),
        }
    }

    pub fn push(&mut self, id: String, pass: bool, witness: Option<Key>) {
        self.squares.push(CheckEntry { id, pass, witness });
    }

    /// Canonical entry order for deterministic output.
    pub fn sort(&mut self) {
        self.squares.sort_by(|a, b| a.id.cmp(&b.id));
    }

    pub fn passed(&self) -> bool {
        self.squares.iter().all(|e| e.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckEntry> {
        self.squares.iter().filter(|e| !e.pass)
    }
}
