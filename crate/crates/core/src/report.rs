//! Law reports with replayable witnesses.

use std::fmt;

use serde::{Deserialize, Serialize};

/// One entry of a witness tuple.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Item {
    Obj(usize),
    Mor(usize),
    Het(usize),
    /// Element of a presheaf value, a lattice, or a local position.
    Elem(usize),
}

impl fmt::Display for Item {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Item::Obj(i) => write!(f, "obj {i}"),
            Item::Mor(i) => write!(f, "mor {i}"),
            Item::Het(i) => write!(f, "het {i}"),
            Item::Elem(i) => write!(f, "elem {i}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub law: String,
    pub witness: Vec<Item>,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} at (", self.law)?;
        for (i, item) in self.witness.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{item}")?;
        }
        write!(f, ")")
    }
}

/// Outcome of a law check: passes iff there are no violations.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct LawReport {
    pub violations: Vec<Violation>,
}

impl LawReport {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn push(&mut self, law: impl Into<String>, witness: Vec<Item>) {
        self.violations.push(Violation {
            law: law.into(),
            witness,
        });
    }

    /// Records a violation when `ok` is false.
    pub fn require(&mut self, ok: bool, law: &str, witness: impl FnOnce() -> Vec<Item>) {
        if !ok {
            self.push(law, witness());
        }
    }

    pub fn merge(&mut self, other: LawReport) {
        self.violations.extend(other.violations);
    }

    /// Merges `other` with every law name prefixed by `scope/`.
    pub fn merge_scoped(&mut self, scope: &str, other: LawReport) {
        for v in other.violations {
            self.violations.push(Violation {
                law: format!("{scope}/{}", v.law),
                witness: v.witness,
            });
        }
    }

    pub fn violates(&self, law: &str) -> bool {
        self.violations.iter().any(|v| v.law == law)
    }

    pub fn first(&self, law: &str) -> Option<&Violation> {
        self.violations.iter().find(|v| v.law == law)
    }

    pub fn into_result(self, what: &'static str) -> crate::Result<()> {
        if self.passed() {
            Ok(())
        } else {
            Err(crate::Error::Invalid { what, report: self })
        }
    }
}

impl fmt::Display for LawReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.passed() {
            return write!(f, "pass");
        }
        write!(f, "{} violation(s)", self.violations.len())?;
        for v in self.violations.iter().take(3) {
            write!(f, "; {v}")?;
        }
        Ok(())
    }
}
