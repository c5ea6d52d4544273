use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::Label;

/// One failed axiom and the lexicographically least tuple that breaks it.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Violation {
    pub axiom: String,
    pub witness: Vec<Label>,
}

/// Outcome of a check. `ok()` holds exactly when no violation was recorded.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Report {
    pub violations: Vec<Violation>,
}

impl Report {
    pub fn new() -> Report {
        Report::default()
    }

    pub fn ok(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn push(&mut self, axiom: impl Into<String>, witness: Vec<Label>) {
        self.violations.push(Violation { axiom: axiom.into(), witness });
    }

    pub fn extend(&mut self, other: Report) {
        self.violations.extend(other.violations);
    }

    /// Axiom names in the order they were recorded.
    pub fn axioms(&self) -> impl Iterator<Item = &str> {
        self.violations.iter().map(|v| v.axiom.as_str())
    }

    pub fn find(&self, axiom: &str) -> Option<&Violation> {
        self.violations.iter().find(|v| v.axiom == axiom)
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.ok() {
            return f.write_str("ok");
        }
        for (i, v) in self.violations.iter().enumerate() {
            if i > 0 {
                f.write_str("; ")?;
            }
            write!(f, "{}(", v.axiom)?;
            for (j, w) in v.witness.iter().enumerate() {
                if j > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{w}")?;
            }
            f.write_str(")")?;
        }
        Ok(())
    }
}
