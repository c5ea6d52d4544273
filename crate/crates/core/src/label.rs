use alloc::string::String;
use alloc::sync::Arc;
use core::borrow::Borrow;
use core::fmt;

use crate::Error;

/// Element name. Ordering is by code point and is the tie-break order used
/// wherever a deterministic choice is made.
#[derive(Clone, Eq, Hash)]
pub struct Label(Arc<str>);

impl PartialEq for Label {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0 == other.0
    }
}

impl Ord for Label {
    fn cmp(&self, other: &Self) -> core::cmp::Ordering {
        if Arc::ptr_eq(&self.0, &other.0) {
            return core::cmp::Ordering::Equal;
        }
        self.0.cmp(&other.0)
    }
}

impl PartialOrd for Label {
    fn partial_cmp(&self, other: &Self) -> Option<core::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Label {
    pub fn new(s: &str) -> Result<Self, Error> {
        if s.is_empty() || s.chars().any(char::is_whitespace) {
            return Err(Error::InvalidLabel(String::from(s)));
        }
        Ok(Label(Arc::from(s)))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }

    /// `self` with `suffix` appended.
    pub fn suffixed(&self, suffix: &str) -> Label {
        let mut s = String::from(&*self.0);
        s.push_str(suffix);
        Label(Arc::from(s.as_str()))
    }
}

impl Borrow<str> for Label {
    fn borrow(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl fmt::Debug for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(&*self.0, f)
    }
}

/// Shorthand for building labels in tests and fixtures; panics on an invalid name.
pub fn l(s: &str) -> Label {
    Label::new(s).expect("valid label")
}
