use alloc::string::String;
use alloc::vec::Vec;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Status {
    Confirmed,
    /// The hypotheses do not hold, so there is nothing to check.
    Vacuous,
    Failed,
}

/// One asserted property, with the values that decided it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Assertion {
    pub name: &'static str,
    pub status: Status,
    pub witness: String,
}

impl Assertion {
    pub fn check(name: &'static str, holds: bool, witness: String) -> Self {
        Assertion { name, status: if holds { Status::Confirmed } else { Status::Failed }, witness }
    }

    pub fn vacuous(name: &'static str, witness: String) -> Self {
        Assertion { name, status: Status::Vacuous, witness }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckReport {
    pub check: &'static str,
    pub hypotheses_met: bool,
    /// Why the hypotheses fail, when they do.
    pub note: String,
    pub assertions: Vec<Assertion>,
}

impl CheckReport {
    pub fn vacuous(check: &'static str, note: String) -> Self {
        CheckReport { check, hypotheses_met: false, note, assertions: Vec::new() }
    }

    pub fn new(check: &'static str, assertions: Vec<Assertion>) -> Self {
        CheckReport { check, hypotheses_met: true, note: String::new(), assertions }
    }

    pub fn status(&self) -> Status {
        if !self.hypotheses_met {
            return Status::Vacuous;
        }
        if self.assertions.iter().any(|a| a.status == Status::Failed) {
            Status::Failed
        } else if self.assertions.iter().all(|a| a.status == Status::Vacuous) {
            Status::Vacuous
        } else {
            Status::Confirmed
        }
    }

    pub fn failures(&self) -> impl Iterator<Item = &Assertion> {
        self.assertions.iter().filter(|a| a.status == Status::Failed)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn status_rollup() {
        let ok = Assertion::check("a", true, String::new());
        let bad = Assertion::check("b", false, String::new());
        let skip = Assertion::vacuous("c", String::new());
        assert_eq!(CheckReport::new("x", alloc::vec![ok.clone(), skip.clone()]).status(), Status::Confirmed);
        assert_eq!(CheckReport::new("x", alloc::vec![ok, bad, skip.clone()]).status(), Status::Failed);
        assert_eq!(CheckReport::new("x", alloc::vec![skip]).status(), Status::Vacuous);
        assert_eq!(CheckReport::vacuous("x", "no".into()).status(), Status::Vacuous);
    }
}
