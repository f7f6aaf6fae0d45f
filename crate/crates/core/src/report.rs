//! Verification reports.

use serde_json::{json, Value};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    /// Computed value differs from a claimed value; not an assertion failure.
    Mismatch,
}

impl Status {
    pub fn as_str(&self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Mismatch => "mismatch-vs-paper",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Case {
    pub name: String,
    pub status: Status,
    pub computed: String,
    pub claimed: String,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Report {
    pub suite: String,
    pub cases: Vec<Case>,
}

impl Report {
    pub fn new(suite: &str) -> Report {
        Report {
            suite: suite.to_string(),
            cases: Vec::new(),
        }
    }

    /// Asserted case: passes iff `ok`.
    pub fn check(&mut self, name: impl Into<String>, ok: bool, computed: impl Into<String>, claimed: impl Into<String>) {
        self.cases.push(Case {
            name: name.into(),
            status: if ok { Status::Pass } else { Status::Fail },
            computed: computed.into(),
            claimed: claimed.into(),
        });
    }

    /// Report-only comparison against a claimed value.
    pub fn compare(&mut self, name: impl Into<String>, matches: bool, computed: impl Into<String>, claimed: impl Into<String>) {
        self.cases.push(Case {
            name: name.into(),
            status: if matches { Status::Pass } else { Status::Mismatch },
            computed: computed.into(),
            claimed: claimed.into(),
        });
    }

    pub fn merge(&mut self, other: Report) {
        self.cases.extend(other.cases);
    }

    pub fn sort(&mut self) {
        self.cases.sort_by(|a, b| a.name.cmp(&b.name));
    }

    pub fn passed(&self) -> usize {
        self.cases.iter().filter(|c| c.status == Status::Pass).count()
    }

    pub fn failed(&self) -> usize {
        self.cases.iter().filter(|c| c.status == Status::Fail).count()
    }

    pub fn mismatches(&self) -> usize {
        self.cases.iter().filter(|c| c.status == Status::Mismatch).count()
    }

    pub fn ok(&self) -> bool {
        self.failed() == 0
    }

    pub fn failures(&self) -> Vec<&Case> {
        self.cases.iter().filter(|c| c.status == Status::Fail).collect()
    }

    pub fn to_json(&self) -> Value {
        let mut sorted = self.clone();
        sorted.sort();
        json!({
            "suite": sorted.suite,
            "cases": sorted.cases.iter().map(|c| json!({
                "name": c.name,
                "status": c.status.as_str(),
                "computed": c.computed,
                "claimed": c.claimed,
            })).collect::<Vec<_>>(),
            "passed": sorted.passed(),
            "failed": sorted.failed(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts_and_sorting() {
        let mut r = Report::new("demo");
        r.check("b", true, "1", "1");
        r.check("a", false, "0", "1");
        r.compare("c", false, "x", "y");
        assert_eq!((r.passed(), r.failed(), r.mismatches()), (1, 1, 1));
        assert!(!r.ok());
        let j = r.to_json();
        assert_eq!(j["cases"][0]["name"], "a");
        assert_eq!(j["cases"][2]["status"], "mismatch-vs-paper");
        assert_eq!(j["failed"], 1);
    }
}
