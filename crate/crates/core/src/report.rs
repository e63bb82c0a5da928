//! Check records emitted by the verification routines.

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Pass,
    Fail,
    /// A printed formula disagrees with the computed ground truth.
    Discrepancy,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub check: String,
    pub status: Status,
    pub lhs: Value,
    pub rhs: Value,
    pub witness: Value,
}

impl Check {
    /// Passes iff both sides serialize to the same JSON value.
    pub fn eq(check: impl Into<String>, lhs: impl Serialize, rhs: impl Serialize) -> Self {
        let lhs = serde_json::to_value(lhs).unwrap_or(Value::Null);
        let rhs = serde_json::to_value(rhs).unwrap_or(Value::Null);
        let status = if lhs == rhs { Status::Pass } else { Status::Fail };
        Check { check: check.into(), status, lhs, rhs, witness: Value::Null }
    }

    pub fn holds(check: impl Into<String>, ok: bool) -> Self {
        Check::eq(check, ok, true)
    }

    /// Like [`Check::eq`], but disagreement is a discrepancy rather than a failure.
    pub fn compare(check: impl Into<String>, lhs: impl Serialize, rhs: impl Serialize) -> Self {
        let mut c = Check::eq(check, lhs, rhs);
        if c.status == Status::Fail {
            c.status = Status::Discrepancy;
        }
        c
    }

    pub fn with_witness(mut self, witness: impl Serialize) -> Self {
        self.witness = serde_json::to_value(witness).unwrap_or(Value::Null);
        self
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    pub fn failed(&self) -> bool {
        self.status == Status::Fail
    }

    /// A check that could not be carried out, with the error as witness.
    pub fn error(check: impl Into<String>, err: &crate::error::Error) -> Self {
        Check {
            check: check.into(),
            status: Status::Fail,
            lhs: Value::Null,
            rhs: Value::Null,
            witness: json!({ "error": err.to_string() }),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn statuses() {
        assert!(Check::eq("a", 3, 3).passed());
        assert!(Check::eq("a", 3, "3").failed());
        assert_eq!(Check::compare("a", 1, 6).status, Status::Discrepancy);
        assert_eq!(serde_json::to_string(&Status::Discrepancy).unwrap(), "\"discrepancy\"");
        let c = Check::holds("b", false).with_witness(vec![1, 2]);
        assert!(c.failed() && c.witness == json!([1, 2]));
    }
}
