//! Structured verdicts for verification checks.

use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt;

/// Outcome of one verification check.
///
/// A failing report always carries a counterexample; the `params` map
/// records both the inputs and any computed quantities worth reporting
/// (bounds, gaps, counts). Keys are sorted, so serialization is
/// deterministic.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckReport {
    pub check: String,
    pub params: BTreeMap<String, String>,
    pub status: CheckStatus,
    pub cases: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<Counterexample>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CheckStatus {
    Pass,
    Fail,
}

/// The witness recorded when a check fails: which input broke the
/// identity and what both sides evaluated to.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counterexample {
    pub input: String,
    pub expected: String,
    pub actual: String,
}

impl CheckReport {
    pub fn pass(check: &str, params: BTreeMap<String, String>, cases: u64) -> Self {
        CheckReport {
            check: check.to_string(),
            params,
            status: CheckStatus::Pass,
            cases,
            counterexample: None,
        }
    }

    pub fn fail(
        check: &str,
        params: BTreeMap<String, String>,
        cases: u64,
        counterexample: Counterexample,
    ) -> Self {
        CheckReport {
            check: check.to_string(),
            params,
            status: CheckStatus::Fail,
            cases,
            counterexample: Some(counterexample),
        }
    }

    pub fn passed(&self) -> bool {
        self.status == CheckStatus::Pass
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("report serializes")
    }
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = match self.status {
            CheckStatus::Pass => "pass",
            CheckStatus::Fail => "FAIL",
        };
        write!(f, "{:<28} {} ({} cases)", self.check, verdict, self.cases)?;
        if let Some(ce) = &self.counterexample {
            write!(
                f,
                "\n  counterexample: input {} | expected {} | actual {}",
                ce.input, ce.expected, ce.actual
            )?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn report_json_shape() {
        let mut params = BTreeMap::new();
        params.insert("n".to_string(), "2".to_string());
        let r = CheckReport::pass("projection-relation", params, 121);
        let json = r.to_json();
        assert_eq!(
            json,
            r#"{"check":"projection-relation","params":{"n":"2"},"status":"pass","cases":121}"#
        );
        let back: CheckReport = serde_json::from_str(&json).unwrap();
        assert_eq!(back, r);
    }

    #[test]
    fn failing_report_carries_counterexample() {
        let r = CheckReport::fail(
            "demo",
            BTreeMap::new(),
            7,
            Counterexample {
                input: "e(0,-1)".into(),
                expected: "0".into(),
                actual: "(1, 0)*e(0,-1)".into(),
            },
        );
        assert!(!r.passed());
        let json = r.to_json();
        assert!(json.contains("\"counterexample\""));
        let back: CheckReport = serde_json::from_str(&json).unwrap();
        assert_eq!(back, r);
    }
}
