//! Golden expectation files: plain JSON pinning parts of a report.
//!
//! ```json
//! {"verdict": "PASS",
//!  "exceptional": [[1, 3, 3, 3, 3, 3]],
//!  "counts": {"RESCUED": 40, "HODGE_PASS": 32},
//!  "checks": {"T3-3fold": "PASS"}}
//! ```
//!
//! Every key is optional. `exceptional` and `counts` apply to `classify`,
//! `checks` to `verify`.

use std::collections::BTreeMap;

use serde::Deserialize;
use serde_json::Value;

use crate::report::{Report, Verdict};

#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Expectation {
    pub verdict: Option<Verdict>,
    pub exceptional: Option<Vec<Vec<u64>>>,
    pub counts: Option<BTreeMap<String, usize>>,
    pub checks: Option<BTreeMap<String, String>>,
}

impl Expectation {
    pub fn from_json(text: &str) -> Result<Self, String> {
        serde_json::from_str(text).map_err(|e| e.to_string())
    }

    /// Differences between the report and the pinned values; empty when the
    /// report meets the expectation.
    pub fn mismatches(&self, report: &Report) -> Vec<String> {
        let mut out = Vec::new();
        if let Some(expected) = &self.exceptional {
            let mut got: Vec<Vec<u64>> = report
                .rows
                .iter()
                .filter(|r| r.get("status") == Some(&Value::from("EXCEPTIONAL")))
                .filter_map(|r| serde_json::from_value(r.get("type")?.clone()).ok())
                .collect();
            got.sort();
            let mut want = expected.clone();
            want.sort();
            if got != want {
                out.push(format!("exceptional types: expected {want:?}, got {got:?}"));
            }
        }
        if let Some(counts) = &self.counts {
            for (status, want) in counts {
                let got = report.rows.iter().filter(|r| r.get("status").and_then(Value::as_str) == Some(status)).count();
                if got != *want {
                    out.push(format!("count of {status}: expected {want}, got {got}"));
                }
            }
        }
        let pinned = self.checks.clone().unwrap_or_default();
        for (id, want) in &pinned {
            let got = report
                .rows
                .iter()
                .find(|r| r.get("id").and_then(Value::as_str) == Some(id))
                .and_then(|r| r.get("verdict"))
                .and_then(Value::as_str);
            match got {
                Some(v) if v == want => {}
                Some(v) => out.push(format!("check {id}: expected {want}, got {v}")),
                None => out.push(format!("check {id}: not in report")),
            }
        }
        match self.verdict {
            Some(v) if v != report.verdict => {
                out.push(format!("verdict: expected {}, got {}", v.label(), report.verdict.label()));
            }
            Some(_) => {}
            None if report.verdict == Verdict::Fail => {
                // failures are acceptable only when each one is pinned
                let unpinned: Vec<&str> = report
                    .rows
                    .iter()
                    .filter(|r| matches!(r.get("verdict").and_then(Value::as_str), Some("FAIL" | "ERROR")))
                    .filter_map(|r| r.get("id").and_then(Value::as_str))
                    .filter(|id| !pinned.contains_key(*id))
                    .collect();
                if pinned.is_empty() || !unpinned.is_empty() {
                    out.push("verdict: FAIL is not expected".to_string());
                }
            }
            None => {}
        }
        out
    }
}
