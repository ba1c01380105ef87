use std::path::Path;

use serde::Serialize;
use serde_json::Value;

use crate::error::Result;
use crate::localorders::LocalCase;

pub const SCHEMA: &str = "hscheck-report/1";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Fail,
    /// A step taken as proven, with no finite model here.
    Assumed,
    /// Recorded for context; not part of the verdict.
    Info,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CheckRecord {
    pub name: String,
    pub claim: String,
    pub inputs: Value,
    pub status: Status,
    pub certificate: Value,
}

impl CheckRecord {
    pub fn new(name: &str, claim: &str, inputs: Value, passed: bool, certificate: Value) -> Self {
        CheckRecord {
            name: name.into(),
            claim: claim.into(),
            inputs,
            status: if passed { Status::Pass } else { Status::Fail },
            certificate,
        }
    }

    pub fn with_status(name: &str, claim: &str, inputs: Value, status: Status, certificate: Value) -> Self {
        CheckRecord {
            name: name.into(),
            claim: claim.into(),
            inputs,
            status,
            certificate,
        }
    }

    pub fn failed(&self) -> bool {
        self.status == Status::Fail
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Verdict {
    NotHilbertSpeiser {
        case: LocalCase,
        e: u32,
        f: u32,
    },
    HypothesesNotMet {
        reason: String,
    },
    /// `Q(√5)`-type fields at `p = 5`, for which no local construction applies.
    ExcludedCase {
        reason: String,
    },
    Undecided {
        reason: String,
        failing: Vec<String>,
    },
    /// Outcome of a synthetic local run.
    LocalSuite {
        case: LocalCase,
        all_passed: bool,
    },
}

impl Verdict {
    /// Exit code for the command-line tool.
    pub fn exit_code(&self) -> i32 {
        match self {
            Verdict::Undecided { .. } => 3,
            Verdict::LocalSuite { all_passed: false, .. } => 3,
            _ => 0,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct WitnessReport {
    pub schema: String,
    pub tool_version: String,
    pub config: Value,
    pub input: Value,
    pub checks: Vec<CheckRecord>,
    pub verdict: Option<Verdict>,
}

impl WitnessReport {
    pub fn new(config: Value, input: Value) -> Self {
        WitnessReport {
            schema: SCHEMA.into(),
            tool_version: env!("CARGO_PKG_VERSION").into(),
            config,
            input,
            checks: Vec::new(),
            verdict: None,
        }
    }

    pub fn push(&mut self, record: CheckRecord) {
        self.checks.push(record);
    }

    pub fn record(&self, name: &str) -> Option<&CheckRecord> {
        self.checks.iter().find(|r| r.name == name)
    }

    pub fn failing(&self) -> Vec<String> {
        self.checks
            .iter()
            .filter(|r| r.failed())
            .map(|r| r.name.clone())
            .collect()
    }

    /// Canonical JSON: keys sorted, two-space indentation, trailing newline.
    pub fn to_canonical_json(&self) -> String {
        let value = serde_json::to_value(self).expect("report serializes");
        let mut s = serde_json::to_string_pretty(&canonicalize(value)).expect("value serializes");
        s.push('\n');
        s
    }
}

/// Rebuilds every object so key order is the sorted order.
fn canonicalize(v: Value) -> Value {
    match v {
        Value::Object(map) => {
            let mut entries: Vec<(String, Value)> = map.into_iter().collect();
            entries.sort_by(|a, b| a.0.cmp(&b.0));
            Value::Object(entries.into_iter().map(|(k, v)| (k, canonicalize(v))).collect())
        }
        Value::Array(items) => Value::Array(items.into_iter().map(canonicalize).collect()),
        other => other,
    }
}

pub fn emit_report(report: &WitnessReport, path: &Path) -> Result<()> {
    std::fs::write(path, report.to_canonical_json())?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn empty_report_skeleton() {
        let r = WitnessReport::new(json!({}), json!({}));
        let v: Value = serde_json::from_str(&r.to_canonical_json()).unwrap();
        assert_eq!(v["checks"], json!([]));
        assert_eq!(v["schema"], json!(SCHEMA));
        assert!(v.get("verdict").is_some());
    }

    #[test]
    fn keys_sorted() {
        let mut r = WitnessReport::new(json!({"b": 1, "a": 2}), json!({}));
        r.push(CheckRecord::new("z", "c", json!({"y": 1, "x": 2}), true, json!(null)));
        let s = r.to_canonical_json();
        assert!(s.find("\"checks\"").unwrap() < s.find("\"config\"").unwrap());
        assert!(s.find("\"x\"").unwrap() < s.find("\"y\"").unwrap());
    }
}
