//! Pass/fail reports with ordered structured data.

use serde::Serialize;
use serde_json::{Map, Value};

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CheckLine {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Report {
    pub name: String,
    pub passed: bool,
    pub checks: Vec<CheckLine>,
    pub data: Map<String, Value>,
}

impl Report {
    pub fn new(name: impl Into<String>) -> Self {
        Report {
            name: name.into(),
            passed: true,
            checks: Vec::new(),
            data: Map::new(),
        }
    }

    pub fn check(&mut self, name: impl Into<String>, passed: bool, detail: impl Into<String>) -> bool {
        self.passed &= passed;
        self.checks.push(CheckLine {
            name: name.into(),
            passed,
            detail: detail.into(),
        });
        passed
    }

    pub fn set(&mut self, key: impl Into<String>, value: impl Serialize) {
        let v = serde_json::to_value(value).expect("serializable report value");
        self.data.insert(key.into(), v);
    }

    pub fn first_failure(&self) -> Option<&CheckLine> {
        self.checks.iter().find(|c| !c.passed)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("{}: {}\n", self.name, if self.passed { "PASS" } else { "FAIL" });
        for c in &self.checks {
            let mark = if c.passed { "ok  " } else { "FAIL" };
            if c.detail.is_empty() {
                s.push_str(&format!("  [{mark}] {}\n", c.name));
            } else {
                s.push_str(&format!("  [{mark}] {}: {}\n", c.name, c.detail));
            }
        }
        for (k, v) in &self.data {
            s.push_str(&format!("  {k} = {v}\n"));
        }
        s
    }
}

/// JSON array of decimal strings, for big integers in reports.
pub fn int_list(v: &[num_bigint::BigInt]) -> Vec<String> {
    v.iter().map(ToString::to_string).collect()
}
