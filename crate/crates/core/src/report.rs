//! Structured run reports shared by the library's verifiers and the CLI.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NamedValue {
    pub name: String,
    pub value: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub expected: String,
    pub actual: String,
    pub pass: bool,
}

impl Check {
    pub fn new(name: impl Into<String>, expected: impl ToString, actual: impl ToString) -> Self {
        let expected = expected.to_string();
        let actual = actual.to_string();
        Check {
            name: name.into(),
            pass: expected == actual,
            expected,
            actual,
        }
    }

    /// A check whose outcome is decided by the caller.
    pub fn judged(name: impl Into<String>, expected: impl ToString, actual: impl ToString, pass: bool) -> Self {
        Check {
            name: name.into(),
            expected: expected.to_string(),
            actual: actual.to_string(),
            pass,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunReport {
    pub command: String,
    pub inputs: Vec<NamedValue>,
    pub results: Vec<NamedValue>,
    pub checks: Vec<Check>,
    pub passed: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub timestamp: Option<String>,
}

impl RunReport {
    pub fn new(command: impl Into<String>) -> Self {
        RunReport {
            command: command.into(),
            inputs: Vec::new(),
            results: Vec::new(),
            checks: Vec::new(),
            passed: true,
            timestamp: None,
        }
    }

    pub fn input(&mut self, name: impl Into<String>, value: impl ToString) -> &mut Self {
        self.inputs.push(NamedValue {
            name: name.into(),
            value: value.to_string(),
        });
        self
    }

    pub fn result(&mut self, name: impl Into<String>, value: impl ToString) -> &mut Self {
        self.results.push(NamedValue {
            name: name.into(),
            value: value.to_string(),
        });
        self
    }

    pub fn check(&mut self, check: Check) -> &mut Self {
        self.passed &= check.pass;
        self.checks.push(check);
        self
    }

    pub fn extend_checks(&mut self, checks: impl IntoIterator<Item = Check>) -> &mut Self {
        for c in checks {
            self.check(c);
        }
        self
    }

    pub fn failed_checks(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.pass)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports always serialize")
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "command: {}", self.command);
        if let Some(ts) = &self.timestamp {
            let _ = writeln!(out, "timestamp: {ts}");
        }
        for (title, rows) in [("inputs", &self.inputs), ("results", &self.results)] {
            if rows.is_empty() {
                continue;
            }
            let _ = writeln!(out, "{title}:");
            for r in rows {
                let _ = writeln!(out, "  {} = {}", r.name, r.value);
            }
        }
        if !self.checks.is_empty() {
            let _ = writeln!(out, "checks:");
            for c in &self.checks {
                let mark = if c.pass { "PASS" } else { "FAIL" };
                if c.pass {
                    let _ = writeln!(out, "  [{mark}] {}: {}", c.name, c.actual);
                } else {
                    let _ = writeln!(out, "  [{mark}] {}: expected {}, got {}", c.name, c.expected, c.actual);
                }
            }
        }
        let _ = writeln!(out, "status: {}", if self.passed { "pass" } else { "fail" });
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn passed_tracks_checks() {
        let mut r = RunReport::new("x");
        r.check(Check::new("a", 1, 1));
        assert!(r.passed);
        r.check(Check::new("b", 1, 2));
        assert!(!r.passed);
        assert_eq!(r.failed_checks().count(), 1);
        let back: RunReport = serde_json::from_str(&r.to_json()).unwrap();
        assert_eq!(back, r);
        assert!(r.to_text().contains("[FAIL] b: expected 1, got 2"));
    }
}
