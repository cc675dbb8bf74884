//! Verification reports: named checks with verdicts and JSON details.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::Serialize;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub details: serde_json::Value,
}

impl Check {
    pub fn new(name: impl Into<String>, pass: bool, details: serde_json::Value) -> Self {
        Check { name: name.into(), pass, details }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerificationReport {
    pub model: String,
    pub checks: Vec<Check>,
    pub degree_bound: i64,
    /// `"pass"` iff every check passed.
    pub overall: String,
    pub engines: BTreeMap<String, String>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl VerificationReport {
    pub fn new(model: impl Into<String>, degree_bound: i64) -> Self {
        let mut engines = BTreeMap::new();
        let version = env!("CARGO_PKG_VERSION");
        engines.insert("symbolic".into(), format!("groebner-pot {version}"));
        engines.insert("degreewise".into(), format!("block-rank+smith {version}"));
        VerificationReport {
            model: model.into(),
            checks: Vec::new(),
            degree_bound,
            overall: "pass".into(),
            engines,
            notes: Vec::new(),
        }
    }

    pub fn push(&mut self, check: Check) {
        if !check.pass {
            self.overall = "fail".into();
        }
        self.checks.push(check);
    }

    pub fn extend(&mut self, checks: impl IntoIterator<Item = Check>) {
        for c in checks {
            self.push(c);
        }
    }

    pub fn note(&mut self, note: impl Into<String>) {
        self.notes.push(note.into());
    }

    pub fn passed(&self) -> bool {
        self.overall == "pass"
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("report serializes")
    }

    /// One line per check, then notes.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let _ =
            writeln!(s, "model: {}  (D = {})  overall: {}", self.model, self.degree_bound, self.overall.to_uppercase());
        let width = self.checks.iter().map(|c| c.name.len()).max().unwrap_or(0);
        for c in &self.checks {
            let verdict = if c.pass { "PASS" } else { "FAIL" };
            let _ = writeln!(s, "  {:width$}  {verdict}  {}", c.name, summarize(&c.details));
        }
        for n in &self.notes {
            let _ = writeln!(s, "  note: {n}");
        }
        s
    }
}

fn summarize(v: &serde_json::Value) -> String {
    match v {
        serde_json::Value::Object(m) => m
            .iter()
            .filter(|(_, x)| !x.is_array() && !x.is_object())
            .map(|(k, x)| format!("{k}={}", x.as_str().map_or_else(|| x.to_string(), str::to_string)))
            .collect::<Vec<_>>()
            .join(" "),
        other => other.to_string(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn overall_tracks_checks() {
        let mut r = VerificationReport::new("m", 10);
        r.push(Check::new("a", true, json!({})));
        assert!(r.passed());
        r.push(Check::new("b", false, json!({"why": "x"})));
        assert!(!r.passed());
        assert_eq!(r.to_json()["overall"], "fail");
        assert!(r.to_text().contains("b  FAIL  why=x"));
    }
}
