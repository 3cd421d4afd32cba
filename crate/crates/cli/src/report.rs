use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct CheckLine {
    pub name: String,
    pub status: &'static str,
    #[serde(skip)]
    pub detail: String,
}

impl CheckLine {
    pub fn new(name: impl Into<String>, ok: bool, detail: impl Into<String>) -> Self {
        CheckLine { name: name.into(), status: if ok { "pass" } else { "fail" }, detail: detail.into() }
    }

    pub fn passed(&self) -> bool {
        self.status == "pass"
    }
}

/// The result of one command; `--json` serializes it with a fixed field order.
#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub command: String,
    pub parameters: BTreeMap<String, serde_json::Value>,
    pub value: String,
    pub checks: Vec<CheckLine>,
    /// Replaces the default human-readable rendering.
    #[serde(skip)]
    pub text: Option<String>,
}

impl Report {
    pub fn new(command: &str, value: impl Into<String>) -> Self {
        Report { command: command.into(), parameters: BTreeMap::new(), value: value.into(), checks: Vec::new(), text: None }
    }

    pub fn param(mut self, k: &str, v: impl Into<serde_json::Value>) -> Self {
        self.parameters.insert(k.into(), v.into());
        self
    }

    pub fn check(mut self, c: CheckLine) -> Self {
        self.checks.push(c);
        self
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed())
    }

    pub fn json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(t) = &self.text {
            return if t.ends_with('\n') { write!(f, "{}", t) } else { writeln!(f, "{}", t) };
        }
        writeln!(f, "{}", self.value)?;
        for c in &self.checks {
            if c.passed() {
                writeln!(f, "ok   {}", c.name)?;
            } else if c.detail.is_empty() {
                writeln!(f, "FAIL {}", c.name)?;
            } else {
                writeln!(f, "FAIL {}: {}", c.name, c.detail)?;
            }
        }
        Ok(())
    }
}
