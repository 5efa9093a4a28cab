use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::time::Instant;

use serde::Serialize;
use serde_json::Value;

#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub detail: Value,
}

/// Everything a command produced. Timings live in their own top-level key so
/// that two runs with the same configuration agree byte for byte elsewhere.
#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub command: String,
    pub config: Value,
    pub provenance: Value,
    pub checks: Vec<Check>,
    pub pass: bool,
    pub result: Value,
    pub timings_ms: BTreeMap<String, f64>,
}

impl Report {
    pub fn new(command: &str, config: Value) -> Self {
        Report {
            command: command.into(),
            config,
            provenance: Value::Null,
            checks: Vec::new(),
            pass: true,
            result: Value::Null,
            timings_ms: BTreeMap::new(),
        }
    }

    pub fn check(&mut self, name: impl Into<String>, pass: bool, detail: impl Serialize) {
        self.pass &= pass;
        self.checks.push(Check {
            name: name.into(),
            pass,
            detail: serde_json::to_value(detail).unwrap_or(Value::Null),
        });
    }

    pub fn time(&mut self, stage: impl Into<String>, start: Instant) {
        self.timings_ms.insert(stage.into(), start.elapsed().as_secs_f64() * 1e3);
    }

    /// Folds a sub-report in under `prefix`.
    pub fn absorb(&mut self, prefix: &str, sub: Report) {
        for c in sub.checks {
            self.check(format!("{prefix}: {}", c.name), c.pass, c.detail);
        }
        for (k, v) in sub.timings_ms {
            self.timings_ms.insert(format!("{prefix}/{k}"), v);
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_markdown(&self) -> String {
        let mut out = String::new();
        let verdict = if self.pass { "PASS" } else { "FAIL" };
        let _ = writeln!(out, "# fanolab {}: {verdict}\n", self.command);
        if !self.provenance.is_null() {
            let _ = writeln!(out, "Source: `{}`\n", self.provenance);
        }
        let _ = writeln!(out, "| check | result |\n|---|---|");
        for c in &self.checks {
            let _ = writeln!(out, "| {} | {} |", c.name, if c.pass { "pass" } else { "FAIL" });
        }
        if !self.result.is_null() {
            let body = serde_json::to_string_pretty(&self.result).expect("serializes");
            let _ = writeln!(out, "\n## Result\n\n```json\n{body}\n```");
        }
        if !self.timings_ms.is_empty() {
            let _ = writeln!(out, "\n## Timings (ms)\n");
            for (k, v) in &self.timings_ms {
                let _ = writeln!(out, "- {k}: {v:.1}");
            }
        }
        out
    }
}
