use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};

use crate::sequence::SequenceTerm;

/// Output of one command. The text and JSON forms are both rendered from
/// this value, so they carry the same numbers.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Report {
    pub command: String,
    /// `sha256:` followed by the hex digest of the instance file.
    pub digest: String,
    pub field: String,
    pub mode: String,
    pub results: Map<String, Value>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub sequence: Vec<SequenceTerm>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub checks: Vec<Check>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

impl Report {
    pub fn new(command: String, digest: String, field: String, mode: String) -> Self {
        Self {
            command,
            digest,
            field,
            mode,
            results: Map::new(),
            sequence: Vec::new(),
            checks: Vec::new(),
        }
    }

    pub fn set(&mut self, key: &str, value: impl Into<Value>) {
        self.results.insert(key.to_string(), value.into());
    }

    pub fn check(&mut self, name: &str, pass: bool, detail: impl Into<String>) {
        self.checks.push(Check {
            name: name.to_string(),
            pass,
            detail: detail.into(),
        });
    }

    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialise") + "\n"
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "command  {}", self.command);
        let _ = writeln!(s, "digest   {}", self.digest);
        let _ = writeln!(s, "field    {}", self.field);
        let _ = writeln!(s, "mode     {}", self.mode);
        if !self.results.is_empty() {
            s.push_str("results\n");
            for (k, v) in &self.results {
                let _ = writeln!(s, "  {k} = {v}");
            }
        }
        if !self.sequence.is_empty() {
            s.push_str("sequence\n");
            let width = self.sequence.iter().map(|t| t.term.len()).max().unwrap_or(0);
            for t in &self.sequence {
                let _ = write!(s, "  {:<width$}  {:>4}", t.term, t.dim);
                if let Some(r) = t.outgoing_rank {
                    let _ = write!(s, "  --rank {r}-->");
                }
                s.push('\n');
            }
        }
        if !self.checks.is_empty() {
            s.push_str("checks\n");
            for c in &self.checks {
                let mark = if c.pass { "PASS" } else { "FAIL" };
                let _ = writeln!(s, "  {mark} {}  {}", c.name, c.detail);
            }
        }
        s
    }
}
