use serde_json::{json, Map, Value};
use subalg_core::Verdict;

/// Text lines, structured results and named verdicts of one command.
#[derive(Debug, Default)]
pub struct Report {
    pub lines: Vec<String>,
    pub data: Map<String, Value>,
    pub verdicts: Vec<(String, Verdict)>,
}

impl Report {
    pub fn line(&mut self, s: impl Into<String>) {
        self.lines.push(s.into());
    }

    pub fn put(&mut self, key: &str, v: Value) {
        self.data.insert(key.to_string(), v);
    }

    pub fn verdict(&mut self, name: &str, v: Verdict) {
        self.verdicts.push((name.to_string(), v));
    }

    pub fn verdicts_json(&self, rechecked: &[bool]) -> Value {
        Value::Array(
            self.verdicts
                .iter()
                .zip(rechecked)
                .map(|((name, v), ok)| {
                    json!({
                        "name": name,
                        "outcome": v.outcome.to_string(),
                        "certificate": v.certificate.iter().map(|e| e.to_string()).collect::<Vec<_>>(),
                        "recheck": ok,
                    })
                })
                .collect(),
        )
    }
}
