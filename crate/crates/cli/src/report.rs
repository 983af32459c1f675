use std::fmt;
use std::path::Path;

use anyhow::Context;
use serde_json::{json, Map, Value};

pub const SCHEMA: &str = "anomalion/1";

/// Bad input: unreadable or malformed configuration. Exits with code 2.
#[derive(Debug)]
pub struct ConfigError(pub String);

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for ConfigError {}

/// Wraps any error as a configuration error.
pub fn config<T, E: fmt::Display>(r: Result<T, E>, what: &str) -> anyhow::Result<T> {
    r.map_err(|e| ConfigError(format!("{what}: {e}")).into())
}

struct Assertion {
    name: String,
    passed: bool,
    detail: String,
}

/// A versioned JSON report with an assertion log. Keys are emitted in
/// sorted order so identical runs give identical bytes.
pub struct Report {
    fields: Map<String, Value>,
    assertions: Vec<Assertion>,
}

impl Report {
    pub fn new(command: &str) -> Self {
        let mut fields = Map::new();
        fields.insert("schema".into(), json!(SCHEMA));
        fields.insert("command".into(), json!(command));
        Self { fields, assertions: Vec::new() }
    }

    pub fn set(&mut self, key: &str, value: impl Into<Value>) {
        self.fields.insert(key.into(), value.into());
    }

    pub fn assert(&mut self, name: &str, passed: bool, detail: impl Into<String>) {
        let detail = detail.into();
        println!("[{}] {name}{}", if passed { "ok" } else { "FAIL" }, if detail.is_empty() { String::new() } else { format!(": {detail}") });
        self.assertions.push(Assertion { name: name.into(), passed, detail });
    }

    pub fn passed(&self) -> bool {
        self.assertions.iter().all(|a| a.passed)
    }

    pub fn to_json(&self) -> Value {
        let mut m = self.fields.clone();
        let log: Vec<Value> =
            self.assertions.iter().map(|a| json!({"name": a.name, "passed": a.passed, "detail": a.detail})).collect();
        m.insert("assertions".into(), Value::Array(log));
        m.insert("passed".into(), json!(self.passed()));
        Value::Object(m)
    }

    /// Writes the report when a path is given and returns whether every
    /// assertion held.
    pub fn finish(self, path: Option<&Path>) -> anyhow::Result<bool> {
        if let Some(p) = path {
            let text = serde_json::to_string_pretty(&self.to_json())? + "\n";
            std::fs::write(p, text).with_context(|| format!("writing report to {}", p.display()))?;
            println!("report written to {}", p.display());
        }
        let passed = self.passed();
        println!("{}", if passed { "all assertions passed" } else { "assertion failures" });
        Ok(passed)
    }
}
