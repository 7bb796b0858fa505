use serde::Serialize;
use serde_json::{Map, Value};

use super::Format;

/// A finished subcommand: the query echo, result fields, a CSV rendering
/// and a one-line summary.
#[derive(Clone, Debug)]
pub struct Report {
    pub command: &'static str,
    pub query: Value,
    pub result: Map<String, Value>,
    pub csv: String,
    pub summary: String,
    pub elapsed_ms: f64,
}

impl Report {
    pub fn new(command: &'static str, query: impl Serialize) -> Self {
        Self {
            command,
            query: serde_json::to_value(query).expect("query serializes"),
            result: Map::new(),
            csv: String::new(),
            summary: String::new(),
            elapsed_ms: 0.0,
        }
    }

    /// Adds a top-level result field.
    pub fn field(mut self, key: &str, value: impl Serialize) -> Self {
        self.result
            .insert(key.to_string(), serde_json::to_value(value).expect("field serializes"));
        self
    }

    pub fn csv(mut self, header: &str, rows: impl IntoIterator<Item = String>) -> Self {
        let mut out = String::from(header);
        out.push('\n');
        for r in rows {
            out.push_str(&r);
            out.push('\n');
        }
        self.csv = out;
        self
    }

    pub fn summary(mut self, s: impl Into<String>) -> Self {
        self.summary = s.into();
        self
    }

    /// The JSON object `{schema, command, query, ..fields, elapsed_ms}`.
    pub fn to_json_value(&self) -> Value {
        let mut obj = Map::new();
        obj.insert("schema".into(), Value::from(1));
        obj.insert("command".into(), Value::from(self.command));
        obj.insert("query".into(), self.query.clone());
        for (k, v) in &self.result {
            obj.insert(k.clone(), v.clone());
        }
        obj.insert("elapsed_ms".into(), Value::from(self.elapsed_ms));
        Value::Object(obj)
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => {
                let mut s = serde_json::to_string_pretty(&self.to_json_value()).expect("report serializes");
                s.push('\n');
                s
            }
            Format::Csv => self.csv.clone(),
        }
    }
}
