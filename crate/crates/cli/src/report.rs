use serde_json::{Map, Value};

use crate::doc::Document;

/// Output of one command: a JSON report, an optional TSV table and an
/// optional emitted document.
#[derive(Clone, Debug)]
pub struct Report {
    pub command: String,
    pub args: Map<String, Value>,
    pub fields: Map<String, Value>,
    pub table: Option<String>,
    pub document: Option<Document>,
    /// Exit code to use after printing; non-zero when the report itself
    /// records a validation failure.
    pub exit_code: i32,
}

impl Report {
    pub fn new(command: &str) -> Self {
        Report {
            command: command.to_string(),
            args: Map::new(),
            fields: Map::new(),
            table: None,
            document: None,
            exit_code: 0,
        }
    }

    pub fn arg(mut self, key: &str, value: impl Into<Value>) -> Self {
        self.args.insert(key.to_string(), value.into());
        self
    }

    pub fn set(&mut self, key: &str, value: impl Into<Value>) {
        self.fields.insert(key.to_string(), value.into());
    }

    pub fn to_json(&self) -> Value {
        let mut out = Map::new();
        out.insert("command".into(), Value::String(self.command.clone()));
        out.insert("args".into(), Value::Object(self.args.clone()));
        for (k, v) in &self.fields {
            out.insert(k.clone(), v.clone());
        }
        Value::Object(out)
    }

    pub fn render_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.to_json()).expect("values serialize");
        s.push('\n');
        s
    }

    /// The command's own table if it has one, otherwise `field, value` rows.
    pub fn render_table(&self) -> String {
        if let Some(t) = &self.table {
            return t.clone();
        }
        let mut out = String::from("field\tvalue\n");
        out.push_str(&format!("command\t{}\n", self.command));
        for (k, v) in &self.fields {
            let cell = match v {
                Value::String(s) => s.clone(),
                other => other.to_string(),
            };
            out.push_str(&format!("{k}\t{cell}\n"));
        }
        out
    }
}
