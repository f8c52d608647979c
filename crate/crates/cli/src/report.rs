//! Command output: one ordered list of fields rendered as a table or JSON.

use std::fmt::Write;

use serde::Serialize;
use serde_json::{Map, Value};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, clap::ValueEnum, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Table,
    Json,
}

/// Exit status of a command that ran to completion.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Ok,
    /// A certificate or identity failed.
    Violated,
}

#[derive(Clone, Debug)]
pub struct Report {
    command: String,
    fields: Vec<(String, Value, String)>,
    pub status: Status,
}

impl Report {
    pub fn new(command: &str) -> Self {
        Report { command: command.into(), fields: Vec::new(), status: Status::Ok }
    }

    /// Adds a field with its JSON value and table text.
    pub fn field<T: Serialize>(&mut self, key: &str, json: &T, text: impl Into<String>) -> &mut Self {
        let v = serde_json::to_value(json).expect("serializable");
        self.fields.push((key.into(), v, text.into()));
        self
    }

    /// A field whose table text is its display form.
    pub fn show<T: Serialize + std::fmt::Display>(&mut self, key: &str, v: &T) -> &mut Self {
        let s = v.to_string();
        self.field(key, v, s)
    }

    /// Records a certificate; a failed one marks the report violated.
    pub fn check(&mut self, key: &str, ok: bool) -> &mut Self {
        if !ok {
            self.status = Status::Violated;
        }
        self.field(key, &ok, if ok { "pass" } else { "FAIL" })
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => {
                let mut m = Map::new();
                m.insert("command".into(), Value::String(self.command.clone()));
                m.insert("version".into(), Value::from(plfun::serial::FORMAT_VERSION));
                for (k, v, _) in &self.fields {
                    m.insert(k.clone(), v.clone());
                }
                let mut s = serde_json::to_string_pretty(&Value::Object(m)).expect("serializable");
                s.push('\n');
                s
            }
            Format::Table => {
                let width = self.fields.iter().map(|f| f.0.len()).max().unwrap_or(0);
                let mut s = String::new();
                for (k, _, t) in &self.fields {
                    let mut lines = t.lines();
                    let first = lines.next().unwrap_or("");
                    writeln!(s, "{k:width$}  {first}").expect("string write");
                    for l in lines {
                        writeln!(s, "{:width$}  {l}", "").expect("string write");
                    }
                }
                s
            }
        }
    }
}
