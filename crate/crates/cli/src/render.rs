use serde_json::Value;

use crate::config::Format;
use redundant_radix::{Error, Result};

/// A command's result in every form it supports. JSON is always available;
/// the text form falls back to one `key: value` line per field.
#[derive(Debug, Clone, Default)]
pub struct Document {
    pub json: Value,
    pub text: Option<String>,
    pub csv: Option<String>,
    pub dot: Option<String>,
}

impl Document {
    pub fn json(json: Value) -> Self {
        Document {
            json,
            ..Document::default()
        }
    }

    pub fn with_text(mut self, text: String) -> Self {
        self.text = Some(text);
        self
    }

    pub fn with_csv(mut self, csv: String) -> Self {
        self.csv = Some(csv);
        self
    }

    pub fn with_dot(mut self, dot: String) -> Self {
        self.dot = Some(dot);
        self
    }

    pub fn render(self, format: Format) -> Result<String> {
        let unsupported = |name: &str| Error::Usage(format!("this command has no {name} output"));
        match format {
            Format::Json => {
                let mut out = serde_json::to_string_pretty(&self.json).expect("values serialize");
                out.push('\n');
                Ok(out)
            }
            Format::Text => Ok(self.text.unwrap_or_else(|| plain_text(&self.json))),
            Format::Csv => self.csv.ok_or_else(|| unsupported("csv")),
            Format::Dot => self.dot.ok_or_else(|| unsupported("dot")),
        }
    }
}

fn scalar(value: &Value) -> String {
    match value {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

fn plain_text(value: &Value) -> String {
    let mut out = String::new();
    match value {
        Value::Object(map) => {
            for (k, v) in map {
                out.push_str(&format!("{k}: {}\n", scalar(v)));
            }
        }
        Value::Array(items) => {
            for v in items {
                out.push_str(&scalar(v));
                out.push('\n');
            }
        }
        other => {
            out.push_str(&scalar(other));
            out.push('\n');
        }
    }
    out
}
