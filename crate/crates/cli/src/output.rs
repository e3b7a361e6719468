use std::fmt;

use clap::ValueEnum;
use serde_json::{json, Value};
use symquandle::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Pretty,
}

/// What a successful command produced.
pub struct CommandResult {
    pub payload: Value,
    pub summary: String,
    /// Specialized CSV; otherwise the payload's top-level fields form one row.
    pub csv: Option<String>,
}

impl CommandResult {
    pub fn new(payload: Value, summary: impl Into<String>) -> Self {
        Self {
            payload,
            summary: summary.into(),
            csv: None,
        }
    }

    pub fn with_csv(mut self, csv: String) -> Self {
        self.csv = Some(csv);
        self
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => format!("{}\n", self.payload),
            Format::Pretty => format!("{}\n", self.summary.trim_end()),
            Format::Csv => self.csv.clone().unwrap_or_else(|| flat_csv(&self.payload)),
        }
    }
}

pub fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn csv_value(v: &Value) -> String {
    match v {
        Value::String(s) => csv_field(s),
        Value::Null => String::new(),
        other => csv_field(&other.to_string()),
    }
}

fn flat_csv(payload: &Value) -> String {
    match payload {
        Value::Object(map) => {
            let header: Vec<String> = map.keys().map(|k| csv_field(k)).collect();
            let row: Vec<String> = map.values().map(csv_value).collect();
            format!("{}\n{}\n", header.join(","), row.join(","))
        }
        other => format!("value\n{}\n", csv_value(other)),
    }
}

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Input(String),
    Domain(Error),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) | CliError::Input(_) => 2,
            CliError::Domain(Error::ResourceGuard(_)) => 3,
            CliError::Domain(_) => 1,
        }
    }

    pub fn to_json(&self) -> Value {
        let kind = match self {
            CliError::Usage(_) => "usage",
            CliError::Input(_) => "input",
            CliError::Domain(Error::ResourceGuard(_)) => "resource_guard",
            CliError::Domain(_) => "domain",
        };
        json!({"status": "error", "kind": kind, "message": self.to_string()})
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) | CliError::Input(m) => f.write_str(m),
            CliError::Domain(e) => write!(f, "{e}"),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Domain(e)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_quoting_and_flattening() {
        assert_eq!(csv_field("a,b"), "\"a,b\"");
        assert_eq!(csv_field("x\"y"), "\"x\"\"y\"");
        let r = CommandResult::new(json!({"free_rank": 1, "torsion": [3]}), "Z ⊕ Z_3");
        assert_eq!(r.render(Format::Csv), "free_rank,torsion\n1,[3]\n");
        assert_eq!(r.render(Format::Pretty), "Z ⊕ Z_3\n");
    }

    #[test]
    fn exit_codes() {
        assert_eq!(CliError::Usage("x".into()).exit_code(), 2);
        assert_eq!(CliError::Domain(Error::NotACycle).exit_code(), 1);
        assert_eq!(
            CliError::Domain(Error::ResourceGuard("x".into())).exit_code(),
            3
        );
    }
}
