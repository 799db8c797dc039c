use std::path::Path;
use std::time::{SystemTime, UNIX_EPOCH};

use anyhow::{Context, Result};
use serde_json::{json, Map, Value};

use crate::FormatArg;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
}

impl From<FormatArg> for Format {
    fn from(f: FormatArg) -> Self {
        match f {
            FormatArg::Json => Format::Json,
            FormatArg::Csv => Format::Csv,
        }
    }
}

#[derive(Debug, Clone)]
pub struct Verdict {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

/// `{meta, params, results, verdicts}`. Only `meta.timestamp` varies between
/// identical runs.
#[derive(Debug, Clone)]
pub struct Report {
    pub command: &'static str,
    pub precision: usize,
    pub params: Map<String, Value>,
    pub results: Vec<Map<String, Value>>,
    pub verdicts: Vec<Verdict>,
}

/// Seconds since the epoch, or `SOURCE_DATE_EPOCH` when set.
fn timestamp() -> u64 {
    if let Some(v) = std::env::var("SOURCE_DATE_EPOCH").ok().and_then(|s| s.parse().ok()) {
        return v;
    }
    SystemTime::now()
        .duration_since(UNIX_EPOCH)
        .map(|d| d.as_secs())
        .unwrap_or(0)
}

impl Report {
    pub fn new(command: &'static str, precision: usize) -> Self {
        Report {
            command,
            precision,
            params: Map::new(),
            results: Vec::new(),
            verdicts: Vec::new(),
        }
    }

    pub fn param(&mut self, key: &str, value: impl Into<Value>) {
        self.params.insert(key.to_owned(), value.into());
    }

    pub fn row(&mut self, row: Value) {
        if let Value::Object(m) = row {
            self.results.push(m);
        }
    }

    pub fn verdict(&mut self, name: &str, passed: bool, detail: impl Into<String>) {
        self.verdicts.push(Verdict {
            name: name.to_owned(),
            passed,
            detail: detail.into(),
        });
    }

    pub fn passed(&self) -> bool {
        self.verdicts.iter().all(|v| v.passed)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "meta": {
                "version": env!("CARGO_PKG_VERSION"),
                "command": self.command,
                "precision": self.precision,
                "timestamp": timestamp(),
            },
            "params": self.params,
            "results": self.results,
            "verdicts": self.verdicts.iter().map(|v| json!({
                "name": v.name,
                "passed": v.passed,
                "detail": v.detail,
            })).collect::<Vec<_>>(),
        })
    }

    /// Result rows only; the header is the union of keys in first-seen order.
    pub fn to_csv(&self) -> Result<String> {
        let mut header: Vec<&str> = Vec::new();
        for row in &self.results {
            for k in row.keys() {
                if !header.contains(&k.as_str()) {
                    header.push(k);
                }
            }
        }
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(&header)?;
        for row in &self.results {
            w.write_record(header.iter().map(|k| row.get(*k).map(cell).unwrap_or_default()))?;
        }
        Ok(String::from_utf8(w.into_inner()?)?)
    }

    pub fn render(&self, format: Format) -> Result<String> {
        match format {
            Format::Json => {
                let mut s = serde_json::to_string_pretty(&self.to_json())?;
                s.push('\n');
                Ok(s)
            }
            Format::Csv => self.to_csv(),
        }
    }
}

pub fn write_file(path: &Path, body: &str) -> Result<()> {
    std::fs::write(path, body).with_context(|| format!("writing {}", path.display()))
}

fn cell(v: &Value) -> String {
    match v {
        Value::Null => String::new(),
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}
