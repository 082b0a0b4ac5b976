//! Report documents and their JSON, CSV and text renderings.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};

use crate::config::Format;
use crate::error::Result;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Metadata {
    pub experiment: String,
    pub parameters: BTreeMap<String, String>,
    pub library_version: String,
    /// Seconds since the Unix epoch; left out with `--no-timestamp`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub timestamp: Option<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl Verdict {
    pub fn new(name: impl Into<String>, passed: bool, detail: impl Into<String>) -> Self {
        Self { name: name.into(), passed, detail: detail.into() }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportDocument {
    pub metadata: Metadata,
    pub columns: Vec<String>,
    pub rows: Vec<Map<String, Value>>,
    pub verdicts: Vec<Verdict>,
}

impl ReportDocument {
    pub fn all_passed(&self) -> bool {
        self.verdicts.iter().all(|v| v.passed)
    }

    pub fn to_json(&self) -> Result<String> {
        let mut s = serde_json::to_string_pretty(self)?;
        s.push('\n');
        Ok(s)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    /// Rows only, in column order; verdicts are not part of the CSV.
    pub fn to_csv(&self) -> Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(&self.columns)?;
        for row in &self.rows {
            w.write_record(self.columns.iter().map(|c| cell(row.get(c))))?;
        }
        let bytes = w.into_inner().map_err(|e| e.into_error())?;
        Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
    }

    pub fn to_text(&self) -> String {
        let m = &self.metadata;
        let mut out = String::new();
        let params: Vec<String> = m.parameters.iter().map(|(k, v)| format!("{k}={v}")).collect();
        let _ = writeln!(out, "{} ({})", m.experiment, params.join(" "));
        let _ = writeln!(out, "thetakit {}", m.library_version);
        if let Some(t) = m.timestamp {
            let _ = writeln!(out, "timestamp {t}");
        }
        let cells: Vec<Vec<String>> =
            self.rows.iter().map(|r| self.columns.iter().map(|c| cell(r.get(c))).collect()).collect();
        let widths: Vec<usize> = self
            .columns
            .iter()
            .enumerate()
            .map(|(i, c)| cells.iter().map(|r| r[i].len()).chain([c.len()]).max().unwrap_or(0))
            .collect();
        let line = |items: &[String]| -> String {
            let padded: Vec<String> = items.iter().zip(&widths).map(|(s, &w)| format!("{s:<w$}")).collect();
            padded.join("  ").trim_end().to_string()
        };
        if !self.columns.is_empty() {
            out.push('\n');
            let _ = writeln!(out, "{}", line(&self.columns));
            for r in &cells {
                let _ = writeln!(out, "{}", line(r));
            }
        }
        out.push('\n');
        for v in &self.verdicts {
            let mark = if v.passed { "PASS" } else { "FAIL" };
            if v.detail.is_empty() {
                let _ = writeln!(out, "{mark}  {}", v.name);
            } else {
                let _ = writeln!(out, "{mark}  {}: {}", v.name, v.detail);
            }
        }
        out
    }

    pub fn render(&self, format: Format) -> Result<String> {
        match format {
            Format::Json => self.to_json(),
            Format::Csv => self.to_csv(),
            Format::Text => Ok(self.to_text()),
        }
    }
}

fn cell(v: Option<&Value>) -> String {
    match v {
        None | Some(Value::Null) => String::new(),
        Some(Value::String(s)) => s.clone(),
        Some(other) => other.to_string(),
    }
}

/// Builds a row from `(column, value)` pairs.
pub fn row<I, K, V>(items: I) -> Map<String, Value>
where
    I: IntoIterator<Item = (K, V)>,
    K: Into<String>,
    V: Into<Value>,
{
    items.into_iter().map(|(k, v)| (k.into(), v.into())).collect()
}
