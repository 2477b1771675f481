//! Report model and its human, JSON and CSV renderings.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Verdict {
    Pass,
    Fail,
    Undecided,
}

impl Verdict {
    pub fn label(self) -> &'static str {
        match self {
            Verdict::Pass => "PASS",
            Verdict::Fail => "FAIL",
            Verdict::Undecided => "UNDECIDED",
        }
    }

    pub fn exit_code(self) -> i32 {
        match self {
            Verdict::Pass => 0,
            Verdict::Fail => 1,
            Verdict::Undecided => 2,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub tool_version: String,
    pub command: String,
    pub inputs: Map<String, Value>,
    pub rows: Vec<Value>,
    #[serde(default, skip_serializing_if = "Value::is_null")]
    pub summary: Value,
    pub verdict: Verdict,
}

impl Report {
    pub fn new(command: &str, inputs: Map<String, Value>) -> Self {
        Report {
            tool_version: env!("CARGO_PKG_VERSION").to_string(),
            command: command.to_string(),
            inputs,
            rows: Vec::new(),
            summary: Value::Null,
            verdict: Verdict::Pass,
        }
    }
}

/// Flat view of the rows for CSV and terminal output.
#[derive(Clone, Debug, Default)]
pub struct Table {
    pub header: Vec<&'static str>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(header: &[&'static str]) -> Self {
        Table { header: header.to_vec(), rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }
}

/// Everything a command produces.
pub struct Output {
    pub report: Report,
    pub table: Table,
    /// Extra lines for terminal output.
    pub notes: Vec<String>,
}

pub fn render_json(report: &Report) -> String {
    let mut s = serde_json::to_string_pretty(report).expect("report serializes");
    s.push('\n');
    s
}

pub fn render_csv(table: &Table) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(&table.header).expect("in-memory write");
    for row in &table.rows {
        w.write_record(row).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8")
}

pub fn render_human(out: &Output) -> String {
    let r = &out.report;
    let mut s = String::new();
    let inputs: Vec<String> = r.inputs.iter().map(|(k, v)| format!("{k}={}", plain(v))).collect();
    let _ = writeln!(s, "bpfcheck {} ({})", r.command, inputs.join(", "));
    let t = &out.table;
    let widths: Vec<usize> = (0..t.header.len())
        .map(|i| t.rows.iter().map(|row| row[i].chars().count()).chain([t.header[i].len()]).max().unwrap_or(0))
        .collect();
    let line = |cells: Vec<&str>| {
        let padded: Vec<String> = cells.iter().zip(&widths).map(|(c, w)| format!("{c:<w$}")).collect();
        padded.join("  ").trim_end().to_string()
    };
    if !t.rows.is_empty() {
        let _ = writeln!(s, "{}", line(t.header.clone()));
        for row in &t.rows {
            let _ = writeln!(s, "{}", line(row.iter().map(String::as_str).collect()));
        }
    }
    for n in &out.notes {
        let _ = writeln!(s, "{n}");
    }
    let _ = writeln!(s, "verdict: {}", r.verdict.label());
    s
}

/// A JSON value as a bare string: strings unquoted, null empty.
pub fn plain(v: &Value) -> String {
    match v {
        Value::Null => String::new(),
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}
