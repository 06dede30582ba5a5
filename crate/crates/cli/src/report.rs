//! Machine-readable command output.
//!
//! Every numeric result is tagged exact (integers, pass/fail) or approximate
//! (floating point). Tables record the flag once per column.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use clap::ValueEnum;
use serde::Serialize;
use serde_json::Value;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Table,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Field {
    pub value: Value,
    pub exact: bool,
}

impl Field {
    pub fn exact(value: impl Into<Value>) -> Self {
        Self {
            value: value.into(),
            exact: true,
        }
    }

    pub fn approx(value: f64) -> Self {
        Self {
            value: Value::from(value),
            exact: false,
        }
    }

    /// Wide integers travel as decimal strings.
    pub fn wide(value: impl ToString) -> Self {
        Self::exact(value.to_string())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Column {
    pub name: String,
    pub exact: bool,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct Table {
    pub columns: Vec<Column>,
    pub rows: Vec<Vec<Value>>,
}

impl Table {
    pub fn new(columns: &[(&str, bool)]) -> Self {
        Self {
            columns: columns
                .iter()
                .map(|&(name, exact)| Column {
                    name: name.to_string(),
                    exact,
                })
                .collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Value>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report {
    pub schema_version: u32,
    pub command: String,
    pub parameters: BTreeMap<String, Value>,
    pub results: BTreeMap<String, Field>,
    pub tables: BTreeMap<String, Table>,
    pub mode: Option<String>,
    pub seed: Option<u64>,
    pub elapsed_ms: f64,
}

impl Report {
    pub fn new(command: &str) -> Self {
        Self {
            schema_version: 1,
            command: command.to_string(),
            parameters: BTreeMap::new(),
            results: BTreeMap::new(),
            tables: BTreeMap::new(),
            mode: None,
            seed: None,
            elapsed_ms: 0.0,
        }
    }

    pub fn param(&mut self, key: &str, value: impl Into<Value>) -> &mut Self {
        self.parameters.insert(key.to_string(), value.into());
        self
    }

    pub fn result(&mut self, key: &str, field: Field) -> &mut Self {
        self.results.insert(key.to_string(), field);
        self
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => serde_json::to_string_pretty(self).expect("report serializes") + "\n",
            Format::Csv => self.render_csv(),
            Format::Table => self.render_table(),
        }
    }

    fn render_csv(&self) -> String {
        let mut out = String::new();
        if !self.results.is_empty() {
            let keys: Vec<&str> = self.results.keys().map(String::as_str).collect();
            writeln!(out, "{}", keys.join(",")).unwrap();
            let vals: Vec<String> = self.results.values().map(|f| plain(&f.value)).collect();
            writeln!(out, "{}", vals.join(",")).unwrap();
        }
        for table in self.tables.values() {
            if !out.is_empty() {
                out.push('\n');
            }
            let names: Vec<&str> = table.columns.iter().map(|c| c.name.as_str()).collect();
            writeln!(out, "{}", names.join(",")).unwrap();
            for row in &table.rows {
                let cells: Vec<String> = row.iter().map(plain).collect();
                writeln!(out, "{}", cells.join(",")).unwrap();
            }
        }
        out
    }

    fn render_table(&self) -> String {
        let mut out = String::new();
        writeln!(out, "{}", self.command).unwrap();
        for (k, v) in &self.parameters {
            writeln!(out, "  {k} = {}", plain(v)).unwrap();
        }
        if let Some(mode) = &self.mode {
            writeln!(out, "  mode = {mode}").unwrap();
        }
        if let Some(seed) = self.seed {
            writeln!(out, "  seed = {seed}").unwrap();
        }
        if !self.results.is_empty() {
            let width = self.results.keys().map(String::len).max().unwrap_or(0);
            for (k, f) in &self.results {
                let tag = if f.exact { "" } else { "  (approx)" };
                writeln!(out, "{k:>width$}  {}{tag}", plain(&f.value)).unwrap();
            }
        }
        for (name, table) in &self.tables {
            writeln!(out, "\n[{name}]").unwrap();
            let cells: Vec<Vec<String>> = table.rows.iter().map(|r| r.iter().map(plain).collect()).collect();
            let widths: Vec<usize> = table
                .columns
                .iter()
                .enumerate()
                .map(|(i, c)| cells.iter().map(|r| r[i].len()).chain([c.name.len()]).max().unwrap())
                .collect();
            let line = |vals: Vec<&str>| {
                vals.iter()
                    .zip(&widths)
                    .map(|(v, w)| format!("{v:>w$}"))
                    .collect::<Vec<_>>()
                    .join("  ")
            };
            writeln!(out, "{}", line(table.columns.iter().map(|c| c.name.as_str()).collect())).unwrap();
            for row in &cells {
                writeln!(out, "{}", line(row.iter().map(String::as_str).collect())).unwrap();
            }
            if table.rows.is_empty() {
                writeln!(out, "(no rows)").unwrap();
            }
        }
        out
    }
}

fn plain(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => String::new(),
        other => other.to_string(),
    }
}
