//! JSON and TSV rendering.

use clap::ValueEnum;
use serde_json::Value;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Tsv,
}

/// A command result: always JSON, optionally with a natural table form.
pub struct Report {
    pub json: Value,
    pub table: Option<Table>,
}

pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Report {
    pub fn single(json: Value) -> Self {
        Report { json, table: None }
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => format!("{}\n", self.json),
            Format::Tsv => match &self.table {
                Some(t) => render_tsv(t),
                None => render_tsv(&flatten(&self.json)),
            },
        }
    }
}

fn cell(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

/// Top-level keys become columns of a one-row table.
fn flatten(v: &Value) -> Table {
    match v {
        Value::Object(map) => Table {
            header: map.keys().cloned().collect(),
            rows: vec![map.values().map(cell).collect()],
        },
        other => Table { header: vec!["value".into()], rows: vec![vec![cell(other)]] },
    }
}

fn render_tsv(t: &Table) -> String {
    let mut out = t.header.join("\t");
    out.push('\n');
    for row in &t.rows {
        out.push_str(&row.join("\t"));
        out.push('\n');
    }
    out
}
