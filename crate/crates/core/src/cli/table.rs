//! Tabular results and their text, JSON and CSV renderings.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_complex::Complex64;
use serde::ser::{SerializeMap, SerializeSeq};
use serde::{Serialize, Serializer};
use serde_json::value::RawValue;

use crate::literal::{format_complex, format_real};

/// One table cell.
#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Empty,
    Text(String),
    Int(i64),
    Real(f64),
    Complex(Complex64),
    Bool(bool),
}

/// Column name and whether it holds complex values.
#[derive(Debug, Clone, PartialEq)]
pub struct Column {
    pub name: String,
    pub complex: bool,
}

impl Column {
    pub fn real(name: &str) -> Self {
        Self { name: name.into(), complex: false }
    }

    pub fn complex(name: &str) -> Self {
        Self { name: name.into(), complex: true }
    }
}

/// Output of every command: run metadata, column layout and rows in
/// deterministic order.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct ScanTable {
    pub meta: BTreeMap<String, String>,
    pub columns: Vec<Column>,
    pub rows: Vec<Vec<Cell>>,
}

/// Output format.
#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum OutputFormat {
    Text,
    Json,
    Csv,
}

fn raw_number(x: f64) -> Box<RawValue> {
    let text = if x.is_finite() { format_real(x) } else { "null".into() };
    RawValue::from_string(text).expect("formatted float is valid JSON")
}

struct JsonCell<'a>(&'a Cell);

impl Serialize for JsonCell<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self.0 {
            Cell::Empty => s.serialize_none(),
            Cell::Text(t) => s.serialize_str(t),
            Cell::Int(i) => s.serialize_i64(*i),
            Cell::Real(x) => raw_number(*x).serialize(s),
            Cell::Bool(b) => s.serialize_bool(*b),
            Cell::Complex(z) => {
                let mut m = s.serialize_map(Some(2))?;
                m.serialize_entry("re", &raw_number(z.re))?;
                m.serialize_entry("im", &raw_number(z.im))?;
                m.end()
            }
        }
    }
}

struct JsonRow<'a>(&'a [Cell]);

impl Serialize for JsonRow<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(self.0.len()))?;
        for c in self.0 {
            seq.serialize_element(&JsonCell(c))?;
        }
        seq.end()
    }
}

#[derive(Serialize)]
struct JsonTable<'a> {
    meta: &'a BTreeMap<String, String>,
    columns: Vec<&'a str>,
    rows: Vec<JsonRow<'a>>,
}

fn text_cell(c: &Cell) -> String {
    match c {
        Cell::Empty => "-".into(),
        Cell::Text(t) => t.clone(),
        Cell::Int(i) => i.to_string(),
        Cell::Real(x) => format_real(*x),
        Cell::Complex(z) => format_complex(*z),
        Cell::Bool(b) => b.to_string(),
    }
}

impl ScanTable {
    pub fn render(&self, format: OutputFormat) -> String {
        match format {
            OutputFormat::Text => self.to_text(),
            OutputFormat::Json => self.to_json(),
            OutputFormat::Csv => self.to_csv(),
        }
    }

    pub fn to_json(&self) -> String {
        let t = JsonTable {
            meta: &self.meta,
            columns: self.columns.iter().map(|c| c.name.as_str()).collect(),
            rows: self.rows.iter().map(|r| JsonRow(r)).collect(),
        };
        let mut out = serde_json::to_string_pretty(&t).expect("table serialises");
        out.push('\n');
        out
    }

    /// Header row then data; complex columns split into `name_re`, `name_im`.
    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        let mut header = Vec::new();
        for c in &self.columns {
            if c.complex {
                header.push(format!("{}_re", c.name));
                header.push(format!("{}_im", c.name));
            } else {
                header.push(c.name.clone());
            }
        }
        w.write_record(&header).expect("in-memory write");
        for row in &self.rows {
            let mut rec = Vec::new();
            for (c, cell) in self.columns.iter().zip(row) {
                match (c.complex, cell) {
                    (true, Cell::Complex(z)) => {
                        rec.push(format_real(z.re));
                        rec.push(format_real(z.im));
                    }
                    (true, _) => {
                        rec.push(String::new());
                        rec.push(String::new());
                    }
                    (false, Cell::Empty) => rec.push(String::new()),
                    (false, cell) => rec.push(text_cell(cell)),
                }
            }
            w.write_record(&rec).expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("flush")).expect("utf-8")
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for (k, v) in &self.meta {
            let _ = writeln!(out, "# {k}: {v}");
        }
        let cells: Vec<Vec<String>> =
            self.rows.iter().map(|r| r.iter().map(text_cell).collect()).collect();
        let widths: Vec<usize> = self
            .columns
            .iter()
            .enumerate()
            .map(|(i, c)| cells.iter().map(|r| r[i].chars().count()).fold(c.name.chars().count(), usize::max))
            .collect();
        let line = |items: Vec<&str>| -> String {
            let parts: Vec<String> =
                items.iter().zip(&widths).map(|(s, w)| format!("{s:<w$}")).collect();
            parts.join("  ").trim_end().to_string()
        };
        out.push_str(&line(self.columns.iter().map(|c| c.name.as_str()).collect()));
        out.push('\n');
        for r in &cells {
            out.push_str(&line(r.iter().map(String::as_str).collect()));
            out.push('\n');
        }
        out
    }
}
