//! Tabular output as CSV (12 significant digits) or JSON lines (full precision).

use std::fmt::Write as _;
use std::io::{self, Write};

use serde_json::{Map, Number, Value};

/// Significant digits written to CSV.
pub const CSV_DIGITS: usize = 12;

/// Output encoding.
#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    /// Comma-separated with a header row.
    Csv,
    /// One JSON object per line.
    Json,
}

/// One table cell.
#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    /// Text.
    Text(String),
    /// Number.
    Num(f64),
    /// Flag.
    Bool(bool),
}

impl From<f64> for Cell {
    fn from(x: f64) -> Self {
        Cell::Num(x)
    }
}

impl From<bool> for Cell {
    fn from(b: bool) -> Self {
        Cell::Bool(b)
    }
}

impl From<&str> for Cell {
    fn from(s: &str) -> Self {
        Cell::Text(s.into())
    }
}

impl From<String> for Cell {
    fn from(s: String) -> Self {
        Cell::Text(s)
    }
}

/// Header plus rows; every row has one cell per column.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Table {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new<S: Into<String>>(columns: impl IntoIterator<Item = S>) -> Self {
        Self {
            columns: columns.into_iter().map(Into::into).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    /// Numeric values of a column (non-numbers are skipped).
    pub fn numbers(&self, column: &str) -> Vec<f64> {
        let Some(i) = self.columns.iter().position(|c| c == column) else {
            return Vec::new();
        };
        self.rows
            .iter()
            .filter_map(|r| match r[i] {
                Cell::Num(x) => Some(x),
                _ => None,
            })
            .collect()
    }

    pub fn write(&self, format: Format, out: &mut dyn Write) -> io::Result<()> {
        match format {
            Format::Csv => out.write_all(self.to_csv().as_bytes()),
            Format::Json => out.write_all(self.to_json_lines().as_bytes()),
        }
    }

    pub fn to_csv(&self) -> String {
        let mut s = String::new();
        let header: Vec<String> = self.columns.iter().map(|c| csv_field(c)).collect();
        s.push_str(&header.join(","));
        s.push('\n');
        for row in &self.rows {
            let fields: Vec<String> = row
                .iter()
                .map(|cell| match cell {
                    Cell::Text(t) => csv_field(t),
                    Cell::Num(x) => format_sig(*x, CSV_DIGITS),
                    Cell::Bool(b) => b.to_string(),
                })
                .collect();
            s.push_str(&fields.join(","));
            s.push('\n');
        }
        s
    }

    pub fn to_json_lines(&self) -> String {
        let mut s = String::new();
        for row in &self.rows {
            let mut obj = Map::new();
            for (key, cell) in self.columns.iter().zip(row) {
                let v = match cell {
                    Cell::Text(t) => Value::String(t.clone()),
                    // JSON has no NaN/inf; fall back to a string
                    Cell::Num(x) => Number::from_f64(*x)
                        .map(Value::Number)
                        .unwrap_or_else(|| Value::String(format_sig(*x, CSV_DIGITS))),
                    Cell::Bool(b) => Value::Bool(*b),
                };
                obj.insert(key.clone(), v);
            }
            let _ = writeln!(s, "{}", Value::Object(obj));
        }
        s
    }
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n', '\r']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

/// `%g`-style formatting with `digits` significant digits: fixed notation for
/// decimal exponents in `[-4, digits)`, scientific otherwise, trailing zeros
/// removed.
pub fn format_sig(x: f64, digits: usize) -> String {
    if x.is_nan() {
        return "NaN".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if x == 0.0 {
        return "0".into();
    }
    let digits = digits.max(1);
    let sci = format!("{:.*e}", digits - 1, x);
    let (mantissa, exp) = sci.split_once('e').expect("exponent");
    let exp: i32 = exp.parse().expect("integer exponent");
    if (-4..digits as i32).contains(&exp) {
        let decimals = (digits as i32 - 1 - exp).max(0) as usize;
        trim_zeros(format!("{x:.decimals$}"))
    } else {
        format!("{}e{exp}", trim_zeros(mantissa.to_string()))
    }
}

fn trim_zeros(s: String) -> String {
    if !s.contains('.') {
        return s;
    }
    s.trim_end_matches('0').trim_end_matches('.').to_string()
}
