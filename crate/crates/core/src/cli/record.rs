//! Flat output records and their CSV / JSON-lines encodings.

use std::fmt::Write as _;
use std::io::{self, Write};

#[derive(Debug, Clone)]
pub enum Value {
    F64(f64),
    Int(i64),
    Bool(bool),
    Str(String),
    Missing,
}

impl PartialEq for Value {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (Value::F64(a), Value::F64(b)) => a.to_bits() == b.to_bits() || (a.is_nan() && b.is_nan()),
            (Value::Int(a), Value::Int(b)) => a == b,
            (Value::Bool(a), Value::Bool(b)) => a == b,
            (Value::Str(a), Value::Str(b)) => a == b,
            (Value::Missing, Value::Missing) => true,
            _ => false,
        }
    }
}

impl Value {
    /// Text cell; commas, quotes and line breaks become `;`, `'` and spaces,
    /// non-ASCII becomes `?`.
    pub fn text(s: impl AsRef<str>) -> Self {
        let clean = s
            .as_ref()
            .chars()
            .map(|c| match c {
                ',' => ';',
                '"' => '\'',
                '\n' | '\r' | '\t' => ' ',
                c if c.is_ascii() && !c.is_ascii_control() => c,
                _ => '?',
            })
            .collect();
        Value::Str(clean)
    }

    pub fn opt(x: Option<f64>) -> Self {
        x.map_or(Value::Missing, Value::F64)
    }

    pub fn as_f64(&self) -> Option<f64> {
        match *self {
            Value::F64(x) => Some(x),
            Value::Int(i) => Some(i as f64),
            _ => None,
        }
    }

    /// CSV cell text.
    pub fn render(&self) -> String {
        match self {
            Value::F64(x) => format_float(*x),
            Value::Int(i) => i.to_string(),
            Value::Bool(b) => b.to_string(),
            Value::Str(s) => s.clone(),
            Value::Missing => String::new(),
        }
    }

    fn render_json(&self, out: &mut String) {
        match self {
            Value::F64(x) if x.is_finite() => out.push_str(&format_float(*x)),
            Value::F64(x) => out.push_str(&serde_json::to_string(&format_float(*x)).expect("string")),
            Value::Int(i) => write!(out, "{i}").expect("string write"),
            Value::Bool(b) => write!(out, "{b}").expect("string write"),
            Value::Str(s) => out.push_str(&serde_json::to_string(s).expect("string")),
            Value::Missing => out.push_str("null"),
        }
    }

    /// Inverse of [`Value::render`]. Floats always carry an exponent, so they
    /// never collide with integers.
    pub fn parse_cell(cell: &str) -> Self {
        match cell {
            "" => Value::Missing,
            "true" => Value::Bool(true),
            "false" => Value::Bool(false),
            "nan" => Value::F64(f64::NAN),
            "inf" => Value::F64(f64::INFINITY),
            "-inf" => Value::F64(f64::NEG_INFINITY),
            _ => {
                if let Ok(i) = cell.parse::<i64>() {
                    return Value::Int(i);
                }
                if cell.contains('e') {
                    if let Ok(x) = cell.parse::<f64>() {
                        return Value::F64(x);
                    }
                }
                Value::Str(cell.to_string())
            }
        }
    }
}

/// 17 significant digits, lowercase scientific notation.
pub fn format_float(x: f64) -> String {
    if x.is_nan() {
        "nan".into()
    } else if x.is_infinite() {
        if x > 0.0 {
            "inf".into()
        } else {
            "-inf".into()
        }
    } else {
        format!("{x:.16e}")
    }
}

/// Ordered key/value pairs; every record carries an `error` field last.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Record {
    fields: Vec<(String, Value)>,
}

impl Record {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, key: impl Into<String>, value: Value) -> &mut Self {
        self.fields.push((key.into(), value));
        self
    }

    pub fn f64(&mut self, key: &str, x: f64) -> &mut Self {
        self.push(key, Value::F64(x))
    }

    pub fn get(&self, key: &str) -> Option<&Value> {
        self.fields.iter().find(|(k, _)| k == key).map(|(_, v)| v)
    }

    pub fn keys(&self) -> impl Iterator<Item = &str> {
        self.fields.iter().map(|(k, _)| k.as_str())
    }

    pub fn values(&self) -> impl Iterator<Item = &Value> {
        self.fields.iter().map(|(_, v)| v)
    }

    pub fn is_error(&self) -> bool {
        matches!(self.get("error"), Some(Value::Str(s)) if !s.is_empty())
    }
}

/// Rows of one command. Error rows have the same columns as good rows, with
/// computed fields left empty.
#[derive(Debug, Clone, PartialEq)]
pub struct RecordSet {
    pub columns: Vec<String>,
    pub rows: Vec<Record>,
}

impl RecordSet {
    pub fn new(columns: &[&str]) -> Self {
        Self {
            columns: columns
                .iter()
                .map(|s| s.to_string())
                .chain(std::iter::once("error".into()))
                .collect(),
            rows: Vec::new(),
        }
    }

    /// Reorders `record` to the column list, filling absent fields as missing.
    pub fn add(&mut self, record: Record, error: Option<String>) {
        let mut out = Record::new();
        for col in &self.columns {
            let v = if col == "error" {
                error.as_ref().map_or(Value::Missing, Value::text)
            } else {
                record.get(col).cloned().unwrap_or(Value::Missing)
            };
            out.push(col.clone(), v);
        }
        self.rows.push(out);
    }

    pub fn error_count(&self) -> usize {
        self.rows.iter().filter(|r| r.is_error()).count()
    }

    pub fn write_csv<W: Write>(&self, out: W) -> io::Result<()> {
        let mut w = csv::WriterBuilder::new()
            .quote_style(csv::QuoteStyle::Never)
            .from_writer(out);
        w.write_record(&self.columns)?;
        for row in &self.rows {
            w.write_record(row.values().map(Value::render))?;
        }
        w.flush()
    }

    pub fn write_jsonl<W: Write>(&self, mut out: W) -> io::Result<()> {
        let mut line = String::new();
        for row in &self.rows {
            line.clear();
            line.push('{');
            for (i, (k, v)) in row.fields.iter().enumerate() {
                if i > 0 {
                    line.push(',');
                }
                line.push_str(&serde_json::to_string(k).expect("string"));
                line.push(':');
                v.render_json(&mut line);
            }
            line.push_str("}\n");
            out.write_all(line.as_bytes())?;
        }
        out.flush()
    }

    pub fn parse_csv(text: &str) -> Result<Self, csv::Error> {
        let mut reader = csv::ReaderBuilder::new().has_headers(true).from_reader(text.as_bytes());
        let columns: Vec<String> = reader.headers()?.iter().map(str::to_string).collect();
        let mut rows = Vec::new();
        for rec in reader.records() {
            let rec = rec?;
            let mut row = Record::new();
            for (k, cell) in columns.iter().zip(rec.iter()) {
                row.push(k.clone(), Value::parse_cell(cell));
            }
            rows.push(row);
        }
        Ok(Self { columns, rows })
    }
}
