//! Tabular CSV datasets with a `# key=value` parameter preamble.
//!
//! ```text
//! # command=weights
//! # j=10
//! # mu=28
//! n,weight
//! 0,1.2345678901234567e-5
//! ...
//! ```
//!
//! Floats are written with 17 significant digits, so a dataset survives a
//! write/read round trip bit for bit.

use std::fmt;
use std::io::{self, Read, Write};

use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Value {
    Int(u64),
    Float(f64),
}

impl Value {
    pub fn as_f64(&self) -> f64 {
        match *self {
            Value::Int(v) => v as f64,
            Value::Float(v) => v,
        }
    }
}

impl From<u64> for Value {
    fn from(v: u64) -> Self {
        Value::Int(v)
    }
}

impl From<usize> for Value {
    fn from(v: usize) -> Self {
        Value::Int(v as u64)
    }
}

impl From<f64> for Value {
    fn from(v: f64) -> Self {
        Value::Float(v)
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Int(v) => write!(f, "{v}"),
            Value::Float(v) => write!(f, "{v:.16e}"),
        }
    }
}

#[derive(Debug, Error)]
pub enum ReadError {
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
    #[error("io: {0}")]
    Io(#[from] io::Error),
    #[error("malformed dataset: {0}")]
    Malformed(String),
}

#[derive(Debug, Clone, PartialEq)]
pub struct Dataset {
    params: Vec<(String, String)>,
    columns: Vec<String>,
    rows: Vec<Vec<Value>>,
}

impl Dataset {
    pub fn new<S: AsRef<str>>(columns: &[S]) -> Self {
        Self {
            params: Vec::new(),
            columns: columns.iter().map(|c| c.as_ref().to_string()).collect(),
            rows: Vec::new(),
        }
    }

    /// Records a preamble entry. Keys keep insertion order.
    pub fn param(mut self, key: &str, value: impl fmt::Display) -> Self {
        self.params.push((key.to_string(), value.to_string()));
        self
    }

    /// # Panics
    ///
    /// If the row width differs from the header.
    pub fn push_row(&mut self, row: Vec<Value>) {
        assert_eq!(
            row.len(),
            self.columns.len(),
            "row width must match the header"
        );
        self.rows.push(row);
    }

    pub fn params(&self) -> &[(String, String)] {
        &self.params
    }

    pub fn get_param(&self, key: &str) -> Option<&str> {
        self.params
            .iter()
            .find(|(k, _)| k == key)
            .map(|(_, v)| v.as_str())
    }

    pub fn columns(&self) -> &[String] {
        &self.columns
    }

    pub fn rows(&self) -> &[Vec<Value>] {
        &self.rows
    }

    /// Values of one column as floats.
    pub fn column(&self, name: &str) -> Option<Vec<f64>> {
        let idx = self.columns.iter().position(|c| c == name)?;
        Some(self.rows.iter().map(|r| r[idx].as_f64()).collect())
    }

    pub fn write_to<W: Write>(&self, mut out: W) -> io::Result<()> {
        for (k, v) in &self.params {
            writeln!(out, "# {k}={v}")?;
        }
        let mut w = csv::Writer::from_writer(out);
        w.write_record(&self.columns)?;
        for row in &self.rows {
            w.write_record(row.iter().map(|v| v.to_string()))?;
        }
        w.flush()
    }

    /// Parses a dataset written by [`Dataset::write_to`]. Cells are read back
    /// as floats except those that parse as unsigned integers.
    pub fn read_from<R: Read>(mut input: R) -> Result<Self, ReadError> {
        let mut text = String::new();
        input.read_to_string(&mut text)?;

        let mut params = Vec::new();
        for line in text.lines().take_while(|l| l.starts_with('#')) {
            let entry = line.trim_start_matches('#').trim();
            let (k, v) = entry
                .split_once('=')
                .ok_or_else(|| ReadError::Malformed(format!("preamble line `{line}`")))?;
            params.push((k.to_string(), v.to_string()));
        }

        let mut reader = csv::ReaderBuilder::new()
            .comment(Some(b'#'))
            .from_reader(text.as_bytes());
        let columns: Vec<String> = reader.headers()?.iter().map(str::to_string).collect();
        let mut rows = Vec::new();
        for record in reader.records() {
            let record = record?;
            let row = record
                .iter()
                .map(|cell| {
                    if let Ok(v) = cell.parse::<u64>() {
                        Ok(Value::Int(v))
                    } else {
                        cell.parse::<f64>()
                            .map(Value::Float)
                            .map_err(|_| ReadError::Malformed(format!("cell `{cell}`")))
                    }
                })
                .collect::<Result<Vec<_>, _>>()?;
            rows.push(row);
        }
        Ok(Self {
            params,
            columns,
            rows,
        })
    }
}

impl fmt::Display for Dataset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut buf = Vec::new();
        self.write_to(&mut buf).map_err(|_| fmt::Error)?;
        f.write_str(&String::from_utf8_lossy(&buf))
    }
}
