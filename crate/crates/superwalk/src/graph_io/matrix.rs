use std::str::FromStr;

use serde_json::{json, Value};
use superwalk_core::{BigInt, FloatMatrix, IntMatrix};

use super::FormatError;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MatrixFormat {
    Csv,
    Json,
}

/// Something [`write_matrix`] can serialize.
pub trait MatrixOutput {
    fn shape(&self) -> (usize, usize);
    fn csv_cell(&self, i: usize, j: usize) -> String;
    fn json_cell(&self, i: usize, j: usize) -> Value;
}

impl MatrixOutput for IntMatrix {
    fn shape(&self) -> (usize, usize) {
        (self.rows(), self.cols())
    }
    fn csv_cell(&self, i: usize, j: usize) -> String {
        self.get(i, j).to_string()
    }
    fn json_cell(&self, i: usize, j: usize) -> Value {
        Value::String(self.get(i, j).to_string())
    }
}

impl MatrixOutput for FloatMatrix {
    fn shape(&self) -> (usize, usize) {
        (self.rows(), self.cols())
    }
    fn csv_cell(&self, i: usize, j: usize) -> String {
        format_f64(self.get(i, j))
    }
    fn json_cell(&self, i: usize, j: usize) -> Value {
        float_value(self.get(i, j))
    }
}

/// Shortest round-trip decimal form, independent of locale.
pub(crate) fn format_f64(x: f64) -> String {
    serde_json::Number::from_f64(x).map_or_else(|| x.to_string(), |n| n.to_string())
}

pub(crate) fn float_value(x: f64) -> Value {
    serde_json::Number::from_f64(x).map_or(Value::Null, Value::Number)
}

pub(crate) fn matrix_json_value<M: MatrixOutput + ?Sized>(m: &M) -> Value {
    let (rows, cols) = m.shape();
    let entries: Vec<Value> = (0..rows)
        .map(|i| Value::Array((0..cols).map(|j| m.json_cell(i, j)).collect()))
        .collect();
    json!({ "rows": rows, "cols": cols, "entries": entries })
}

/// CSV: one line per row. JSON: `{"rows", "cols", "entries"}`, with exact
/// integers as strings.
pub fn write_matrix<M: MatrixOutput + ?Sized>(m: &M, format: MatrixFormat) -> String {
    match format {
        MatrixFormat::Csv => {
            let (rows, cols) = m.shape();
            let mut out = String::new();
            for i in 0..rows {
                let line: Vec<String> = (0..cols).map(|j| m.csv_cell(i, j)).collect();
                out.push_str(&line.join(","));
                out.push('\n');
            }
            out
        }
        MatrixFormat::Json => {
            let mut out = matrix_json_value(m).to_string();
            out.push('\n');
            out
        }
    }
}

fn parse_big(cell: &str) -> Result<BigInt, FormatError> {
    BigInt::from_str(cell.trim())
        .map_err(|_| FormatError::Matrix(format!("`{cell}` is not an integer")))
}

pub fn parse_int_matrix_csv(text: &str) -> Result<IntMatrix, FormatError> {
    let mut cols = None;
    let mut entries = Vec::new();
    let mut rows = 0;
    for line in text.lines().filter(|l| !l.trim().is_empty()) {
        let row: Vec<BigInt> = line.split(',').map(parse_big).collect::<Result<_, _>>()?;
        match cols {
            None => cols = Some(row.len()),
            Some(c) if c != row.len() => {
                return Err(FormatError::Matrix(format!(
                    "row {} has {} entries, expected {c}",
                    rows + 1,
                    row.len()
                )))
            }
            Some(_) => {}
        }
        entries.extend(row);
        rows += 1;
    }
    IntMatrix::from_entries(rows, cols.unwrap_or(0), entries)
        .map_err(|e| FormatError::Matrix(e.to_string()))
}

pub fn parse_int_matrix_json(text: &str) -> Result<IntMatrix, FormatError> {
    let doc: Value = serde_json::from_str(text)?;
    let dim = |key: &str| {
        doc.get(key)
            .and_then(Value::as_u64)
            .map(|d| d as usize)
            .ok_or_else(|| FormatError::Matrix(format!("missing or invalid `{key}`")))
    };
    let (rows, cols) = (dim("rows")?, dim("cols")?);
    let grid = doc
        .get("entries")
        .and_then(Value::as_array)
        .ok_or_else(|| FormatError::Matrix("missing `entries`".into()))?;
    if grid.len() != rows {
        return Err(FormatError::Matrix(format!(
            "expected {rows} rows, found {}",
            grid.len()
        )));
    }
    let mut entries = Vec::with_capacity(rows * cols);
    for row in grid {
        let row = row
            .as_array()
            .filter(|r| r.len() == cols)
            .ok_or_else(|| FormatError::Matrix(format!("every row must have {cols} entries")))?;
        for cell in row {
            entries.push(match cell {
                Value::String(s) => parse_big(s)?,
                Value::Number(n) if n.is_i64() || n.is_u64() => parse_big(&n.to_string())?,
                other => return Err(FormatError::Matrix(format!("`{other}` is not an integer"))),
            });
        }
    }
    IntMatrix::from_entries(rows, cols, entries).map_err(|e| FormatError::Matrix(e.to_string()))
}
