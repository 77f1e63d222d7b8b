//! Tabular report emission: CSV and JSON with a reproducibility header.

use std::io::Write;

use serde_json::{json, Map};

use crate::config::{CommonArgs, OutputFormat};

/// One table cell.
#[derive(Debug, Clone, PartialEq)]
pub enum Value {
    F64(f64),
    U64(u64),
    Str(String),
    Bool(bool),
    /// Undefined entry (degenerate batches); empty in CSV, null in JSON.
    Missing,
}

impl From<f64> for Value {
    fn from(v: f64) -> Self {
        Value::F64(v)
    }
}

impl From<u64> for Value {
    fn from(v: u64) -> Self {
        Value::U64(v)
    }
}

impl From<Option<f64>> for Value {
    fn from(v: Option<f64>) -> Self {
        v.map_or(Value::Missing, Value::F64)
    }
}

impl From<&str> for Value {
    fn from(v: &str) -> Self {
        Value::Str(v.to_string())
    }
}

impl From<bool> for Value {
    fn from(v: bool) -> Self {
        Value::Bool(v)
    }
}

/// Column-ordered report table.
#[derive(Debug, Clone)]
pub struct Table {
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Value>>,
    /// Command-specific additions to the `meta` object.
    pub extra_meta: Vec<(&'static str, serde_json::Value)>,
}

impl Table {
    pub fn new(columns: Vec<&'static str>) -> Self {
        Table {
            columns,
            rows: Vec::new(),
            extra_meta: Vec::new(),
        }
    }

    pub fn push<const N: usize>(&mut self, row: [Value; N]) {
        debug_assert_eq!(N, self.columns.len());
        self.rows.push(row.into());
    }
}

/// 17 significant digits: lossless round-tripping for doubles.
fn format_f64(v: f64) -> String {
    format!("{v:.16e}")
}

fn csv_cell(v: &Value) -> String {
    match v {
        Value::F64(x) => format_f64(*x),
        Value::U64(x) => x.to_string(),
        Value::Str(s) => s.clone(),
        Value::Bool(b) => b.to_string(),
        Value::Missing => String::new(),
    }
}

fn json_cell(v: &Value) -> serde_json::Value {
    match v {
        Value::F64(x) => json!(x),
        Value::U64(x) => json!(x),
        Value::Str(s) => json!(s),
        Value::Bool(b) => json!(b),
        Value::Missing => serde_json::Value::Null,
    }
}

/// Write the table in the requested format.
///
/// CSV carries a header row and RFC-4180-style lines (the cells never need
/// quoting). JSON is one object: `meta` echoes the version, command and the
/// full configuration for reproducibility, `rows` is an array of
/// column-keyed objects.
pub fn emit_report<W: Write>(
    out: &mut W,
    command: &str,
    args: &CommonArgs,
    table: &Table,
    format: OutputFormat,
) -> std::io::Result<()> {
    match format {
        OutputFormat::Csv => {
            writeln!(out, "{}", table.columns.join(","))?;
            for row in &table.rows {
                let cells: Vec<String> = row.iter().map(csv_cell).collect();
                writeln!(out, "{}", cells.join(","))?;
            }
        }
        OutputFormat::Json => {
            let mut meta = Map::new();
            meta.insert("version".into(), json!(env!("CARGO_PKG_VERSION")));
            meta.insert("command".into(), json!(command));
            meta.insert("seed".into(), json!(args.seed));
            meta.insert(
                "config".into(),
                serde_json::to_value(args).expect("config serializes"),
            );
            for (key, value) in &table.extra_meta {
                meta.insert((*key).into(), value.clone());
            }
            let rows: Vec<serde_json::Value> = table
                .rows
                .iter()
                .map(|row| {
                    let mut obj = Map::new();
                    for (col, cell) in table.columns.iter().zip(row) {
                        obj.insert((*col).into(), json_cell(cell));
                    }
                    serde_json::Value::Object(obj)
                })
                .collect();
            let doc = json!({ "meta": meta, "rows": rows });
            writeln!(out, "{}", serde_json::to_string_pretty(&doc)?)?;
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn f64_formatting_is_lossless() {
        for v in [
            0.1,
            1.0 / 3.0,
            1.3130352854993313,
            2.767793053e-87,
            -9999.000033333333,
        ] {
            let s = format_f64(v);
            assert_eq!(s.parse::<f64>().unwrap(), v, "round-trip of {s}");
        }
    }

    #[test]
    fn missing_cells_are_empty_in_csv_and_null_in_json() {
        assert_eq!(csv_cell(&Value::Missing), "");
        assert_eq!(json_cell(&Value::Missing), serde_json::Value::Null);
    }
}
