use std::io::Write;
use std::path::Path;

use anyhow::{Context, Result};
use serde_json::{Map, Value};

/// Rounds to 12 significant digits.
pub fn round12(x: f64) -> f64 {
    if !x.is_finite() || x == 0.0 {
        return x;
    }
    format!("{x:.11e}").parse().unwrap_or(x)
}

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Num(Option<f64>),
    Int(Option<u64>),
    Bool(Option<bool>),
    Text(String),
}

impl Cell {
    fn csv(&self) -> String {
        match self {
            Cell::Num(Some(v)) if v.is_finite() => round12(*v).to_string(),
            Cell::Int(Some(v)) => v.to_string(),
            Cell::Bool(Some(v)) => v.to_string(),
            Cell::Text(s) => s.clone(),
            _ => String::new(),
        }
    }

    fn json(&self) -> Value {
        match self {
            Cell::Num(Some(v)) if v.is_finite() => serde_json::Number::from_f64(round12(*v))
                .map(Value::Number)
                .unwrap_or(Value::Null),
            Cell::Int(Some(v)) => Value::from(*v),
            Cell::Bool(Some(v)) => Value::Bool(*v),
            Cell::Text(s) => Value::String(s.clone()),
            _ => Value::Null,
        }
    }
}

impl From<f64> for Cell {
    fn from(v: f64) -> Self {
        Cell::Num(Some(v))
    }
}

impl From<Option<f64>> for Cell {
    fn from(v: Option<f64>) -> Self {
        Cell::Num(v)
    }
}

/// Tabular result with metadata, serializable as CSV or JSON.
#[derive(Debug, Clone, Default)]
pub struct Table {
    pub meta: Vec<(String, String)>,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(columns: &[&str]) -> Self {
        Self {
            meta: Vec::new(),
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn meta(&mut self, key: &str, value: impl ToString) -> &mut Self {
        self.meta.push((key.to_string(), value.to_string()));
        self
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    /// `#`-prefixed metadata, a header comment, then comma-separated rows
    /// with LF line endings.
    pub fn to_csv(&self) -> Result<String> {
        let mut out = String::new();
        for (k, v) in &self.meta {
            out.push_str(&format!("# {k}: {v}\n"));
        }
        out.push_str(&format!("# columns: {}\n", self.columns.join(", ")));
        let mut writer = csv::WriterBuilder::new()
            .terminator(csv::Terminator::Any(b'\n'))
            .from_writer(Vec::new());
        writer.write_record(&self.columns)?;
        for row in &self.rows {
            writer.write_record(row.iter().map(Cell::csv))?;
        }
        let bytes = writer.into_inner().context("flushing CSV buffer")?;
        out.push_str(&String::from_utf8(bytes)?);
        Ok(out)
    }

    /// `{"meta": {...}, "rows": [{column: value, ...}, ...]}`
    pub fn to_json(&self) -> Result<String> {
        let meta: Map<String, Value> = self
            .meta
            .iter()
            .map(|(k, v)| (k.clone(), Value::String(v.clone())))
            .collect();
        let rows: Vec<Value> = self
            .rows
            .iter()
            .map(|row| {
                Value::Object(
                    self.columns
                        .iter()
                        .zip(row)
                        .map(|(c, cell)| (c.clone(), cell.json()))
                        .collect(),
                )
            })
            .collect();
        let mut doc = Map::new();
        doc.insert("meta".into(), Value::Object(meta));
        doc.insert("rows".into(), Value::Array(rows));
        let mut text = serde_json::to_string_pretty(&Value::Object(doc))?;
        text.push('\n');
        Ok(text)
    }
}

/// Writes to `path`, or standard output when absent.
pub fn emit(text: &str, path: Option<&Path>) -> Result<()> {
    match path {
        Some(p) => std::fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            let stdout = std::io::stdout();
            let mut lock = stdout.lock();
            lock.write_all(text.as_bytes()).context("writing to stdout")?;
            lock.flush().context("flushing stdout")
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rounding_keeps_twelve_digits() {
        assert_eq!(round12(0.123456789012345), 0.123456789012);
        assert_eq!(round12(-1234.56789012345678), -1234.56789012);
        assert_eq!(round12(0.0), 0.0);
        assert!(round12(f64::NAN).is_nan());
    }

    fn sample() -> Table {
        let mut t = Table::new(&["a", "b", "ok", "note"]);
        t.meta("command", "test");
        t.push(vec![1.0.into(), Cell::Num(None), Cell::Bool(Some(true)), Cell::Text("x;y".into())]);
        t.push(vec![(1.0 / 3.0).into(), 2.5e-7.into(), Cell::Bool(None), Cell::Text(String::new())]);
        t
    }

    #[test]
    fn csv_layout() {
        let text = sample().to_csv().unwrap();
        assert!(!text.contains('\r'));
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[0], "# command: test");
        assert!(lines[1].starts_with("# columns:"));
        assert_eq!(lines[2], "a,b,ok,note");
        assert_eq!(lines[4], "0.333333333333,0.00000025,,");
    }

    #[test]
    fn json_layout() {
        let v: Value = serde_json::from_str(&sample().to_json().unwrap()).unwrap();
        assert_eq!(v["meta"]["command"], "test");
        assert_eq!(v["rows"][0]["b"], Value::Null);
        assert_eq!(v["rows"][1]["a"].as_f64().unwrap(), 0.333333333333);
    }
}
