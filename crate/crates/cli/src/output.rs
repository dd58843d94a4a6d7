//! Output assembly: every command produces one `OutputDocument` which is
//! rendered after all computation, as plain text, CSV (header row, no
//! metadata), or JSON (`{"meta": ..., "rows": ...}` with numbers in full
//! decimal).

use num_bigint::BigUint;
use serde_json::{Map, Number, Value};

#[derive(Clone, Copy, PartialEq, Eq, Debug, clap::ValueEnum)]
pub enum Format {
    Plain,
    Csv,
    Json,
}

#[derive(Clone, Debug)]
pub enum Cell {
    Text(String),
    Int(BigUint),
    /// Rendered with six decimals.
    Float(f64),
    Empty,
}

impl Cell {
    fn render(&self) -> String {
        match self {
            Cell::Text(s) => s.clone(),
            Cell::Int(n) => n.to_string(),
            Cell::Float(x) => format!("{x:.6}"),
            Cell::Empty => String::new(),
        }
    }

    fn json(&self) -> Value {
        match self {
            Cell::Text(s) => Value::String(s.clone()),
            Cell::Int(n) => Value::Number(Number::from_string_unchecked(n.to_string())),
            Cell::Float(x) => Value::Number(Number::from_string_unchecked(format!("{x:.6}"))),
            Cell::Empty => Value::Null,
        }
    }
}

pub struct ImportEntry {
    pub path: String,
    pub action: String,
    pub m: u32,
}

pub struct OutputDocument {
    pub characteristic: u64,
    pub imports: Vec<ImportEntry>,
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
}

impl OutputDocument {
    pub fn new(characteristic: u64, columns: Vec<&'static str>) -> Self {
        OutputDocument {
            characteristic,
            imports: Vec::new(),
            columns,
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Csv => self.render_csv(),
            Format::Json => self.render_json(),
            Format::Plain => self.render_plain(),
        }
    }

    fn render_csv(&self) -> String {
        let mut out = String::new();
        out.push_str(&self.columns.join(","));
        out.push('\n');
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(Cell::render).collect();
            out.push_str(&cells.join(","));
            out.push('\n');
        }
        out
    }

    fn render_json(&self) -> String {
        let mut meta = Map::new();
        meta.insert(
            "tool".into(),
            Value::String(format!("finegrad {}", env!("CARGO_PKG_VERSION"))),
        );
        meta.insert(
            "characteristic".into(),
            Value::Number(self.characteristic.into()),
        );
        let imports: Vec<Value> = self
            .imports
            .iter()
            .map(|imp| {
                let mut o = Map::new();
                o.insert("path".into(), Value::String(imp.path.clone()));
                o.insert("action".into(), Value::String(imp.action.clone()));
                o.insert("m".into(), Value::Number(imp.m.into()));
                Value::Object(o)
            })
            .collect();
        meta.insert("imports".into(), Value::Array(imports));

        let rows: Vec<Value> = self
            .rows
            .iter()
            .map(|row| {
                let mut o = Map::new();
                for (name, cell) in self.columns.iter().zip(row) {
                    o.insert((*name).into(), cell.json());
                }
                Value::Object(o)
            })
            .collect();

        let mut doc = Map::new();
        doc.insert("meta".into(), Value::Object(meta));
        doc.insert("rows".into(), Value::Array(rows));
        let mut text = serde_json::to_string_pretty(&Value::Object(doc)).expect("valid json tree");
        text.push('\n');
        text
    }

    fn render_plain(&self) -> String {
        let mut table: Vec<Vec<String>> = Vec::with_capacity(self.rows.len() + 1);
        table.push(self.columns.iter().map(|c| c.to_string()).collect());
        for row in &self.rows {
            table.push(row.iter().map(Cell::render).collect());
        }
        let widths: Vec<usize> = (0..self.columns.len())
            .map(|i| table.iter().map(|r| r[i].len()).max().unwrap_or(0))
            .collect();
        let mut out = String::new();
        if self.characteristic != 0 {
            out.push_str(&format!("# characteristic {}\n", self.characteristic));
        }
        for imp in &self.imports {
            out.push_str(&format!(
                "# import {} ({} m={})\n",
                imp.path, imp.action, imp.m
            ));
        }
        for row in &table {
            let line: Vec<String> = row
                .iter()
                .zip(&widths)
                .map(|(cell, w)| format!("{cell:<w$}"))
                .collect();
            out.push_str(line.join("  ").trim_end());
            out.push('\n');
        }
        out
    }
}
