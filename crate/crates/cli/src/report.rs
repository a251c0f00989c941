//! Report documents and their JSON/CSV serializations.

use serde_json::{Map, Value};

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

/// Probability or residual rounded to 15 significant digits. Non-finite values become strings.
pub fn num(x: f64) -> Value {
    if !x.is_finite() {
        return Value::String(x.to_string());
    }
    let r: f64 = format!("{x:.14e}").parse().expect("formatted float parses");
    serde_json::Number::from_f64(r).map_or(Value::Null, Value::Number)
}

/// `"num/den"`, also for integers.
pub fn rational(r: &reductions::Q) -> Value {
    Value::String(format!("{}/{}", r.numer(), r.denom()))
}

/// Column-oriented table; the CSV form of a report.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Table {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Value>>,
}

impl Table {
    pub fn new(columns: &[&str]) -> Self {
        Table { columns: columns.iter().map(|s| s.to_string()).collect(), rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<Value>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    /// Rows as objects keyed by column, `[]` when empty.
    pub fn to_json(&self) -> Value {
        Value::Array(
            self.rows
                .iter()
                .map(|r| Value::Object(self.columns.iter().cloned().zip(r.iter().cloned()).collect()))
                .collect(),
        )
    }

    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(&self.columns).expect("in-memory write");
        for r in &self.rows {
            w.write_record(r.iter().map(cell)).expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("flush")).expect("utf8")
    }
}

fn cell(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => String::new(),
        other => other.to_string(),
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    pub command: String,
    pub seed: u64,
    pub config: Map<String, Value>,
    pub results: Map<String, Value>,
    pub residuals: Map<String, Value>,
    pub table: Table,
    pub wall_clock_s: Option<f64>,
    /// Set when an embedded check failed; the process then exits with status 1.
    pub failed: bool,
}

impl Report {
    pub fn new(command: &str, seed: u64) -> Self {
        Report {
            command: command.into(),
            seed,
            config: Map::new(),
            results: Map::new(),
            residuals: Map::new(),
            table: Table::default(),
            wall_clock_s: None,
            failed: false,
        }
    }

    pub fn config(&mut self, k: &str, v: impl Into<Value>) -> &mut Self {
        self.config.insert(k.into(), v.into());
        self
    }

    pub fn result(&mut self, k: &str, v: impl Into<Value>) -> &mut Self {
        self.results.insert(k.into(), v.into());
        self
    }

    pub fn residual(&mut self, k: &str, x: f64) -> &mut Self {
        self.residuals.insert(k.into(), num(x));
        self
    }

    pub fn to_value(&self) -> Value {
        let mut m = Map::new();
        m.insert("command".into(), self.command.clone().into());
        m.insert("seed".into(), self.seed.into());
        m.insert("config".into(), Value::Object(self.config.clone()));
        m.insert("results".into(), Value::Object(self.results.clone()));
        m.insert("residuals".into(), Value::Object(self.residuals.clone()));
        m.insert("table".into(), self.table.to_json());
        if let Some(t) = self.wall_clock_s {
            m.insert("wall_clock_s".into(), num(t));
        }
        Value::Object(m)
    }

    pub fn emit(&self, format: Format) -> String {
        match format {
            Format::Json => {
                let mut s = serde_json::to_string_pretty(&self.to_value()).expect("serializable");
                s.push('\n');
                s
            }
            Format::Csv => self.table.to_csv(),
        }
    }
}
