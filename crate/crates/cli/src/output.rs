use crate::config::{Format, Resolved};
use serde_json::{Map, Value as Json};

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Num(f64),
    Int(i64),
    Text(String),
    Bool(bool),
}

impl From<f64> for Cell {
    fn from(v: f64) -> Self {
        Cell::Num(v)
    }
}
impl From<usize> for Cell {
    fn from(v: usize) -> Self {
        Cell::Int(v as i64)
    }
}
impl From<u32> for Cell {
    fn from(v: u32) -> Self {
        Cell::Int(v as i64)
    }
}
impl From<bool> for Cell {
    fn from(v: bool) -> Self {
        Cell::Bool(v)
    }
}
impl From<&str> for Cell {
    fn from(v: &str) -> Self {
        Cell::Text(v.to_string())
    }
}
impl From<String> for Cell {
    fn from(v: String) -> Self {
        Cell::Text(v)
    }
}

/// Column-ordered rows, written as CSV or JSON.
#[derive(Debug, Clone, Default)]
pub struct Table {
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(columns: &[&'static str]) -> Self {
        Table { columns: columns.to_vec(), rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }
}

/// Round to `digits` significant digits.
pub fn round_sig(x: f64, digits: usize) -> f64 {
    if !x.is_finite() || x == 0.0 {
        return x;
    }
    format!("{:.*e}", digits.saturating_sub(1), x).parse().unwrap_or(x)
}

fn format_num(x: f64, digits: usize) -> String {
    if x.is_nan() {
        return "nan".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    let y = round_sig(x, digits);
    let a = y.abs();
    if y == 0.0 || (1e-5..1e15).contains(&a) {
        format!("{y}")
    } else {
        format!("{y:e}")
    }
}

fn cell_text(c: &Cell, digits: usize) -> String {
    match c {
        Cell::Num(x) => format_num(*x, digits),
        Cell::Int(i) => i.to_string(),
        Cell::Text(s) => s.clone(),
        Cell::Bool(b) => b.to_string(),
    }
}

fn cell_json(c: &Cell, digits: usize) -> Json {
    match c {
        Cell::Num(x) if x.is_finite() => serde_json::Number::from_f64(round_sig(*x, digits))
            .map(Json::Number)
            .unwrap_or(Json::Null),
        Cell::Num(x) => Json::String(format_num(*x, digits)),
        Cell::Int(i) => Json::from(*i),
        Cell::Text(s) => Json::String(s.clone()),
        Cell::Bool(b) => Json::Bool(*b),
    }
}

pub fn render(table: &Table, cfg: &Resolved, command: &str, format: Format) -> String {
    let digits = cfg.precision;
    match format {
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(&table.columns).expect("in-memory write");
            for row in &table.rows {
                w.write_record(row.iter().map(|c| cell_text(c, digits)))
                    .expect("in-memory write");
            }
            String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf8 csv")
        }
        Format::Json => {
            let rows: Vec<Json> = table
                .rows
                .iter()
                .map(|row| {
                    let mut m = Map::new();
                    for (name, c) in table.columns.iter().zip(row) {
                        m.insert((*name).to_string(), cell_json(c, digits));
                    }
                    Json::Object(m)
                })
                .collect();
            let mut meta = Map::new();
            meta.insert("command".into(), Json::String(command.into()));
            meta.insert("config_hash".into(), Json::String(cfg.hash()));
            meta.insert("precision".into(), Json::from(digits));
            let mut top = Map::new();
            top.insert("meta".into(), Json::Object(meta));
            top.insert("rows".into(), Json::Array(rows));
            let mut s = serde_json::to_string_pretty(&Json::Object(top)).expect("json");
            s.push('\n');
            s
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn significant_digits() {
        assert_eq!(format_num(1.4065538425037, 10), "1.406553843");
        assert_eq!(format_num(972.33971234, 5), "972.34");
        assert_eq!(format_num(2.4856622234952077e-23, 4), "2.486e-23");
        assert_eq!(format_num(0.0, 10), "0");
        assert_eq!(format_num(f64::INFINITY, 10), "inf");
    }
}
