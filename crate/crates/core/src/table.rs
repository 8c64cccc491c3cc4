//! Tabular output shared by every report: a header row, typed cells, CSV with
//! 12-significant-digit reals and LF line endings.

use serde::ser::{Serialize, SerializeSeq, Serializer};

use crate::numeric::fmt_g12;
use crate::primes::{ChebyshevValue, IntervalCensus};
use crate::zeta::{RegionScanResult, ZeroRecord};

#[derive(Clone, Debug, PartialEq)]
pub enum Cell {
    Int(i64),
    Real(f64),
    Bool(bool),
    Text(String),
}

impl Cell {
    pub fn render(&self) -> String {
        match self {
            Cell::Int(v) => v.to_string(),
            Cell::Real(v) => fmt_g12(*v),
            Cell::Bool(b) => b.to_string(),
            Cell::Text(s) => s.clone(),
        }
    }
}

impl From<f64> for Cell {
    fn from(v: f64) -> Self {
        Cell::Real(v)
    }
}

impl From<u64> for Cell {
    fn from(v: u64) -> Self {
        Cell::Int(v as i64)
    }
}

impl From<usize> for Cell {
    fn from(v: usize) -> Self {
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

impl Serialize for Cell {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Cell::Int(v) => s.serialize_i64(*v),
            // JSON has no NaN or infinity
            Cell::Real(v) if !v.is_finite() => s.serialize_str(&fmt_g12(*v)),
            Cell::Real(v) => s.serialize_f64(*v),
            Cell::Bool(b) => s.serialize_bool(*b),
            Cell::Text(t) => s.serialize_str(t),
        }
    }
}

/// A row type with a fixed column layout.
pub trait Tabular {
    fn header() -> Vec<&'static str>;
    fn cells(&self) -> Vec<Cell>;
}

#[derive(Clone, Debug, PartialEq, serde::Serialize)]
pub struct Table {
    pub name: String,
    pub header: Vec<String>,
    #[serde(serialize_with = "rows_as_arrays")]
    pub rows: Vec<Vec<Cell>>,
}

fn rows_as_arrays<S: Serializer>(rows: &[Vec<Cell>], s: S) -> Result<S::Ok, S::Error> {
    let mut seq = s.serialize_seq(Some(rows.len()))?;
    for r in rows {
        seq.serialize_element(r)?;
    }
    seq.end()
}

impl Table {
    pub fn new(name: impl Into<String>, header: Vec<&str>) -> Self {
        Table {
            name: name.into(),
            header: header.into_iter().map(String::from).collect(),
            rows: Vec::new(),
        }
    }

    pub fn from_rows<'a, T: Tabular + 'a>(name: impl Into<String>, rows: impl IntoIterator<Item = &'a T>) -> Self {
        let mut t = Table::new(name, T::header());
        t.rows = rows.into_iter().map(Tabular::cells).collect();
        t
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }

    pub fn to_csv(&self) -> Vec<u8> {
        let mut w = csv::WriterBuilder::new()
            .terminator(csv::Terminator::Any(b'\n'))
            .from_writer(Vec::new());
        w.write_record(&self.header).expect("in-memory write");
        for row in &self.rows {
            w.write_record(row.iter().map(Cell::render)).expect("in-memory write");
        }
        w.into_inner().expect("in-memory flush")
    }
}

impl Tabular for ChebyshevValue {
    fn header() -> Vec<&'static str> {
        vec!["x", "theta", "psi", "pi_count"]
    }

    fn cells(&self) -> Vec<Cell> {
        vec![self.x.into(), self.theta.into(), self.psi.into(), self.pi_count.into()]
    }
}

impl Tabular for IntervalCensus {
    fn header() -> Vec<&'static str> {
        vec!["x", "y", "prime_count", "log_sum"]
    }

    fn cells(&self) -> Vec<Cell> {
        vec![self.x.into(), self.y.into(), self.prime_count.into(), self.log_sum.into()]
    }
}

impl Tabular for ZeroRecord {
    fn header() -> Vec<&'static str> {
        vec!["index", "ordinate", "bracket_lo", "bracket_hi", "tolerance"]
    }

    fn cells(&self) -> Vec<Cell> {
        vec![
            self.index.into(),
            self.ordinate.into(),
            self.bracket.0.into(),
            self.bracket.1.into(),
            self.tolerance.into(),
        ]
    }
}

impl Tabular for RegionScanResult {
    fn header() -> Vec<&'static str> {
        vec!["height", "sign_change_count", "rvm_estimate", "discrepancy"]
    }

    fn cells(&self) -> Vec<Cell> {
        vec![
            self.height.into(),
            self.sign_change_count.into(),
            self.rvm_estimate.into(),
            self.discrepancy.into(),
        ]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn header_only_when_empty() {
        let t = Table::new("empty", vec!["a", "b"]);
        assert_eq!(t.to_csv(), b"a,b\n");
    }

    #[test]
    fn renders_cells() {
        let mut t = Table::new("t", vec!["n", "x", "ok", "note"]);
        t.push(vec![3u64.into(), (1.0 / 3.0).into(), true.into(), "a,b".into()]);
        assert_eq!(
            String::from_utf8(t.to_csv()).unwrap(),
            "n,x,ok,note\n3,0.333333333333,true,\"a,b\"\n"
        );
    }
}
