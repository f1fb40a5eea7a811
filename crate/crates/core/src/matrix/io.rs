//! Matrix file formats.
//!
//! JSON: `{"n": 2, "entries": [["1/2", "1/2"], ["1/2", "1/2"]]}`. Cells are
//! decimal integers (JSON numbers or strings) or `"p/q"` strings. Extra
//! top-level keys are ignored, so generator output with a provenance header
//! parses as a plain matrix.
//!
//! CSV: one row per line, no header, integer or `p/q` cells.

use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use super::{RMatrix, Rational};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MatrixJson {
    pub n: usize,
    pub entries: Vec<Vec<Value>>,
}

impl From<&RMatrix> for MatrixJson {
    fn from(m: &RMatrix) -> Self {
        MatrixJson {
            n: m.n(),
            entries: m
                .rows()
                .map(|row| row.iter().map(|x| Value::String(format_rational(x))).collect())
                .collect(),
        }
    }
}

impl TryFrom<&MatrixJson> for RMatrix {
    type Error = Error;

    fn try_from(j: &MatrixJson) -> Result<Self> {
        if j.entries.len() != j.n {
            return Err(Error::Parse(format!(
                "\"n\" is {} but there are {} rows",
                j.n,
                j.entries.len()
            )));
        }
        let rows = j
            .entries
            .iter()
            .map(|row| row.iter().map(parse_cell).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        RMatrix::from_rows(rows)
    }
}

fn parse_cell(v: &Value) -> Result<Rational> {
    match v {
        Value::String(s) => parse_rational(s),
        Value::Number(n) if n.is_i64() || n.is_u64() => parse_rational(&n.to_string()),
        other => Err(Error::Parse(format!(
            "entry {} is neither an integer nor a \"p/q\" string",
            other
        ))),
    }
}

/// Parses `"p"` or `"p/q"` into lowest terms.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("invalid rational {:?}", s));
    let (num, den) = match s.split_once('/') {
        Some((p, q)) => (p.trim(), q.trim()),
        None => (s, "1"),
    };
    let num = BigInt::from_str(num).map_err(|_| bad())?;
    let den = BigInt::from_str(den).map_err(|_| bad())?;
    if den.is_zero() {
        return Err(Error::Parse(format!("zero denominator in {:?}", s)));
    }
    Ok(Rational::new(num, den))
}

/// `p/q`, or `p` when the denominator is one.
pub fn format_rational(x: &Rational) -> String {
    x.to_string()
}

pub fn parse_json(text: &str) -> Result<RMatrix> {
    let j: MatrixJson = serde_json::from_str(text)?;
    RMatrix::try_from(&j)
}

pub fn parse_csv(text: &str) -> Result<RMatrix> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .trim(csv::Trim::All)
        .comment(Some(b'#'))
        .from_reader(text.as_bytes());
    let mut rows = Vec::new();
    for record in reader.records() {
        let record = record.map_err(|e| Error::Parse(e.to_string()))?;
        rows.push(record.iter().map(parse_rational).collect::<Result<Vec<_>>>()?);
    }
    RMatrix::from_rows(rows)
}

/// JSON when the first non-blank character is `{`, CSV otherwise.
pub fn parse_matrix(text: &str) -> Result<RMatrix> {
    if text.trim_start().starts_with('{') {
        parse_json(text)
    } else {
        parse_csv(text)
    }
}
