use std::fmt;
use std::io::{Read, Write};

use serde::de::{self, Visitor};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Result, SimError};

/// Swept coordinate of a row: a number (⟨n⟩, τ in μs) or a state label.
#[derive(Debug, Clone, PartialEq)]
pub enum SweptValue {
    Number(f64),
    Label(String),
}

impl SweptValue {
    pub fn as_number(&self) -> Option<f64> {
        match self {
            SweptValue::Number(v) => Some(*v),
            SweptValue::Label(_) => None,
        }
    }
}

impl fmt::Display for SweptValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SweptValue::Number(v) => write!(f, "{v}"),
            SweptValue::Label(s) => f.write_str(s),
        }
    }
}

impl Serialize for SweptValue {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            SweptValue::Number(v) => s.serialize_f64(*v),
            SweptValue::Label(l) => s.serialize_str(l),
        }
    }
}

struct SweptVisitor;

impl Visitor<'_> for SweptVisitor {
    type Value = SweptValue;

    fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
        f.write_str("a number or a state label")
    }

    fn visit_f64<E: de::Error>(self, v: f64) -> std::result::Result<SweptValue, E> {
        Ok(SweptValue::Number(v))
    }

    fn visit_i64<E: de::Error>(self, v: i64) -> std::result::Result<SweptValue, E> {
        Ok(SweptValue::Number(v as f64))
    }

    fn visit_u64<E: de::Error>(self, v: u64) -> std::result::Result<SweptValue, E> {
        Ok(SweptValue::Number(v as f64))
    }

    fn visit_str<E: de::Error>(self, v: &str) -> std::result::Result<SweptValue, E> {
        Ok(v.parse::<f64>()
            .map(SweptValue::Number)
            .unwrap_or_else(|_| SweptValue::Label(v.to_string())))
    }
}

impl<'de> Deserialize<'de> for SweptValue {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        d.deserialize_any(SweptVisitor)
    }
}

/// One output line. `stderr` is set only by finite-shot runs and
/// `length_equiv_km` only by delay sweeps.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResultRow {
    pub swept_name: String,
    pub swept_value: SweptValue,
    pub fidelity: f64,
    pub stderr: Option<f64>,
    pub herald_prob: f64,
    pub rate_hz: f64,
    pub branch_fid_min: f64,
    pub branch_fid_max: f64,
    pub double_click_prob: f64,
    pub length_equiv_km: Option<f64>,
}

fn csv_err(e: csv::Error) -> SimError {
    SimError::Io(e.to_string())
}

/// Writes any flat serializable records as CSV with a header line.
pub fn write_csv<T: Serialize, W: Write>(records: &[T], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    for r in records {
        w.serialize(r).map_err(csv_err)?;
    }
    w.flush()?;
    Ok(())
}

pub fn read_csv<R: Read>(input: R) -> Result<Vec<ResultRow>> {
    csv::Reader::from_reader(input)
        .deserialize()
        .collect::<std::result::Result<Vec<ResultRow>, _>>()
        .map_err(csv_err)
}

pub fn rows_to_csv_string(rows: &[ResultRow]) -> Result<String> {
    let mut buf = Vec::new();
    write_csv(rows, &mut buf)?;
    String::from_utf8(buf).map_err(|e| SimError::Io(e.to_string()))
}

pub fn to_json<T: Serialize + ?Sized>(value: &T) -> Result<String> {
    serde_json::to_string_pretty(value).map_err(|e| SimError::Io(e.to_string()))
}
