//! JSON rendering shared by the library and the command-line front end.
//!
//! Floats are written with the shortest representation that round-trips, so
//! `0.0` prints as `0` and `1/√2` as `0.7071067811865476`. Matrices use a
//! fixed 17-significant-digit scientific form.

use std::io;

use serde::de::Error as _;
use serde::{Deserialize, Serialize};
use serde_json::value::RawValue;

use crate::linalg::{ComplexMatrix, LinalgError};

/// serde_json formatter that prints integral floats without a trailing `.0`.
#[derive(Debug, Default, Clone, Copy)]
pub struct CompactFloats;

impl serde_json::ser::Formatter for CompactFloats {
    fn write_f64<W: ?Sized + io::Write>(&mut self, writer: &mut W, value: f64) -> io::Result<()> {
        let v = if value == 0.0 { 0.0 } else { value };
        if v.is_finite() && v.fract() == 0.0 && v.abs() < 1e15 {
            write!(writer, "{}", v as i64)
        } else {
            serde_json::ser::CompactFormatter.write_f64(writer, v)
        }
    }
}

/// Serializes `value` on one line using [`CompactFloats`].
pub fn to_string<T: Serialize + ?Sized>(value: &T) -> serde_json::Result<String> {
    let mut out = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut out, CompactFloats);
    value.serialize(&mut ser)?;
    Ok(String::from_utf8(out).expect("serde_json emits UTF-8"))
}

/// Formats with 17 significant digits.
pub fn sig17(x: f64) -> String {
    let x = if x == 0.0 { 0.0 } else { x };
    format!("{x:.16e}")
}

fn raw(x: f64) -> Box<RawValue> {
    RawValue::from_string(sig17(x)).expect("scientific float is valid JSON")
}

#[derive(Serialize)]
struct MatrixOut {
    n: usize,
    re: Vec<Vec<Box<RawValue>>>,
    im: Vec<Vec<Box<RawValue>>>,
}

/// Matrix in the `{"n", "re", "im"}` form, ready to embed in a larger document.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MatrixJson {
    pub n: usize,
    pub re: Vec<Vec<f64>>,
    pub im: Vec<Vec<f64>>,
}

impl MatrixJson {
    pub fn to_matrix(&self) -> Result<ComplexMatrix, LinalgError> {
        let m = ComplexMatrix::from_parts(&self.re, &self.im)?;
        if m.n() != self.n {
            return Err(LinalgError::Shape(format!(
                "declared n = {} but entries are {}x{}",
                self.n,
                m.n(),
                m.n()
            )));
        }
        Ok(m)
    }
}

impl Serialize for ComplexMatrix {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let rows = self.rows();
        MatrixOut {
            n: self.n(),
            re: rows
                .iter()
                .map(|r| r.iter().map(|z| raw(z.re)).collect())
                .collect(),
            im: rows
                .iter()
                .map(|r| r.iter().map(|z| raw(z.im)).collect())
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for ComplexMatrix {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        MatrixJson::deserialize(d)?
            .to_matrix()
            .map_err(D::Error::custom)
    }
}
