//! Output encoding shared by all subcommands.
//!
//! Floats are written with 17 significant digits in scientific notation so
//! that every value round-trips exactly. CSV uses `,` separators, `\n`
//! line endings and a single header row.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::Path;

use serde_json::{Map, Number, Value};

pub const FORMAT_VERSION: &str = "qsep/1";

/// 17 significant digits; non-finite values become `inf`, `-inf` or `nan`.
pub fn fmt_f64(v: f64) -> String {
    if v.is_nan() {
        "nan".into()
    } else if v.is_infinite() {
        if v > 0.0 { "inf" } else { "-inf" }.into()
    } else {
        let s = format!("{v:.16e}");
        let (mantissa, exp) = s.split_once('e').expect("scientific notation");
        let exp: i32 = exp.parse().expect("integer exponent");
        format!("{mantissa}e{exp:+03}")
    }
}

/// JSON number carrying the 17-digit representation verbatim.
pub fn num(v: f64) -> Value {
    if v.is_finite() {
        Value::Number(
            fmt_f64(v)
                .parse::<Number>()
                .expect("formatted float is valid JSON"),
        )
    } else {
        Value::String(fmt_f64(v))
    }
}

pub fn opt_num(v: Option<f64>) -> Value {
    v.map_or(Value::Null, num)
}

pub fn nums(vs: &[f64]) -> Value {
    Value::Array(vs.iter().copied().map(num).collect())
}

/// A scalar-command result: resolved parameters plus payload.
#[derive(Debug, Clone)]
pub struct OutputRecord {
    pub command: &'static str,
    pub params: Map<String, Value>,
    pub payload: Map<String, Value>,
}

impl OutputRecord {
    pub fn new(command: &'static str) -> Self {
        Self {
            command,
            params: Map::new(),
            payload: Map::new(),
        }
    }

    pub fn param(mut self, key: &str, v: Value) -> Self {
        self.params.insert(key.into(), v);
        self
    }

    pub fn field(mut self, key: &str, v: Value) -> Self {
        self.payload.insert(key.into(), v);
        self
    }

    pub fn to_json(&self) -> String {
        let mut command = Map::new();
        command.insert("name".into(), Value::String(self.command.into()));
        command.extend(self.params.clone());
        let mut root = Map::new();
        root.insert("format".into(), Value::String(FORMAT_VERSION.into()));
        root.insert("command".into(), Value::Object(command));
        root.insert("payload".into(), Value::Object(self.payload.clone()));
        let mut s = serde_json::to_string_pretty(&Value::Object(root)).expect("serialisable");
        s.push('\n');
        s
    }

    /// Header of parameter and payload keys, then one row. Nested values
    /// are flattened with `;` inside a cell.
    pub fn to_csv(&self) -> String {
        let entries: Vec<(&String, &Value)> = self.params.iter().chain(&self.payload).collect();
        let header: Vec<&str> = entries.iter().map(|(k, _)| k.as_str()).collect();
        let row: Vec<String> = entries.iter().map(|(_, v)| csv_cell(v)).collect();
        format!("{}\n{}\n", header.join(","), row.join(","))
    }
}

fn csv_cell(v: &Value) -> String {
    match v {
        Value::Null => "nan".into(),
        Value::String(s) => s.clone(),
        Value::Array(items) => items.iter().map(csv_cell).collect::<Vec<_>>().join(";"),
        Value::Object(map) => map.values().map(csv_cell).collect::<Vec<_>>().join(";"),
        other => other.to_string(),
    }
}

/// Minimal CSV accumulator.
#[derive(Debug, Default)]
pub struct Csv {
    buf: String,
}

impl Csv {
    pub fn with_header(columns: &[&str]) -> Self {
        let mut buf = columns.join(",");
        buf.push('\n');
        Self { buf }
    }

    pub fn row<I, S>(&mut self, cells: I)
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        let mut first = true;
        for c in cells {
            if !first {
                self.buf.push(',');
            }
            self.buf.push_str(c.as_ref());
            first = false;
        }
        self.buf.push('\n');
    }

    pub fn into_string(self) -> String {
        self.buf
    }
}

/// Writes `text` to `path`, or to standard output when `path` is `None`.
pub fn emit(text: &str, path: Option<&Path>) -> io::Result<()> {
    match path {
        Some(p) => {
            let mut w = BufWriter::new(File::create(p)?);
            w.write_all(text.as_bytes())?;
            w.flush()
        }
        None => {
            let stdout = io::stdout();
            let mut lock = stdout.lock();
            lock.write_all(text.as_bytes())?;
            lock.flush()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seventeen_digits_round_trip() {
        for v in [1.0 / 3.0, 0.1, -2.5e-300, 1e300, 0.0] {
            let s = fmt_f64(v);
            assert_eq!(s.parse::<f64>().unwrap(), v);
            assert_eq!(
                s.split('e').next().unwrap().replace(['-', '.'], "").len(),
                17
            );
        }
        assert_eq!(fmt_f64(f64::INFINITY), "inf");
        assert_eq!(fmt_f64(f64::NAN), "nan");
    }

    #[test]
    fn json_keeps_digits() {
        let r = OutputRecord::new("cond")
            .param("q", num(2.0))
            .field("value", num(1.0 / 3.0));
        let j = r.to_json();
        assert!(j.contains("\"format\": \"qsep/1\""));
        assert!(j.contains("3.3333333333333331e-01"));
        assert!(j.contains("2.0000000000000000e+00"));
    }

    #[test]
    fn csv_record() {
        let r = OutputRecord::new("cond")
            .param("xyz", nums(&[0.0, 1.0, 0.5]))
            .field("value", num(0.5));
        let csv = r.to_csv();
        let mut lines = csv.lines();
        assert_eq!(lines.next(), Some("xyz,value"));
        assert_eq!(
            lines.next(),
            Some("0.0000000000000000e+00;1.0000000000000000e+00;5.0000000000000000e-01,5.0000000000000000e-01")
        );
    }
}
