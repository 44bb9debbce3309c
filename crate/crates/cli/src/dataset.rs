//! Dataset files: `{"mode": "exact"|"float", "intervals": [{a,b,c,d}, ...]}`.
//!
//! Exact values are strings (`"p/q"` or an integer); float values are JSON
//! numbers. A file never mixes the two.

use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};
use serde_json::Value;
use trapezoid_core::{ensure_distinct, Approx, Exact, Interval, Mode, Scalar};

use crate::error::{io_err, CliError, CliResult};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct IntervalRecord {
    pub a: Value,
    pub b: Value,
    pub c: Value,
    pub d: Value,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DatasetFile {
    pub mode: String,
    pub intervals: Vec<IntervalRecord>,
}

/// A parsed dataset; the mode is fixed by the variant.
#[derive(Debug, Clone, PartialEq)]
pub enum Dataset {
    Exact(Vec<Interval<Exact>>),
    Float(Vec<Interval<Approx>>),
}

/// JSON form of a scalar under its mode.
pub fn scalar_value<S: Scalar>(v: &S) -> Value {
    match S::MODE {
        Mode::Exact => Value::String(v.to_string()),
        Mode::Float => serde_json::Number::from_f64(v.to_f64()).map_or(Value::Null, Value::Number),
    }
}

fn parse_value<S: Scalar>(v: &Value, at: usize, field: &str) -> CliResult<S> {
    let bad = |what: &str| CliError::BadInput(format!("interval {at}, field {field}: {what}"));
    match (S::MODE, v) {
        (Mode::Exact, Value::String(s)) => S::parse(s).map_err(|e| bad(&e.to_string())),
        (Mode::Float, Value::Number(n)) => n
            .as_f64()
            .and_then(S::from_f64)
            .ok_or_else(|| bad("not a finite number")),
        (Mode::Exact, _) => Err(bad("exact mode needs a string such as \"3/4\"")),
        (Mode::Float, _) => Err(bad("float mode needs a JSON number")),
    }
}

fn record<S: Scalar>(i: &Interval<S>) -> IntervalRecord {
    let [a, b, c, d] = i.coords().map(scalar_value);
    IntervalRecord { a, b, c, d }
}

fn parse_intervals<S: Scalar>(records: &[IntervalRecord]) -> CliResult<Vec<Interval<S>>> {
    let out = records
        .iter()
        .enumerate()
        .map(|(k, r)| {
            let iv = Interval::new(
                parse_value(&r.a, k, "a")?,
                parse_value(&r.b, k, "b")?,
                parse_value(&r.c, k, "c")?,
                parse_value(&r.d, k, "d")?,
            );
            iv.map_err(|e| CliError::BadInput(format!("interval {k}: {e}")))
        })
        .collect::<CliResult<Vec<_>>>()?;
    ensure_distinct(&out)?;
    Ok(out)
}

impl Dataset {
    pub fn mode(&self) -> Mode {
        match self {
            Dataset::Exact(_) => Mode::Exact,
            Dataset::Float(_) => Mode::Float,
        }
    }

    pub fn len(&self) -> usize {
        match self {
            Dataset::Exact(v) => v.len(),
            Dataset::Float(v) => v.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn from_file(file: &DatasetFile) -> CliResult<Self> {
        let mode: Mode = file.mode.parse()?;
        Ok(match mode {
            Mode::Exact => Dataset::Exact(parse_intervals(&file.intervals)?),
            Mode::Float => Dataset::Float(parse_intervals(&file.intervals)?),
        })
    }

    pub fn to_file(&self) -> DatasetFile {
        let intervals = match self {
            Dataset::Exact(v) => v.iter().map(record).collect(),
            Dataset::Float(v) => v.iter().map(record).collect(),
        };
        DatasetFile {
            mode: self.mode().as_str().to_string(),
            intervals,
        }
    }

    /// Exact rationals become the nearest `f64`; floats become the exact
    /// rational equal to the stored `f64`.
    pub fn convert(&self, to: Mode) -> CliResult<Self> {
        let out = match (self, to) {
            (Dataset::Exact(_), Mode::Exact) | (Dataset::Float(_), Mode::Float) => self.clone(),
            (Dataset::Exact(v), Mode::Float) => Dataset::Float(v.iter().map(map_interval).collect::<CliResult<_>>()?),
            (Dataset::Float(v), Mode::Exact) => Dataset::Exact(v.iter().map(map_interval).collect::<CliResult<_>>()?),
        };
        match &out {
            Dataset::Exact(v) => ensure_distinct(v)?,
            Dataset::Float(v) => ensure_distinct(v)?,
        }
        Ok(out)
    }

    pub fn read(path: &Path) -> CliResult<Self> {
        let text = fs::read_to_string(path).map_err(io_err(path))?;
        let file: DatasetFile = serde_json::from_str(&text).map_err(|source| CliError::Json {
            path: path.to_path_buf(),
            source,
        })?;
        Self::from_file(&file)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.to_file()).expect("dataset serializes");
        s.push('\n');
        s
    }

    pub fn write(&self, path: &Path) -> CliResult<()> {
        fs::write(path, self.to_json()).map_err(io_err(path))
    }
}

fn map_interval<S: Scalar, T: Scalar>(i: &Interval<S>) -> CliResult<Interval<T>> {
    let conv = |v: &S| {
        T::from_f64(v.to_f64()).ok_or_else(|| CliError::BadInput(format!("{v} has no finite f64 value")))
    };
    let [a, b, c, d] = i.coords();
    Interval::new(conv(a)?, conv(b)?, conv(c)?, conv(d)?).map_err(|e| CliError::BadInput(format!("{i}: {e}")))
}
