use std::fs;
use std::path::Path;

use crate::error::{ensure, Error, Result};
use crate::numerics::RealVector;

/// A finite input history, most recent value first: `values[0] = u(0)`,
/// `values[i] = u(−i)`.
#[derive(Clone, Debug, PartialEq)]
pub struct TimeSeries {
    values: RealVector,
}

impl TimeSeries {
    pub fn new(values: Vec<f64>) -> Result<Self> {
        ensure!(!values.is_empty(), "time series must hold at least one value");
        Ok(Self { values: RealVector::new(values)? })
    }

    /// Builds a series from values listed oldest first.
    pub fn from_chronological(mut values: Vec<f64>) -> Result<Self> {
        values.reverse();
        Self::new(values)
    }

    /// Unit impulse at lag `index` (0-based).
    pub fn impulse(horizon: usize, index: usize) -> Result<Self> {
        ensure!(index < horizon, "impulse index {index} outside horizon {horizon}");
        Self::new(RealVector::basis(horizon, index).into_inner())
    }

    pub fn horizon(&self) -> usize {
        self.values.len()
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// Largest absolute input value.
    pub fn max_abs(&self) -> f64 {
        self.values.iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    /// Reads one real per line; the first line is `u(0)`. Blank lines and
    /// lines starting with `#` are skipped.
    pub fn read(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = fs::read_to_string(path)?;
        Self::parse(&text).map_err(|e| match e {
            Error::Parse(msg) => Error::Parse(format!("{}: {msg}", path.display())),
            other => other,
        })
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut values = Vec::new();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let v: f64 = line
                .parse()
                .map_err(|_| Error::Parse(format!("line {}: '{line}' is not a number", lineno + 1)))?;
            if !v.is_finite() {
                return Err(Error::Parse(format!("line {}: value is not finite", lineno + 1)));
            }
            values.push(v);
        }
        if values.is_empty() {
            return Err(Error::Parse("time series file holds no values".into()));
        }
        Self::new(values)
    }
}
