//! Small shared helpers: JSON I/O with diagnostics, SNR grid parsing, and the
//! usage-error type that maps to exit status 2.

use std::fmt;
use std::path::Path;

use anyhow::{anyhow, Context, Result};
use serde::de::DeserializeOwned;
use serde::Serialize;

/// Marker for operator mistakes (bad flags, malformed inputs, missing files).
/// The process exits with status 2 when one of these reaches `main`.
#[derive(Debug)]
pub struct UsageError(pub String);

impl fmt::Display for UsageError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl std::error::Error for UsageError {}

pub fn usage<T>(msg: impl Into<String>) -> Result<T> {
    Err(anyhow!(UsageError(msg.into())))
}

pub fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| anyhow!(UsageError(format!("cannot read {}: {e}", path.display()))))?;
    serde_json::from_str(&text).map_err(|e| {
        // serde_json reports line and column in its Display output
        anyhow!(UsageError(format!("malformed JSON in {}: {e}", path.display())))
    })
}

pub fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<()> {
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    std::fs::write(path, text).with_context(|| format!("writing {}", path.display()))
}

/// Parses an SNR grid: either a single value or `start:step:end` (inclusive).
pub fn parse_snr_grid(spec: &str) -> Result<Vec<f64>> {
    let bad = || UsageError(format!("invalid SNR grid {spec:?}; expected VALUE or START:STEP:END"));
    let parts: Vec<&str> = spec.split(':').collect();
    let parse = |s: &str| s.trim().parse::<f64>().map_err(|_| anyhow!(bad()));
    match parts.as_slice() {
        [single] => Ok(vec![parse(single)?]),
        [start, step, end] => {
            let (start, step, end) = (parse(start)?, parse(step)?, parse(end)?);
            if step <= 0.0 || !step.is_finite() {
                return usage(format!("SNR step must be positive, got {step}"));
            }
            if end < start {
                return usage(format!("empty SNR grid: end {end} is below start {start}"));
            }
            let n = ((end - start) / step + 1e-9).floor() as usize + 1;
            Ok((0..n).map(|i| start + i as f64 * step).collect())
        }
        _ => usage(format!("invalid SNR grid {spec:?}")),
    }
}
