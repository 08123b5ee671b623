//! Deterministic report serialization and shot sampling for the CLI.
//!
//! Reports must be byte-identical across runs and platforms for a fixed
//! (config, seed), so floats are always written as 17-significant-digit
//! scientific notation instead of shortest-round-trip, and every map in a
//! report is ordered.

use std::collections::BTreeMap;
use std::io;

use rand_chacha::ChaCha8Rng;
use rand_core::SeedableRng;
use serde::Serialize;
use serde_json::ser::Formatter;
use serde_json::Value;

use crate::error::{Error, Result};
use crate::hilbert::{derive_seed, uniform01};

/// Version stamp embedded in every CLI report.
pub const SCHEMA_VERSION: u32 = 1;

/// Writes every f64 as `{:.16e}` (17 significant digits); integers pass
/// through untouched.
struct FixedFloatFormatter;

impl Formatter for FixedFloatFormatter {
    fn write_f64<W>(&mut self, writer: &mut W, value: f64) -> io::Result<()>
    where
        W: ?Sized + io::Write,
    {
        write!(writer, "{value:.16e}")
    }
}

/// Compact JSON with fixed float formatting, no trailing newline.
pub fn to_json_string<T: Serialize>(value: &T) -> Result<String> {
    let mut out = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut out, FixedFloatFormatter);
    value
        .serialize(&mut ser)
        .map_err(|e| Error::InvalidArgument(format!("report serialization failed: {e}")))?;
    String::from_utf8(out)
        .map_err(|e| Error::InvalidArgument(format!("report serialization failed: {e}")))
}

/// Flattens a report into `key,value` rows, one per leaf, with dotted paths
/// for nesting. Keys appear sorted within each object.
pub fn to_csv_string<T: Serialize>(value: &T) -> Result<String> {
    let tree = serde_json::to_value(value)
        .map_err(|e| Error::InvalidArgument(format!("report serialization failed: {e}")))?;
    let mut rows = vec![("key".to_string(), "value".to_string())];
    flatten("", &tree, &mut rows);
    Ok(rows
        .into_iter()
        .map(|(k, v)| format!("{},{}", csv_escape(&k), csv_escape(&v)))
        .collect::<Vec<_>>()
        .join("\n"))
}

fn flatten(prefix: &str, value: &Value, rows: &mut Vec<(String, String)>) {
    match value {
        Value::Object(map) => {
            for (key, child) in map {
                let path = if prefix.is_empty() {
                    key.clone()
                } else {
                    format!("{prefix}.{key}")
                };
                flatten(&path, child, rows);
            }
        }
        Value::Array(items) => {
            for (i, child) in items.iter().enumerate() {
                flatten(&format!("{prefix}.{i}"), child, rows);
            }
        }
        Value::Null => rows.push((prefix.to_string(), String::new())),
        Value::Bool(b) => rows.push((prefix.to_string(), b.to_string())),
        Value::Number(n) => {
            let rendered = if let Some(f) = n.as_f64().filter(|_| !n.is_i64() && !n.is_u64()) {
                format!("{f:.16e}")
            } else {
                n.to_string()
            };
            rows.push((prefix.to_string(), rendered));
        }
        Value::String(s) => rows.push((prefix.to_string(), s.clone())),
    }
}

fn csv_escape(field: &str) -> String {
    if field.contains([',', '"', '\n']) {
        format!("\"{}\"", field.replace('"', "\"\""))
    } else {
        field.to_string()
    }
}

/// Samples `shots` outcomes from an exact distribution, one independent
/// ChaCha8 stream per shot derived from (seed, shot index). Returns counts
/// for the outcomes that occurred.
pub fn sample_counts(
    distribution: &BTreeMap<String, f64>,
    seed: u64,
    shots: u64,
) -> BTreeMap<String, u64> {
    let keys: Vec<&String> = distribution.keys().collect();
    let probs: Vec<f64> = distribution.values().copied().collect();
    let mut counts = BTreeMap::new();
    for shot in 0..shots {
        let mut rng = ChaCha8Rng::seed_from_u64(derive_seed(seed, shot));
        let u = uniform01(&mut rng);
        let mut pick = keys.len() - 1;
        let mut cum = 0.0;
        for (i, &p) in probs.iter().enumerate() {
            cum += p;
            if u < cum {
                pick = i;
                break;
            }
        }
        while probs[pick] <= 0.0 {
            pick -= 1;
        }
        *counts.entry(keys[pick].clone()).or_insert(0) += 1;
    }
    counts
}
