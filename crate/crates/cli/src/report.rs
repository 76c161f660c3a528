//! Report serialization. Every float is written with 17 significant
//! digits so emitted reports round-trip to the exact f64 values, and two
//! runs with the same configuration produce byte-identical files.

use std::io;
use std::path::PathBuf;

use serde::Serialize;
use serde_json::ser::Formatter;
use serde_json::Value;

use crate::commands::CliError;

pub const SCHEMA_VERSION: u32 = 1;

struct SigFigFormatter;

impl Formatter for SigFigFormatter {
    fn write_f64<W: ?Sized + io::Write>(&mut self, writer: &mut W, value: f64) -> io::Result<()> {
        write!(writer, "{value:.16e}")
    }

    fn write_f32<W: ?Sized + io::Write>(&mut self, writer: &mut W, value: f32) -> io::Result<()> {
        write!(writer, "{value:.16e}")
    }
}

pub fn to_json<T: Serialize>(value: &T) -> Result<String, CliError> {
    let mut out = Vec::new();
    let mut serializer = serde_json::Serializer::with_formatter(&mut out, SigFigFormatter);
    value
        .serialize(&mut serializer)
        .map_err(|e| CliError::Validation(format!("serialization failed: {e}")))?;
    out.push(b'\n');
    String::from_utf8(out).map_err(|e| CliError::Validation(format!("non-utf8 report: {e}")))
}

pub fn format_float(value: f64) -> String {
    scalestab::io::format_f64(value)
}

/// Generic CSV rendering of a report: one `key,value` row per leaf, keys
/// in sorted path order.
pub fn to_flat_csv<T: Serialize>(value: &T) -> Result<String, CliError> {
    let value = serde_json::to_value(value)
        .map_err(|e| CliError::Validation(format!("serialization failed: {e}")))?;
    let mut rows = Vec::new();
    flatten("", &value, &mut rows);
    let mut out = String::from("key,value\n");
    for (key, rendered) in rows {
        out.push_str(&key);
        out.push(',');
        out.push_str(&rendered);
        out.push('\n');
    }
    Ok(out)
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
            for (index, child) in items.iter().enumerate() {
                flatten(&format!("{prefix}[{index}]"), child, rows);
            }
        }
        Value::Null => rows.push((prefix.to_string(), String::new())),
        Value::Bool(b) => rows.push((prefix.to_string(), b.to_string())),
        Value::String(s) => rows.push((prefix.to_string(), format!("\"{s}\""))),
        Value::Number(n) => {
            let rendered = if let Some(i) = n.as_i64() {
                i.to_string()
            } else if let Some(u) = n.as_u64() {
                u.to_string()
            } else {
                format_float(n.as_f64().unwrap_or(f64::NAN))
            };
            rows.push((prefix.to_string(), rendered));
        }
    }
}

pub fn write_output(path: &Option<PathBuf>, content: &str) -> Result<(), CliError> {
    match path {
        Some(path) => std::fs::write(path, content).map_err(|e| {
            CliError::Validation(format!("cannot write {}: {e}", path.display()))
        }),
        None => {
            print!("{content}");
            Ok(())
        }
    }
}
