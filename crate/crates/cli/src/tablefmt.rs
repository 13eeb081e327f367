//! Truth-table files.
//!
//! Two forms, both a JSON object:
//!
//! - `{"m": <int>, "bits": "<2^m ASCII 0/1 chars>"}` where character `ix`
//!   is `f(ix)`; written for `m <= 16`.
//! - `{"m": <int>, "raw": "<path>"}` where the raw file holds
//!   `ceil(2^m / 8)` bytes, bit `j` of byte `b` being `f(8b + j)`
//!   (little-endian within the byte). Relative paths resolve against the
//!   JSON file's directory.

use std::path::Path;

use hyperiso_core::BooleanFunction;
use serde::{Deserialize, Serialize};

use crate::error::{CliError, CliResult};

pub const MAX_JSON_BITS_ARITY: u32 = 16;

#[derive(Serialize, Deserialize)]
struct TableFile {
    m: u32,
    #[serde(skip_serializing_if = "Option::is_none")]
    bits: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    raw: Option<String>,
}

/// Writes the `bits` form; bit-exact and human-readable.
pub fn write_json_bits(f: &BooleanFunction, path: &Path) -> CliResult<()> {
    if f.arity() > MAX_JSON_BITS_ARITY {
        return Err(CliError::Capacity(format!(
            "json-bits holds arities up to {MAX_JSON_BITS_ARITY}, got {}; use --format raw",
            f.arity()
        )));
    }
    let table = TableFile {
        m: f.arity(),
        bits: Some(f.to_bit_string()),
        raw: None,
    };
    write_text(path, &render_json(&table))
}

/// Writes the `raw` form: the JSON descriptor at `path` and the packed
/// bytes at the same path with extension `bits`.
pub fn write_raw(f: &BooleanFunction, path: &Path) -> CliResult<()> {
    let raw_path = path.with_extension("bits");
    let raw_name = raw_path
        .file_name()
        .ok_or_else(|| CliError::Io(format!("no file name in {}", path.display())))?
        .to_string_lossy()
        .into_owned();
    std::fs::write(&raw_path, f.table_bytes())
        .map_err(|e| CliError::Io(format!("{}: {e}", raw_path.display())))?;
    let table = TableFile {
        m: f.arity(),
        bits: None,
        raw: Some(raw_name),
    };
    write_text(path, &render_json(&table))
}

/// Reads either form back into a function.
pub fn read_table(path: &Path) -> CliResult<BooleanFunction> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
    let table: TableFile = serde_json::from_str(&text)
        .map_err(|e| CliError::usage(format!("{}: {e}", path.display())))?;
    match (table.bits, table.raw) {
        (Some(bits), None) => Ok(BooleanFunction::from_bit_string(table.m, &bits)?),
        (None, Some(raw)) => {
            let raw_path = if Path::new(&raw).is_absolute() {
                raw.into()
            } else {
                path.parent().unwrap_or(Path::new(".")).join(&raw)
            };
            let bytes = std::fs::read(&raw_path)
                .map_err(|e| CliError::Io(format!("{}: {e}", raw_path.display())))?;
            Ok(BooleanFunction::from_table_bytes(table.m, &bytes)?)
        }
        _ => Err(CliError::usage(format!(
            "{}: table file needs exactly one of `bits` or `raw`",
            path.display()
        ))),
    }
}

fn render_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string(value).expect("table file serializes");
    s.push('\n');
    s
}

fn write_text(path: &Path, content: &str) -> CliResult<()> {
    std::fs::write(path, content).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
}
