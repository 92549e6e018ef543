use std::io::Write;
use std::path::Path;

use serde::Serialize;

use crate::config::RunConfig;
use crate::error::CliError;

pub const SCHEMA_VERSION: u32 = 1;

/// One checked identity: passes when `residual <= tolerance`.
#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub name: String,
    pub identity: &'static str,
    pub residual: f64,
    pub tolerance: f64,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

impl Check {
    pub fn new(name: impl Into<String>, identity: &'static str, residual: f64, tolerance: f64) -> Self {
        Self {
            name: name.into(),
            identity,
            residual,
            tolerance,
            pass: residual.is_finite() && residual <= tolerance,
            error: None,
        }
    }

    pub fn failed(name: impl Into<String>, identity: &'static str, error: String) -> Self {
        Self { name: name.into(), identity, residual: f64::NAN, tolerance: 0.0, pass: false, error: Some(error) }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Suite {
    pub name: &'static str,
    pub pass: bool,
    pub checks: Vec<Check>,
}

impl Suite {
    pub fn new(name: &'static str, checks: Vec<Check>) -> Self {
        Self { name, pass: checks.iter().all(|c| c.pass), checks }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Provenance<'a> {
    pub tool: &'static str,
    pub version: &'static str,
    pub table: String,
    pub config: &'a RunConfig,
}

impl<'a> Provenance<'a> {
    pub fn new(config: &'a RunConfig, table: String) -> Self {
        Self { tool: "nk6", version: env!("CARGO_PKG_VERSION"), table, config }
    }
}

/// Top-level JSON document.
#[derive(Debug, Serialize)]
pub struct Envelope<'a, T: Serialize> {
    pub schema_version: u32,
    pub command: &'static str,
    pub model: String,
    pub pass: bool,
    pub provenance: Provenance<'a>,
    #[serde(flatten)]
    pub body: T,
}

pub fn to_json<T: Serialize>(v: &T) -> Result<String, CliError> {
    let mut s = serde_json::to_string_pretty(v)?;
    s.push('\n');
    Ok(s)
}

pub fn to_csv<R, const N: usize>(header: &[&str], rows: R) -> Result<String, CliError>
where
    R: IntoIterator<Item = [String; N]>,
{
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header)?;
    for r in rows {
        w.write_record(&r)?;
    }
    let bytes = w.into_inner().map_err(|e| CliError::Io(e.into_error()))?;
    Ok(String::from_utf8(bytes).expect("csv output is UTF-8"))
}

/// Writes `files` into `dir`, or prints the first one when no directory is set.
pub fn emit(out: Option<&Path>, files: &[(&str, String)]) -> Result<(), CliError> {
    match out {
        Some(dir) => {
            std::fs::create_dir_all(dir)?;
            for (name, body) in files {
                std::fs::write(dir.join(name), body)?;
            }
            Ok(())
        }
        None => {
            if let Some((_, body)) = files.first() {
                std::io::stdout().lock().write_all(body.as_bytes())?;
            }
            Ok(())
        }
    }
}

/// Shortest round-trip representation, empty for missing values.
pub fn num(v: f64) -> String {
    if v.is_nan() {
        String::new()
    } else {
        format!("{v:?}")
    }
}
