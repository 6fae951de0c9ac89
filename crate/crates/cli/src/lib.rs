//! Command-line front end for `halfpoint`.
//!
//! [`run`] parses an argument vector, dispatches to the library and returns
//! the rendered output with an exit status, so the binary and the tests go
//! through the same path.

mod args;
mod commands;
mod input;

use std::ffi::OsString;

use clap::error::ErrorKind;
use clap::Parser;
use serde_json::Value;

pub use args::Cli;

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_DOMAIN: i32 = 2;
pub const EXIT_DISCREPANCY: i32 = 3;

/// Raises the largest prime the `oracle` verb accepts.
pub const MAX_PRIME_ENV: &str = "HALFPOINT_MAX_PRIME";

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Domain(#[from] halfpoint::Error),
    /// A precondition the library does not check itself, such as the oracle bound.
    #[error("{0}")]
    Precondition(String),
}

impl CliError {
    fn code(&self) -> i32 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Domain(_) | CliError::Precondition(_) => EXIT_DOMAIN,
        }
    }
}

/// A successful response: the JSON document, its text rendering, and
/// whether a check it ran found a discrepancy.
#[derive(Debug, Clone)]
pub struct Response {
    pub json: Value,
    pub text: String,
    pub discrepancy: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Output {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

pub fn run<I, T>(argv: I) -> Output
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let rendered = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => Output {
                    code: EXIT_OK,
                    stdout: rendered,
                    stderr: String::new(),
                },
                _ => Output {
                    code: EXIT_USAGE,
                    stdout: String::new(),
                    stderr: rendered,
                },
            };
        }
    };
    let json = cli.json;
    match commands::dispatch(&cli) {
        Ok(resp) => {
            let stdout = if json {
                let mut s = serde_json::to_string_pretty(&resp.json).expect("values serialize");
                s.push('\n');
                s
            } else {
                resp.text
            };
            Output {
                code: if resp.discrepancy { EXIT_DISCREPANCY } else { EXIT_OK },
                stdout,
                stderr: String::new(),
            }
        }
        Err(e) => Output {
            code: e.code(),
            stdout: String::new(),
            stderr: format!("halfpoint: error: {e}\n"),
        },
    }
}

/// Aligned `key  value` lines; nested objects flatten to dotted keys and
/// scalar arrays join on one line.
pub fn render_text(v: &Value) -> String {
    let mut rows = Vec::new();
    flatten("", v, &mut rows);
    let width = rows.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
    rows.iter().map(|(k, v)| format!("{k:<width$}  {v}\n")).collect()
}

fn flatten(prefix: &str, v: &Value, rows: &mut Vec<(String, String)>) {
    let key = |k: &str| if prefix.is_empty() { k.to_string() } else { format!("{prefix}.{k}") };
    match v {
        Value::Object(map) => {
            for (k, inner) in map {
                flatten(&key(k), inner, rows);
            }
        }
        Value::Array(items) if items.iter().any(|i| i.is_object() || i.is_array()) => {
            for (i, inner) in items.iter().enumerate() {
                flatten(&key(&i.to_string()), inner, rows);
            }
        }
        Value::Array(items) => {
            let parts: Vec<String> = items.iter().map(scalar).collect();
            rows.push((prefix.to_string(), format!("[{}]", parts.join(", "))));
        }
        other => rows.push((prefix.to_string(), scalar(other))),
    }
}

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}
