//! The `lieco` command line: every subcommand returns an exit code and one
//! deterministic report, as indented text or a single JSON document.
//!
//! Exit codes: 0 success (an Inconclusive orbit search included), 1 a
//! definite negative verdict from a checking command, 2 an input error.

mod args;
mod commands;
pub mod render;

use std::ffi::OsString;

use clap::error::ErrorKind;
use clap::Parser;
use lieco_core::LiecoError;
use serde_json::{json, Map, Value};
use sha2::{Digest, Sha256};

pub use args::{Cli, Command, Format};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");
pub const DEFAULT_SEED: u64 = 42;
pub const SEED_ENV: &str = "LIECO_SEED";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    Ok,
    Negative,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CliError {
    pub kind: String,
    pub message: String,
    pub detail: Value,
}

impl CliError {
    pub fn input(message: impl Into<String>) -> Self {
        Self {
            kind: "InputError".into(),
            message: message.into(),
            detail: Value::Null,
        }
    }

    /// A parse error inside a flag value; line numbers are meaningless there.
    fn flag(flag: &str, e: LiecoError) -> Self {
        match e {
            LiecoError::Parse {
                column, message, ..
            } => Self {
                kind: "ParseError".into(),
                message: format!("{flag}: column {column}: {message}"),
                detail: json!({ "flag": flag, "column": column, "message": message }),
            },
            other => CliError::from(other).with_context(flag),
        }
    }

    fn with_context(mut self, context: &str) -> Self {
        self.message = format!("{context}: {}", self.message);
        self
    }
}

impl From<LiecoError> for CliError {
    fn from(e: LiecoError) -> Self {
        let detail = match &e {
            LiecoError::Parse {
                line,
                column,
                message,
            } => {
                json!({ "line": line, "column": column, "message": message })
            }
            LiecoError::JacobiViolation {
                names, residual, ..
            } => json!({
                "triple": names,
                "residual": render::qvec(residual),
            }),
            LiecoError::AntisymmetryViolation { i, j, k } => json!({ "i": i, "j": j, "k": k }),
            LiecoError::DimensionMismatch { expected, found } => {
                json!({ "expected": expected, "found": found })
            }
            LiecoError::CatalogSelfTestFailure {
                realization,
                check,
                residual,
            } => json!({
                "realization": realization,
                "check": check,
                "residual": render::float(*residual),
            }),
            _ => Value::Null,
        };
        Self {
            kind: e.kind().into(),
            message: e.to_string(),
            detail,
        }
    }
}

/// Everything a report records besides the result itself.
#[derive(Debug, Default)]
pub struct Context {
    inputs: Vec<Value>,
    seed: Option<u64>,
    tolerances: Map<String, Value>,
    parameters: Map<String, Value>,
}

impl Context {
    fn input(&mut self, role: &str, source: &str, content: &str) {
        let digest = Sha256::digest(content.as_bytes());
        let hex: String = digest.iter().map(|b| format!("{b:02x}")).collect();
        self.inputs
            .push(json!({ "role": role, "source": source, "sha256": hex }));
    }

    /// `--seed`, else `LIECO_SEED`, else the default.
    fn seed(&mut self, flag: Option<u64>) -> Result<u64, CliError> {
        let seed = match flag {
            Some(s) => s,
            None => match std::env::var(SEED_ENV) {
                Ok(v) => v.trim().parse().map_err(|_| {
                    CliError::input(format!("{SEED_ENV}=`{v}` is not an unsigned integer"))
                })?,
                Err(_) => DEFAULT_SEED,
            },
        };
        self.seed = Some(seed);
        Ok(seed)
    }

    fn tolerance(&mut self, name: &str, value: f64) {
        self.tolerances.insert(name.into(), render::float(value));
    }

    fn parameter(&mut self, name: &str, value: Value) {
        self.parameters.insert(name.into(), value);
    }
}

fn wants_json(argv: &[String]) -> bool {
    argv.windows(2)
        .any(|w| w[0] == "--format" && w[1] == "json")
        || argv.iter().any(|a| a == "--format=json")
}

fn envelope(argv: &[String], ctx: &Context, status: &str, code: i32) -> Map<String, Value> {
    let mut doc = Map::new();
    doc.insert("tool".into(), json!("lieco"));
    doc.insert("version".into(), json!(VERSION));
    doc.insert("command".into(), json!(argv));
    doc.insert("inputs".into(), Value::Array(ctx.inputs.clone()));
    doc.insert("seed".into(), json!(ctx.seed));
    doc.insert("tolerances".into(), Value::Object(ctx.tolerances.clone()));
    doc.insert("parameters".into(), Value::Object(ctx.parameters.clone()));
    doc.insert("status".into(), json!(status));
    doc.insert("exit_code".into(), json!(code));
    doc
}

fn emit(doc: Map<String, Value>, json: bool) -> String {
    let doc = Value::Object(doc);
    if json {
        let mut s = serde_json::to_string_pretty(&doc).expect("report trees serialize");
        s.push('\n');
        s
    } else {
        render::text(&doc)
    }
}

/// Runs one invocation. `argv[0]` is the program name. Returns the exit
/// code and the report; `--help` and `--version` return their text.
pub fn run_command<I, T>(argv: I) -> (i32, String)
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let raw: Vec<OsString> = argv.into_iter().map(Into::into).collect();
    let echo: Vec<String> = raw
        .iter()
        .skip(1)
        .map(|a| a.to_string_lossy().into_owned())
        .collect();
    let json = wants_json(&echo);
    let mut ctx = Context::default();
    let cli = match Cli::try_parse_from(&raw) {
        Ok(c) => c,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => {
            return (0, e.to_string())
        }
        Err(e) if e.kind() == ErrorKind::DisplayHelpOnMissingArgumentOrSubcommand => {
            return (2, e.to_string())
        }
        Err(e) => {
            let err = CliError {
                kind: "UsageError".into(),
                message: e.to_string().trim_end().to_string(),
                detail: Value::Null,
            };
            return (2, error_report(&echo, &ctx, err, json));
        }
    };
    let json = cli.command.format() == Format::Json;
    match commands::dispatch(&mut ctx, &cli.command) {
        Ok((result, outcome)) => {
            let (status, code) = match outcome {
                Outcome::Ok => ("ok", 0),
                Outcome::Negative => ("negative", 1),
            };
            let mut doc = envelope(&echo, &ctx, status, code);
            doc.insert("result".into(), result);
            (code, emit(doc, json))
        }
        Err(err) => (2, error_report(&echo, &ctx, err, json)),
    }
}

fn error_report(echo: &[String], ctx: &Context, err: CliError, json: bool) -> String {
    let mut doc = envelope(echo, ctx, "error", 2);
    doc.insert(
        "error".into(),
        json!({ "kind": err.kind, "message": err.message, "detail": err.detail }),
    );
    emit(doc, json)
}
