//! Command-line front end. [`run`] parses arguments, executes one subcommand and returns the
//! process exit status: 0 on success, 1 on a usage error, 2 when the operation fails (with a
//! JSON error object on standard error).

mod commands;
pub mod figures;

use std::ffi::OsString;
use std::io::Write;
use std::time::Instant;

use clap::Parser;
use serde::Serialize;
use serde_json::value::RawValue;
use thiserror::Error;

use crate::circle::CircleError;
use crate::contfrac::ContFracError;
use crate::numerics::NumericsError;
use crate::symbolic::SymbolicError;

pub use commands::{Cli, Command};

pub const SCHEMA_VERSION: &str = "1";

/// Environment variable overriding the brute-force budget.
pub const BUDGET_ENV: &str = "CREMER_LAB_BUDGET";

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Circle(#[from] CircleError),
    #[error(transparent)]
    ContinuedFraction(#[from] ContFracError),
    #[error(transparent)]
    Symbolic(#[from] SymbolicError),
    #[error(transparent)]
    Numerics(#[from] NumericsError),
    #[error("i/o: {0}")]
    Io(#[from] std::io::Error),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}

/// `Foo { .. }` or `Foo(..)` → `Foo`.
fn variant_name(debug: &str) -> String {
    debug
        .split(|c: char| !c.is_alphanumeric() && c != '_')
        .next()
        .unwrap_or("Unknown")
        .to_string()
}

impl CliError {
    /// Name reported in the error object.
    pub fn name(&self) -> String {
        match self {
            Self::Usage(_) => "UsageError".into(),
            Self::Circle(CircleError::ContinuedFraction(e)) | Self::ContinuedFraction(e) => {
                variant_name(&format!("{e:?}"))
            }
            Self::Circle(e) => variant_name(&format!("{e:?}")),
            Self::Symbolic(e) => variant_name(&format!("{e:?}")),
            Self::Numerics(e) => e.name().into(),
            Self::Io(_) => "IoError".into(),
            Self::Json(_) => "JsonError".into(),
        }
    }
}

#[derive(Serialize)]
struct Timing {
    elapsed_ms: f64,
}

#[derive(Serialize)]
struct Report<'a> {
    schema_version: &'static str,
    command: &'a str,
    args: &'a [String],
    threads: usize,
    payload: &'a RawValue,
    #[serde(skip_serializing_if = "Option::is_none")]
    timing: Option<Timing>,
}

/// What a subcommand hands back for printing.
pub enum Output {
    /// Wrapped in the report envelope.
    Payload(Box<RawValue>),
    /// Printed verbatim.
    Text(String),
}

impl Output {
    pub fn payload<T: Serialize>(value: &T) -> Result<Self, CliError> {
        Ok(Self::Payload(serde_json::value::to_raw_value(value)?))
    }
}

/// Runs the command line with the process's standard streams.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_with(args, &mut stdout.lock(), &mut stderr.lock())
}

pub fn run_with<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let argv: Vec<OsString> = args.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&argv) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let informational = matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion);
            let rendered = e.render().to_string();
            if informational {
                let _ = write!(out, "{rendered}");
                return 0;
            }
            let _ = write!(err, "{rendered}");
            return 1;
        }
    };
    let echo: Vec<String> = argv
        .iter()
        .skip(1)
        .map(|a| a.to_string_lossy().into_owned())
        .collect();
    match execute(&cli, &echo) {
        Ok(text) => {
            if out.write_all(text.as_bytes()).is_err() {
                return 2;
            }
            0
        }
        Err(CliError::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            1
        }
        Err(e) => {
            let object = serde_json::json!({ "error": e.name(), "message": e.to_string() });
            let _ = writeln!(err, "{object}");
            2
        }
    }
}

fn execute(cli: &Cli, echo: &[String]) -> Result<String, CliError> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cli.threads.unwrap_or(0))
        .build()
        .map_err(|e| CliError::Usage(format!("cannot build thread pool: {e}")))?;
    let threads = pool.current_num_threads();
    let started = Instant::now();
    let output = pool.install(|| commands::dispatch(&cli.command))?;
    match output {
        Output::Text(text) => Ok(text),
        Output::Payload(payload) => {
            let report = Report {
                schema_version: SCHEMA_VERSION,
                command: cli.command.name(),
                args: echo,
                threads,
                payload: &payload,
                timing: cli.timing.then(|| Timing {
                    elapsed_ms: started.elapsed().as_secs_f64() * 1e3,
                }),
            };
            Ok(serde_json::to_string(&report)? + "\n")
        }
    }
}

/// Brute-force budget from the environment, or the default.
pub fn budget_from_env() -> Result<u64, CliError> {
    match std::env::var(BUDGET_ENV) {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| CliError::Usage(format!("{BUDGET_ENV}={v:?} is not a nonnegative integer"))),
        Err(_) => Ok(crate::circle::DEFAULT_BRUTE_FORCE_BUDGET),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_capture(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = run_with(
            std::iter::once("cremer-lab").chain(args.iter().copied()),
            &mut out,
            &mut err,
        );
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn variant_names() {
        assert_eq!(variant_name("ExactHit { step: 1 }"), "ExactHit");
        assert_eq!(variant_name("NoZeros(\"111\")"), "NoZeros");
        assert_eq!(variant_name("EmptySet"), "EmptySet");
    }

    #[test]
    fn exit_codes() {
        assert_eq!(run_capture(&["--help"]).0, 0);
        assert_eq!(run_capture(&["no-such-command"]).0, 1);
        assert_eq!(run_capture(&["string", "--word", "011", "--bogus"]).0, 1);
        let (code, _, err) = run_capture(&["string", "--word", "111", "--count", "1"]);
        assert_eq!(code, 2);
        let v: serde_json::Value = serde_json::from_str(err.trim()).unwrap();
        assert_eq!(v["error"], "NoZeros");
    }

    #[test]
    fn envelope() {
        let (code, out, _) = run_capture(&["--threads", "1", "string", "--word", "011", "--count", "2"]);
        assert_eq!(code, 0);
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["schema_version"], SCHEMA_VERSION);
        assert_eq!(v["command"], "string");
        assert_eq!(v["threads"], 1);
        assert!(v.get("timing").is_none());
        assert_eq!(v["payload"]["elements"][1], "01101*");
    }
}
