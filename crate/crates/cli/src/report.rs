use std::fmt;
use std::time::Duration;

use commalg::CommalgError;
use detvar_core::DetvarError;
use serde::Serialize;
use serde_json::Value;

pub const REPORT_VERSION: u32 = 1;
pub const DEFAULT_SEED: u64 = 1729;
pub const SEED_VAR: &str = "DETVAR_SEED";

#[derive(Debug)]
pub enum CliError {
    /// Bad parameters; exit code 2.
    Usage(String),
    /// The computation itself failed; exit code 1.
    Compute(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Compute(_) => 1,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "usage error: {m}"),
            CliError::Compute(m) => write!(f, "computation failed: {m}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<DetvarError> for CliError {
    fn from(e: DetvarError) -> Self {
        match e {
            DetvarError::InvalidPartition(_) | DetvarError::NotDominant(_) | DetvarError::InvalidParameters(_) => {
                CliError::Usage(e.to_string())
            }
            DetvarError::Algebra(CommalgError::InvalidCharacteristic(_)) => CliError::Usage(e.to_string()),
            _ => CliError::Compute(e.to_string()),
        }
    }
}

impl From<CommalgError> for CliError {
    fn from(e: CommalgError) -> Self {
        DetvarError::from(e).into()
    }
}

/// Flags shared by all subcommands.
#[derive(Clone, Debug)]
pub struct Context {
    pub characteristic: u32,
    pub tmax: u32,
    pub seed: u64,
    pub inject_fault: bool,
}

impl Context {
    pub fn new(characteristic: u32, tmax: u32, inject_fault: bool) -> Result<Self, CliError> {
        Ok(Context {
            characteristic,
            tmax,
            seed: seed_from_env()?,
            inject_fault,
        })
    }
}

/// `DETVAR_SEED` if set, otherwise [`DEFAULT_SEED`].
pub fn seed_from_env() -> Result<u64, CliError> {
    match std::env::var(SEED_VAR) {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| CliError::Usage(format!("{SEED_VAR}={v:?} is not an unsigned integer"))),
        Err(_) => Ok(DEFAULT_SEED),
    }
}

/// The machine-readable result of one run. Wall time is kept out so that
/// equal inputs give byte-identical JSON.
#[derive(Clone, Debug, Serialize)]
pub struct RunReport {
    pub report_version: u32,
    pub tool: &'static str,
    pub version: &'static str,
    pub subcommand: String,
    pub parameters: Value,
    pub characteristic: u32,
    pub seed: u64,
    pub cases: Vec<Value>,
    pub pass: bool,
}

impl RunReport {
    /// `pass` is the conjunction of the cases' `pass` fields; cases without
    /// one count as passing.
    pub fn new(subcommand: &str, parameters: Value, ctx: &Context, cases: Vec<Value>) -> Self {
        let pass = cases.iter().all(|c| c.get("pass").and_then(Value::as_bool).unwrap_or(true));
        RunReport {
            report_version: REPORT_VERSION,
            tool: "detvar",
            version: env!("CARGO_PKG_VERSION"),
            subcommand: subcommand.to_string(),
            parameters,
            characteristic: ctx.characteristic,
            seed: ctx.seed,
            cases,
            pass,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }
}

/// A report plus its human-readable rendering.
#[derive(Clone, Debug)]
pub struct Outcome {
    pub report: RunReport,
    pub lines: Vec<String>,
}

impl Outcome {
    pub fn exit_code(&self) -> i32 {
        if self.report.pass {
            0
        } else {
            1
        }
    }

    pub fn render_text(&self, elapsed: Duration) -> String {
        let mut out = String::new();
        for l in &self.lines {
            out.push_str(l);
            out.push('\n');
        }
        out.push_str(&format!(
            "{}: {} ({:.2?})\n",
            self.report.subcommand,
            if self.report.pass { "PASS" } else { "FAIL" },
            elapsed
        ));
        out
    }
}
