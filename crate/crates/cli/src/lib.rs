//! Command-line front end: JSON in, canonical JSON out.

mod commands;
mod error;
mod input;

use std::path::PathBuf;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

pub use error::CliError;
pub use input::{max_n, parse_input, DEFAULT_MAX_N};

#[derive(Parser, Debug)]
#[command(name = "chow", version, about = "Chow polynomials of posets, matrices and Toeplitz series")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(clap::Args, Debug, Clone)]
pub struct Common {
    /// Input file, or inline JSON.
    pub input: String,
    /// Size: truncation index for matrices, order for series.
    #[arg(long)]
    pub n: Option<usize>,
    /// Use the augmented family (gamma).
    #[arg(long)]
    pub augmented: bool,
    /// Path to a JSON table of g values (poset).
    #[arg(long)]
    pub g: Option<PathBuf>,
    /// Always run the independent cross-check.
    #[arg(long, conflicts_with = "no_oracle")]
    pub oracle: bool,
    /// Never run the independent cross-check.
    #[arg(long)]
    pub no_oracle: bool,
    /// Write the result here instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Subcommand, Debug, Clone)]
pub enum Command {
    /// H, d, G and A of a weakly ranked poset.
    Poset(Common),
    /// Chow families of a lower-triangular matrix.
    Matrix(Common),
    /// Generating functions of a Toeplitz, binomial or Sheffer series.
    Toeplitz(Common),
    /// Total nonnegativity with a witness minor.
    CheckTn(Common),
    /// Resolution certificate, computed or verified.
    Resolve(Common),
    /// γ-vector from the minor formula.
    Gamma(Common),
    /// Real-rootedness and interlacing certificates.
    Certify(Common),
}

impl Command {
    pub fn common(&self) -> &Common {
        match self {
            Command::Poset(c)
            | Command::Matrix(c)
            | Command::Toeplitz(c)
            | Command::CheckTn(c)
            | Command::Resolve(c)
            | Command::Gamma(c)
            | Command::Certify(c) => c,
        }
    }

    fn name(&self) -> &'static str {
        match self {
            Command::Poset(_) => "poset",
            Command::Matrix(_) => "matrix",
            Command::Toeplitz(_) => "toeplitz",
            Command::CheckTn(_) => "check-tn",
            Command::Resolve(_) => "resolve",
            Command::Gamma(_) => "gamma",
            Command::Certify(_) => "certify",
        }
    }
}

/// Cross-checks run by default up to this size.
pub const ORACLE_DEFAULT_MAX: usize = 6;

/// Whether the independent route runs, given the problem size.
#[derive(Clone, Copy, Debug)]
pub(crate) struct OracleMode {
    forced: Option<bool>,
}

impl OracleMode {
    pub(crate) fn enabled(&self, size: usize) -> bool {
        self.forced.unwrap_or(size <= ORACLE_DEFAULT_MAX)
    }

    pub(crate) fn meta(&self, size: usize, route: &str) -> Value {
        json!({
            "enabled": self.enabled(size),
            "forced": self.forced.is_some(),
            "route": route,
        })
    }
}

fn reject(flag: bool, name: &str, cmd: &str) -> Result<(), CliError> {
    if flag {
        Err(CliError::Schema(format!("flag --{name} is not accepted by {cmd}")))
    } else {
        Ok(())
    }
}

/// Run one subcommand and return its JSON document.
pub fn run(cmd: &Command) -> Result<Value, CliError> {
    let c = cmd.common();
    let name = cmd.name();
    let oracle = OracleMode { forced: if c.oracle { Some(true) } else if c.no_oracle { Some(false) } else { None } };
    if !matches!(cmd, Command::Poset(_)) {
        reject(c.g.is_some(), "g", name)?;
    }
    if !matches!(cmd, Command::Gamma(_)) {
        reject(c.augmented, "augmented", name)?;
    }
    if matches!(cmd, Command::Poset(_)) {
        reject(c.n.is_some(), "n", name)?;
    }
    let value = parse_input(&c.input)?;
    let cap = max_n()?;
    match cmd {
        Command::Poset(_) => commands::poset(&value, c.g.as_deref(), oracle, cap),
        Command::Matrix(_) => commands::matrix(&value, c.n, oracle, cap),
        Command::Toeplitz(_) => commands::toeplitz(&value, c.n, oracle, cap),
        Command::CheckTn(_) => commands::check_tn(&value, c.n, oracle, cap),
        Command::Resolve(_) => commands::resolve(&value, c.n, oracle, cap),
        Command::Gamma(_) => commands::gamma(&value, c.n, c.augmented, oracle, cap),
        Command::Certify(_) => commands::certify(&value, c.n, oracle, cap),
    }
}

/// Pretty JSON with sorted keys and a trailing newline.
pub fn render(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON values always serialize");
    s.push('\n');
    s
}
