//! Command-line parsing and validation.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use std::path::PathBuf;

use crate::CliError;

/// Environment variable overriding where caches are kept.
pub const CACHE_DIR_ENV: &str = "ZRL_CACHE_DIR";

/// Cache directory used when [`CACHE_DIR_ENV`] is unset.
pub const DEFAULT_CACHE_DIR: &str = ".zrl-cache";

#[derive(Parser, Debug)]
#[command(name = "zrl", version, about = "Chebyshev functions, zeta zeros and short-interval prime bounds")]
struct Cli {
    #[command(subcommand)]
    command: Option<Command>,
    /// Output format
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Csv)]
    format: OutputFormat,
    /// Write the data here instead of stdout; timings go beside it as
    /// `<out>.meta.json`
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    Csv,
    Json,
}

#[derive(Subcommand, Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "command", rename_all = "lowercase")]
pub enum Command {
    /// Count the primes in [lo, hi)
    Sieve(SieveArgs),
    /// Find the zeros of Z(t) up to a height
    Zeros(ZerosArgs),
    /// θ, ψ and π at the given points
    Psi(PsiArgs),
    /// ψ rebuilt from the zeros, against the sieve
    Explicit(ExplicitArgs),
    /// Sweep one of the short-interval bounds
    Verify(VerifyArgs),
    /// Which intervals (x, x + x^β] contain a prime
    Frontier(FrontierArgs),
    /// Run every acceptance check in order (the default)
    Report(ReportArgs),
}

#[derive(Args, Clone, Debug, PartialEq, Serialize)]
pub struct SieveArgs {
    #[arg(long, default_value_t = 0)]
    pub lo: u64,
    #[arg(long, default_value_t = 100)]
    pub hi: u64,
}

#[derive(Args, Clone, Debug, PartialEq, Serialize)]
#[command(allow_negative_numbers = true)]
pub struct ZerosArgs {
    #[arg(long, default_value_t = 100.0)]
    pub height: f64,
    #[arg(long, default_value_t = 0.1)]
    pub step: f64,
    /// Zero cache file; read if present, written otherwise
    #[arg(long)]
    pub cache: Option<PathBuf>,
}

#[derive(Args, Clone, Debug, PartialEq, Serialize)]
#[command(allow_negative_numbers = true)]
pub struct PsiArgs {
    /// Comma-separated abscissas
    #[arg(long, value_delimiter = ',', required = true)]
    pub x: Vec<f64>,
}

#[derive(Args, Clone, Debug, PartialEq, Serialize)]
#[command(allow_negative_numbers = true)]
pub struct ExplicitArgs {
    /// Comma-separated abscissas
    #[arg(long, value_delimiter = ',', required = true)]
    pub x: Vec<f64>,
    /// Comma-separated truncation heights
    #[arg(long, value_delimiter = ',', default_values_t = vec![50.0, 100.0])]
    pub truncate: Vec<f64>,
    /// Height the zero catalog is built to
    #[arg(long, default_value_t = 100.0)]
    pub height: f64,
    #[arg(long, default_value_t = 0.1)]
    pub step: f64,
    #[arg(long)]
    pub cache: Option<PathBuf>,
    /// Constant C in the residual envelope C x log x / T
    #[arg(long, default_value_t = zrl::explicit::DEFAULT_LANDAU_CONSTANT)]
    pub landau_constant: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CheckKind {
    Bhp,
    BrunTitchmarsh,
    HeathBrown,
    /// Also records the x^{21/40} ratio
    Schoenfeld,
}

#[derive(Args, Clone, Debug, PartialEq, Serialize)]
#[command(allow_negative_numbers = true)]
pub struct VerifyArgs {
    #[arg(long, value_enum)]
    pub check: CheckKind,
    /// Smallest x; defaults to 10, 0, 100 and 100.5 for the four checks
    #[arg(long)]
    pub x_min: Option<f64>,
    #[arg(long, default_value_t = 1e6)]
    pub x_max: f64,
    /// Interval lengths for the Brun–Titchmarsh sweep
    #[arg(long, value_delimiter = ',', default_values_t = vec![20.0, 100.0, 1000.0, 10000.0])]
    pub y_grid: Vec<f64>,
    #[arg(long, default_value_t = 0.0)]
    pub eps: f64,
    /// Log-spaced points for the Heath-Brown and Schoenfeld sweeps
    #[arg(long, default_value_t = 1000)]
    pub samples: usize,
}

impl VerifyArgs {
    pub fn x_min_or_default(&self) -> f64 {
        self.x_min.unwrap_or(match self.check {
            CheckKind::Bhp => 10.0,
            CheckKind::BrunTitchmarsh => 0.0,
            CheckKind::HeathBrown => 100.0,
            CheckKind::Schoenfeld => 100.5,
        })
    }
}

#[derive(Args, Clone, Debug, PartialEq, Serialize)]
#[command(allow_negative_numbers = true)]
pub struct FrontierArgs {
    #[arg(long, value_delimiter = ',', default_values_t = vec![100.0, 1000.0, 10000.0, 100000.0, 1000000.0])]
    pub x_grid: Vec<f64>,
    #[arg(long, value_delimiter = ',', default_values_t = vec![0.3, 0.4, 0.5, 0.525, 0.6, 0.75, 1.0])]
    pub beta_grid: Vec<f64>,
}

#[derive(Args, Clone, Debug, PartialEq, Serialize)]
pub struct ReportArgs {
    /// Upper end of the integer sweeps
    #[arg(long, default_value_t = 1_000_000)]
    pub x_max: u64,
}

impl Default for ReportArgs {
    fn default() -> Self {
        ReportArgs { x_max: 1_000_000 }
    }
}

/// A validated invocation.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RunConfig {
    pub command: Command,
    pub format: OutputFormat,
    #[serde(skip)]
    pub out: Option<PathBuf>,
    #[serde(skip)]
    pub cache_dir: PathBuf,
}

impl RunConfig {
    /// A `report` run with default settings writing to stdout.
    pub fn report(format: OutputFormat, cache_dir: PathBuf) -> RunConfig {
        RunConfig {
            command: Command::Report(ReportArgs::default()),
            format,
            out: None,
            cache_dir,
        }
    }
}

/// Parses `argv` (program name first) and checks every value against the
/// range the command needs.
pub fn parse_args<I, T>(argv: I) -> Result<RunConfig, CliError>
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = Cli::try_parse_from(argv)?;
    let command = cli.command.unwrap_or(Command::Report(ReportArgs::default()));
    validate(&command)?;
    let cache_dir = std::env::var_os(CACHE_DIR_ENV)
        .filter(|v| !v.is_empty())
        .map(PathBuf::from)
        .unwrap_or_else(|| PathBuf::from(DEFAULT_CACHE_DIR));
    Ok(RunConfig {
        command,
        format: cli.format,
        out: cli.out,
        cache_dir,
    })
}

fn usage(flag: &str, msg: impl std::fmt::Display) -> CliError {
    CliError::Usage(format!("--{flag}: {msg}"))
}

fn finite(flag: &str, v: f64) -> Result<f64, CliError> {
    if v.is_finite() {
        Ok(v)
    } else {
        Err(usage(flag, format!("{v} is not a finite number")))
    }
}

fn scan(height: f64, step: f64) -> Result<(), CliError> {
    if !(10.0..=1e4).contains(&finite("height", height)?) {
        return Err(usage("height", format!("must lie in [10, 10000], got {height}")));
    }
    if !(finite("step", step)? > 0.0 && step <= 0.5) {
        return Err(usage("step", format!("must lie in (0, 0.5], got {step}")));
    }
    Ok(())
}

fn validate(command: &Command) -> Result<(), CliError> {
    match command {
        Command::Sieve(a) => {
            if a.lo >= a.hi {
                return Err(usage("hi", format!("must exceed --lo, got [{}, {})", a.lo, a.hi)));
            }
        }
        Command::Zeros(a) => scan(a.height, a.step)?,
        Command::Psi(a) => {
            for &x in &a.x {
                if finite("x", x)? < 0.0 {
                    return Err(usage("x", format!("must be >= 0, got {x}")));
                }
            }
        }
        Command::Explicit(a) => {
            scan(a.height, a.step)?;
            for &x in &a.x {
                if finite("x", x)? < 2.0 {
                    return Err(usage("x", format!("must be >= 2, got {x}")));
                }
            }
            for &t in &a.truncate {
                if !(finite("truncate", t)? >= 0.0 && t <= a.height) {
                    return Err(usage("truncate", format!("must lie in [0, --height], got {t}")));
                }
            }
            if !(finite("landau-constant", a.landau_constant)? > 0.0) {
                return Err(usage("landau-constant", "must be positive"));
            }
        }
        Command::Verify(a) => {
            let lo = finite("x-min", a.x_min_or_default())?;
            let hi = finite("x-max", a.x_max)?;
            if lo < 0.0 || hi < lo {
                return Err(usage("x-max", format!("need 0 <= x-min <= x-max, got [{lo}, {hi}]")));
            }
            for &y in &a.y_grid {
                if !(finite("y-grid", y)? >= 1.0) {
                    return Err(usage("y-grid", format!("interval lengths must be >= 1, got {y}")));
                }
            }
            if !(0.0..=1.0 / 12.0).contains(&a.eps) {
                return Err(usage("eps", format!("must lie in [0, 1/12], got {}", a.eps)));
            }
            if a.samples < 2 {
                return Err(usage("samples", "need at least 2"));
            }
        }
        Command::Frontier(a) => {
            for &x in &a.x_grid {
                if !(finite("x-grid", x)? >= 10.0) {
                    return Err(usage("x-grid", format!("must be >= 10, got {x}")));
                }
            }
            for &b in &a.beta_grid {
                if !(finite("beta-grid", b)? > 0.0 && b <= 1.0) {
                    return Err(usage("beta-grid", format!("must lie in (0, 1], got {b}")));
                }
            }
        }
        Command::Report(a) => {
            if a.x_max < 1000 {
                return Err(usage("x-max", format!("must be >= 1000, got {}", a.x_max)));
            }
        }
    }
    Ok(())
}
