//! Command-line front end for `zrl`: argument handling, zero-cache files and
//! reproducible reports.

use std::path::PathBuf;

pub mod cache;
pub mod config;
pub mod document;
pub mod policy;
pub mod report;
pub mod run;

pub use cache::{load_zero_cache, obtain_catalog};
pub use config::{parse_args, OutputFormat, RunConfig};
pub use document::{emit_metadata, emit_report, ReportDocument};
pub use report::run_report;
pub use run::{execute, Outcome};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("usage: {0}")]
    Usage(String),
    #[error(transparent)]
    Clap(#[from] clap::Error),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("{path}: {source}")]
    Cache {
        path: PathBuf,
        source: zrl::zeta::CacheInvalid,
    },
    #[error(transparent)]
    Prime(#[from] zrl::primes::PrimeError),
    #[error(transparent)]
    Zeta(#[from] zrl::zeta::ZetaError),
    #[error(transparent)]
    Explicit(#[from] zrl::explicit::ExplicitError),
    #[error(transparent)]
    Region(#[from] zrl::region::RegionError),
}

impl CliError {
    /// Process exit status: 2 for usage errors, 3 for everything else.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Clap(e) => e.exit_code(),
            _ => 3,
        }
    }
}
