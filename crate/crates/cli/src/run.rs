//! One function per command.

use std::time::Instant;

use zrl::explicit::ExplicitFormula;
use zrl::primes::{PrimeIndex, SegmentCache, Sieve};
use zrl::region::{log_spaced_half_integers, BoundCheckResult, RegionVerifier};
use zrl::table::Table;
use zrl::zeta::scan_result;

use crate::cache::{default_zero_cache_path, obtain_catalog};
use crate::config::{CheckKind, Command, ExplicitArgs, FrontierArgs, PsiArgs, RunConfig, SieveArgs, VerifyArgs, ZerosArgs};
use crate::document::ReportDocument;
use crate::policy;
use crate::report::run_report;
use crate::CliError;

/// A finished run: its document and how many failures nothing explains.
#[derive(Debug)]
pub struct Outcome {
    pub doc: ReportDocument,
    pub unexpected_failures: usize,
}

impl Outcome {
    pub fn exit_code(&self) -> i32 {
        i32::from(self.unexpected_failures > 0)
    }
}

pub fn execute(cfg: &RunConfig) -> Result<Outcome, CliError> {
    let mut doc = ReportDocument::new(cfg.clone());
    let started = Instant::now();
    let unexpected_failures = match &cfg.command {
        Command::Sieve(a) => sieve(cfg, a, &mut doc)?,
        Command::Zeros(a) => zeros(cfg, a, &mut doc)?,
        Command::Psi(a) => psi(a, &mut doc)?,
        Command::Explicit(a) => explicit(cfg, a, &mut doc)?,
        Command::Verify(a) => verify(a, &mut doc)?,
        Command::Frontier(a) => frontier(a, &mut doc)?,
        Command::Report(a) => return run_report(cfg, a),
    };
    doc.timings.push(("total".into(), started.elapsed()));
    Ok(Outcome { doc, unexpected_failures })
}

fn sieve(cfg: &RunConfig, a: &SieveArgs, doc: &mut ReportDocument) -> Result<usize, CliError> {
    let cache = SegmentCache::new(cfg.cache_dir.join("segments"));
    let table = cache.segment(&Sieve::default(), a.lo, a.hi)?;
    let mut t = Table::new("sieve", vec!["lo", "hi", "count"]);
    t.push(vec![table.lo().into(), table.hi().into(), table.count().into()]);
    doc.tables.push(t);
    Ok(0)
}

fn zeros(cfg: &RunConfig, a: &ZerosArgs, doc: &mut ReportDocument) -> Result<usize, CliError> {
    let path = a
        .cache
        .clone()
        .unwrap_or_else(|| default_zero_cache_path(&cfg.cache_dir, a.height, a.step));
    let (catalog, _) = obtain_catalog(a.height, a.step, &path)?;
    doc.tables.push(Table::from_rows("zeros", catalog.zeros()));
    doc.tables.push(Table::from_rows("region_scan", [&scan_result(&catalog)]));
    Ok(0)
}

fn index_for(max_x: f64) -> Result<PrimeIndex, CliError> {
    Ok(PrimeIndex::new(max_x.floor().max(2.0) as u64)?)
}

fn psi(a: &PsiArgs, doc: &mut ReportDocument) -> Result<usize, CliError> {
    let idx = index_for(a.x.iter().copied().fold(0.0, f64::max))?;
    let rows = a.x.iter().map(|&x| idx.values(x)).collect::<Result<Vec<_>, _>>()?;
    doc.tables.push(Table::from_rows("chebyshev", &rows));
    Ok(0)
}

fn explicit(cfg: &RunConfig, a: &ExplicitArgs, doc: &mut ReportDocument) -> Result<usize, CliError> {
    let path = a
        .cache
        .clone()
        .unwrap_or_else(|| default_zero_cache_path(&cfg.cache_dir, a.height, a.step));
    let (catalog, _) = obtain_catalog(a.height, a.step, &path)?;
    let idx = index_for(a.x.iter().copied().fold(0.0, f64::max))?;
    let formula = ExplicitFormula::new(&catalog, &idx).with_landau_constant(a.landau_constant);
    let mut rows = Vec::new();
    let mut outside = 0;
    for &x in &a.x {
        let curve = formula.landau_residual_curve(x, &a.truncate)?;
        outside += curve.rows.iter().filter(|r| !r.within_bound()).count();
        rows.extend(curve.rows);
    }
    doc.tables.push(Table::from_rows("explicit", &rows));
    Ok(outside)
}

fn verify(a: &VerifyArgs, doc: &mut ReportDocument) -> Result<usize, CliError> {
    let lo = a.x_min_or_default();
    let hi = a.x_max;
    let y_max = a.y_grid.iter().copied().fold(0.0, f64::max);
    let idx = index_for(hi + y_max.max(1.0))?;
    let v = RegionVerifier::new(&idx);
    let summaries = match a.check {
        CheckKind::Bhp => vec![v.sweep_bhp(lo.ceil().max(2.0) as u64, hi.floor() as u64)?],
        CheckKind::BrunTitchmarsh => a
            .y_grid
            .iter()
            .map(|&y| v.sweep_brun_titchmarsh(lo.ceil() as u64, hi.floor() as u64, y))
            .collect::<Result<Vec<_>, _>>()?,
        CheckKind::HeathBrown => {
            let xs = log_spaced_half_integers(lo.max(100.0), hi, a.samples);
            vec![v.sweep_heath_brown(&xs, a.eps)?]
        }
        CheckKind::Schoenfeld => {
            let xs = log_spaced_half_integers(lo.max(3.0), hi, a.samples);
            let (s, c) = v.sweep_schoenfeld_cor8(&xs)?;
            vec![s, c]
        }
    };
    let failures: Vec<BoundCheckResult> = summaries.iter().flat_map(|s| s.failures.iter().copied()).collect();
    let unexpected = policy::unexpected(&failures);
    doc.tables.push(Table::from_rows("failures", &failures));
    doc.summaries = summaries;
    Ok(unexpected)
}

fn frontier(a: &FrontierArgs, doc: &mut ReportDocument) -> Result<usize, CliError> {
    let max_x = a.x_grid.iter().copied().fold(0.0, f64::max);
    let idx = index_for(2.0 * max_x)?;
    let cells = RegionVerifier::new(&idx).beta_frontier(&a.x_grid, &a.beta_grid)?;
    doc.tables.push(Table::from_rows("frontier", &cells));
    Ok(0)
}
