//! Short-interval prime bounds checked against exact counts, and the chain of
//! inequalities that ties primes in `(x, x + x^β]` to a zero-free region,
//! evaluated numerically.
//!
//! Nothing here asserts. Every check returns its two sides and a verdict, and
//! the sweeps return the failures they found; deciding which failures are
//! expected belongs to the caller.

use rayon::prelude::*;
use serde::Serialize;
use std::f64::consts::PI;
use std::fmt;

use crate::primes::{PrimeError, PrimeIndex};
use crate::table::{Cell, Tabular};

/// Exponent of the short interval `(x − x^θ, x]` known to contain primes.
pub const BHP_EXPONENT: f64 = 0.525;

/// Exponent of the short interval in the prime-count asymptotic.
pub const HEATH_BROWN_EXPONENT: f64 = 7.0 / 12.0;

/// Largest admissible ε in the uniform range `x^{7/12 − ε} ≤ y`.
pub const HEATH_BROWN_MAX_EPS: f64 = 1.0 / 12.0;

/// Accepted `|count/(y/log x) − 1|` for the asymptotic count.
pub const DEFAULT_HEATH_BROWN_TOLERANCE: f64 = 0.15;

/// Accepted `|ψ(x) − x| / x^{21/40}`; the true constant is unspecified.
pub const DEFAULT_COR8_CONSTANT: f64 = 10.0;

/// Additive constant in the Brun–Titchmarsh denominator `log y + 3.53`.
pub const BRUN_TITCHMARSH_SHIFT: f64 = 3.53;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum RegionError {
    #[error("{0}")]
    Domain(String),
    #[error(transparent)]
    Prime(#[from] PrimeError),
}

fn domain(msg: String) -> RegionError {
    RegionError::Domain(msg)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum CheckId {
    #[serde(rename = "BHP")]
    Bhp,
    #[serde(rename = "BRUN_TITCHMARSH")]
    BrunTitchmarsh,
    #[serde(rename = "HEATH_BROWN")]
    HeathBrown,
    #[serde(rename = "SCHOENFELD")]
    Schoenfeld,
    #[serde(rename = "COR8")]
    Cor8,
}

impl CheckId {
    pub fn as_str(self) -> &'static str {
        match self {
            CheckId::Bhp => "BHP",
            CheckId::BrunTitchmarsh => "BRUN_TITCHMARSH",
            CheckId::HeathBrown => "HEATH_BROWN",
            CheckId::Schoenfeld => "SCHOENFELD",
            CheckId::Cor8 => "COR8",
        }
    }

    /// Whether `margin` is a ratio rather than a signed headroom.
    pub fn margin_is_ratio(self) -> bool {
        matches!(self, CheckId::HeathBrown | CheckId::Cor8)
    }

    /// How bad a margin is; larger is worse. Headroom margins are bad when
    /// small, the asymptotic ratio when far from 1, the O-constant ratio when
    /// large.
    fn badness(self, margin: f64) -> f64 {
        match self {
            CheckId::HeathBrown => (margin - 1.0).abs(),
            CheckId::Cor8 => margin,
            _ => -margin,
        }
    }
}

impl fmt::Display for CheckId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// The parameters a check was run with.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct CheckParams {
    pub x: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub y: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub eps: Option<f64>,
}

/// One bound evaluated at one parameter point.
///
/// `margin` is the signed headroom, positive or zero when the check passes,
/// for the BHP (`lhs − rhs`), Brun–Titchmarsh and Schoenfeld (`rhs − lhs`)
/// checks. For HEATH_BROWN and COR8 it is the ratio `lhs / rhs`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct BoundCheckResult {
    pub check_id: CheckId,
    pub params: CheckParams,
    pub lhs: f64,
    pub rhs: f64,
    pub pass: bool,
    pub margin: f64,
}

impl Tabular for BoundCheckResult {
    fn header() -> Vec<&'static str> {
        vec!["check_id", "x", "y", "eps", "lhs", "rhs", "pass", "margin"]
    }

    fn cells(&self) -> Vec<Cell> {
        let opt = |v: Option<f64>| v.map_or(Cell::Text(String::new()), Cell::Real);
        vec![
            self.check_id.as_str().into(),
            self.params.x.into(),
            opt(self.params.y),
            opt(self.params.eps),
            self.lhs.into(),
            self.rhs.into(),
            self.pass.into(),
            self.margin.into(),
        ]
    }
}

/// The inequality chain at one `(x, β)` with an assumed `α` and constant.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
#[allow(non_snake_case)]
pub struct ProofChainReport {
    pub x: f64,
    pub beta: f64,
    pub alpha: f64,
    pub C_alpha: f64,
    /// `x^β`.
    pub y: f64,
    /// `θ(x + y) − θ(x)`.
    pub theta_diff: f64,
    /// `y (log x)³`.
    pub trivial_bound: f64,
    /// `y + C_α x^α (log x)²`.
    pub alpha_bound: f64,
    /// `theta_diff < trivial_bound`.
    pub holds_3: bool,
    /// `trivial_bound <= alpha_bound`, the step that trades the trivial bound
    /// for the one with the error term.
    pub holds_45: bool,
    /// `theta_diff > 0`.
    pub positive: bool,
}

impl Tabular for ProofChainReport {
    fn header() -> Vec<&'static str> {
        vec![
            "x",
            "beta",
            "alpha",
            "C_alpha",
            "y",
            "theta_diff",
            "trivial_bound",
            "alpha_bound",
            "holds_3",
            "holds_45",
            "positive",
        ]
    }

    fn cells(&self) -> Vec<Cell> {
        vec![
            self.x.into(),
            self.beta.into(),
            self.alpha.into(),
            self.C_alpha.into(),
            self.y.into(),
            self.theta_diff.into(),
            self.trivial_bound.into(),
            self.alpha_bound.into(),
            self.holds_3.into(),
            self.holds_45.into(),
            self.positive.into(),
        ]
    }
}

/// One cell of the β-frontier: does `(x, x + x^β]` contain a prime.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct FrontierCell {
    pub x: f64,
    pub beta: f64,
    pub has_prime: bool,
}

impl Tabular for FrontierCell {
    fn header() -> Vec<&'static str> {
        vec!["x", "beta", "has_prime"]
    }

    fn cells(&self) -> Vec<Cell> {
        vec![self.x.into(), self.beta.into(), self.has_prime.into()]
    }
}

/// A range a sweep parameter covered.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ParamRange {
    pub name: &'static str,
    pub min: f64,
    pub max: f64,
}

/// What a sweep found: every failing result and the worst margin seen.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SweepSummary {
    pub check_id: CheckId,
    pub param_ranges: Vec<ParamRange>,
    pub total: usize,
    pub failures: Vec<BoundCheckResult>,
    pub worst_margin: f64,
}

impl SweepSummary {
    fn collect(check_id: CheckId, param_ranges: Vec<ParamRange>, results: impl IntoIterator<Item = BoundCheckResult>) -> Self {
        let mut total = 0;
        let mut failures = Vec::new();
        let mut worst = f64::NAN;
        for r in results {
            total += 1;
            if !r.pass {
                failures.push(r);
            }
            if worst.is_nan() || check_id.badness(r.margin) > check_id.badness(worst) {
                worst = r.margin;
            }
        }
        SweepSummary {
            check_id,
            param_ranges,
            total,
            failures,
            worst_margin: worst,
        }
    }
}

/// Runs the checks against a prime index covering every interval they touch.
#[derive(Clone, Copy, Debug)]
pub struct RegionVerifier<'a> {
    primes: &'a PrimeIndex,
    heath_brown_tolerance: f64,
    cor8_constant: f64,
}

impl<'a> RegionVerifier<'a> {
    pub fn new(primes: &'a PrimeIndex) -> Self {
        RegionVerifier {
            primes,
            heath_brown_tolerance: DEFAULT_HEATH_BROWN_TOLERANCE,
            cor8_constant: DEFAULT_COR8_CONSTANT,
        }
    }

    pub fn with_heath_brown_tolerance(mut self, tol: f64) -> Self {
        self.heath_brown_tolerance = tol;
        self
    }

    pub fn with_cor8_constant(mut self, c: f64) -> Self {
        self.cor8_constant = c;
        self
    }

    pub fn primes(&self) -> &'a PrimeIndex {
        self.primes
    }

    /// Primes in `(x − x^0.525, x]`; passes when there is at least one.
    pub fn check_bhp(&self, x: f64) -> Result<BoundCheckResult, RegionError> {
        if !(x >= 2.0) || !x.is_finite() {
            return Err(domain(format!("BHP check needs x >= 2, got {x}")));
        }
        let lhs = self.primes.count_between(x - x.powf(BHP_EXPONENT), x)? as f64;
        Ok(BoundCheckResult {
            check_id: CheckId::Bhp,
            params: CheckParams { x, y: None, eps: None },
            lhs,
            rhs: 1.0,
            pass: lhs >= 1.0,
            margin: lhs - 1.0,
        })
    }

    /// `π(x + y) − π(x) <= 2y / (log y + 3.53)`.
    pub fn check_brun_titchmarsh(&self, x: f64, y: f64) -> Result<BoundCheckResult, RegionError> {
        if !(x >= 0.0) || !x.is_finite() {
            return Err(domain(format!("Brun–Titchmarsh check needs x >= 0, got {x}")));
        }
        if !(y >= 1.0) || !y.is_finite() {
            return Err(domain(format!("Brun–Titchmarsh check needs y >= 1, got {y}")));
        }
        let lhs = self.primes.count_between(x, x + y)? as f64;
        let rhs = 2.0 * y / (y.ln() + BRUN_TITCHMARSH_SHIFT);
        Ok(BoundCheckResult {
            check_id: CheckId::BrunTitchmarsh,
            params: CheckParams { x, y: Some(y), eps: None },
            lhs,
            rhs,
            pass: lhs <= rhs,
            margin: rhs - lhs,
        })
    }

    /// Primes in `(x − x^{7/12}, x]` against `x^{7/12} / log x`.
    pub fn check_heath_brown(&self, x: f64, eps: f64) -> Result<BoundCheckResult, RegionError> {
        if !(x >= 100.0) || !x.is_finite() {
            return Err(domain(format!("Heath-Brown check needs x >= 100, got {x}")));
        }
        if !(0.0..=HEATH_BROWN_MAX_EPS).contains(&eps) {
            return Err(domain(format!("eps must lie in [0, 1/12], got {eps}")));
        }
        let y = x.powf(HEATH_BROWN_EXPONENT);
        let lhs = self.primes.count_between(x - y, x)? as f64;
        let rhs = y / x.ln();
        let ratio = lhs / rhs;
        Ok(BoundCheckResult {
            check_id: CheckId::HeathBrown,
            params: CheckParams {
                x,
                y: Some(y),
                eps: Some(eps),
            },
            lhs,
            rhs,
            pass: (ratio - 1.0).abs() <= self.heath_brown_tolerance,
            margin: ratio,
        })
    }

    /// `|ψ(x) − x|` against the conditional bound `√x log² x / 8π`, and
    /// against `x^{21/40}` as a ratio.
    pub fn check_schoenfeld_cor8(&self, x: f64) -> Result<(BoundCheckResult, BoundCheckResult), RegionError> {
        if !(x >= 3.0) || !x.is_finite() {
            return Err(domain(format!("Schoenfeld check needs x >= 3, got {x}")));
        }
        let lhs = (self.primes.psi(x)? - x).abs();
        let params = CheckParams { x, y: None, eps: None };
        let l = x.ln();
        let rh = x.sqrt() * l * l / (8.0 * PI);
        let schoenfeld = BoundCheckResult {
            check_id: CheckId::Schoenfeld,
            params,
            lhs,
            rhs: rh,
            pass: lhs < rh,
            margin: rh - lhs,
        };
        let envelope = x.powf(21.0 / 40.0);
        let ratio = lhs / envelope;
        let cor8 = BoundCheckResult {
            check_id: CheckId::Cor8,
            params,
            lhs,
            rhs: envelope,
            pass: ratio <= self.cor8_constant,
            margin: ratio,
        };
        Ok((schoenfeld, cor8))
    }

    /// The inequality chain at `(x, β)` for an assumed error exponent `α` with
    /// constant `c_alpha`.
    pub fn proof_chain(&self, x: f64, beta: f64, alpha: f64, c_alpha: f64) -> Result<ProofChainReport, RegionError> {
        if !(x >= 10.0) || !x.is_finite() {
            return Err(domain(format!("proof chain needs x >= 10, got {x}")));
        }
        check_beta(beta)?;
        if !(0.5..=1.0).contains(&alpha) {
            return Err(domain(format!("alpha must lie in [1/2, 1], got {alpha}")));
        }
        if !(c_alpha > 0.0) || !c_alpha.is_finite() {
            return Err(domain(format!("C_alpha must be positive, got {c_alpha}")));
        }
        let y = x.powf(beta);
        let theta_diff = self.primes.census(x, y)?.log_sum;
        let l = x.ln();
        let trivial_bound = y * l * l * l;
        let alpha_bound = y + c_alpha * x.powf(alpha) * l * l;
        Ok(ProofChainReport {
            x,
            beta,
            alpha,
            C_alpha: c_alpha,
            y,
            theta_diff,
            trivial_bound,
            alpha_bound,
            holds_3: theta_diff < trivial_bound,
            holds_45: trivial_bound <= alpha_bound,
            positive: theta_diff > 0.0,
        })
    }

    /// For every `x` and every `β`, whether `(x, x + x^β]` contains a prime.
    /// Row-major in `x_grid`, then `beta_grid`.
    pub fn beta_frontier(&self, x_grid: &[f64], beta_grid: &[f64]) -> Result<Vec<FrontierCell>, RegionError> {
        for &x in x_grid {
            if !(x >= 10.0) || !x.is_finite() {
                return Err(domain(format!("frontier needs x >= 10, got {x}")));
            }
        }
        for &beta in beta_grid {
            check_beta(beta)?;
        }
        x_grid
            .iter()
            .flat_map(|&x| beta_grid.iter().map(move |&beta| (x, beta)))
            .map(|(x, beta)| {
                let count = self.primes.count_between(x, x + x.powf(beta))?;
                Ok(FrontierCell {
                    x,
                    beta,
                    has_prime: count > 0,
                })
            })
            .collect()
    }

    /// BHP at every integer `x` in `[x_lo, x_hi]`.
    pub fn sweep_bhp(&self, x_lo: u64, x_hi: u64) -> Result<SweepSummary, RegionError> {
        let results = (x_lo..=x_hi)
            .into_par_iter()
            .map(|x| self.check_bhp(x as f64))
            .collect::<Result<Vec<_>, _>>()?;
        let ranges = vec![ParamRange {
            name: "x",
            min: x_lo as f64,
            max: x_hi as f64,
        }];
        Ok(SweepSummary::collect(CheckId::Bhp, ranges, results))
    }

    /// Brun–Titchmarsh at every integer `x` in `[x_lo, x_hi]` for one `y`.
    /// Ordered by `x`.
    pub fn sweep_brun_titchmarsh(&self, x_lo: u64, x_hi: u64, y: f64) -> Result<SweepSummary, RegionError> {
        let results = (x_lo..=x_hi)
            .into_par_iter()
            .map(|x| self.check_brun_titchmarsh(x as f64, y))
            .collect::<Result<Vec<_>, _>>()?;
        let ranges = vec![
            ParamRange {
                name: "x",
                min: x_lo as f64,
                max: x_hi as f64,
            },
            ParamRange { name: "y", min: y, max: y },
        ];
        Ok(SweepSummary::collect(CheckId::BrunTitchmarsh, ranges, results))
    }

    /// The asymptotic count at each `x`.
    pub fn sweep_heath_brown(&self, xs: &[f64], eps: f64) -> Result<SweepSummary, RegionError> {
        let results = xs
            .par_iter()
            .map(|&x| self.check_heath_brown(x, eps))
            .collect::<Result<Vec<_>, _>>()?;
        let ranges = vec![range_of("x", xs), ParamRange { name: "eps", min: eps, max: eps }];
        Ok(SweepSummary::collect(CheckId::HeathBrown, ranges, results))
    }

    /// Both ψ checks at each `x`: (SCHOENFELD, COR8).
    pub fn sweep_schoenfeld_cor8(&self, xs: &[f64]) -> Result<(SweepSummary, SweepSummary), RegionError> {
        let pairs = xs
            .par_iter()
            .map(|&x| self.check_schoenfeld_cor8(x))
            .collect::<Result<Vec<_>, _>>()?;
        let ranges = vec![range_of("x", xs)];
        Ok((
            SweepSummary::collect(CheckId::Schoenfeld, ranges.clone(), pairs.iter().map(|p| p.0)),
            SweepSummary::collect(CheckId::Cor8, ranges, pairs.iter().map(|p| p.1)),
        ))
    }
}

fn check_beta(beta: f64) -> Result<(), RegionError> {
    if !(beta > 0.0 && beta <= 1.0) {
        return Err(domain(format!("beta must lie in (0, 1], got {beta}")));
    }
    Ok(())
}

fn range_of(name: &'static str, xs: &[f64]) -> ParamRange {
    ParamRange {
        name,
        min: xs.iter().copied().fold(f64::INFINITY, f64::min),
        max: xs.iter().copied().fold(f64::NEG_INFINITY, f64::max),
    }
}

/// `count` half-integers from `lo` to `hi`, evenly spaced in `log x`. Each
/// point is moved down to a half-integer, or up past its predecessor where the
/// spacing is below one, so the points are distinct while they fit.
pub fn log_spaced_half_integers(lo: f64, hi: f64, count: usize) -> Vec<f64> {
    let first = (lo - 0.5).ceil() + 0.5;
    if count == 0 || !(first <= hi) {
        return Vec::new();
    }
    let (a, b) = (first.ln(), hi.ln());
    let mut out: Vec<f64> = Vec::with_capacity(count);
    for k in 0..count {
        let t = if count == 1 { 0.0 } else { k as f64 / (count - 1) as f64 };
        let mut x = ((a + t * (b - a)).exp() - 0.5).floor() + 0.5;
        if let Some(&prev) = out.last() {
            x = x.max(prev + 1.0);
        }
        if x > hi {
            break;
        }
        out.push(x.max(first));
    }
    out
}
