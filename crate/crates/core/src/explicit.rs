//! ψ(x) rebuilt from the zeros, and the oscillation of Δ(x) = ψ(x) − x.
//!
//! The truncated explicit formula used throughout is
//!
//! ```text
//! ψ(x) ≈ x − Σ_{0<γ≤T} 2 Re(x^ρ/ρ) − log 2π − ½ log(1 − x⁻²),   ρ = 1/2 + iγ,
//! ```
//!
//! each conjugate pair folded into one real term, so the reconstruction is
//! real by construction. Catalogued zeros are all taken on the critical line;
//! the catalog has been checked for exactly that up to its height.

use serde::Serialize;
use std::f64::consts::PI;

use crate::numeric::CompensatedSum;
use crate::primes::{PrimeError, PrimeIndex};
use crate::table::{Cell, Tabular};
use crate::zeta::ZeroCatalog;

/// Default constant `C` in the residual envelope `C · x log x / T`.
pub const DEFAULT_LANDAU_CONSTANT: f64 = 5.0;

/// Default constant `c` of the subexponential error curve.
pub const DEFAULT_SUBEXP_C: f64 = 0.1;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ExplicitError {
    #[error("truncation height T = {height} exceeds x = {x}; the residual envelope needs T <= x")]
    HeightAboveX { x: f64, height: f64 },
    #[error("catalog only reaches T = {available}, asked for {requested}")]
    CatalogTooShort { requested: f64, available: f64 },
    #[error("x = {0} is a prime power, where ψ jumps; use a point off the jumps")]
    AtJump(f64),
    #[error("{0}")]
    Domain(String),
    #[error(transparent)]
    Prime(#[from] PrimeError),
}

/// One reconstruction of ψ(x) against the sieve.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ExplicitEvaluation {
    pub x: f64,
    pub height: f64,
    /// Zeros used, conjugates included.
    pub zeros_used: usize,
    pub reconstructed: f64,
    pub sieve_truth: f64,
    pub residual: f64,
    /// `C · x log x / T`.
    pub bound: f64,
}

impl ExplicitEvaluation {
    pub fn within_bound(&self) -> bool {
        self.residual <= self.bound
    }
}

impl Tabular for ExplicitEvaluation {
    fn header() -> Vec<&'static str> {
        vec!["x", "height", "zeros_used", "reconstructed", "sieve_truth", "residual", "bound"]
    }

    fn cells(&self) -> Vec<Cell> {
        vec![
            self.x.into(),
            self.height.into(),
            self.zeros_used.into(),
            self.reconstructed.into(),
            self.sieve_truth.into(),
            self.residual.into(),
            self.bound.into(),
        ]
    }
}

/// `x − Σ 2 Re(x^ρ/ρ) − log 2π − ½ log(1 − x⁻²)` over the given ordinates.
pub fn reconstruct_psi(x: f64, ordinates: impl IntoIterator<Item = f64>) -> f64 {
    let log_x = x.ln();
    let sqrt_x = x.sqrt();
    let mut acc = CompensatedSum::new();
    acc.add(x);
    acc.add(-(2.0 * PI).ln());
    acc.add(-0.5 * (-x.powi(-2)).ln_1p());
    for gamma in ordinates {
        // Re(x^ρ/ρ) with x^ρ = √x e^{iγ log x}, 1/ρ = (1/2 − iγ)/(1/4 + γ²)
        let (sin, cos) = (gamma * log_x).sin_cos();
        let re = sqrt_x * (0.5 * cos + gamma * sin) / (0.25 + gamma * gamma);
        acc.add(-2.0 * re);
    }
    acc.value()
}

/// The truncated explicit formula evaluated against a zero catalog and a
/// prime index.
#[derive(Clone, Copy, Debug)]
pub struct ExplicitFormula<'a> {
    catalog: &'a ZeroCatalog,
    primes: &'a PrimeIndex,
    landau_constant: f64,
}

impl<'a> ExplicitFormula<'a> {
    pub fn new(catalog: &'a ZeroCatalog, primes: &'a PrimeIndex) -> Self {
        ExplicitFormula {
            catalog,
            primes,
            landau_constant: DEFAULT_LANDAU_CONSTANT,
        }
    }

    pub fn with_landau_constant(mut self, c: f64) -> Self {
        self.landau_constant = c;
        self
    }

    pub fn landau_constant(&self) -> f64 {
        self.landau_constant
    }

    /// ψ(x) from the zeros with `γ <= height`, and its residual against the
    /// sieve.
    pub fn truncated_psi(&self, x: f64, height: f64) -> Result<ExplicitEvaluation, ExplicitError> {
        if !(x >= 2.0) || !x.is_finite() {
            return Err(ExplicitError::Domain(format!("explicit formula needs x >= 2, got {x}")));
        }
        if !(height >= 0.0) {
            return Err(ExplicitError::Domain(format!("truncation height must be >= 0, got {height}")));
        }
        if height > x {
            return Err(ExplicitError::HeightAboveX { x, height });
        }
        if height > self.catalog.height() {
            return Err(ExplicitError::CatalogTooShort {
                requested: height,
                available: self.catalog.height(),
            });
        }
        if x.fract() == 0.0 && is_prime_power(self.primes, x as u64)? {
            return Err(ExplicitError::AtJump(x));
        }
        let ordinates: Vec<f64> = self.catalog.ordinates_up_to(height).collect();
        let reconstructed = reconstruct_psi(x, ordinates.iter().copied());
        let sieve_truth = self.primes.psi(x)?;
        Ok(ExplicitEvaluation {
            x,
            height,
            zeros_used: 2 * ordinates.len(),
            reconstructed,
            sieve_truth,
            residual: (reconstructed - sieve_truth).abs(),
            bound: self.landau_constant * x * x.ln() / height,
        })
    }

    /// Residuals at one abscissa across several truncation heights.
    pub fn landau_residual_curve(&self, x: f64, heights: &[f64]) -> Result<LandauCurve, ExplicitError> {
        let rows = heights
            .iter()
            .map(|&t| self.truncated_psi(x, t))
            .collect::<Result<Vec<_>, _>>()?;
        let all_within_bound = rows.iter().all(ExplicitEvaluation::within_bound);
        Ok(LandauCurve {
            x,
            landau_constant: self.landau_constant,
            rows,
            all_within_bound,
        })
    }

    /// Mean residual over several abscissas, one value per height.
    pub fn mean_residuals(&self, xs: &[f64], heights: &[f64]) -> Result<Vec<f64>, ExplicitError> {
        heights
            .iter()
            .map(|&t| {
                let mut acc = CompensatedSum::new();
                for &x in xs {
                    acc.add(self.truncated_psi(x, t)?.residual);
                }
                Ok(acc.value() / xs.len() as f64)
            })
            .collect()
    }
}

fn is_prime_power(primes: &PrimeIndex, n: u64) -> Result<bool, PrimeError> {
    let x = n as f64;
    Ok(primes.psi(x)? != primes.psi(x - 1.0)?)
}

/// Residuals of the truncated formula at one `x`, across heights.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LandauCurve {
    pub x: f64,
    pub landau_constant: f64,
    pub rows: Vec<ExplicitEvaluation>,
    /// `residual <= C x log x / T` at every height.
    pub all_within_bound: bool,
}

/// `2k + 1/2` style abscissas: `count` half-integers spread evenly over
/// `[lo, hi]`, both ends included when they are half-integers.
pub fn half_integer_grid(lo: f64, hi: f64, count: usize) -> Vec<f64> {
    let first = (lo - 0.5).ceil() + 0.5;
    let last = (hi - 0.5).floor() + 0.5;
    if count == 0 || last < first {
        return Vec::new();
    }
    if count == 1 {
        return vec![first];
    }
    let span = last - first;
    let mut out: Vec<f64> = (0..count)
        .map(|k| first + (k as f64 * span / (count - 1) as f64).floor())
        .collect();
    out.dedup();
    out
}

/// Extremes and sign changes of Δ(x) = ψ(x) − x on a range.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct OscillationReport {
    pub x_lo: f64,
    pub x_hi: f64,
    pub sample_count: usize,
    /// Smallest value of Δ(x)/√x.
    pub min_norm: f64,
    /// Largest value of Δ(x)/√x.
    pub max_norm: f64,
    pub sign_changes: usize,
    /// Where the minimum and the maximum occur, in that order. A minimum just
    /// below a jump is reported at the jump.
    pub extremum_locations: Vec<f64>,
}

impl Tabular for OscillationReport {
    fn header() -> Vec<&'static str> {
        vec!["x_lo", "x_hi", "sample_count", "min_norm", "max_norm", "sign_changes", "extremum_locations"]
    }

    fn cells(&self) -> Vec<Cell> {
        let locs: Vec<String> = self.extremum_locations.iter().map(|&v| crate::numeric::fmt_g12(v)).collect();
        vec![
            self.x_lo.into(),
            self.x_hi.into(),
            self.sample_count.into(),
            self.min_norm.into(),
            self.max_norm.into(),
            self.sign_changes.into(),
            locs.join(";").into(),
        ]
    }
}

/// Δ(x) = ψ(x) − x.
pub fn delta(primes: &PrimeIndex, x: f64) -> Result<f64, PrimeError> {
    Ok(primes.psi(x)? - x)
}

/// Scans Δ(x) over `[x_lo, x_hi]`.
///
/// Between consecutive prime powers Δ falls linearly and Δ(x)/√x is
/// decreasing, so sampling both sides of every jump, plus the end points,
/// finds the exact extremes and every sign change. `samples` half-integer
/// points are added on top.
pub fn delta_scan(primes: &PrimeIndex, x_lo: f64, x_hi: f64, samples: usize) -> Result<OscillationReport, ExplicitError> {
    if !(x_lo >= 2.0 && x_lo < x_hi) || !x_hi.is_finite() {
        return Err(ExplicitError::Domain(format!("delta scan needs 2 <= x_lo < x_hi, got [{x_lo}, {x_hi}]")));
    }
    if samples < 2 {
        return Err(ExplicitError::Domain(format!("delta scan needs at least 2 samples, got {samples}")));
    }
    if x_hi > primes.limit() as f64 {
        return Err(PrimeError::BeyondIndex {
            x: x_hi,
            limit: primes.limit(),
        }
        .into());
    }

    let grid = half_integer_grid(x_lo, x_hi, samples);
    let mut grid_iter = grid.iter().copied().peekable();
    let mut psi = CompensatedSum::new();
    psi.add(primes.psi(x_lo)?);

    let mut scan = Extremes::default();
    scan.push(x_lo, psi.value() - x_lo);
    let lo_int = x_lo.floor() as u64;
    let hi_int = x_hi.floor() as u64;
    for (q, jump) in primes.jumps(lo_int, hi_int) {
        let qf = q as f64;
        while let Some(&h) = grid_iter.peek() {
            if h >= qf {
                break;
            }
            if h > x_lo {
                scan.push(h, psi.value() - h);
            }
            grid_iter.next();
        }
        if qf > x_lo {
            scan.push(qf, psi.value() - qf);
            psi.add(jump);
            scan.push(qf, psi.value() - qf);
        }
    }
    for h in grid_iter {
        if h > x_lo && h < x_hi {
            scan.push(h, psi.value() - h);
        }
    }
    if x_hi > scan.last_x {
        scan.push(x_hi, psi.value() - x_hi);
    }

    Ok(OscillationReport {
        x_lo,
        x_hi,
        sample_count: scan.count,
        min_norm: scan.min.0,
        max_norm: scan.max.0,
        sign_changes: scan.sign_changes,
        extremum_locations: vec![scan.min.1, scan.max.1],
    })
}

struct Extremes {
    count: usize,
    min: (f64, f64),
    max: (f64, f64),
    last_sign: f64,
    last_x: f64,
    sign_changes: usize,
}

impl Default for Extremes {
    fn default() -> Self {
        Extremes {
            count: 0,
            min: (f64::INFINITY, f64::NAN),
            max: (f64::NEG_INFINITY, f64::NAN),
            last_sign: 0.0,
            last_x: f64::NEG_INFINITY,
            sign_changes: 0,
        }
    }
}

impl Extremes {
    fn push(&mut self, x: f64, delta: f64) {
        self.count += 1;
        self.last_x = x;
        let norm = delta / x.sqrt();
        if norm < self.min.0 {
            self.min = (norm, x);
        }
        if norm > self.max.0 {
            self.max = (norm, x);
        }
        if delta != 0.0 {
            let sign = delta.signum();
            if self.last_sign != 0.0 && sign != self.last_sign {
                self.sign_changes += 1;
            }
            self.last_sign = sign;
        }
    }
}

/// |Δ(x)| beside the four error curves it is compared with.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ErrorEnvelopeRow {
    pub x: f64,
    pub delta_abs: f64,
    /// `x^α log² x`.
    pub model_alpha: f64,
    /// `x exp(−c (log x)^{3/5} (log log x)^{−1/5})`.
    pub model_subexp: f64,
    /// `x^{21/40}`.
    pub model_2140: f64,
    /// `x^{1/2} log² x / (8π)`.
    pub model_rh: f64,
}

impl Tabular for ErrorEnvelopeRow {
    fn header() -> Vec<&'static str> {
        vec!["x", "delta_abs", "model_alpha", "model_subexp", "model_2140", "model_rh"]
    }

    fn cells(&self) -> Vec<Cell> {
        vec![
            self.x.into(),
            self.delta_abs.into(),
            self.model_alpha.into(),
            self.model_subexp.into(),
            self.model_2140.into(),
            self.model_rh.into(),
        ]
    }
}

/// The four error curves at `x`, without Δ.
pub fn envelope_models(x: f64, alpha: f64, c: f64) -> Result<ErrorEnvelopeRow, ExplicitError> {
    if !(x >= 3.0) || !x.is_finite() {
        return Err(ExplicitError::Domain(format!("error envelopes need x >= 3, got {x}")));
    }
    if !(0.5..=1.0).contains(&alpha) {
        return Err(ExplicitError::Domain(format!("alpha must lie in [1/2, 1], got {alpha}")));
    }
    if !(c > 0.0) {
        return Err(ExplicitError::Domain(format!("c must be positive, got {c}")));
    }
    let l = x.ln();
    Ok(ErrorEnvelopeRow {
        x,
        delta_abs: f64::NAN,
        model_alpha: x.powf(alpha) * l * l,
        model_subexp: x * (-c * l.powf(0.6) * l.ln().powf(-0.2)).exp(),
        model_2140: x.powf(21.0 / 40.0),
        model_rh: x.sqrt() * l * l / (8.0 * PI),
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EnvelopeTable {
    pub alpha: f64,
    pub c: f64,
    pub rows: Vec<ErrorEnvelopeRow>,
    /// sup |Δ(x)| / x^{21/40} over the grid.
    pub sup_ratio_2140: f64,
    /// sup |Δ(x)| / (x^{1/2} log² x / 8π) over the grid.
    pub sup_ratio_rh: f64,
}

/// |Δ(x)| and the error curves over a grid of abscissas.
pub fn error_envelope(primes: &PrimeIndex, xs: &[f64], alpha: f64, c: f64) -> Result<EnvelopeTable, ExplicitError> {
    let mut rows = Vec::with_capacity(xs.len());
    for &x in xs {
        let mut row = envelope_models(x, alpha, c)?;
        row.delta_abs = delta(primes, x)?.abs();
        rows.push(row);
    }
    let sup = |f: fn(&ErrorEnvelopeRow) -> f64| rows.iter().map(f).fold(0.0, f64::max);
    Ok(EnvelopeTable {
        alpha,
        c,
        sup_ratio_2140: sup(|r| r.delta_abs / r.model_2140),
        sup_ratio_rh: sup(|r| r.delta_abs / r.model_rh),
        rows,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::zeta::{ZeroRecord, ZeroCatalog};

    fn index() -> PrimeIndex {
        PrimeIndex::new(2_000).unwrap()
    }

    fn first_zeros() -> ZeroCatalog {
        // mpmath.zetazero(k).imag, k = 1..=5
        let g = [14.134725141734693, 21.022039638771555, 25.01085758014569, 30.424876125859513, 32.93506158773919];
        let zeros = g
            .iter()
            .enumerate()
            .map(|(i, &o)| ZeroRecord {
                index: i + 1,
                ordinate: o,
                bracket: (o, o),
                tolerance: 0.0,
            })
            .collect();
        ZeroCatalog::new(zeros, 35.0, 0.1).unwrap()
    }

    #[test]
    fn zero_free_truncation() {
        let idx = index();
        let empty = ZeroCatalog::empty(35.0);
        let e = ExplicitFormula::new(&empty, &idx).truncated_psi(2.5, 0.0).unwrap();
        assert!((e.reconstructed - 0.749_299_627_163_043_5).abs() < 1e-13);
        assert!((e.sieve_truth - std::f64::consts::LN_2).abs() < 1e-15);
        assert_eq!(e.zeros_used, 0);
        assert_eq!(e.bound, f64::INFINITY);
    }

    #[test]
    fn preconditions() {
        let idx = index();
        let cat = first_zeros();
        let f = ExplicitFormula::new(&cat, &idx);
        assert!(matches!(f.truncated_psi(20.5, 30.0), Err(ExplicitError::HeightAboveX { .. })));
        assert!(matches!(f.truncated_psi(100.5, 40.0), Err(ExplicitError::CatalogTooShort { .. })));
        assert!(matches!(f.truncated_psi(1.5, 0.0), Err(ExplicitError::Domain(_))));
        assert!(matches!(f.truncated_psi(27.0, 10.0), Err(ExplicitError::AtJump(_))));
        assert!(f.truncated_psi(28.0, 10.0).is_ok());
        assert_eq!(f.truncated_psi(50.5, 30.0).unwrap().zeros_used, 6);
        assert_eq!(f.truncated_psi(50.5, 35.0).unwrap().zeros_used, 10);
    }

    #[test]
    fn reconstruction_matches_direct_complex_sum() {
        use num_complex::Complex64;
        let x: f64 = 77.5;
        let cat = first_zeros();
        let mut direct = Complex64::new(x - (2.0 * PI).ln() - 0.5 * (1.0 - x.powi(-2)).ln(), 0.0);
        for z in cat.zeros() {
            for rho in [Complex64::new(0.5, z.ordinate), Complex64::new(0.5, -z.ordinate)] {
                direct -= (rho * x.ln()).exp() / rho;
            }
        }
        let folded = reconstruct_psi(x, cat.zeros().iter().map(|z| z.ordinate));
        assert!((folded - direct.re).abs() < 1e-12);
        assert!(direct.im.abs() < 1e-12);
    }

    #[test]
    fn grid_of_half_integers() {
        let g = half_integer_grid(100.5, 1000.5, 20);
        assert_eq!(g.len(), 20);
        assert_eq!((g[0], g[19]), (100.5, 1000.5));
        assert!(g.iter().all(|v| v.fract() == 0.5));
        assert_eq!(half_integer_grid(2.0, 4.0, 5), vec![2.5, 3.5]);
    }

    #[test]
    fn delta_values() {
        let idx = index();
        assert!((delta(&idx, 100.0).unwrap() - -5.954_688_770_642_608).abs() < 1e-10);
        for x in [1.0, 1.25, 1.999] {
            assert_eq!(delta(&idx, x).unwrap(), -x);
        }
    }

    #[test]
    fn scan_against_dense_sampling() {
        let idx = index();
        let r = delta_scan(&idx, 2.0, 2000.0, 50).unwrap();
        // brute force: left and right values at every integer
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        for n in 2..=2000u64 {
            let x = n as f64;
            let right = (idx.psi(x).unwrap() - x) / x.sqrt();
            let left = (idx.psi(x - 1.0).unwrap() - x) / x.sqrt();
            hi = hi.max(right);
            lo = lo.min(right).min(if n > 2 { left } else { right });
        }
        assert!((r.min_norm - lo).abs() < 1e-12);
        assert!((r.max_norm - hi).abs() < 1e-12);
        assert!(r.min_norm <= r.max_norm);
    }

    #[test]
    fn envelope_arithmetic() {
        let m = envelope_models(1e6, 0.5, DEFAULT_SUBEXP_C).unwrap();
        assert!((m.model_rh - 7_594.409_628_469_952).abs() < 1e-8);
        assert!((m.model_2140 - 1_412.537_544_622_754_4).abs() < 1e-8);
        assert!((m.model_alpha / m.model_rh - 8.0 * PI).abs() < 1e-12);
        assert!(envelope_models(2.9, 0.5, 0.1).is_err());
        assert!(envelope_models(10.0, 0.4, 0.1).is_err());
        assert!(envelope_models(10.0, 0.5, 0.0).is_err());
    }
}
