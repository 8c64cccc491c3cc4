use rayon::prelude::*;
use serde::Serialize;
use std::f64::consts::{E, PI};

use super::hardy::hardy_z;
use super::ZetaError;

/// Half-width every bracket is bisected down to.
pub const REFINE_TOL: f64 = 1e-9;

/// Default scan step for [`build_catalog`].
pub const DEFAULT_STEP: f64 = 0.1;

/// Lowest height the scan starts from.
pub const SCAN_START: f64 = 1.0;

/// One zero `1/2 + iγ` on the critical line.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ZeroRecord {
    /// 1-based position in the catalog.
    pub index: usize,
    /// The ordinate γ.
    pub ordinate: f64,
    /// An interval across which `Z` changes sign.
    pub bracket: (f64, f64),
    /// Half-width of `bracket`.
    pub tolerance: f64,
}

/// The critical-line zeros with `0 < γ < height`, ascending.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ZeroCatalog {
    zeros: Vec<ZeroRecord>,
    height: f64,
    scan_step: f64,
}

impl ZeroCatalog {
    /// Assembles a catalog, checking ordering, spacing and the height bound.
    pub fn new(zeros: Vec<ZeroRecord>, height: f64, scan_step: f64) -> Result<ZeroCatalog, ZetaError> {
        for (i, z) in zeros.iter().enumerate() {
            if z.index != i + 1 {
                return Err(ZetaError::InvalidCatalog(format!(
                    "record {} carries index {}",
                    i + 1,
                    z.index
                )));
            }
            if !(z.ordinate > 0.0 && z.ordinate < height) {
                return Err(ZetaError::InvalidCatalog(format!(
                    "ordinate {} outside (0, {height})",
                    z.ordinate
                )));
            }
        }
        if let Some(w) = zeros.windows(2).find(|w| w[1].ordinate - w[0].ordinate <= 1e-6) {
            return Err(ZetaError::InvalidCatalog(format!(
                "ordinates {} and {} are not strictly increasing and separated",
                w[0].ordinate, w[1].ordinate
            )));
        }
        Ok(ZeroCatalog {
            zeros,
            height,
            scan_step,
        })
    }

    /// An empty catalog, useful for the zero-free truncation.
    pub fn empty(height: f64) -> ZeroCatalog {
        ZeroCatalog {
            zeros: Vec::new(),
            height,
            scan_step: DEFAULT_STEP,
        }
    }

    pub fn zeros(&self) -> &[ZeroRecord] {
        &self.zeros
    }

    pub fn len(&self) -> usize {
        self.zeros.len()
    }

    pub fn is_empty(&self) -> bool {
        self.zeros.is_empty()
    }

    pub fn height(&self) -> f64 {
        self.height
    }

    pub fn scan_step(&self) -> f64 {
        self.scan_step
    }

    /// Ordinates `γ <= t`.
    pub fn ordinates_up_to(&self, t: f64) -> impl Iterator<Item = f64> + '_ {
        self.zeros.iter().map(|z| z.ordinate).take_while(move |&g| g <= t)
    }
}

/// Empirical accounting of zeros up to a height.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct RegionScanResult {
    pub height: f64,
    pub sign_change_count: usize,
    pub rvm_estimate: f64,
    pub discrepancy: f64,
}

impl RegionScanResult {
    /// Every zero the smooth count predicts was found as a sign change of
    /// `Z`, i.e. on the critical line.
    pub fn all_on_line(&self) -> bool {
        self.discrepancy < 1.0
    }
}

/// Main term of the Riemann–von Mangoldt formula,
/// `N(T) ≈ (T/2π) log(T/2πe) + 7/8`.
pub fn rvm_count(height: f64) -> Result<f64, ZetaError> {
    if !(height >= 10.0) || !height.is_finite() {
        return Err(ZetaError::Domain(format!("rvm_count needs T >= 10, got {height}")));
    }
    let u = height / (2.0 * PI);
    Ok(u * (height / (2.0 * PI * E)).ln() + 7.0 / 8.0)
}

fn check_scan_args(height: f64, step: f64) -> Result<(), ZetaError> {
    if !(10.0..=1e4).contains(&height) {
        return Err(ZetaError::Domain(format!("scan height must lie in [10, 1e4], got {height}")));
    }
    if !(step > 0.0 && step <= 0.5) {
        return Err(ZetaError::Domain(format!("scan step must lie in (0, 0.5], got {step}")));
    }
    Ok(())
}

/// Scans `Z(t)` on `[1, height]`, brackets every sign change and bisects each
/// to [`REFINE_TOL`].
///
/// A scan that misses zeros (two in one step) is caught by comparing the
/// count with [`rvm_count`]; a difference above one is reported as
/// [`ZetaError::RescanNeeded`].
pub fn build_catalog(height: f64, step: f64) -> Result<ZeroCatalog, ZetaError> {
    check_scan_args(height, step)?;
    let n_steps = ((height - SCAN_START) / step).floor() as usize;
    let mut grid: Vec<f64> = (0..=n_steps).map(|i| SCAN_START + i as f64 * step).collect();
    if *grid.last().expect("non-empty grid") < height {
        grid.push(height);
    }
    let values = grid
        .par_iter()
        .map(|&t| hardy_z(t))
        .collect::<Result<Vec<f64>, ZetaError>>()?;

    let mut found: Vec<(f64, f64)> = Vec::new();
    for i in 0..grid.len() - 1 {
        let (a, b) = (grid[i], grid[i + 1]);
        let (za, zb) = (values[i], values[i + 1]);
        if za == 0.0 && i > 0 {
            found.push((a, a));
        } else if za * zb < 0.0 {
            found.push((a, b));
        }
    }

    let zeros = found
        .par_iter()
        .enumerate()
        .map(|(i, &(a, b))| refine(a, b).map(|(lo, hi)| record(i + 1, lo, hi)))
        .collect::<Result<Vec<ZeroRecord>, ZetaError>>()?;

    let expected = rvm_count(height)?;
    let discrepancy = (zeros.len() as f64 - expected).abs();
    if discrepancy > 1.0 {
        return Err(ZetaError::RescanNeeded {
            found: zeros.len(),
            expected,
            discrepancy,
        });
    }
    ZeroCatalog::new(zeros, height, step)
}

/// [`build_catalog`], halving the step after each rescan request, at most
/// `max_halvings` times.
pub fn build_catalog_adaptive(height: f64, step: f64, max_halvings: u32) -> Result<ZeroCatalog, ZetaError> {
    let mut step = step;
    let mut attempt = 0;
    loop {
        match build_catalog(height, step) {
            Err(ZetaError::RescanNeeded { .. }) if attempt < max_halvings => {
                step /= 2.0;
                attempt += 1;
            }
            other => return other,
        }
    }
}

/// Counts zeros up to `height` and compares with the smooth estimate.
pub fn verify_on_line(height: f64, step: f64) -> Result<RegionScanResult, ZetaError> {
    let catalog = build_catalog(height, step)?;
    Ok(scan_result(&catalog))
}

/// The accounting for an existing catalog.
pub fn scan_result(catalog: &ZeroCatalog) -> RegionScanResult {
    let height = catalog.height();
    let estimate = rvm_count(height.max(10.0)).unwrap_or(f64::NAN);
    RegionScanResult {
        height,
        sign_change_count: catalog.len(),
        rvm_estimate: estimate,
        discrepancy: (catalog.len() as f64 - estimate).abs(),
    }
}

fn refine(mut a: f64, mut b: f64) -> Result<(f64, f64), ZetaError> {
    if a == b {
        return Ok((a, b));
    }
    let mut za = hardy_z(a)?;
    while (b - a) / 2.0 > REFINE_TOL {
        let mid = 0.5 * (a + b);
        let zm = hardy_z(mid)?;
        if zm == 0.0 {
            return Ok((mid, mid));
        }
        if (zm < 0.0) == (za < 0.0) {
            a = mid;
            za = zm;
        } else {
            b = mid;
        }
    }
    Ok((a, b))
}

fn record(index: usize, lo: f64, hi: f64) -> ZeroRecord {
    ZeroRecord {
        index,
        ordinate: 0.5 * (lo + hi),
        bracket: (lo, hi),
        tolerance: 0.5 * (hi - lo),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rvm_values() {
        assert!((rvm_count(100.0).unwrap() - 29.002_343_587_325_35).abs() < 1e-10);
        assert!((rvm_count(50.0).unwrap() - 9.422_781_789_846_384).abs() < 1e-10);
        assert!(rvm_count(10.0).unwrap() < 1.0);
        assert!(rvm_count(9.0).is_err());
    }

    #[test]
    fn small_catalogs() {
        assert!(build_catalog(10.0, 0.1).unwrap().is_empty());
        let c = build_catalog(15.0, 0.1).unwrap();
        assert_eq!(c.len(), 1);
        let z = c.zeros()[0];
        assert!((z.ordinate - 14.134_725_141_734_693).abs() < 1e-8);
        assert!(z.tolerance <= REFINE_TOL);
        assert!(z.bracket.0 <= z.ordinate && z.ordinate <= z.bracket.1);
    }

    #[test]
    fn scan_argument_checks() {
        assert!(matches!(build_catalog(5.0, 0.1), Err(ZetaError::Domain(_))));
        assert!(matches!(build_catalog(20.0, 0.0), Err(ZetaError::Domain(_))));
        assert!(matches!(build_catalog(20.0, 0.6), Err(ZetaError::Domain(_))));
    }

    #[test]
    fn step_does_not_change_the_catalog() {
        // the smallest zero gap below 100 is about 1.2, so any step up to 0.5
        // finds the same zeros, refined to the same brackets up to REFINE_TOL
        let coarse = build_catalog_adaptive(100.0, 0.5, 2).unwrap();
        let fine = build_catalog(100.0, 0.1).unwrap();
        assert_eq!(coarse.len(), 29);
        for (a, b) in coarse.zeros().iter().zip(fine.zeros()) {
            assert!((a.ordinate - b.ordinate).abs() <= 2.0 * REFINE_TOL);
        }
    }

    #[test]
    fn catalog_validation() {
        let r = |i, g| record(i, g - 1e-10, g + 1e-10);
        assert!(ZeroCatalog::new(vec![r(1, 14.0), r(2, 21.0)], 30.0, 0.1).is_ok());
        assert!(ZeroCatalog::new(vec![r(1, 21.0), r(2, 14.0)], 30.0, 0.1).is_err());
        assert!(ZeroCatalog::new(vec![r(1, 14.0), r(2, 14.0 + 1e-7)], 30.0, 0.1).is_err());
        assert!(ZeroCatalog::new(vec![r(1, 31.0)], 30.0, 0.1).is_err());
        assert!(ZeroCatalog::new(vec![r(2, 14.0)], 30.0, 0.1).is_err());
    }
}
