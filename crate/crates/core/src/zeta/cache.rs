//! Plain-text zero cache.
//!
//! ```text
//! # zrl-zeros v1 T=<height> step=<step>
//! 1<TAB>14.1347251417
//! 2<TAB>21.0220396388
//! ```
//!
//! Ordinates are written to 12 significant digits. Loading re-checks the
//! ordering and re-evaluates `Z` at the first and last three ordinates, so a
//! damaged or hand-edited file is refused rather than silently trusted.

use std::io::{BufRead, Write};

use super::catalog::{ZeroCatalog, ZeroRecord};
use super::hardy::hardy_z;
use super::ZetaError;
use crate::numeric::fmt_g12;

pub const CACHE_HEADER_PREFIX: &str = "# zrl-zeros v1";

/// Largest `|Z(γ)|` accepted when spot-checking a loaded ordinate.
pub const SPOT_CHECK_TOL: f64 = 1e-4;

pub fn store_catalog<W: Write>(catalog: &ZeroCatalog, mut out: W) -> std::io::Result<()> {
    writeln!(
        out,
        "{CACHE_HEADER_PREFIX} T={} step={}",
        fmt_g12(catalog.height()),
        fmt_g12(catalog.scan_step())
    )?;
    for z in catalog.zeros() {
        writeln!(out, "{}\t{}", z.index, fmt_g12(z.ordinate))?;
    }
    out.flush()
}

/// Error from [`load_catalog`], pointing at the offending line (1-based).
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
#[error("zero cache invalid at line {line}: {reason}")]
pub struct CacheInvalid {
    pub line: usize,
    pub reason: String,
}

fn invalid(line: usize, reason: impl Into<String>) -> CacheInvalid {
    CacheInvalid {
        line,
        reason: reason.into(),
    }
}

/// Half a unit in the twelfth significant digit of `x`: the rounding
/// uncertainty of a stored ordinate.
fn print_resolution(x: f64) -> f64 {
    0.5 * 10f64.powi(x.abs().log10().floor() as i32 - 11)
}

pub fn load_catalog<R: BufRead>(input: R) -> Result<ZeroCatalog, CacheInvalid> {
    let mut lines = input.lines();
    let header = match lines.next() {
        Some(Ok(h)) => h,
        Some(Err(e)) => return Err(invalid(1, e.to_string())),
        None => return Err(invalid(1, "empty file")),
    };
    let (height, step) = parse_header(&header).ok_or_else(|| invalid(1, format!("bad header {header:?}")))?;

    let mut parsed: Vec<(usize, usize, f64)> = Vec::new();
    for (i, line) in lines.enumerate() {
        let lineno = i + 2;
        let line = line.map_err(|e| invalid(lineno, e.to_string()))?;
        if line.trim().is_empty() {
            continue;
        }
        let (idx, ord) = line
            .split_once('\t')
            .ok_or_else(|| invalid(lineno, "expected index<TAB>ordinate"))?;
        let index: usize = idx.trim().parse().map_err(|_| invalid(lineno, format!("bad index {idx:?}")))?;
        let ordinate: f64 = ord
            .trim()
            .parse()
            .map_err(|_| invalid(lineno, format!("bad ordinate {ord:?}")))?;
        if !(ordinate.is_finite() && ordinate > 0.0) {
            return Err(invalid(lineno, format!("ordinate {ordinate} is not positive")));
        }
        parsed.push((lineno, index, ordinate));
    }
    for w in parsed.windows(2) {
        if w[1].2 <= w[0].2 {
            return Err(invalid(
                w[1].0,
                format!("ordinate {} does not exceed the previous {}", w[1].2, w[0].2),
            ));
        }
    }
    let mut zeros: Vec<ZeroRecord> = Vec::with_capacity(parsed.len());
    let mut line_of = Vec::with_capacity(parsed.len());
    for (i, &(lineno, index, ordinate)) in parsed.iter().enumerate() {
        if index != i + 1 {
            return Err(invalid(lineno, format!("expected index {}, found {index}", i + 1)));
        }
        if ordinate >= height {
            return Err(invalid(lineno, format!("ordinate {ordinate} is not below T={height}")));
        }
        let half = print_resolution(ordinate);
        zeros.push(ZeroRecord {
            index,
            ordinate,
            bracket: (ordinate - half, ordinate + half),
            tolerance: half,
        });
        line_of.push(lineno);
    }

    let n = zeros.len();
    let spot: Vec<usize> = (0..n.min(3)).chain(n.saturating_sub(3).max(3.min(n))..n).collect();
    for i in spot {
        let g = zeros[i].ordinate;
        let z = hardy_z(g).map_err(|e| invalid(line_of[i], e.to_string()))?;
        if z.abs() >= SPOT_CHECK_TOL {
            return Err(invalid(line_of[i], format!("|Z({g})| = {:.3e} is not a zero", z.abs())));
        }
    }

    ZeroCatalog::new(zeros, height, step).map_err(|e: ZetaError| invalid(1, e.to_string()))
}

fn parse_header(h: &str) -> Option<(f64, f64)> {
    let rest = h.strip_prefix(CACHE_HEADER_PREFIX)?.trim();
    let mut height = None;
    let mut step = None;
    for field in rest.split_whitespace() {
        match field.split_once('=')? {
            ("T", v) => height = v.parse::<f64>().ok(),
            ("step", v) => step = v.parse::<f64>().ok(),
            _ => return None,
        }
    }
    match (height?, step?) {
        (t, s) if t > 0.0 && s > 0.0 => Some((t, s)),
        _ => None,
    }
}
