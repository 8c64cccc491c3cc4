//! ζ(s) on the critical strip and its zeros on the critical line.

mod cache;
mod catalog;
mod eta;
mod gamma;
mod hardy;

pub use cache::{load_catalog, store_catalog, CacheInvalid, CACHE_HEADER_PREFIX, SPOT_CHECK_TOL};
pub use catalog::{
    build_catalog, build_catalog_adaptive, rvm_count, scan_result, verify_on_line, RegionScanResult,
    ZeroCatalog, ZeroRecord, DEFAULT_STEP, REFINE_TOL,
};
pub use eta::{borwein_terms, borwein_weights, eta_zeta, MAX_TERMS};
pub use gamma::ln_gamma;
pub use hardy::{hardy_z, riemann_siegel_theta, REALITY_TOL, Z_EVAL_TOL};

/// Complex argument or value of ζ.
pub type ComplexValue = num_complex::Complex64;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ZetaError {
    #[error("ζ has a pole at s = 1")]
    Pole,
    #[error("{0}")]
    Domain(String),
    #[error("1 − 2^(1−s) vanishes at s = 1 + 2πi·{k}/log 2; the eta quotient is undefined there")]
    PrefactorZero { k: i64 },
    #[error("accelerated series would need {needed} terms (max {max}); height too large")]
    TooManyTerms { needed: f64, max: usize },
    #[error("e^(iθ)ζ(1/2+it) at t = {t} has imaginary part {imag:e}")]
    NotReal { t: f64, imag: f64 },
    #[error("scan found {found} sign changes but the smooth count is {expected:.3} (off by {discrepancy:.3}); rescan with a smaller step")]
    RescanNeeded {
        found: usize,
        expected: f64,
        discrepancy: f64,
    },
    #[error("invalid catalog: {0}")]
    InvalidCatalog(String),
}
