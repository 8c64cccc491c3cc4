//! Chebyshev functions, zeta zeros on the critical line, the truncated
//! explicit formula for ψ, and numerical checks of short-interval prime
//! bounds.
//!
//! ```
//! use zrl::primes::PrimeIndex;
//! use zrl::region::RegionVerifier;
//!
//! let idx = PrimeIndex::new(2_000).unwrap();
//! assert_eq!(idx.pi(1_000.0).unwrap(), 168);
//! assert!(RegionVerifier::new(&idx).check_bhp(1_000.0).unwrap().pass);
//! ```

// `!(x >= lo)` is how NaN gets rejected along with small values
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod explicit;
pub mod numeric;
pub mod primes;
pub mod region;
pub mod table;
pub mod zeta;

// the guide's snippets run as doctests
#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    pub mod introduction {}
    #[doc = include_str!("../../../book/src/primes.md")]
    pub mod primes {}
    #[doc = include_str!("../../../book/src/zeta.md")]
    pub mod zeta {}
    #[doc = include_str!("../../../book/src/explicit.md")]
    pub mod explicit {}
    #[doc = include_str!("../../../book/src/short_intervals.md")]
    pub mod short_intervals {}
    #[doc = include_str!("../../../book/src/cli.md")]
    pub mod cli {}
}
