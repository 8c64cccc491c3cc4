//! Exact prime generation and the Chebyshev functions.
//!
//! Everything here is exact arithmetic over a segmented sieve; it is the
//! ground truth that the analytic side of the crate is measured against.

mod cache;
mod chebyshev;
mod sieve;

pub use cache::{read_table, write_table, SegmentCache, TABLE_MAGIC};
pub use chebyshev::{
    chebyshev_values, interval_census, prime_pi, ChebyshevValue, IntervalCensus, PrimeIndex,
};
pub use sieve::{sieve_segment, PrimeTable, Sieve, CHUNK_ODDS, DEFAULT_LIMIT};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum PrimeError {
    #[error("range [{lo}, {hi}) is empty or exceeds the sieve limit {limit}")]
    Range { lo: u64, hi: u64, limit: u64 },
    #[error("x = {x} lies beyond the prime index limit {limit}")]
    BeyondIndex { x: f64, limit: u64 },
    #[error("{0}")]
    InvalidArgument(String),
    #[error("segment cache: {0}")]
    Cache(String),
}
