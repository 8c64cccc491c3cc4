use rayon::prelude::*;

use super::PrimeError;

/// Default upper bound on sieved ranges.
pub const DEFAULT_LIMIT: u64 = 1_000_000_000;

/// Odd entries per sieve chunk (2^20, a multiple of the 64-bit word size).
pub const CHUNK_ODDS: usize = 1 << 20;

/// Exact primality over a half-open range `[lo, hi)`.
///
/// Only odd numbers are stored: bit `i` of the packed bitmap stands for
/// `first_odd + 2 * i`. Whether 2 lies in the range is tracked separately.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrimeTable {
    lo: u64,
    hi: u64,
    first_odd: u64,
    odd_len: usize,
    words: Vec<u64>,
    has_two: bool,
    count: u64,
}

impl PrimeTable {
    pub fn lo(&self) -> u64 {
        self.lo
    }

    pub fn hi(&self) -> u64 {
        self.hi
    }

    /// Number of primes in `[lo, hi)`.
    pub fn count(&self) -> u64 {
        self.count
    }

    pub fn contains(&self, n: u64) -> bool {
        self.lo <= n && n < self.hi
    }

    /// Primality of `n`. Numbers outside `[lo, hi)` report `false`.
    pub fn is_prime(&self, n: u64) -> bool {
        if !self.contains(n) {
            return false;
        }
        if n == 2 {
            return self.has_two;
        }
        if n % 2 == 0 {
            return false;
        }
        let i = ((n - self.first_odd) / 2) as usize;
        self.words[i / 64] >> (i % 64) & 1 == 1
    }

    /// The primes of the range in ascending order.
    pub fn primes(&self) -> impl Iterator<Item = u64> + '_ {
        let two = self.has_two.then_some(2);
        let first_odd = self.first_odd;
        let odd = self.words.iter().enumerate().flat_map(move |(w, &word)| {
            BitIter(word).map(move |b| first_odd + 2 * (w as u64 * 64 + b as u64))
        });
        two.into_iter().chain(odd)
    }

    /// Number of odd integers covered by the bitmap.
    pub fn odd_len(&self) -> usize {
        self.odd_len
    }

    /// The packed odd-only bitmap, least significant bit first.
    pub fn odd_bitmap_bytes(&self) -> Vec<u8> {
        let n_bytes = self.odd_len.div_ceil(8);
        self.words
            .iter()
            .flat_map(|w| w.to_le_bytes())
            .take(n_bytes)
            .collect()
    }

    /// Rebuilds a table from its packed odd-only bitmap. The bitmap is taken
    /// on trust; only its length is checked.
    pub fn from_odd_bitmap(lo: u64, hi: u64, bytes: &[u8]) -> Option<PrimeTable> {
        if hi <= lo {
            return None;
        }
        let (first_odd, odd_len) = odd_span(lo, hi);
        if bytes.len() != odd_len.div_ceil(8) {
            return None;
        }
        let mut words = vec![0u64; odd_len.div_ceil(64)];
        for (i, &b) in bytes.iter().enumerate() {
            words[i / 8] |= u64::from(b) << (8 * (i % 8));
        }
        mask_tail(&mut words, odd_len);
        Some(PrimeTable::assemble(lo, hi, first_odd, odd_len, words))
    }

    fn assemble(lo: u64, hi: u64, first_odd: u64, odd_len: usize, words: Vec<u64>) -> Self {
        let has_two = lo <= 2 && 2 < hi;
        let count = words.iter().map(|w| u64::from(w.count_ones())).sum::<u64>() + u64::from(has_two);
        PrimeTable {
            lo,
            hi,
            first_odd,
            odd_len,
            words,
            has_two,
            count,
        }
    }
}

struct BitIter(u64);

impl Iterator for BitIter {
    type Item = u32;

    fn next(&mut self) -> Option<u32> {
        if self.0 == 0 {
            return None;
        }
        let b = self.0.trailing_zeros();
        self.0 &= self.0 - 1;
        Some(b)
    }
}

/// Segmented odd-only sieve of Eratosthenes with a configurable range cap.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Sieve {
    limit: u64,
}

impl Default for Sieve {
    fn default() -> Self {
        Sieve {
            limit: DEFAULT_LIMIT,
        }
    }
}

impl Sieve {
    pub fn with_limit(limit: u64) -> Self {
        Sieve { limit }
    }

    pub fn limit(&self) -> u64 {
        self.limit
    }

    pub fn check_range(&self, lo: u64, hi: u64) -> Result<(), PrimeError> {
        if hi <= lo || hi > self.limit.saturating_add(1) {
            return Err(PrimeError::Range {
                lo,
                hi,
                limit: self.limit,
            });
        }
        Ok(())
    }

    /// Exact primality table for `[lo, hi)`.
    pub fn segment(&self, lo: u64, hi: u64) -> Result<PrimeTable, PrimeError> {
        self.check_range(lo, hi)?;
        let base = BasePrimes::up_to_sqrt_of(hi);
        let (first_odd, odd_len) = odd_span(lo, hi);
        let n_chunks = odd_len.div_ceil(CHUNK_ODDS).max(1);
        let chunks: Vec<Vec<u64>> = (0..n_chunks)
            .into_par_iter()
            .map(|j| {
                let start = j * CHUNK_ODDS;
                let len = CHUNK_ODDS.min(odd_len - start.min(odd_len));
                let mut words = vec![0u64; len.div_ceil(64)];
                sieve_odd_chunk(first_odd + 2 * start as u64, len, &base, &mut words);
                words
            })
            .collect();
        let words: Vec<u64> = chunks.into_iter().flatten().collect();
        Ok(PrimeTable::assemble(lo, hi, first_odd, odd_len, words))
    }

    /// Sieves `[lo, hi)` chunk by chunk and maps each chunk through `f`,
    /// returning the per-chunk results in ascending order.
    ///
    /// Chunks are processed in parallel; since the partition is fixed, any
    /// in-order reduction of the output is independent of scheduling.
    pub fn map_chunks<R, F>(&self, lo: u64, hi: u64, f: F) -> Result<Vec<R>, PrimeError>
    where
        R: Send,
        F: Fn(&PrimeTable) -> R + Sync,
    {
        self.check_range(lo, hi)?;
        let base = BasePrimes::up_to_sqrt_of(hi);
        let span = 2 * CHUNK_ODDS as u64;
        let n_chunks = (hi - lo).div_ceil(span);
        Ok((0..n_chunks)
            .into_par_iter()
            .map(|j| {
                let c_lo = lo + j * span;
                let c_hi = (c_lo + span).min(hi);
                let (first_odd, odd_len) = odd_span(c_lo, c_hi);
                let mut words = vec![0u64; odd_len.div_ceil(64)];
                sieve_odd_chunk(first_odd, odd_len, &base, &mut words);
                f(&PrimeTable::assemble(c_lo, c_hi, first_odd, odd_len, words))
            })
            .collect())
    }
}

/// Exact primality table for `[lo, hi)` under the default range cap.
pub fn sieve_segment(lo: u64, hi: u64) -> Result<PrimeTable, PrimeError> {
    Sieve::default().segment(lo, hi)
}

/// Odd primes up to `floor(sqrt(hi - 1))`, enough to sieve anything below `hi`.
pub(crate) struct BasePrimes(Vec<u64>);

impl BasePrimes {
    pub(crate) fn up_to_sqrt_of(hi: u64) -> Self {
        let root = crate::numeric::integer_root(hi.saturating_sub(1), 2) as usize;
        let mut composite = vec![false; root + 1];
        let mut out = Vec::new();
        for n in 3..=root {
            if n % 2 == 1 && !composite[n] {
                out.push(n as u64);
                let mut m = n * n;
                while m <= root {
                    composite[m] = true;
                    m += 2 * n;
                }
            }
        }
        BasePrimes(out)
    }

    pub(crate) fn as_slice(&self) -> &[u64] {
        &self.0
    }
}

/// First odd number `>= lo` and the count of odd numbers in `[lo, hi)`.
fn odd_span(lo: u64, hi: u64) -> (u64, usize) {
    let first_odd = lo | 1;
    let odd_len = if first_odd >= hi {
        0
    } else {
        ((hi - first_odd).div_ceil(2)) as usize
    };
    (first_odd, odd_len)
}

fn mask_tail(words: &mut [u64], len: usize) {
    if len % 64 != 0 {
        if let Some(last) = words.last_mut() {
            *last &= (1u64 << (len % 64)) - 1;
        }
    }
}

/// Marks primes among the `len` odd numbers starting at `first_odd`.
fn sieve_odd_chunk(first_odd: u64, len: usize, base: &BasePrimes, words: &mut [u64]) {
    words.fill(u64::MAX);
    mask_tail(words, len);
    if len == 0 {
        return;
    }
    if first_odd == 1 {
        words[0] &= !1;
    }
    let end = first_odd + 2 * len as u64;
    for &p in base.as_slice() {
        let sq = p * p;
        if sq >= end {
            break;
        }
        let mut m = first_odd.div_ceil(p) * p;
        if m % 2 == 0 {
            m += p;
        }
        let mut i = ((m.max(sq) - first_odd) / 2) as usize;
        let step = p as usize;
        while i < len {
            words[i / 64] &= !(1u64 << (i % 64));
            i += step;
        }
    }
}
