use serde::Serialize;

use super::sieve::{BasePrimes, Sieve};
use super::PrimeError;
use crate::numeric::{integer_root, CompensatedSum};

/// `θ(x)`, `ψ(x)` and `π(x)` at one abscissa.
///
/// Both sums are right-continuous: a prime power equal to `x` is included.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ChebyshevValue {
    pub x: f64,
    /// Σ log p over primes p ≤ x.
    pub theta: f64,
    /// Σ log p over prime powers p^k ≤ x.
    pub psi: f64,
    pub pi_count: u64,
}

impl ChebyshevValue {
    pub fn zero(x: f64) -> Self {
        ChebyshevValue {
            x,
            theta: 0.0,
            psi: 0.0,
            pi_count: 0,
        }
    }
}

/// Primes in a short interval `(x, x + y]`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct IntervalCensus {
    pub x: f64,
    pub y: f64,
    pub prime_count: u64,
    /// Σ log p over the primes in the interval.
    pub log_sum: f64,
}

/// `floor(x)` for a non-negative finite abscissa.
pub(crate) fn floor_index(x: f64) -> Result<u64, PrimeError> {
    if x.is_nan() || x < 0.0 {
        return Err(PrimeError::InvalidArgument(format!(
            "abscissa must be a non-negative real, got {x}"
        )));
    }
    if !x.is_finite() || x >= u64::MAX as f64 {
        return Err(PrimeError::InvalidArgument(format!("abscissa {x} is not representable")));
    }
    Ok(x.floor() as u64)
}

#[derive(Default)]
struct ChunkSums {
    count: u64,
    theta: CompensatedSum,
    psi: CompensatedSum,
}

impl Sieve {
    /// Exact number of primes `<= x`.
    pub fn prime_pi(&self, x: f64) -> Result<u64, PrimeError> {
        let n = floor_index(x)?;
        if n < 2 {
            return Ok(0);
        }
        Ok(self.map_chunks(0, n + 1, |t| t.count())?.iter().sum())
    }

    /// `θ`, `ψ` and `π` at `x`, with `ψ` summed by direct prime-power
    /// enumeration.
    pub fn chebyshev_values(&self, x: f64) -> Result<ChebyshevValue, PrimeError> {
        let n = floor_index(x)?;
        if n < 2 {
            return Ok(ChebyshevValue::zero(x));
        }
        let root = integer_root(n, 2);
        let parts = self.map_chunks(0, n + 1, |t| {
            let mut s = ChunkSums::default();
            for p in t.primes() {
                let lp = (p as f64).ln();
                s.count += 1;
                s.theta.add(lp);
                s.psi.add(lp);
                if p <= root {
                    let mut q = p * p;
                    loop {
                        s.psi.add(lp);
                        match q.checked_mul(p) {
                            Some(next) if next <= n => q = next,
                            _ => break,
                        }
                    }
                }
            }
            s
        })?;
        let mut total = ChunkSums::default();
        for s in &parts {
            total.count += s.count;
            total.theta.merge(&s.theta);
            total.psi.merge(&s.psi);
        }
        Ok(ChebyshevValue {
            x,
            theta: total.theta.value(),
            psi: total.psi.value(),
            pi_count: total.count,
        })
    }

    /// `θ(x)` alone.
    pub fn theta(&self, x: f64) -> Result<f64, PrimeError> {
        let n = floor_index(x)?;
        theta_upto(self, n)
    }

    /// `ψ(x)` through the identity ψ(x) = Σ_{k ≥ 1} θ(x^{1/k}), using exact
    /// integer roots. An independent route from [`Sieve::chebyshev_values`].
    pub fn psi_via_theta(&self, x: f64) -> Result<f64, PrimeError> {
        let n = floor_index(x)?;
        let mut acc = CompensatedSum::new();
        let mut k = 1;
        while k < 64 && (1u64 << k) <= n {
            acc.add(theta_upto(self, integer_root(n, k))?);
            k += 1;
        }
        Ok(acc.value())
    }

    /// Primes in `(x, x + y]`.
    pub fn interval_census(&self, x: f64, y: f64) -> Result<IntervalCensus, PrimeError> {
        if y.is_nan() || y < 0.0 {
            return Err(PrimeError::InvalidArgument(format!("interval length must be >= 0, got {y}")));
        }
        let a = floor_index(x)?;
        let b = floor_index(x + y)?;
        let mut census = IntervalCensus {
            x,
            y,
            prime_count: 0,
            log_sum: 0.0,
        };
        if b <= a {
            return Ok(census);
        }
        let parts = self.map_chunks(a + 1, b + 1, |t| {
            let mut s = CompensatedSum::new();
            for p in t.primes() {
                s.add((p as f64).ln());
            }
            (t.count(), s)
        })?;
        let mut sum = CompensatedSum::new();
        for (c, s) in &parts {
            census.prime_count += c;
            sum.merge(s);
        }
        census.log_sum = sum.value();
        Ok(census)
    }
}

fn theta_upto(sieve: &Sieve, n: u64) -> Result<f64, PrimeError> {
    if n < 2 {
        return Ok(0.0);
    }
    let parts = sieve.map_chunks(0, n + 1, |t| {
        t.primes().map(|p| (p as f64).ln()).collect::<CompensatedSum>()
    })?;
    let mut total = CompensatedSum::new();
    for s in &parts {
        total.merge(s);
    }
    Ok(total.value())
}

/// Exact number of primes `<= x`.
pub fn prime_pi(x: f64) -> Result<u64, PrimeError> {
    Sieve::default().prime_pi(x)
}

/// `θ(x)`, `ψ(x)` and `π(x)` by exact summation over a fresh sieve.
pub fn chebyshev_values(x: f64) -> Result<ChebyshevValue, PrimeError> {
    Sieve::default().chebyshev_values(x)
}

/// Primes in `(x, x + y]` and the sum of their logarithms.
pub fn interval_census(x: f64, y: f64) -> Result<IntervalCensus, PrimeError> {
    Sieve::default().interval_census(x, y)
}

/// Precomputed prime tables up to a fixed bound, for sweeps that query
/// `π`, `θ` and `ψ` at very many abscissas.
///
/// `θ` and `ψ` are read from prefix tables accumulated with compensated
/// summation, so each lookup is a binary search.
#[derive(Clone, Debug)]
pub struct PrimeIndex {
    limit: u64,
    primes: Vec<u32>,
    /// `theta_prefix[i]` is the sum of the logs of the first `i` primes.
    theta_prefix: Vec<f64>,
    /// Prime powers p^k with k ≥ 2, ascending, with log p.
    powers: Vec<(u64, f64)>,
    /// `power_prefix[i]` is the sum of the logs of the first `i` entries of `powers`.
    power_prefix: Vec<f64>,
}

impl PrimeIndex {
    /// Largest supported bound.
    pub const MAX_LIMIT: u64 = u32::MAX as u64 - 1;

    /// Builds tables covering every integer in `[0, limit]`.
    pub fn new(limit: u64) -> Result<PrimeIndex, PrimeError> {
        Self::with_sieve(&Sieve::default(), limit)
    }

    pub fn with_sieve(sieve: &Sieve, limit: u64) -> Result<PrimeIndex, PrimeError> {
        if limit > Self::MAX_LIMIT {
            return Err(PrimeError::Range {
                lo: 0,
                hi: limit + 1,
                limit: Self::MAX_LIMIT,
            });
        }
        let table = sieve.segment(0, limit + 1)?;
        let primes: Vec<u32> = table.primes().map(|p| p as u32).collect();
        let mut theta_prefix = Vec::with_capacity(primes.len() + 1);
        let mut acc = CompensatedSum::new();
        theta_prefix.push(0.0);
        for &p in &primes {
            acc.add(f64::from(p).ln());
            theta_prefix.push(acc.value());
        }

        let mut powers = Vec::new();
        let base = BasePrimes::up_to_sqrt_of(limit + 1);
        for p in std::iter::once(2u64).chain(base.as_slice().iter().copied()) {
            if p * p > limit {
                break;
            }
            let lp = (p as f64).ln();
            let mut q = p * p;
            while q <= limit {
                powers.push((q, lp));
                q = match q.checked_mul(p) {
                    Some(v) => v,
                    None => break,
                };
            }
        }
        powers.sort_by_key(|&(q, _)| q);
        let mut power_prefix = Vec::with_capacity(powers.len() + 1);
        let mut acc = CompensatedSum::new();
        power_prefix.push(0.0);
        for &(_, lp) in &powers {
            acc.add(lp);
            power_prefix.push(acc.value());
        }
        Ok(PrimeIndex {
            limit,
            primes,
            theta_prefix,
            powers,
            power_prefix,
        })
    }

    /// Largest abscissa the index answers for.
    pub fn limit(&self) -> u64 {
        self.limit
    }

    fn index_of(&self, x: f64) -> Result<u64, PrimeError> {
        let n = floor_index(x)?;
        if n > self.limit {
            return Err(PrimeError::BeyondIndex { x, limit: self.limit });
        }
        Ok(n)
    }

    fn count_upto(&self, n: u64) -> usize {
        self.primes.partition_point(|&p| u64::from(p) <= n)
    }

    fn powers_upto(&self, n: u64) -> usize {
        self.powers.partition_point(|&(q, _)| q <= n)
    }

    pub fn pi(&self, x: f64) -> Result<u64, PrimeError> {
        Ok(self.count_upto(self.index_of(x)?) as u64)
    }

    pub fn theta(&self, x: f64) -> Result<f64, PrimeError> {
        Ok(self.theta_prefix[self.count_upto(self.index_of(x)?)])
    }

    pub fn psi(&self, x: f64) -> Result<f64, PrimeError> {
        let n = self.index_of(x)?;
        Ok(self.theta_prefix[self.count_upto(n)] + self.power_prefix[self.powers_upto(n)])
    }

    pub fn values(&self, x: f64) -> Result<ChebyshevValue, PrimeError> {
        let n = self.index_of(x)?;
        let c = self.count_upto(n);
        Ok(ChebyshevValue {
            x,
            theta: self.theta_prefix[c],
            psi: self.theta_prefix[c] + self.power_prefix[self.powers_upto(n)],
            pi_count: c as u64,
        })
    }

    /// Primes in `(x, x + y]`.
    pub fn census(&self, x: f64, y: f64) -> Result<IntervalCensus, PrimeError> {
        if y.is_nan() || y < 0.0 {
            return Err(PrimeError::InvalidArgument(format!("interval length must be >= 0, got {y}")));
        }
        let a = self.index_of(x)?;
        let b = self.index_of(x + y)?;
        let (ca, cb) = (self.count_upto(a), self.count_upto(b));
        // sum directly rather than differencing prefixes: short intervals far
        // out would otherwise lose most of their digits
        let log_sum = self.primes[ca..cb]
            .iter()
            .map(|&p| f64::from(p).ln())
            .collect::<CompensatedSum>()
            .value();
        Ok(IntervalCensus {
            x,
            y,
            prime_count: (cb - ca) as u64,
            log_sum,
        })
    }

    /// Prime counts only, for sweeps that need nothing else.
    pub fn count_between(&self, x: f64, x_plus_y: f64) -> Result<u64, PrimeError> {
        let a = self.index_of(x)?;
        let b = self.index_of(x_plus_y)?;
        Ok(self.count_upto(b).saturating_sub(self.count_upto(a)) as u64)
    }

    /// The jump points of `ψ` in `(lo, hi]` with their jump sizes `log p`,
    /// ascending.
    pub fn jumps(&self, lo: u64, hi: u64) -> impl Iterator<Item = (u64, f64)> + '_ {
        let hi = hi.min(self.limit);
        let p0 = self.count_upto(lo);
        let p1 = self.count_upto(hi).max(p0);
        let q0 = self.powers_upto(lo);
        let q1 = self.powers_upto(hi).max(q0);
        MergeJumps {
            primes: self.primes[p0..p1].iter().peekable(),
            powers: self.powers[q0..q1].iter().peekable(),
        }
    }

    pub fn primes(&self) -> &[u32] {
        &self.primes
    }
}

struct MergeJumps<'a> {
    primes: std::iter::Peekable<std::slice::Iter<'a, u32>>,
    powers: std::iter::Peekable<std::slice::Iter<'a, (u64, f64)>>,
}

impl Iterator for MergeJumps<'_> {
    type Item = (u64, f64);

    fn next(&mut self) -> Option<(u64, f64)> {
        match (self.primes.peek(), self.powers.peek()) {
            (Some(&&p), Some(&&(q, _))) if u64::from(p) < q => {
                self.primes.next();
                Some((u64::from(p), f64::from(p).ln()))
            }
            (_, Some(_)) => self.powers.next().copied(),
            (Some(_), None) => self.primes.next().map(|&p| (u64::from(p), f64::from(p).ln())),
            (None, None) => None,
        }
    }
}
