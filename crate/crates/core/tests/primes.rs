use proptest::prelude::*;
use std::sync::OnceLock;

use zrl::primes::{read_table, sieve_segment, write_table, PrimeIndex, SegmentCache, Sieve};

const LIMIT: u64 = 200_000;

fn index() -> &'static PrimeIndex {
    static INDEX: OnceLock<PrimeIndex> = OnceLock::new();
    INDEX.get_or_init(|| PrimeIndex::new(LIMIT).unwrap())
}

fn is_prime_by_trial(n: u64) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| n % d != 0)
}

fn rel_close(a: f64, b: f64) -> bool {
    (a - b).abs() <= 1e-9 * b.abs().max(1.0)
}

#[test]
fn segment_examples() {
    let t = sieve_segment(2, 30).unwrap();
    assert_eq!(t.primes().collect::<Vec<_>>(), vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29]);
    assert_eq!(sieve_segment(0, 2).unwrap().count(), 0);
    assert_eq!(sieve_segment(90, 101).unwrap().primes().collect::<Vec<_>>(), vec![97]);
    assert!(sieve_segment(30, 2).is_err());
    assert!(Sieve::with_limit(1000).segment(0, 2000).is_err());
}

#[test]
fn segments_across_chunk_edges_match_trial_division() {
    // chunks hold 2^20 odd numbers, i.e. span 2^21 integers
    let edge = 1u64 << 21;
    let t = sieve_segment(edge - 500, edge + 500).unwrap();
    for n in t.lo()..t.hi() {
        assert_eq!(t.is_prime(n), is_prime_by_trial(n), "n = {n}");
    }
    assert_eq!(t.count(), t.primes().count() as u64);
}

#[test]
fn segment_cache_changes_nothing() {
    let dir = tempfile::tempdir().unwrap();
    let cache = SegmentCache::new(dir.path());
    let sieve = Sieve::default();
    let fresh = sieve.segment(1_000, 50_000).unwrap();
    let first = cache.segment(&sieve, 1_000, 50_000).unwrap();
    let second = cache.segment(&sieve, 1_000, 50_000).unwrap();
    assert_eq!(fresh, first);
    assert_eq!(fresh, second);
    let mut bytes = Vec::new();
    write_table(&fresh, &mut bytes).unwrap();
    assert_eq!(&bytes[..4], b"ZRL1");
    assert_eq!(read_table(bytes.as_slice()).unwrap(), fresh);
}

#[test]
fn both_psi_routes_on_a_grid() {
    let sieve = Sieve::default();
    for x in [2.0, 10.0, 100.0, 1000.5, 65_536.0, 199_999.5] {
        let direct = sieve.chebyshev_values(x).unwrap();
        let via = sieve.psi_via_theta(x).unwrap();
        assert!(rel_close(via, direct.psi), "x = {x}");
        assert!(rel_close(index().psi(x).unwrap(), direct.psi), "x = {x}");
        assert_eq!(index().pi(x).unwrap(), direct.pi_count);
    }
}

proptest! {
    #[test]
    fn chebyshev_functions_are_monotone(a in 0.0..LIMIT as f64, b in 0.0..LIMIT as f64) {
        let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
        let (u, v) = (index().values(lo).unwrap(), index().values(hi).unwrap());
        prop_assert!(u.pi_count <= v.pi_count);
        prop_assert!(u.theta <= v.theta);
        prop_assert!(u.psi <= v.psi);
    }

    #[test]
    fn theta_psi_pi_ordering(x in 2.0..LIMIT as f64) {
        let v = index().values(x).unwrap();
        prop_assert!(0.0 <= v.theta && v.theta <= v.psi);
        prop_assert!(v.psi <= v.pi_count as f64 * x.ln() + 1e-9);
    }

    #[test]
    fn below_two_everything_vanishes(x in 0.0..2.0f64) {
        let v = index().values(x).unwrap();
        prop_assert_eq!((v.theta, v.psi, v.pi_count), (0.0, 0.0, 0));
    }

    #[test]
    fn census_counts_are_pi_differences(x in 0.0..100_000.0f64, y in 0.0..50_000.0f64) {
        let c = index().census(x, y).unwrap();
        prop_assert_eq!(c.prime_count, index().pi(x + y).unwrap() - index().pi(x).unwrap());
        prop_assert_eq!(c.prime_count == 0, c.log_sum == 0.0);
        prop_assert!(c.log_sum <= c.prime_count as f64 * (x + y).ln() + 1e-9);
    }

    #[test]
    fn census_is_additive(x in 0u32..100_000, y1 in 0u32..40_000, y2 in 0u32..40_000) {
        let (x, y1, y2) = (f64::from(x), f64::from(y1), f64::from(y2));
        let whole = index().census(x, y1 + y2).unwrap();
        let a = index().census(x, y1).unwrap();
        let b = index().census(x + y1, y2).unwrap();
        prop_assert_eq!(whole.prime_count, a.prime_count + b.prime_count);
        prop_assert!(rel_close(whole.log_sum, a.log_sum + b.log_sum));
    }

    #[test]
    fn psi_routes_agree(x in 2.0..50_000.0f64) {
        let sieve = Sieve::default();
        let via = sieve.psi_via_theta(x).unwrap();
        prop_assert!(rel_close(via, index().psi(x).unwrap()));
        prop_assert!(rel_close(sieve.theta(x).unwrap(), index().theta(x).unwrap()));
    }

    #[test]
    fn segments_match_trial_division(lo in 0u64..100_000, len in 1u64..2_000) {
        let t = sieve_segment(lo, lo + len).unwrap();
        let mut count = 0;
        for n in lo..lo + len {
            let p = is_prime_by_trial(n);
            prop_assert_eq!(t.is_prime(n), p);
            count += u64::from(p);
        }
        prop_assert_eq!(t.count(), count);
    }
}
