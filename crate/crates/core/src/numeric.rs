//! Small numeric helpers shared by the other modules.

use std::fmt::Write as _;

/// Neumaier's variant of Kahan summation.
///
/// The running compensation is kept separately and only folded in by
/// [`CompensatedSum::value`], so partial sums from independent segments can be
/// merged in a fixed order with [`CompensatedSum::merge`] and the result does
/// not depend on how the segments were scheduled.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct CompensatedSum {
    sum: f64,
    compensation: f64,
}

impl CompensatedSum {
    pub const fn new() -> Self {
        CompensatedSum {
            sum: 0.0,
            compensation: 0.0,
        }
    }

    #[inline]
    pub fn add(&mut self, value: f64) {
        let t = self.sum + value;
        if self.sum.abs() >= value.abs() {
            self.compensation += (self.sum - t) + value;
        } else {
            self.compensation += (value - t) + self.sum;
        }
        self.sum = t;
    }

    /// Folds another partial sum into this one.
    pub fn merge(&mut self, other: &CompensatedSum) {
        self.add(other.sum);
        self.add(other.compensation);
    }

    #[inline]
    pub fn value(&self) -> f64 {
        self.sum + self.compensation
    }
}

impl Extend<f64> for CompensatedSum {
    fn extend<I: IntoIterator<Item = f64>>(&mut self, iter: I) {
        for v in iter {
            self.add(v);
        }
    }
}

impl FromIterator<f64> for CompensatedSum {
    fn from_iter<I: IntoIterator<Item = f64>>(iter: I) -> Self {
        let mut s = CompensatedSum::new();
        s.extend(iter);
        s
    }
}

/// Largest `r` with `r^k <= n`.
pub fn integer_root(n: u64, k: u32) -> u64 {
    assert!(k >= 1, "root index must be positive");
    if k == 1 || n < 2 {
        return n;
    }
    let mut r = (n as f64).powf(1.0 / f64::from(k)).round() as u64;
    // the float guess can be off by one in either direction
    while r > 0 && pow_exceeds(r, k, n) {
        r -= 1;
    }
    while !pow_exceeds(r + 1, k, n) {
        r += 1;
    }
    r
}

/// `base^k > limit`, without overflow.
fn pow_exceeds(base: u64, k: u32, limit: u64) -> bool {
    let mut acc: u64 = 1;
    for _ in 0..k {
        match acc.checked_mul(base) {
            Some(v) if v <= limit => acc = v,
            _ => return true,
        }
    }
    false
}

/// Formats a real the way C's `%.12g` does.
///
/// Every real that leaves the crate in a CSV table or a zero cache goes
/// through here, so the text is reproducible across runs and platforms.
pub fn fmt_g12(x: f64) -> String {
    fmt_sig(x, 12)
}

pub fn fmt_sig(x: f64, digits: usize) -> String {
    if x.is_nan() {
        return "nan".to_string();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf" } else { "-inf" }.to_string();
    }
    if x == 0.0 {
        return if x.is_sign_negative() { "-0" } else { "0" }.to_string();
    }
    let digits = digits.max(1);
    // `{:e}` rounds correctly; read the exponent back from it
    let sci = format!("{:.*e}", digits - 1, x);
    let (mantissa, exp) = sci.split_once('e').expect("exponent marker");
    let exp: i32 = exp.parse().expect("integer exponent");
    let mut out = String::new();
    if exp < -4 || exp >= digits as i32 {
        let m = strip_zeros(mantissa);
        let _ = write!(out, "{}e{}{:02}", m, if exp < 0 { '-' } else { '+' }, exp.abs());
    } else {
        let decimals = (digits as i32 - 1 - exp).max(0) as usize;
        out = strip_zeros(&format!("{:.*}", decimals, x)).to_string();
    }
    out
}

fn strip_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn compensated_sum_recovers_lost_bits() {
        let mut s = CompensatedSum::new();
        s.add(1.0);
        for _ in 0..10 {
            s.add(1e-16);
        }
        s.add(-1.0);
        assert!((s.value() - 1e-15).abs() < 1e-30);
    }

    #[test]
    fn merge_matches_sequential() {
        let xs: Vec<f64> = (1..2000).map(|i| (i as f64).ln()).collect();
        let whole: CompensatedSum = xs.iter().copied().collect();
        let mut a: CompensatedSum = xs[..700].iter().copied().collect();
        let b: CompensatedSum = xs[700..].iter().copied().collect();
        a.merge(&b);
        assert!((a.value() - whole.value()).abs() <= 1e-12 * whole.value());
    }

    #[test]
    fn integer_roots() {
        assert_eq!(integer_root(1_000_000, 3), 100);
        assert_eq!(integer_root(999_999, 3), 99);
        assert_eq!(integer_root(1_000_000, 2), 1000);
        assert_eq!(integer_root(u64::MAX, 2), 4_294_967_295);
        assert_eq!(integer_root(1 << 40, 40), 2);
        assert_eq!(integer_root((1 << 40) - 1, 40), 1);
        assert_eq!(integer_root(0, 5), 0);
    }

    #[test]
    fn g12_matches_printf() {
        assert_eq!(fmt_g12(14.134725141734693), "14.1347251417");
        assert_eq!(fmt_g12(94.0), "94");
        assert_eq!(fmt_g12(0.5), "0.5");
        assert_eq!(fmt_g12(1e-7), "1e-07");
        assert_eq!(fmt_g12(-2.5e15), "-2.5e+15");
        assert_eq!(fmt_g12(123456789012.0), "123456789012");
        assert_eq!(fmt_g12(1234567890123.0), "1.23456789012e+12");
        assert_eq!(fmt_g12(0.0001234), "0.0001234");
        assert_eq!(fmt_g12(0.0), "0");
    }
}
