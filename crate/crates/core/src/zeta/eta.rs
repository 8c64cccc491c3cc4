//! ζ(s) on `Re s > 0` from the alternating (Dirichlet eta) series
//!
//! ```text
//! ζ(s) = (1 − 2^{1−s})^{-1} Σ_{n≥1} (−1)^{n−1} n^{−s}
//! ```
//!
//! summed with Borwein's Chebyshev-weighted acceleration: with
//! `d_k = n Σ_{i≤k} (n+i−1)! 4^i / ((n−i)! (2i)!)`,
//!
//! ```text
//! η(s) ≈ Σ_{k<n} (−1)^k (d_n − d_k)/d_n · (k+1)^{−s}
//! ```
//!
//! and for `Re s ≥ 1/2` the truncation error of ζ is at most
//! `3 (1 + 2|t|) e^{π|t|/2} / ((3 + √8)^n |1 − 2^{1−s}|)`. The term count is
//! chosen from that bound. Left of the critical line the functional
//! equation reflects the argument across it first.

use num_complex::Complex64;
use std::f64::consts::{LN_2, PI};

use super::gamma::ln_gamma;
use super::ZetaError;

/// Largest accepted term count; covers `|t|` up to roughly 2·10⁴.
pub const MAX_TERMS: usize = 20_000;

/// Below this `|1 − 2^{1−s}|` is treated as one of the prefactor's zeros.
const PREFACTOR_FLOOR: f64 = 1e-12;

/// ζ(s) for `Re s > 0`, `s ≠ 1`, with truncation error at most `tol`.
pub fn eta_zeta(s: Complex64, tol: f64) -> Result<Complex64, ZetaError> {
    if !(tol > 0.0 && tol.is_finite()) {
        return Err(ZetaError::Domain(format!("tolerance must be positive, got {tol}")));
    }
    if !(s.re.is_finite() && s.im.is_finite()) {
        return Err(ZetaError::Domain(format!("non-finite argument {s}")));
    }
    if s.re <= 0.0 {
        return Err(ZetaError::Domain(format!(
            "the eta continuation needs Re s > 0, got {s}"
        )));
    }
    if s == Complex64::new(1.0, 0.0) {
        return Err(ZetaError::Pole);
    }
    // evaluate in the upper half plane so conjugate symmetry holds exactly
    if s.im < 0.0 {
        return eta_zeta(s.conj(), tol).map(|z| z.conj());
    }
    if s.re < 0.5 {
        return reflected(s, tol);
    }
    upper_right(s, tol)
}

/// Number of Borwein terms needed for truncation error `tol` at `s`.
pub fn borwein_terms(s: Complex64, tol: f64) -> Result<usize, ZetaError> {
    let t = s.im.abs();
    let prefactor = (1.0 - ((1.0 - s) * LN_2).exp()).norm();
    let log_bound = (3.0 * (1.0 + 2.0 * t) / (tol * prefactor)).ln() + PI * t / 2.0;
    let n = (log_bound / (3.0 + 8f64.sqrt()).ln()).ceil().max(8.0);
    if n > MAX_TERMS as f64 {
        return Err(ZetaError::TooManyTerms {
            needed: n,
            max: MAX_TERMS,
        });
    }
    Ok(n as usize)
}

/// The weights `(d_n − d_k)/d_n` for `k = 0..n`.
///
/// Worked in logs and rescaled by the largest term: `d_n` itself overflows a
/// double once `n` passes about 400.
pub fn borwein_weights(n: usize) -> Vec<f64> {
    let nf = n as f64;
    let mut logs = Vec::with_capacity(n + 1);
    // a_0 = (n-1)!/n! = 1/n
    let mut log_a = -nf.ln();
    logs.push(log_a);
    for i in 1..=n {
        let i = i as f64;
        log_a += (4.0 * (nf + i - 1.0) * (nf - i + 1.0) / (2.0 * i * (2.0 * i - 1.0))).ln();
        logs.push(log_a);
    }
    let peak = logs.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let scaled: Vec<f64> = logs.iter().map(|l| (l - peak).exp()).collect();
    // tail[k] = Σ_{i>k} a_i, accumulated from the small end
    let mut weights = vec![0.0; n];
    let mut tail = 0.0;
    for k in (0..n).rev() {
        tail += scaled[k + 1];
        weights[k] = tail;
    }
    let total = tail + scaled[0];
    weights.iter_mut().for_each(|w| *w /= total);
    weights
}

fn upper_right(s: Complex64, tol: f64) -> Result<Complex64, ZetaError> {
    let prefactor = 1.0 - ((1.0 - s) * LN_2).exp();
    if prefactor.norm() < PREFACTOR_FLOOR {
        return Err(ZetaError::PrefactorZero {
            k: (s.im * LN_2 / (2.0 * PI)).round() as i64,
        });
    }
    let n = borwein_terms(s, tol)?;
    let weights = borwein_weights(n);
    let mut eta = Complex64::new(0.0, 0.0);
    // smallest weights first
    for k in (0..n).rev() {
        let term = (-s * ((k + 1) as f64).ln()).exp() * weights[k];
        if k % 2 == 0 {
            eta += term;
        } else {
            eta -= term;
        }
    }
    Ok(eta / prefactor)
}

/// ζ(s) = χ(s) ζ(1 − s) with χ(s) = 2^s π^{s−1} sin(πs/2) Γ(1 − s), for
/// `0 < Re s < 1/2` and `Im s ≥ 0`.
fn reflected(s: Complex64, tol: f64) -> Result<Complex64, ZetaError> {
    let w = s * (PI / 2.0);
    // log sin w without overflowing e^{π t / 2}
    let ln_sin = if w.im > 1.0 {
        Complex64::new(0.0, 0.5).ln() - Complex64::i() * w + (1.0 - (Complex64::i() * 2.0 * w).exp()).ln()
    } else {
        w.sin().ln()
    };
    let ln_chi = s * LN_2 + (s - 1.0) * PI.ln() + ln_sin + ln_gamma(1.0 - s);
    let chi = ln_chi.exp();
    let inner_tol = tol / (2.0 * chi.norm().max(1.0));
    Ok(chi * upper_right(1.0 - s, inner_tol)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn assert_close(got: Complex64, want: Complex64, tol: f64) {
        assert!((got - want).norm() <= tol, "got {got}, want {want}");
    }

    #[test]
    fn closed_forms() {
        assert_close(eta_zeta(c(2.0, 0.0), 1e-12).unwrap(), c(PI * PI / 6.0, 0.0), 1e-12);
        assert_close(eta_zeta(c(4.0, 0.0), 1e-12).unwrap(), c(PI.powi(4) / 90.0, 0.0), 1e-12);
        // ζ(1/2) from mpmath
        assert_close(eta_zeta(c(0.5, 0.0), 1e-12).unwrap(), c(-1.460_354_508_809_586_8, 0.0), 1e-12);
    }

    #[test]
    fn matches_mpmath_in_the_strip() {
        let cases = [
            (c(2.0, 5.0), c(0.850_962_943_624_263, 0.098_996_946_134_831_35)),
            (c(0.3, 20.0), c(0.268_994_415_753_986_9, -1.288_423_418_048_303_8)),
            (c(0.7, 50.0), c(0.186_428_549_149_155_4, 0.323_461_184_379_179_35)),
            (c(0.5, 100.0), c(2.692_619_885_681_324, -0.020_386_029_602_598_16)),
            (c(0.1, 3.0), c(0.457_485_134_827_911_9, -0.045_723_698_181_463_16)),
            (c(0.25, 0.0), c(-0.813_278_405_261_891_7, 0.0)),
        ];
        for (s, want) in cases {
            assert_close(eta_zeta(s, 1e-12).unwrap(), want, 1e-10);
        }
    }

    #[test]
    fn errors() {
        assert_eq!(eta_zeta(c(1.0, 0.0), 1e-10), Err(ZetaError::Pole));
        assert!(matches!(eta_zeta(c(0.0, 3.0), 1e-10), Err(ZetaError::Domain(_))));
        assert!(matches!(eta_zeta(c(-1.0, 0.0), 1e-10), Err(ZetaError::Domain(_))));
        assert!(matches!(eta_zeta(c(2.0, 0.0), 0.0), Err(ZetaError::Domain(_))));
        let spurious = c(1.0, 2.0 * PI / LN_2);
        assert_eq!(eta_zeta(spurious, 1e-10), Err(ZetaError::PrefactorZero { k: 1 }));
        assert!(matches!(
            eta_zeta(c(0.5, 1e6), 1e-10),
            Err(ZetaError::TooManyTerms { .. })
        ));
    }

    #[test]
    fn weights_fall_from_one_to_zero() {
        let w = borwein_weights(50);
        assert!((w[0] - 1.0).abs() < 1e-15);
        assert!(w.windows(2).all(|p| p[0] >= p[1]));
        // d_n − d_{n−1} = n·4^n/(2n), so the last weight is 4^n/(2n·d_n/n)
        assert!(w[49] > 0.0 && w[49] < 1e-8);
        // against the factorial definition of d_k, small enough for f64
        let n = 20;
        let fact = |m: usize| (1..=m).map(|v| v as f64).product::<f64>();
        let d: Vec<f64> = (0..=n)
            .scan(0.0, |acc, i| {
                *acc += fact(n + i - 1) * 4f64.powi(i as i32) / (fact(n - i) * fact(2 * i));
                Some(*acc)
            })
            .collect();
        for (k, w) in borwein_weights(n).iter().enumerate() {
            assert!((w - (d[n] - d[k]) / d[n]).abs() < 1e-14);
        }
        // no overflow at large n
        assert!(borwein_weights(5000).iter().all(|x| x.is_finite()));
    }
}
