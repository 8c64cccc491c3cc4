use num_complex::Complex64;
use std::f64::consts::PI;

use super::eta::eta_zeta;
use super::gamma::ln_gamma;
use super::ZetaError;

/// Tolerance used for every ζ(1/2 + it) evaluation behind [`hardy_z`].
pub const Z_EVAL_TOL: f64 = 1e-12;

/// Largest imaginary residue of `e^{iθ(t)} ζ(1/2 + it)` accepted as real.
pub const REALITY_TOL: f64 = 1e-6;

/// The Riemann–Siegel phase `θ(t) = arg Γ(1/4 + it/2) − (t/2) log π`.
///
/// For `t >= 10` this is the asymptotic expansion
/// `(t/2) log(t/2π) − t/2 − π/8 + 1/(48t) + 7/(5760t³)`, good to 1e-8.
/// Between 1 and 10 the expansion is too coarse to keep `Z` real, so the
/// phase is taken from the complex log-gamma function instead.
pub fn riemann_siegel_theta(t: f64) -> Result<f64, ZetaError> {
    if !(t >= 1.0) || !t.is_finite() {
        return Err(ZetaError::Domain(format!("θ(t) needs t >= 1, got {t}")));
    }
    if t >= 10.0 {
        Ok(theta_asymptotic(t))
    } else {
        Ok(ln_gamma(Complex64::new(0.25, t / 2.0)).im - t / 2.0 * PI.ln())
    }
}

fn theta_asymptotic(t: f64) -> f64 {
    t / 2.0 * (t / (2.0 * PI)).ln() - t / 2.0 - PI / 8.0 + 1.0 / (48.0 * t) + 7.0 / (5760.0 * t * t * t)
}

/// Hardy's function `Z(t) = e^{iθ(t)} ζ(1/2 + it)`, real for real `t`, with
/// `|Z(t)| = |ζ(1/2 + it)|`. Its sign changes are the zeros on the critical
/// line.
pub fn hardy_z(t: f64) -> Result<f64, ZetaError> {
    let theta = riemann_siegel_theta(t)?;
    let zeta = eta_zeta(Complex64::new(0.5, t), Z_EVAL_TOL)?;
    let z = Complex64::from_polar(1.0, theta) * zeta;
    if z.im.abs() > REALITY_TOL {
        return Err(ZetaError::NotReal { t, imag: z.im });
    }
    Ok(z.re)
}
