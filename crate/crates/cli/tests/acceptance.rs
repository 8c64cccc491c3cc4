//! Acceptance suite: one PASS/FAIL line per criterion, then a non-zero exit
//! if any criterion failed. Tolerances and runtime limits are pinned below.

use std::f64::consts::PI;
use std::process::Command;
use std::time::{Duration, Instant};

use zrl::explicit::{half_integer_grid, ExplicitFormula};
use zrl::primes::{PrimeIndex, Sieve};
use zrl::region::{log_spaced_half_integers, RegionVerifier};
use zrl::zeta::{build_catalog, eta_zeta, rvm_count, verify_on_line, ComplexValue, ZetaError};

const LOG_SUM_REL_TOL: f64 = 1e-9;
const PSI10: f64 = 7.832_014_8;
const PSI10_TOL: f64 = 1e-6;
const PSI100: f64 = 94.0453;
const PSI100_TOL: f64 = 1e-3;
const GAMMA1: f64 = 14.134_725;
const GAMMA1_TOL: f64 = 1e-5;
const RVM_TOL: f64 = 0.5;
const ZETA2_TOL: f64 = 1e-8;
const ZETA_EVAL_TOL: f64 = 1e-10;
const LANDAU_C: f64 = 5.0;
const SWEEP_MAX: u64 = 1_000_000;

type Criterion = (&'static str, fn() -> Verdict);

struct Verdict {
    pass: bool,
    detail: String,
}

fn within(elapsed: Duration, limit_secs: u64) -> bool {
    elapsed <= Duration::from_secs(limit_secs)
}

fn smallest_factor(n: u64) -> u64 {
    if n % 2 == 0 {
        return 2;
    }
    let mut d = 3;
    while d * d <= n {
        if n % d == 0 {
            return d;
        }
        d += 2;
    }
    n
}

fn rel(got: f64, want: f64) -> f64 {
    if want == 0.0 {
        got.abs()
    } else {
        ((got - want) / want).abs()
    }
}

fn criterion_1() -> Verdict {
    let start = Instant::now();
    let limit = 100_000u64;
    let idx = PrimeIndex::new(limit).unwrap();
    let (mut pi, mut theta, mut psi) = (0u64, 0.0f64, 0.0f64);
    let mut bad = 0;
    let mut worst = 0.0f64;
    for n in 0..=limit {
        if n >= 2 {
            let p = smallest_factor(n);
            let mut m = n;
            while m % p == 0 {
                m /= p;
            }
            if p == n {
                pi += 1;
                theta += (n as f64).ln();
            }
            if m == 1 {
                psi += (p as f64).ln();
            }
        }
        let v = idx.values(n as f64).unwrap();
        let err = rel(v.theta, theta).max(rel(v.psi, psi));
        worst = worst.max(err);
        if v.pi_count != pi || err > LOG_SUM_REL_TOL {
            bad += 1;
        }
    }
    let elapsed = start.elapsed();
    Verdict {
        pass: bad == 0 && within(elapsed, 10),
        detail: format!("{bad} mismatches up to 1e5, worst relative error {worst:.3e}, {elapsed:.2?}"),
    }
}

fn criterion_2() -> Verdict {
    let sieve = Sieve::default();
    let direct10 = sieve.chebyshev_values(10.0).unwrap().psi;
    let roots10 = sieve.psi_via_theta(10.0).unwrap();
    let direct100 = sieve.chebyshev_values(100.0).unwrap().psi;
    let roots100 = sieve.psi_via_theta(100.0).unwrap();
    let pass = [direct10, roots10].iter().all(|v| (v - PSI10).abs() <= PSI10_TOL)
        && [direct100, roots100].iter().all(|v| (v - PSI100).abs() <= PSI100_TOL);
    Verdict {
        pass,
        detail: format!("psi(10) = {direct10:.9} / {roots10:.9}, psi(100) = {direct100:.6} / {roots100:.6}"),
    }
}

fn criterion_3() -> Verdict {
    let start = Instant::now();
    let catalog = build_catalog(100.0, 0.1).unwrap();
    let elapsed = start.elapsed();
    let gamma1 = catalog.zeros()[0].ordinate;
    let rvm = rvm_count(100.0).unwrap();
    Verdict {
        pass: catalog.len() == 29 && (gamma1 - GAMMA1).abs() <= GAMMA1_TOL && (rvm - 29.0).abs() <= RVM_TOL && within(elapsed, 60),
        detail: format!("{} zeros, gamma_1 = {gamma1:.9}, rvm_count(100) = {rvm:.5}, {elapsed:.2?}", catalog.len()),
    }
}

fn criterion_4() -> Verdict {
    let z2 = eta_zeta(ComplexValue::new(2.0, 0.0), ZETA_EVAL_TOL).unwrap();
    let pole = matches!(eta_zeta(ComplexValue::new(1.0, 0.0), ZETA_EVAL_TOL), Err(ZetaError::Pole));
    let points = [
        ComplexValue::new(0.5, 14.0),
        ComplexValue::new(0.3, 7.5),
        ComplexValue::new(0.8, 40.0),
        ComplexValue::new(2.0, 3.0),
        ComplexValue::new(0.5, 95.0),
    ];
    let worst = points
        .iter()
        .map(|&s| (eta_zeta(s.conj(), ZETA_EVAL_TOL).unwrap() - eta_zeta(s, ZETA_EVAL_TOL).unwrap().conj()).norm())
        .fold(0.0, f64::max);
    let err2 = (z2 - ComplexValue::new(PI * PI / 6.0, 0.0)).norm();
    Verdict {
        pass: err2 <= ZETA2_TOL && pole && worst <= 2.0 * ZETA_EVAL_TOL,
        detail: format!("|zeta(2) - pi^2/6| = {err2:.2e}, pole raised: {pole}, conjugate asymmetry {worst:.2e}"),
    }
}

fn criterion_5() -> Verdict {
    let start = Instant::now();
    let catalog = build_catalog(100.0, 0.1).unwrap();
    let idx = PrimeIndex::new(2_000).unwrap();
    let formula = ExplicitFormula::new(&catalog, &idx).with_landau_constant(LANDAU_C);
    let heights = [50.0, 100.0];
    let mut within_bound = true;
    let mut residuals = Vec::new();
    for x in [500.5, 1000.5] {
        for &t in &heights {
            let e = formula.truncated_psi(x, t).unwrap();
            within_bound &= e.residual <= LANDAU_C * x * x.ln() / t;
            residuals.push(format!("{:.3}", e.residual));
        }
    }
    let grid = half_integer_grid(100.5, 1000.5, 20);
    let means = formula.mean_residuals(&grid, &heights).unwrap();
    let elapsed = start.elapsed();
    Verdict {
        pass: within_bound && grid.len() == 20 && means[1] <= means[0] && within(elapsed, 30),
        detail: format!(
            "residuals [{}] within bound: {within_bound}; mean over 20 abscissas {:.4} -> {:.4}; {elapsed:.2?}",
            residuals.join(", "),
            means[0],
            means[1]
        ),
    }
}

fn criterion_6() -> Verdict {
    let start = Instant::now();
    let idx = PrimeIndex::new(SWEEP_MAX + 10_000).unwrap();
    let v = RegionVerifier::new(&idx);
    let mut parts = Vec::new();
    let mut violations = 0;
    for y in [20.0, 100.0, 1000.0, 10000.0] {
        let s = v.sweep_brun_titchmarsh(0, SWEEP_MAX, y).unwrap();
        let xs: Vec<String> = s.failures.iter().map(|f| f.params.x.to_string()).collect();
        parts.push(format!("y={y}: {} [{}]", s.failures.len(), xs.join(",")));
        violations += s.failures.len();
    }
    let small = v.check_brun_titchmarsh(4.0, 1.0).unwrap();
    let elapsed = start.elapsed();
    Verdict {
        pass: violations == 0 && !small.pass && within(elapsed, 120),
        detail: format!(
            "violations {}; y=1 at x=4: lhs {} rhs {:.3} pass {}; {elapsed:.2?}",
            parts.join("; "),
            small.lhs,
            small.rhs,
            small.pass
        ),
    }
}

fn criterion_7() -> Verdict {
    let start = Instant::now();
    let idx = PrimeIndex::new(SWEEP_MAX).unwrap();
    let s = RegionVerifier::new(&idx).sweep_bhp(10, SWEEP_MAX).unwrap();
    let elapsed = start.elapsed();
    let xs: Vec<String> = s.failures.iter().map(|f| f.params.x.to_string()).collect();
    Verdict {
        pass: s.failures.is_empty() && within(elapsed, 120),
        detail: format!("{} checks, failures at x = [{}]; {elapsed:.2?}", s.total, xs.join(",")),
    }
}

fn criterion_8() -> Verdict {
    let idx = PrimeIndex::new(SWEEP_MAX).unwrap();
    let xs = log_spaced_half_integers(100.5, 1e6, 1000);
    let (s, c) = RegionVerifier::new(&idx).sweep_schoenfeld_cor8(&xs).unwrap();
    Verdict {
        pass: xs.len() == 1000 && s.failures.is_empty() && c.worst_margin.is_finite(),
        detail: format!(
            "{} points, {} Schoenfeld failures; sup |delta|/x^(21/40) = {:.6}",
            s.total,
            s.failures.len(),
            c.worst_margin
        ),
    }
}

fn criterion_9() -> Verdict {
    let idx = PrimeIndex::new(1_010_000).unwrap();
    let r = RegionVerifier::new(&idx).proof_chain(1e6, 21.0 / 40.0, 0.5, 1.0).unwrap();
    Verdict {
        pass: r.holds_3 && r.positive && !r.holds_45,
        detail: format!(
            "y = {:.2}, trivial {:.4e}, alpha bound {:.4e}, holds_3 {}, positive {}, holds_45 {}",
            r.y, r.trivial_bound, r.alpha_bound, r.holds_3, r.positive, r.holds_45
        ),
    }
}

fn criterion_10() -> Verdict {
    let r = verify_on_line(100.0, 0.1).unwrap();
    Verdict {
        pass: r.discrepancy < 1.0,
        detail: format!(
            "{} sign changes, estimate {:.5}, discrepancy {:.5}",
            r.sign_change_count, r.rvm_estimate, r.discrepancy
        ),
    }
}

fn criterion_11() -> Verdict {
    let dir = tempfile::tempdir().unwrap();
    let run = |name: &str| {
        let out = dir.path().join(name);
        let status = Command::new(env!("CARGO_BIN_EXE_zrl"))
            .arg("report")
            .arg("--out")
            .arg(&out)
            .env("ZRL_CACHE_DIR", dir.path().join("cache"))
            .status()
            .unwrap();
        (status, std::fs::read(&out).unwrap())
    };
    // the first run scans for zeros, the second reads them from the cache
    let (s1, a) = run("first.csv");
    let (s2, b) = run("second.csv");
    Verdict {
        pass: !a.is_empty() && a == b,
        detail: format!(
            "two report runs, {} bytes each, identical: {}, exit codes {:?} {:?}",
            a.len(),
            a == b,
            s1.code(),
            s2.code()
        ),
    }
}

fn main() {
    let criteria: [Criterion; 11] = [
        ("oracle equality up to 1e5", criterion_1),
        ("psi(10) and psi(100) by both routes", criterion_2),
        ("29 zeros up to height 100", criterion_3),
        ("known zeta values", criterion_4),
        ("truncated explicit formula residuals", criterion_5),
        ("Brun-Titchmarsh sweep", criterion_6),
        ("BHP sweep", criterion_7),
        ("Schoenfeld sample", criterion_8),
        ("proof-chain diagnostic", criterion_9),
        ("zeros on the critical line to height 100", criterion_10),
        ("byte-identical reports", criterion_11),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let v = check();
        println!("{} criterion {:>2}: {name}: {}", if v.pass { "PASS" } else { "FAIL" }, i + 1, v.detail);
        failed += usize::from(!v.pass);
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
