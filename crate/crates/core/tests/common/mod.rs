#![allow(dead_code)]

use std::path::{Path, PathBuf};

use hypolab_core::{
    analyze, generate_fixture, Alpha, ConditionTag, CorrectnessSpec, FixtureScenario, Report,
};

/// Adaptive Simpson quadrature.
pub fn adaptive_simpson(f: &dyn Fn(f64) -> f64, a: f64, b: f64, tol: f64) -> f64 {
    fn simpson(fa: f64, fm: f64, fb: f64, a: f64, b: f64) -> f64 {
        (b - a) / 6.0 * (fa + 4.0 * fm + fb)
    }
    #[allow(clippy::too_many_arguments)]
    fn recurse(
        f: &dyn Fn(f64) -> f64,
        a: f64,
        b: f64,
        fa: f64,
        fm: f64,
        fb: f64,
        whole: f64,
        tol: f64,
        depth: u32,
    ) -> f64 {
        let m = 0.5 * (a + b);
        let lm = 0.5 * (a + m);
        let rm = 0.5 * (m + b);
        let flm = f(lm);
        let frm = f(rm);
        let left = simpson(fa, flm, fm, a, m);
        let right = simpson(fm, frm, fb, m, b);
        let delta = left + right - whole;
        if depth == 0 || delta.abs() <= 15.0 * tol {
            left + right + delta / 15.0
        } else {
            recurse(f, a, m, fa, flm, fm, left, tol / 2.0, depth - 1)
                + recurse(f, m, b, fm, frm, fb, right, tol / 2.0, depth - 1)
        }
    }
    let fa = f(a);
    let fb = f(b);
    let fm = f(0.5 * (a + b));
    recurse(f, a, b, fa, fm, fb, simpson(fa, fm, fb, a, b), tol, 40)
}

/// Student-t CDF by direct numerical integration of the density.
///
/// With t = sqrt(df) * tan(theta) the unnormalised density
/// (1 + t^2/df)^(-(df+1)/2) dt becomes cos(theta)^(df-1) dtheta on
/// (-pi/2, pi/2), so the CDF is 1/2 plus the ratio of two finite
/// integrals; the normalising constant is integrated too.
pub fn t_cdf_by_quadrature(t: f64, df: u64) -> f64 {
    let power = df as f64 - 1.0;
    let integrand = move |theta: f64| theta.cos().max(0.0).powf(power);
    let half_pi = std::f64::consts::FRAC_PI_2;
    let total = adaptive_simpson(&integrand, 0.0, half_pi, 1e-15);
    let upto = adaptive_simpson(
        &integrand,
        0.0,
        (t.abs() / (df as f64).sqrt()).atan(),
        1e-15,
    );
    let half = 0.5 * upto / total;
    if t >= 0.0 {
        0.5 + half
    } else {
        0.5 - half
    }
}

pub fn write_fixture(name: &str, n: usize, seed: u64, dir: &Path) -> Vec<(ConditionTag, PathBuf)> {
    let scenario = FixtureScenario::builtin(name, n, seed).unwrap();
    let paths = generate_fixture(&scenario, dir).unwrap();
    ConditionTag::ALL
        .iter()
        .map(|c| (*c, paths[c.index()].clone()))
        .collect()
}

pub fn analyze_fixture(name: &str, n: usize, seed: u64, alpha: f64) -> Report {
    let dir = tempfile::tempdir().unwrap();
    let inputs = write_fixture(name, n, seed, dir.path());
    analyze(
        &inputs,
        CorrectnessSpec::ExactMatch,
        Alpha::new(alpha).unwrap(),
    )
    .unwrap()
}

/// Pinned seed for the useful-concept scenario at n = 2000 (verified: every
/// analysis significant in the expected direction, max p = 6.2e-7).
pub const USEFUL_SEED: u64 = 0;
/// Pinned seed for the null scenario at n = 2000 (all six indistinguishable).
pub const NULL_SEED: u64 = 0;
