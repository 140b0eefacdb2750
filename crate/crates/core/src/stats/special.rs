//! Gamma and incomplete beta functions.

use crate::error::{Error, Result};

const LANCZOS_G: f64 = 7.0;
#[allow(clippy::excessive_precision)]
const LANCZOS: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_59,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];

/// Natural log of the gamma function for `x > 0` (Lanczos, g = 7).
pub fn ln_gamma(x: f64) -> f64 {
    if x < 0.5 {
        // reflection
        let pi = std::f64::consts::PI;
        return (pi / (pi * x).sin()).ln() - ln_gamma(1.0 - x);
    }
    let x = x - 1.0;
    let mut sum = LANCZOS[0];
    for (i, c) in LANCZOS.iter().enumerate().skip(1) {
        sum += c / (x + i as f64);
    }
    let t = x + LANCZOS_G + 0.5;
    0.5 * (2.0 * std::f64::consts::PI).ln() + (x + 0.5) * t.ln() - t + sum.ln()
}

pub fn ln_beta(a: f64, b: f64) -> f64 {
    ln_gamma(a) + ln_gamma(b) - ln_gamma(a + b)
}

const MAX_ITER: usize = 10_000;
const EPS: f64 = 1e-16;
const TINY: f64 = 1e-300;

/// Regularized incomplete beta function `I_x(a, b)`.
pub fn regularized_incomplete_beta(a: f64, b: f64, x: f64) -> Result<f64> {
    if !(a > 0.0 && a.is_finite()) || !(b > 0.0 && b.is_finite()) {
        return Err(Error::Domain(format!(
            "incomplete beta needs a, b > 0 (a = {a}, b = {b})"
        )));
    }
    if !(0.0..=1.0).contains(&x) {
        return Err(Error::Domain(format!(
            "incomplete beta needs x in [0, 1], got {x}"
        )));
    }
    Ok(inc_beta(a, b, x, 1.0 - x))
}

/// `I_x(a, b)` with `y = 1 - x` supplied by the caller, so that callers who
/// know `1 - x` more precisely than the subtraction can pass it through.
pub(crate) fn inc_beta(a: f64, b: f64, x: f64, y: f64) -> f64 {
    if x <= 0.0 {
        return 0.0;
    }
    if y <= 0.0 {
        return 1.0;
    }
    let ln_front = a * x.ln() + b * y.ln() - ln_beta(a, b);
    if x < (a + 1.0) / (a + b + 2.0) {
        ln_front.exp() * beta_continued_fraction(a, b, x) / a
    } else {
        1.0 - ln_front.exp() * beta_continued_fraction(b, a, y) / b
    }
}

/// Continued fraction for the incomplete beta function, evaluated with the
/// modified Lentz method.
fn beta_continued_fraction(a: f64, b: f64, x: f64) -> f64 {
    let qab = a + b;
    let qap = a + 1.0;
    let qam = a - 1.0;
    let mut c = 1.0;
    let mut d = 1.0 - qab * x / qap;
    if d.abs() < TINY {
        d = TINY;
    }
    d = 1.0 / d;
    let mut h = d;
    for m in 1..=MAX_ITER {
        let m = m as f64;
        let m2 = 2.0 * m;

        let aa = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1.0 + aa * d;
        if d.abs() < TINY {
            d = TINY;
        }
        c = 1.0 + aa / c;
        if c.abs() < TINY {
            c = TINY;
        }
        d = 1.0 / d;
        h *= d * c;

        let aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if d.abs() < TINY {
            d = TINY;
        }
        c = 1.0 + aa / c;
        if c.abs() < TINY {
            c = TINY;
        }
        d = 1.0 / d;
        let delta = d * c;
        h *= delta;
        if (delta - 1.0).abs() < EPS {
            break;
        }
    }
    h
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    /// Binomial-tail identity for integer shape parameters:
    /// I_x(a, b) = sum_{j=a}^{a+b-1} C(a+b-1, j) x^j (1-x)^(a+b-1-j).
    fn binomial_tail(a: u32, b: u32, x: f64) -> f64 {
        let n = a + b - 1;
        let mut ln_choose = vec![0.0f64; n as usize + 1];
        for j in 1..=n as usize {
            ln_choose[j] = ln_choose[j - 1] + ((n as usize - j + 1) as f64).ln() - (j as f64).ln();
        }
        (a..=n)
            .map(|j| {
                (ln_choose[j as usize] + j as f64 * x.ln() + (n - j) as f64 * (1.0 - x).ln()).exp()
            })
            .sum()
    }

    #[test]
    fn ln_gamma_matches_factorials() {
        let mut fact = 1.0f64;
        for n in 1..30u32 {
            assert_abs_diff_eq!(ln_gamma(n as f64), fact.ln(), epsilon = 1e-12);
            fact *= n as f64;
        }
        assert_abs_diff_eq!(
            ln_gamma(0.5),
            std::f64::consts::PI.sqrt().ln(),
            epsilon = 1e-14
        );
    }

    #[test]
    fn boundaries_and_uniform() {
        for (a, b) in [(0.5, 0.5), (2.0, 3.0), (100.0, 0.5)] {
            assert_eq!(regularized_incomplete_beta(a, b, 0.0).unwrap(), 0.0);
            assert_eq!(regularized_incomplete_beta(a, b, 1.0).unwrap(), 1.0);
        }
        for x in [0.01, 0.2, 0.5, 0.77, 0.999] {
            assert_abs_diff_eq!(
                regularized_incomplete_beta(1.0, 1.0, x).unwrap(),
                x,
                epsilon = 1e-14
            );
        }
    }

    #[test]
    fn beta_2_2_closed_form() {
        assert_abs_diff_eq!(
            regularized_incomplete_beta(2.0, 2.0, 0.5).unwrap(),
            0.5,
            epsilon = 1e-14
        );
        for x in [0.1, 0.3, 0.9] {
            let closed = x * x * (3.0 - 2.0 * x);
            assert_abs_diff_eq!(
                regularized_incomplete_beta(2.0, 2.0, x).unwrap(),
                closed,
                epsilon = 1e-14
            );
        }
    }

    #[test]
    fn integer_shapes_match_binomial_tail() {
        for &(a, b) in &[
            (1, 1),
            (3, 7),
            (10, 10),
            (50, 3),
            (120, 200),
            (400, 500),
            (500, 20),
        ] {
            for &x in &[0.05, 0.3, 0.45, 0.5, 0.6, 0.9, 0.99] {
                let got = regularized_incomplete_beta(a as f64, b as f64, x).unwrap();
                let want = binomial_tail(a, b, x);
                assert!(
                    (got - want).abs() <= 1e-10,
                    "I_{x}({a},{b}) = {got}, oracle {want}"
                );
            }
        }
    }

    #[test]
    fn symmetry_relation() {
        for &(a, b, x) in &[(0.5, 2.5, 0.3), (7.5, 0.5, 0.8), (250.0, 0.5, 0.99)] {
            let lhs = regularized_incomplete_beta(a, b, x).unwrap();
            let rhs = 1.0 - regularized_incomplete_beta(b, a, 1.0 - x).unwrap();
            assert_abs_diff_eq!(lhs, rhs, epsilon = 1e-12);
        }
    }

    #[test]
    fn rejects_bad_domain() {
        assert!(regularized_incomplete_beta(0.0, 1.0, 0.5).is_err());
        assert!(regularized_incomplete_beta(1.0, -1.0, 0.5).is_err());
        assert!(regularized_incomplete_beta(1.0, 1.0, 1.5).is_err());
        assert!(regularized_incomplete_beta(1.0, 1.0, f64::NAN).is_err());
    }
}
