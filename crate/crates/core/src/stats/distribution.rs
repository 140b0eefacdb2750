//! Student's t distribution.

use std::f64::consts::PI;

use super::special::{inc_beta, ln_gamma};
use crate::error::{Error, Result};

fn check_df(df: u64) -> Result<f64> {
    if df == 0 {
        return Err(Error::Domain(
            "degrees of freedom must be at least 1".into(),
        ));
    }
    Ok(df as f64)
}

/// `P(|T| >= |t|)` for `T ~ t(df)`; `df` already validated.
pub(crate) fn two_tail(t: f64, df: f64) -> f64 {
    if t.is_infinite() {
        return 0.0;
    }
    let t2 = t * t;
    inc_beta(0.5 * df, 0.5, df / (df + t2), t2 / (df + t2))
}

/// Cumulative distribution function of Student's t.
pub fn t_cdf(t: f64, df: u64) -> Result<f64> {
    let df = check_df(df)?;
    if t.is_nan() {
        return Err(Error::Domain("t must not be NaN".into()));
    }
    if t == 0.0 {
        return Ok(0.5);
    }
    let tail = 0.5 * two_tail(t, df);
    Ok(if t > 0.0 { 1.0 - tail } else { tail })
}

/// Probability density of Student's t.
pub fn t_pdf(t: f64, df: u64) -> Result<f64> {
    let df = check_df(df)?;
    Ok(density(t, df))
}

fn density(t: f64, df: f64) -> f64 {
    let ln_norm = ln_gamma(0.5 * (df + 1.0)) - ln_gamma(0.5 * df) - 0.5 * (df * PI).ln();
    (ln_norm - 0.5 * (df + 1.0) * (t * t / df).ln_1p()).exp()
}

/// Quantile function of Student's t: the `t` with `t_cdf(t, df) = q`.
///
/// Solved on the upper tail by safeguarded Newton iteration inside a
/// bisection bracket.
pub fn t_inverse_cdf(q: f64, df: u64) -> Result<f64> {
    let dff = check_df(df)?;
    if !(q > 0.0 && q < 1.0) {
        return Err(Error::Domain(format!(
            "quantile level must lie in (0, 1), got {q}"
        )));
    }
    if q == 0.5 {
        return Ok(0.0);
    }
    // upper-tail probability we need to hit with a positive t
    let target = if q > 0.5 { 1.0 - q } else { q };
    let tail = |t: f64| 0.5 * two_tail(t, dff);

    let mut lo = 0.0;
    let mut hi = 1.0;
    while tail(hi) > target {
        lo = hi;
        hi *= 2.0;
        if !hi.is_finite() {
            return Err(Error::Domain(format!(
                "quantile {q} beyond representable range"
            )));
        }
    }

    let mut t = 0.5 * (lo + hi);
    for _ in 0..300 {
        let f = tail(t) - target;
        if f.abs() <= 1e-15 * target {
            break;
        }
        if f > 0.0 {
            lo = t;
        } else {
            hi = t;
        }
        if hi - lo <= 4.0 * f64::EPSILON * hi {
            break;
        }
        // tail is decreasing, derivative is -density
        let newton = t + f / density(t, dff);
        t = if newton > lo && newton < hi {
            newton
        } else {
            0.5 * (lo + hi)
        };
    }
    Ok(if q > 0.5 { t } else { -t })
}
