//! Paired two-tail t-tests and confidence intervals over score vectors.

mod distribution;
mod special;

use std::fmt;

use serde::{Deserialize, Serialize};

pub use distribution::{t_cdf, t_inverse_cdf, t_pdf};
pub use special::{ln_beta, ln_gamma, regularized_incomplete_beta};

use crate::error::{Error, Result};

/// Significance threshold, strictly between 0 and 1.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize, Deserialize)]
#[serde(try_from = "f64", into = "f64")]
pub struct Alpha(f64);

impl Alpha {
    pub const DEFAULT: Alpha = Alpha(0.05);

    pub fn new(value: f64) -> Result<Self> {
        if value > 0.0 && value < 1.0 {
            Ok(Alpha(value))
        } else {
            Err(Error::InvalidAlpha(value))
        }
    }

    pub fn get(self) -> f64 {
        self.0
    }
}

impl Default for Alpha {
    fn default() -> Self {
        Alpha::DEFAULT
    }
}

impl TryFrom<f64> for Alpha {
    type Error = Error;

    fn try_from(value: f64) -> Result<Self> {
        Alpha::new(value)
    }
}

impl From<Alpha> for f64 {
    fn from(alpha: Alpha) -> f64 {
        alpha.0
    }
}

impl fmt::Display for Alpha {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// Result of comparing a left result set against a right one.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ComparisonOutcome {
    /// Left is significantly lower than right.
    Lower,
    /// Left is significantly higher than right.
    Higher,
    Indistinguishable,
}

impl ComparisonOutcome {
    pub const ALL: [ComparisonOutcome; 3] = [
        ComparisonOutcome::Lower,
        ComparisonOutcome::Higher,
        ComparisonOutcome::Indistinguishable,
    ];

    /// Left is lower or indistinguishable (not significantly higher).
    pub fn at_most(self) -> bool {
        self != ComparisonOutcome::Higher
    }

    /// Left is higher or indistinguishable (not significantly lower).
    pub fn at_least(self) -> bool {
        self != ComparisonOutcome::Lower
    }

    pub fn is_significant(self) -> bool {
        self != ComparisonOutcome::Indistinguishable
    }

    /// The outcome seen from the other side of the comparison.
    pub fn mirrored(self) -> Self {
        match self {
            ComparisonOutcome::Lower => ComparisonOutcome::Higher,
            ComparisonOutcome::Higher => ComparisonOutcome::Lower,
            ComparisonOutcome::Indistinguishable => ComparisonOutcome::Indistinguishable,
        }
    }

    pub fn glyph(self) -> char {
        match self {
            ComparisonOutcome::Lower => '<',
            ComparisonOutcome::Higher => '>',
            ComparisonOutcome::Indistinguishable => '~',
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            ComparisonOutcome::Lower => "lower",
            ComparisonOutcome::Higher => "higher",
            ComparisonOutcome::Indistinguishable => "indistinguishable",
        }
    }
}

/// Statistics of a paired t-test of `a` against `b`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PairedTTest {
    pub n: usize,
    pub mean_a: f64,
    pub mean_b: f64,
    pub mean_diff: f64,
    pub sd_diff: f64,
    /// Signed infinity when the differences are constant and nonzero.
    pub t_stat: f64,
    pub df: u64,
    pub p_value: f64,
}

fn mean(xs: &[f64]) -> f64 {
    xs.iter().sum::<f64>() / xs.len() as f64
}

fn sample_sd(xs: &[f64], mean: f64) -> f64 {
    let ss: f64 = xs.iter().map(|x| (x - mean).powi(2)).sum();
    (ss / (xs.len() - 1) as f64).sqrt()
}

fn check_finite(xs: &[f64]) -> Result<()> {
    match xs.iter().position(|x| !x.is_finite()) {
        Some(i) => Err(Error::NonFiniteSample(i)),
        None => Ok(()),
    }
}

/// Paired, two-tail Student t-test on `a[i] - b[i]`.
pub fn paired_t_test(a: &[f64], b: &[f64]) -> Result<PairedTTest> {
    if a.len() != b.len() {
        return Err(Error::SampleLengthMismatch(a.len(), b.len()));
    }
    let n = a.len();
    if n < 2 {
        return Err(Error::TooFewSamples(n));
    }
    check_finite(a)?;
    check_finite(b)?;

    let diffs: Vec<f64> = a.iter().zip(b).map(|(x, y)| x - y).collect();
    let df = (n - 1) as u64;
    let constant = diffs.iter().all(|d| *d == diffs[0]);
    let (mean_diff, sd_diff) = if constant {
        (diffs[0], 0.0)
    } else {
        let m = mean(&diffs);
        (m, sample_sd(&diffs, m))
    };

    let (t_stat, p_value) = if sd_diff == 0.0 {
        if mean_diff == 0.0 {
            (0.0, 1.0)
        } else {
            (f64::INFINITY.copysign(mean_diff), 0.0)
        }
    } else {
        let t = mean_diff / (sd_diff / (n as f64).sqrt());
        (t, distribution::two_tail(t, df as f64).clamp(0.0, 1.0))
    };

    Ok(PairedTTest {
        n,
        mean_a: mean(a),
        mean_b: mean(b),
        mean_diff,
        sd_diff,
        t_stat,
        df,
        p_value,
    })
}

/// Three-way classification from a p-value and the sign of the mean
/// difference. Significance uses the strict `p < alpha`.
pub fn classify(p_value: f64, mean_diff: f64, alpha: Alpha) -> ComparisonOutcome {
    if p_value < alpha.get() {
        if mean_diff > 0.0 {
            return ComparisonOutcome::Higher;
        }
        if mean_diff < 0.0 {
            return ComparisonOutcome::Lower;
        }
    }
    ComparisonOutcome::Indistinguishable
}

pub fn classify_outcome(test: &PairedTTest, alpha: Alpha) -> ComparisonOutcome {
    classify(test.p_value, test.mean_diff, alpha)
}

/// Two-sided t interval around a sample mean.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ConfidenceInterval {
    pub lo: f64,
    pub hi: f64,
    pub level: f64,
}

pub fn confidence_interval(scores: &[f64], level: f64) -> Result<ConfidenceInterval> {
    if !(level > 0.0 && level < 1.0) {
        return Err(Error::Domain(format!(
            "confidence level must lie in (0, 1), got {level}"
        )));
    }
    let n = scores.len();
    if n < 2 {
        return Err(Error::TooFewSamples(n));
    }
    check_finite(scores)?;
    let m = mean(scores);
    let sd = if scores.iter().all(|x| *x == scores[0]) {
        0.0
    } else {
        sample_sd(scores, m)
    };
    let critical = t_inverse_cdf(1.0 - (1.0 - level) / 2.0, (n - 1) as u64)?;
    let half = critical * sd / (n as f64).sqrt();
    Ok(ConfidenceInterval {
        lo: m - half,
        hi: m + half,
        level,
    })
}
