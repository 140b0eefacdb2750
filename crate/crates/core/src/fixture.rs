//! Deterministic synthetic result sets standing in for real model runs.

use std::fs;
use std::path::{Path, PathBuf};

use crate::error::{Error, Result};
use crate::results::ConditionTag;

/// SplitMix64 pseudo-random generator.
#[derive(Debug, Clone)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        SplitMix64 { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    /// Uniform in [0, 1) with 53 bits of precision.
    pub fn next_f64(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }
}

/// Independent stream for one condition: seeded with the `(index + 1)`-th
/// output of a root generator seeded with `seed`.
fn condition_stream(seed: u64, condition: ConditionTag) -> SplitMix64 {
    let mut root = SplitMix64::new(seed);
    let mut derived = 0;
    for _ in 0..=condition.index() {
        derived = root.next_u64();
    }
    SplitMix64::new(derived)
}

#[derive(Debug, Clone, PartialEq)]
pub struct FixtureScenario {
    pub name: String,
    /// Per-item probability of a correct label, indexed by `ConditionTag::index`.
    pub rates: [f64; 4],
    pub n: usize,
    pub seed: u64,
}

/// Built-in rate tables as (name, [M,D  M,D+  M+,D  M+,D+]).
pub const BUILTIN_SCENARIOS: [(&str, [f64; 4]); 4] = [
    // extra information helps M+, training with it costs M+ some skill on
    // plain data, and M degrades slightly when handed the extra channel
    ("useful-concept", [0.62, 0.56, 0.48, 0.80]),
    // M+ is worse with the concept than M without it
    ("harmful-concept", [0.70, 0.70, 0.70, 0.55]),
    // all four runs equally good
    ("null", [0.50, 0.50, 0.50, 0.50]),
    // M already performs as well as M+ with the concept
    ("already-learned", [0.85, 0.85, 0.85, 0.85]),
];

impl FixtureScenario {
    pub fn new(name: impl Into<String>, rates: [f64; 4], n: usize, seed: u64) -> Result<Self> {
        if let Some(r) = rates.iter().find(|r| !(0.0..=1.0).contains(*r)) {
            return Err(Error::Domain(format!("scenario rate {r} outside [0, 1]")));
        }
        if n < 2 {
            return Err(Error::TooFewSamples(n));
        }
        Ok(FixtureScenario {
            name: name.into(),
            rates,
            n,
            seed,
        })
    }

    pub fn builtin(name: &str, n: usize, seed: u64) -> Result<Self> {
        let (_, rates) = BUILTIN_SCENARIOS
            .iter()
            .find(|(candidate, _)| *candidate == name)
            .ok_or_else(|| Error::UnknownScenario(name.to_string()))?;
        FixtureScenario::new(name, *rates, n, seed)
    }

    pub fn rate(&self, condition: ConditionTag) -> f64 {
        self.rates[condition.index()]
    }

    /// CSV text of the result file for one condition.
    pub fn render(&self, condition: ConditionTag) -> String {
        let rate = self.rate(condition);
        let mut rng = condition_stream(self.seed, condition);
        let mut out = String::with_capacity(16 + self.n * 20);
        out.push_str("id,ground_truth,ml_label\n");
        for i in 1..=self.n {
            let label = if rng.next_f64() < rate { "c" } else { "x" };
            out.push_str(&format!("item-{i:06},c,{label}\n"));
        }
        out
    }
}

pub fn fixture_file_name(condition: ConditionTag) -> String {
    format!("{}.csv", condition.key())
}

/// Writes `<out_dir>/{m_d,m_dplus,mplus_d,mplus_dplus}.csv`, returning the
/// paths in condition order.
pub fn generate_fixture(scenario: &FixtureScenario, out_dir: &Path) -> Result<[PathBuf; 4]> {
    fs::create_dir_all(out_dir)?;
    let mut paths: [PathBuf; 4] = Default::default();
    for condition in ConditionTag::ALL {
        let path = out_dir.join(fixture_file_name(condition));
        fs::write(&path, scenario.render(condition))?;
        paths[condition.index()] = path;
    }
    Ok(paths)
}
