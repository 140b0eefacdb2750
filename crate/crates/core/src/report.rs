//! The serializable analysis report and the end-to-end pipeline producing it.

use std::fmt::Write as _;
use std::fs::File;
use std::io::BufReader;
use std::path::{Path, PathBuf};

use indexmap::IndexMap;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::inference::{
    infer, infer_outcomes, reinfer, run_analyses, warnings, AnalysisId, AnalysisResult, Caution,
    HypothesisId, HypothesisVerdict, Inference, TruthValue, Vote,
};
use crate::results::{
    accuracy, assemble_quad, parse_result_file, ConditionTag, CorrectnessSpec, QuadResults,
};
use crate::stats::{classify, confidence_interval, Alpha, ComparisonOutcome, PairedTTest};

pub const REPORT_VERSION: &str = "1";
pub const CI_LEVEL: f64 = 0.95;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConditionSummary {
    pub n: usize,
    pub mean: f64,
    pub ci_lo: f64,
    pub ci_hi: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AnalysisEntry {
    pub left: ConditionTag,
    pub right: ConditionTag,
    pub mean_left: f64,
    pub mean_right: f64,
    pub mean_diff: f64,
    pub sd_diff: f64,
    #[serde(with = "signed_infinity")]
    pub t: f64,
    pub df: u64,
    pub p: f64,
    pub outcome: ComparisonOutcome,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HypothesisEntry {
    pub statement: String,
    pub indicator: i32,
    pub state: TruthValue,
    pub votes: Vec<Vote>,
    pub cautions: Vec<Caution>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Metadata {
    #[serde(default, skip_serializing_if = "IndexMap::is_empty")]
    pub inputs: IndexMap<ConditionTag, String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub timestamp: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub correctness: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub version: String,
    pub alpha: Alpha,
    pub conditions: IndexMap<ConditionTag, ConditionSummary>,
    pub analyses: IndexMap<AnalysisId, AnalysisEntry>,
    pub hypotheses: IndexMap<HypothesisId, HypothesisEntry>,
    pub warnings: Vec<String>,
    pub metadata: Metadata,
}

/// Finite values as JSON numbers; the constant-difference sentinel as the
/// strings `"inf"` / `"-inf"`.
mod signed_infinity {
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(value: &f64, s: S) -> Result<S::Ok, S::Error> {
        if value.is_infinite() {
            s.serialize_str(if *value > 0.0 { "inf" } else { "-inf" })
        } else {
            s.serialize_f64(*value)
        }
    }

    #[derive(Deserialize)]
    #[serde(untagged)]
    enum Repr {
        Num(f64),
        Text(String),
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<f64, D::Error> {
        match Repr::deserialize(d)? {
            Repr::Num(x) => Ok(x),
            Repr::Text(t) if t == "inf" => Ok(f64::INFINITY),
            Repr::Text(t) if t == "-inf" => Ok(f64::NEG_INFINITY),
            Repr::Text(t) => Err(serde::de::Error::custom(format!(
                "invalid t statistic `{t}`"
            ))),
        }
    }
}

fn analysis_entry(a: &AnalysisResult) -> AnalysisEntry {
    let (left, right) = a.id.pair();
    AnalysisEntry {
        left,
        right,
        mean_left: a.test.mean_a,
        mean_right: a.test.mean_b,
        mean_diff: a.test.mean_diff,
        sd_diff: a.test.sd_diff,
        t: a.test.t_stat,
        df: a.test.df,
        p: a.test.p_value,
        outcome: a.outcome,
    }
}

fn hypothesis_entries(verdicts: &[HypothesisVerdict]) -> IndexMap<HypothesisId, HypothesisEntry> {
    verdicts
        .iter()
        .map(|v| {
            (
                v.id,
                HypothesisEntry {
                    statement: v.id.statement().to_string(),
                    indicator: v.indicator,
                    state: v.state,
                    votes: v.votes.clone(),
                    cautions: v.cautions.clone(),
                },
            )
        })
        .collect()
}

/// Builds the report for an assembled quad.
pub fn analyze_quad(quad: &QuadResults, alpha: Alpha, metadata: Metadata) -> Result<Report> {
    let conditions = ConditionTag::ALL
        .iter()
        .map(|&c| {
            let set = quad.get(c);
            let ci = confidence_interval(&set.scores(), CI_LEVEL)?;
            Ok((
                c,
                ConditionSummary {
                    n: set.len(),
                    mean: accuracy(set)?,
                    ci_lo: ci.lo,
                    ci_hi: ci.hi,
                },
            ))
        })
        .collect::<Result<IndexMap<_, _>>>()?;
    let analyses = run_analyses(quad, alpha)?;
    let inference = infer(&analyses)?;
    Ok(Report {
        version: REPORT_VERSION.to_string(),
        alpha,
        conditions,
        analyses: analyses.iter().map(|a| (a.id, analysis_entry(a))).collect(),
        hypotheses: hypothesis_entries(&inference.verdicts),
        warnings: warnings(&inference.verdicts),
        metadata,
    })
}

fn in_file(path: &Path, err: Error) -> Error {
    Error::File {
        path: path.display().to_string(),
        source: Box::new(err),
    }
}

/// Parses the four result files (concurrently) and runs the full pipeline.
pub fn analyze(
    paths: &[(ConditionTag, PathBuf)],
    correctness: CorrectnessSpec,
    alpha: Alpha,
) -> Result<Report> {
    let sets = std::thread::scope(|scope| {
        let handles: Vec<_> = paths
            .iter()
            .map(|(condition, path)| {
                scope.spawn(move || {
                    let file = File::open(path).map_err(|e| in_file(path, e.into()))?;
                    parse_result_file(BufReader::new(file), &correctness, *condition)
                        .map_err(|e| in_file(path, e))
                })
            })
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("parser thread panicked"))
            .collect::<Result<Vec<_>>>()
    })?;
    let quad = assemble_quad(sets)?;
    let metadata = Metadata {
        inputs: paths
            .iter()
            .map(|(c, p)| (*c, p.display().to_string()))
            .collect(),
        timestamp: None,
        correctness: Some(correctness.to_string()),
    };
    analyze_quad(&quad, alpha, metadata)
}

impl Report {
    /// Paired tests as stored in the report, A1..A6.
    pub fn tests(&self) -> Vec<(AnalysisId, PairedTTest)> {
        self.analyses
            .iter()
            .map(|(id, a)| {
                (
                    *id,
                    PairedTTest {
                        n: a.df as usize + 1,
                        mean_a: a.mean_left,
                        mean_b: a.mean_right,
                        mean_diff: a.mean_diff,
                        sd_diff: a.sd_diff,
                        t_stat: a.t,
                        df: a.df,
                        p_value: a.p,
                    },
                )
            })
            .collect()
    }

    pub fn outcomes(&self) -> Result<[ComparisonOutcome; 6]> {
        let mut out = [ComparisonOutcome::Indistinguishable; 6];
        for id in AnalysisId::ALL {
            out[id.index()] = self
                .analyses
                .get(&id)
                .ok_or(Error::MissingAnalysis(id))?
                .outcome;
        }
        Ok(out)
    }

    /// The same report re-classified and re-inferred at `alpha`, using only
    /// the stored test statistics.
    pub fn reinfer(&self, alpha: Alpha) -> Result<Report> {
        let (analyses, inference) = reinfer(&self.tests(), alpha)?;
        let mut out = self.clone();
        out.alpha = alpha;
        out.analyses = analyses.iter().map(|a| (a.id, analysis_entry(a))).collect();
        out.hypotheses = hypothesis_entries(&inference.verdicts);
        out.warnings = warnings(&inference.verdicts);
        Ok(out)
    }

    pub fn state(&self, h: HypothesisId) -> Option<TruthValue> {
        self.hypotheses.get(&h).map(|e| e.state)
    }

    pub fn hypotheses_in_state(&self, state: TruthValue) -> Vec<HypothesisId> {
        self.hypotheses
            .iter()
            .filter(|(_, e)| e.state == state)
            .map(|(h, _)| *h)
            .collect()
    }

    pub fn significant_analyses(&self) -> Vec<AnalysisId> {
        self.analyses
            .iter()
            .filter(|(_, a)| a.outcome.is_significant())
            .map(|(id, _)| *id)
            .collect()
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn from_json(text: &str) -> Result<Report> {
        serde_json::from_str(text).map_err(|e| Error::InvalidReport(e.to_string()))
    }

    pub fn load(path: &Path) -> Result<Report> {
        let text = std::fs::read_to_string(path).map_err(|e| in_file(path, e.into()))?;
        Report::from_json(&text).map_err(|e| in_file(path, e))
    }

    /// Checks that the report is internally consistent: outcomes follow from
    /// the stored p, mean difference and alpha; indicators, states, votes,
    /// cautions and warnings follow from the outcomes.
    pub fn validate(&self) -> Result<()> {
        let fail = |msg: String| Err(Error::Inconsistent(msg));
        if self.version != REPORT_VERSION {
            return fail(format!("unsupported version `{}`", self.version));
        }
        if !self.conditions.keys().copied().eq(ConditionTag::ALL) {
            return fail("conditions must list m_d, m_dplus, mplus_d, mplus_dplus in order".into());
        }
        if !self.analyses.keys().copied().eq(AnalysisId::ALL) {
            return fail("analyses must list a1..a6 in order".into());
        }
        if !self.hypotheses.keys().copied().eq(HypothesisId::ALL) {
            return fail("hypotheses must list h1..h12 in order".into());
        }
        for (c, s) in &self.conditions {
            if !(s.ci_lo <= s.mean && s.mean <= s.ci_hi) {
                return fail(format!("{}: mean {} outside its interval", c.key(), s.mean));
            }
        }
        for (id, a) in &self.analyses {
            if (a.left, a.right) != id.pair() {
                return fail(format!("{id}: wrong condition pair"));
            }
            let n = self.conditions[&a.left].n;
            if a.df as usize + 1 != n || self.conditions[&a.right].n != n {
                return fail(format!("{id}: df {} inconsistent with n = {n}", a.df));
            }
            if !(0.0..=1.0).contains(&a.p) {
                return fail(format!("{id}: p-value {} outside [0, 1]", a.p));
            }
            if (a.mean_left - a.mean_right - a.mean_diff).abs() > 1e-9 {
                return fail(format!("{id}: mean_diff does not match the means"));
            }
            let expected = classify(a.p, a.mean_diff, self.alpha);
            if a.outcome != expected {
                return fail(format!(
                    "{id}: outcome {} but p = {} and mean_diff = {} give {} at alpha {}",
                    a.outcome.as_str(),
                    a.p,
                    a.mean_diff,
                    expected.as_str(),
                    self.alpha
                ));
            }
        }

        let rederived: Inference = infer_outcomes(&self.outcomes()?);
        for (h, e) in &self.hypotheses {
            let sum: i32 = e.votes.iter().map(|v| v.delta).sum();
            if sum != e.indicator {
                return fail(format!(
                    "{h}: indicator {} but votes sum to {sum}",
                    e.indicator
                ));
            }
            if e.state != TruthValue::from_indicator(e.indicator) {
                return fail(format!(
                    "{h}: state {} contradicts indicator {}",
                    e.state.as_str(),
                    e.indicator
                ));
            }
            if e.votes.iter().any(|v| v.target != *h || v.delta.abs() != 1) {
                return fail(format!("{h}: malformed vote"));
            }
            let verdict = rederived.verdict(*h);
            if e.votes != verdict.votes || e.cautions != verdict.cautions {
                return fail(format!("{h}: votes or cautions differ from the rule table"));
            }
        }
        if self.warnings != warnings(&rederived.verdicts) {
            return fail("warnings do not match the verdicts".into());
        }
        Ok(())
    }
}

fn format_p(p: f64) -> String {
    if p == 0.0 || p >= 1e-4 {
        format!("{p:.4}")
    } else {
        format!("{p:.2e}")
    }
}

fn format_t(t: f64) -> String {
    if t.is_infinite() {
        if t > 0.0 { "inf" } else { "-inf" }.to_string()
    } else {
        format!("{t:.4}")
    }
}

/// Fixed-width plain-text summary.
pub fn render_text(report: &Report) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "alpha = {}", report.alpha);
    let _ = writeln!(out);
    let _ = writeln!(out, "conditions");
    for (c, s) in &report.conditions {
        let _ = writeln!(
            out,
            "  {:<6} n={:<7} mean={:.6}  95% CI [{:.6}, {:.6}]",
            c.label(),
            s.n,
            s.mean,
            s.ci_lo,
            s.ci_hi
        );
    }
    let _ = writeln!(out);
    let _ = writeln!(out, "analyses");
    for (id, a) in &report.analyses {
        let pair = format!("{} vs {}", a.left.label(), a.right.label());
        let _ = writeln!(
            out,
            "  {id}  {pair:<14} {} {:<17} diff={:+.6}  t={:<10} df={:<6} p={}",
            a.outcome.glyph(),
            a.outcome.as_str(),
            a.mean_diff,
            format_t(a.t),
            a.df,
            format_p(a.p)
        );
    }
    let _ = writeln!(out);
    let _ = writeln!(out, "hypotheses");
    for (h, e) in &report.hypotheses {
        let indicator = if e.indicator == 0 {
            "0".to_string()
        } else {
            format!("{:+}", e.indicator)
        };
        let head = format!("{h} {} ({indicator})", e.state.as_str());
        let _ = writeln!(out, "  {head:<20} {}", e.statement);
    }
    let cautions: Vec<&Caution> = report
        .hypotheses
        .values()
        .flat_map(|e| &e.cautions)
        .collect();
    if !cautions.is_empty() {
        let _ = writeln!(out);
        let _ = writeln!(out, "cautions");
        for c in cautions {
            let _ = writeln!(
                out,
                "  [{} -> {}] {}",
                c.source, c.implicated, c.explanation
            );
        }
    }
    if !report.warnings.is_empty() {
        let _ = writeln!(out);
        let _ = writeln!(out, "warnings");
        for w in &report.warnings {
            let _ = writeln!(out, "  - {w}");
        }
    }
    out
}
