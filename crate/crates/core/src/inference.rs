//! Staged logical inference from the six comparisons to the twelve
//! concept hypotheses.
//!
//! Every analysis outcome casts ±1 votes on hypothesis indicators according
//! to a fixed rule table. Some rules are guarded by the current state of
//! other hypotheses, so the analyses run in three stages:
//! A1, A4 and A6 first, then A2 and A5, then A3. Each stage reads the
//! indicators as they stood at the end of the previous stage.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::results::{ConditionTag, QuadResults};
use crate::stats::{classify_outcome, paired_t_test, Alpha, ComparisonOutcome, PairedTTest};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum AnalysisId {
    A1,
    A2,
    A3,
    A4,
    A5,
    A6,
}

impl AnalysisId {
    pub const ALL: [AnalysisId; 6] = [
        AnalysisId::A1,
        AnalysisId::A2,
        AnalysisId::A3,
        AnalysisId::A4,
        AnalysisId::A5,
        AnalysisId::A6,
    ];

    /// Evaluation order; analyses within one stage see the same snapshot.
    pub const STAGES: [&'static [AnalysisId]; 3] = [
        &[AnalysisId::A1, AnalysisId::A4, AnalysisId::A6],
        &[AnalysisId::A2, AnalysisId::A5],
        &[AnalysisId::A3],
    ];

    pub fn index(self) -> usize {
        self as usize
    }

    /// The compared result sets as (left, right); the test is left minus right.
    pub fn pair(self) -> (ConditionTag, ConditionTag) {
        use ConditionTag::*;
        match self {
            AnalysisId::A1 => (MplusDplus, MD),
            AnalysisId::A2 => (MplusDplus, MDplus),
            AnalysisId::A3 => (MplusDplus, MplusD),
            AnalysisId::A4 => (MplusD, MD),
            AnalysisId::A5 => (MplusD, MDplus),
            AnalysisId::A6 => (MDplus, MD),
        }
    }

    pub fn key(self) -> &'static str {
        ["a1", "a2", "a3", "a4", "a5", "a6"][self.index()]
    }

    /// Hypotheses this analysis can vote on.
    pub fn informs(self) -> &'static [HypothesisId] {
        use HypothesisId::*;
        match self {
            AnalysisId::A1 | AnalysisId::A2 => &[H1, H2, H3, H4, H7, H8],
            AnalysisId::A3 => &[H7, H8, H9, H10, H11, H12],
            AnalysisId::A4 | AnalysisId::A5 => &[H11, H12],
            AnalysisId::A6 => &[H5, H6],
        }
    }

    /// Hypotheses whose state selects which rule of this analysis applies.
    pub fn depends_on(self) -> &'static [HypothesisId] {
        use HypothesisId::*;
        match self {
            AnalysisId::A2 | AnalysisId::A5 => &[H5, H6],
            AnalysisId::A3 => &[H1, H2],
            _ => &[],
        }
    }
}

impl fmt::Display for AnalysisId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "A{}", self.index() + 1)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum HypothesisId {
    H1,
    H2,
    H3,
    H4,
    H5,
    H6,
    H7,
    H8,
    H9,
    H10,
    H11,
    H12,
}

impl HypothesisId {
    pub const ALL: [HypothesisId; 12] = [
        HypothesisId::H1,
        HypothesisId::H2,
        HypothesisId::H3,
        HypothesisId::H4,
        HypothesisId::H5,
        HypothesisId::H6,
        HypothesisId::H7,
        HypothesisId::H8,
        HypothesisId::H9,
        HypothesisId::H10,
        HypothesisId::H11,
        HypothesisId::H12,
    ];

    pub fn index(self) -> usize {
        self as usize
    }

    /// The mutually exclusive counterpart (H1 <-> H2, H3 <-> H4, ...).
    pub fn partner(self) -> HypothesisId {
        HypothesisId::ALL[self.index() ^ 1]
    }

    pub fn key(self) -> &'static str {
        [
            "h1", "h2", "h3", "h4", "h5", "h6", "h7", "h8", "h9", "h10", "h11", "h12",
        ][self.index()]
    }

    pub fn statement(self) -> &'static str {
        match self {
            HypothesisId::H1 => "The concept is useful to the model",
            HypothesisId::H2 => "The concept is harmful to the model",
            HypothesisId::H3 => "M has already learned the concept adequately without extra information",
            HypothesisId::H4 => "M+ has learned the concept adequately from the extra information",
            HypothesisId::H5 => "Extra information at test time affects M positively",
            HypothesisId::H6 => "Extra information at test time affects M negatively",
            HypothesisId::H7 => "Extra information affects M+ positively",
            HypothesisId::H8 => "Extra information affects M+ negatively",
            HypothesisId::H9 => {
                "Training with extra information improves the part of M+ handling the extra information"
            }
            HypothesisId::H10 => {
                "Training with extra information impairs the part of M+ handling the extra information"
            }
            HypothesisId::H11 => {
                "Training with extra information improves the part of M+ handling the original data"
            }
            HypothesisId::H12 => {
                "Training with extra information impairs the part of M+ handling the original data"
            }
        }
    }
}

impl fmt::Display for HypothesisId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "H{}", self.index() + 1)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum TruthValue {
    #[serde(rename = "confirmed")]
    True,
    #[serde(rename = "rejected")]
    False,
    #[serde(rename = "unproven")]
    Unproven,
}

impl TruthValue {
    pub fn from_indicator(indicator: i32) -> Self {
        match indicator.signum() {
            1 => TruthValue::True,
            -1 => TruthValue::False,
            _ => TruthValue::Unproven,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            TruthValue::True => "confirmed",
            TruthValue::False => "rejected",
            TruthValue::Unproven => "unproven",
        }
    }
}

/// One classified comparison.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AnalysisResult {
    pub id: AnalysisId,
    pub test: PairedTTest,
    pub outcome: ComparisonOutcome,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Vote {
    pub source: AnalysisId,
    pub target: HypothesisId,
    pub delta: i32,
    pub rule_case: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Caution {
    pub source: AnalysisId,
    pub explanation: String,
    pub implicated: HypothesisId,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HypothesisVerdict {
    pub id: HypothesisId,
    pub indicator: i32,
    pub state: TruthValue,
    pub votes: Vec<Vote>,
    pub cautions: Vec<Caution>,
}

/// Which hypothesis state a rule requires.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Guard {
    Always,
    Is(HypothesisId, TruthValue),
}

/// One row of the rule table.
#[derive(Debug, Clone, Copy)]
pub struct Rule {
    pub analysis: AnalysisId,
    pub outcome: ComparisonOutcome,
    pub guard: Guard,
    pub case: &'static str,
    pub confirms: &'static [HypothesisId],
    pub rejects: &'static [HypothesisId],
    /// Set on rule cases whose conclusion contradicts a common-sense
    /// expectation; the named hypothesis is the one implicated.
    pub caution: Option<HypothesisId>,
}

mod table {
    use super::Guard::{Always, Is};
    use super::HypothesisId::*;
    use super::TruthValue::{False, True, Unproven};
    use super::{AnalysisId::*, Rule};
    use crate::stats::ComparisonOutcome::{Higher, Lower};

    const fn rule(
        analysis: super::AnalysisId,
        outcome: crate::stats::ComparisonOutcome,
        guard: super::Guard,
        case: &'static str,
        confirms: &'static [super::HypothesisId],
        rejects: &'static [super::HypothesisId],
        caution: Option<super::HypothesisId>,
    ) -> Rule {
        Rule {
            analysis,
            outcome,
            guard,
            case,
            confirms,
            rejects,
            caution,
        }
    }

    pub(super) static RULES: &[Rule] = &[
        rule(
            A1,
            Higher,
            Always,
            "A1.pos",
            &[H1, H4, H7],
            &[H2, H3, H8],
            None,
        ),
        rule(A1, Lower, Always, "A1.neg", &[H2, H4], &[H1, H3], None),
        rule(
            A2,
            Higher,
            Is(H6, False),
            "A2.pos.i",
            &[H1, H4, H7],
            &[H2, H3, H8],
            None,
        ),
        rule(
            A2,
            Higher,
            Is(H6, Unproven),
            "A2.pos.ii",
            &[H1, H4, H7],
            &[H2, H3, H8],
            None,
        ),
        rule(A2, Higher, Is(H6, True), "A2.pos.iii", &[], &[], Some(H6)),
        rule(
            A2,
            Lower,
            Is(H5, False),
            "A2.neg.i",
            &[H2, H4, H8],
            &[H1, H3, H7],
            None,
        ),
        rule(
            A2,
            Lower,
            Is(H5, Unproven),
            "A2.neg.ii",
            &[H2, H4, H8],
            &[H1, H3, H7],
            None,
        ),
        rule(A2, Lower, Is(H5, True), "A2.neg.iii", &[], &[], Some(H5)),
        rule(
            A3,
            Higher,
            Is(H1, True),
            "A3.pos.i",
            &[H7, H9],
            &[H8, H10],
            None,
        ),
        rule(
            A3,
            Higher,
            Is(H1, Unproven),
            "A3.pos.ii",
            &[H9],
            &[H10],
            None,
        ),
        rule(
            A3,
            Higher,
            Is(H1, False),
            "A3.pos.iii",
            &[H12],
            &[H11],
            None,
        ),
        rule(
            A3,
            Lower,
            Is(H2, True),
            "A3.neg.i",
            &[H8, H10],
            &[H7, H9],
            None,
        ),
        rule(
            A3,
            Lower,
            Is(H2, Unproven),
            "A3.neg.ii",
            &[H10],
            &[H9],
            None,
        ),
        rule(
            A3,
            Lower,
            Is(H2, False),
            "A3.neg.iii",
            &[H10],
            &[H9],
            Some(H2),
        ),
        rule(A4, Higher, Always, "A4.pos", &[H11], &[H12], None),
        rule(A4, Lower, Always, "A4.neg", &[H12], &[H11], None),
        rule(A5, Higher, Is(H6, False), "A5.pos.i", &[H11], &[H12], None),
        rule(
            A5,
            Higher,
            Is(H6, Unproven),
            "A5.pos.ii",
            &[H11],
            &[H12],
            None,
        ),
        rule(A5, Higher, Is(H6, True), "A5.pos.iii", &[], &[], Some(H6)),
        rule(A5, Lower, Is(H5, False), "A5.neg.i", &[H12], &[H11], None),
        rule(
            A5,
            Lower,
            Is(H5, Unproven),
            "A5.neg.ii",
            &[H12],
            &[H11],
            None,
        ),
        rule(A5, Lower, Is(H5, True), "A5.neg.iii", &[], &[], Some(H5)),
        rule(A6, Higher, Always, "A6.pos", &[H5], &[H6], None),
        rule(A6, Lower, Always, "A6.neg", &[H6], &[H5], None),
    ];
}

/// The complete rule table.
pub fn rules() -> &'static [Rule] {
    table::RULES
}

/// Running indicator tallies, one per hypothesis.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Lattice([i32; 12]);

impl Lattice {
    pub fn indicator(&self, h: HypothesisId) -> i32 {
        self.0[h.index()]
    }

    pub fn state(&self, h: HypothesisId) -> TruthValue {
        TruthValue::from_indicator(self.indicator(h))
    }

    fn add(&mut self, vote: &Vote) {
        self.0[vote.target.index()] += vote.delta;
    }
}

impl From<[i32; 12]> for Lattice {
    fn from(values: [i32; 12]) -> Self {
        Lattice(values)
    }
}

fn guard_holds(guard: Guard, lattice: &Lattice) -> bool {
    match guard {
        Guard::Always => true,
        Guard::Is(h, state) => lattice.state(h) == state,
    }
}

fn caution_text(rule: &Rule, implicated: HypothesisId) -> String {
    let (left, right) = rule.analysis.pair();
    let relation = match rule.outcome {
        ComparisonOutcome::Higher => "higher than",
        _ => "lower than",
    };
    if let Guard::Is(_, TruthValue::False) = rule.guard {
        // the A3 anomaly: extra-information part degraded by a non-harmful concept
        format!(
            "{}: {left} {relation} {right} while {implicated} is rejected; the part of M+ \
             handling the extra information got worse although the concept is not harmful; \
             treat with caution",
            rule.analysis
        )
    } else {
        format!(
            "{}: {left} {relation} {right} is explainable only by {implicated} being confirmed, \
             which contradicts the expectation that {implicated} is false; no votes cast; \
             treat with caution",
            rule.analysis
        )
    }
}

/// Votes and cautions produced by one analysis against the given indicator
/// snapshot. An indistinguishable outcome produces nothing.
pub fn apply_rules(
    id: AnalysisId,
    outcome: ComparisonOutcome,
    lattice: &Lattice,
) -> (Vec<Vote>, Vec<Caution>) {
    let Some(rule) = table::RULES
        .iter()
        .find(|r| r.analysis == id && r.outcome == outcome && guard_holds(r.guard, lattice))
    else {
        return (Vec::new(), Vec::new());
    };
    let vote = |target: HypothesisId, delta: i32| Vote {
        source: id,
        target,
        delta,
        rule_case: rule.case.to_string(),
    };
    let votes = rule
        .confirms
        .iter()
        .map(|h| vote(*h, 1))
        .chain(rule.rejects.iter().map(|h| vote(*h, -1)))
        .collect();
    let cautions = rule
        .caution
        .map(|h| Caution {
            source: id,
            explanation: caution_text(rule, h),
            implicated: h,
        })
        .into_iter()
        .collect();
    (votes, cautions)
}

/// Outcome of the staged inference.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Inference {
    /// H1..H12 in order.
    pub verdicts: Vec<HypothesisVerdict>,
    /// Every caution in the order it was raised.
    pub cautions: Vec<Caution>,
}

impl Inference {
    pub fn verdict(&self, h: HypothesisId) -> &HypothesisVerdict {
        &self.verdicts[h.index()]
    }

    pub fn with_state(&self, state: TruthValue) -> Vec<HypothesisId> {
        self.verdicts
            .iter()
            .filter(|v| v.state == state)
            .map(|v| v.id)
            .collect()
    }
}

/// Runs the staged inference over one outcome per analysis, indexed A1..A6.
pub fn infer_outcomes(outcomes: &[ComparisonOutcome; 6]) -> Inference {
    let mut lattice = Lattice::default();
    let mut votes: Vec<Vote> = Vec::new();
    let mut cautions: Vec<Caution> = Vec::new();
    for stage in AnalysisId::STAGES {
        let snapshot = lattice;
        for &id in stage {
            let (v, c) = apply_rules(id, outcomes[id.index()], &snapshot);
            for vote in &v {
                lattice.add(vote);
            }
            votes.extend(v);
            cautions.extend(c);
        }
    }
    let verdicts = HypothesisId::ALL
        .iter()
        .map(|&h| HypothesisVerdict {
            id: h,
            indicator: lattice.indicator(h),
            state: lattice.state(h),
            votes: votes.iter().filter(|v| v.target == h).cloned().collect(),
            cautions: cautions
                .iter()
                .filter(|c| c.implicated == h)
                .cloned()
                .collect(),
        })
        .collect();
    Inference { verdicts, cautions }
}

fn outcome_table<T>(
    items: &[T],
    key: impl Fn(&T) -> (AnalysisId, ComparisonOutcome),
) -> Result<[ComparisonOutcome; 6]> {
    let mut slots = [None; 6];
    for item in items {
        let (id, outcome) = key(item);
        if slots[id.index()].replace(outcome).is_some() {
            return Err(Error::DuplicateAnalysis(id));
        }
    }
    let mut out = [ComparisonOutcome::Indistinguishable; 6];
    for id in AnalysisId::ALL {
        out[id.index()] = slots[id.index()].ok_or(Error::MissingAnalysis(id))?;
    }
    Ok(out)
}

/// Staged inference over exactly one result per analysis, in any order.
pub fn infer(analyses: &[AnalysisResult]) -> Result<Inference> {
    let outcomes = outcome_table(analyses, |a| (a.id, a.outcome))?;
    Ok(infer_outcomes(&outcomes))
}

/// Runs the six paired t-tests on a quad and classifies them at `alpha`.
pub fn run_analyses(quad: &QuadResults, alpha: Alpha) -> Result<Vec<AnalysisResult>> {
    AnalysisId::ALL
        .iter()
        .map(|&id| {
            let (left, right) = id.pair();
            let test = paired_t_test(&quad.get(left).scores(), &quad.get(right).scores())?;
            Ok(AnalysisResult {
                id,
                test,
                outcome: classify_outcome(&test, alpha),
            })
        })
        .collect()
}

/// Reclassifies stored tests at a new threshold, then re-runs inference.
pub fn reinfer(
    tests: &[(AnalysisId, PairedTTest)],
    alpha: Alpha,
) -> Result<(Vec<AnalysisResult>, Inference)> {
    let mut analyses: Vec<AnalysisResult> = tests
        .iter()
        .map(|(id, test)| AnalysisResult {
            id: *id,
            test: *test,
            outcome: classify_outcome(test, alpha),
        })
        .collect();
    let inference = infer(&analyses)?;
    analyses.sort_by_key(|a| a.id);
    Ok((analyses, inference))
}

/// Report-level warnings: confirmed H5/H6 (model template or learning
/// process likely flawed) followed by every caution, verbatim.
pub fn warnings(verdicts: &[HypothesisVerdict]) -> Vec<String> {
    let mut out = Vec::new();
    for v in verdicts {
        if matches!(v.id, HypothesisId::H5 | HypothesisId::H6) && v.state == TruthValue::True {
            out.push(format!(
                "{} confirmed: {}. M reacts to extra information it was never trained on, \
                 which usually points to a flawed model template or learning process; \
                 do not take A6 at face value",
                v.id,
                v.id.statement()
            ));
        }
    }
    let mut cautions: Vec<&Caution> = verdicts.iter().flat_map(|v| &v.cautions).collect();
    cautions.sort_by_key(|c| c.source);
    out.extend(cautions.into_iter().map(|c| c.explanation.clone()));
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use ComparisonOutcome::{Higher as Hi, Indistinguishable as Eq, Lower as Lo};
    use HypothesisId::*;

    fn sorted(mut v: Vec<HypothesisId>) -> Vec<HypothesisId> {
        v.sort();
        v
    }

    #[test]
    fn all_indistinguishable_is_all_unproven() {
        let inf = infer_outcomes(&[Eq; 6]);
        for v in &inf.verdicts {
            assert_eq!(v.indicator, 0);
            assert_eq!(v.state, TruthValue::Unproven);
            assert!(v.votes.is_empty());
        }
        assert!(inf.cautions.is_empty());
        assert!(warnings(&inf.verdicts).is_empty());
    }

    #[test]
    fn a1_higher_alone() {
        let inf = infer_outcomes(&[Hi, Eq, Eq, Eq, Eq, Eq]);
        assert_eq!(sorted(inf.with_state(TruthValue::True)), vec![H1, H4, H7]);
        assert_eq!(sorted(inf.with_state(TruthValue::False)), vec![H2, H3, H8]);
    }

    #[test]
    fn a1_rule_votes_regardless_of_lattice() {
        let lattice = Lattice::from([3, -1, 0, 2, 1, -1, 0, 0, 5, 0, 0, 1]);
        let (votes, cautions) = apply_rules(AnalysisId::A1, Hi, &lattice);
        let mut got: Vec<(HypothesisId, i32)> = votes.iter().map(|v| (v.target, v.delta)).collect();
        got.sort();
        assert_eq!(
            got,
            vec![(H1, 1), (H2, -1), (H3, -1), (H4, 1), (H7, 1), (H8, -1)]
        );
        assert!(votes.iter().all(|v| v.rule_case == "A1.pos"));
        assert!(cautions.is_empty());
    }

    #[test]
    fn a2_higher_with_h6_confirmed_only_cautions() {
        let mut values = [0; 12];
        values[H6.index()] = 1;
        let (votes, cautions) = apply_rules(AnalysisId::A2, Hi, &Lattice::from(values));
        assert!(votes.is_empty());
        assert_eq!(cautions.len(), 1);
        assert_eq!(cautions[0].implicated, H6);
        assert_eq!(cautions[0].source, AnalysisId::A2);
    }

    #[test]
    fn a3_indistinguishable_is_empty() {
        let (votes, cautions) = apply_rules(AnalysisId::A3, Eq, &Lattice::default());
        assert!(votes.is_empty() && cautions.is_empty());
    }

    #[test]
    fn a3_lower_with_h2_rejected_votes_and_cautions() {
        let mut values = [0; 12];
        values[H2.index()] = -1;
        let (votes, cautions) = apply_rules(AnalysisId::A3, Lo, &Lattice::from(values));
        assert_eq!(votes.len(), 2);
        assert!(votes.iter().all(|v| v.rule_case == "A3.neg.iii"));
        assert_eq!(cautions[0].implicated, H2);
    }

    #[test]
    fn rotation_pattern_trace() {
        let inf = infer_outcomes(&[Hi, Hi, Hi, Lo, Lo, Lo]);
        assert_eq!(
            sorted(inf.with_state(TruthValue::True)),
            vec![H1, H4, H6, H7, H9, H12]
        );
        assert_eq!(
            sorted(inf.with_state(TruthValue::False)),
            vec![H2, H3, H5, H8, H10, H11]
        );
        let indicators: Vec<i32> = inf.verdicts.iter().map(|v| v.indicator).collect();
        assert_eq!(indicators, vec![1, -1, -1, 1, -1, 1, 2, -2, 1, -1, -2, 2]);
        assert_eq!(inf.cautions.len(), 1);
        assert_eq!(inf.cautions[0].source, AnalysisId::A2);
        assert!(inf
            .verdict(H7)
            .votes
            .iter()
            .any(|v| v.rule_case == "A3.pos.i"));
        let w = warnings(&inf.verdicts);
        assert_eq!(w.len(), 2);
        assert!(w[0].starts_with("H6 confirmed"));
        assert_eq!(w[1], inf.cautions[0].explanation);
    }

    #[test]
    fn partner_is_fixed_point_free_involution() {
        for h in HypothesisId::ALL {
            assert_ne!(h.partner(), h);
            assert_eq!(h.partner().partner(), h);
        }
        assert_eq!(H11.partner(), H12);
    }

    #[test]
    fn rule_table_matches_dependency_table() {
        for rule in rules() {
            for h in rule.confirms.iter().chain(rule.rejects) {
                assert!(
                    rule.analysis.informs().contains(h),
                    "{} votes {h}",
                    rule.case
                );
            }
            if let Guard::Is(h, _) = rule.guard {
                assert!(
                    rule.analysis.depends_on().contains(&h),
                    "{} guarded on {h}",
                    rule.case
                );
            }
        }
    }

    #[test]
    fn exactly_one_rule_per_significant_case() {
        let states = [TruthValue::True, TruthValue::False, TruthValue::Unproven];
        for id in AnalysisId::ALL {
            for outcome in [Hi, Lo] {
                for s1 in states {
                    for s2 in states {
                        let mut values = [0; 12];
                        let set = |values: &mut [i32; 12], h: HypothesisId, s: TruthValue| {
                            values[h.index()] = match s {
                                TruthValue::True => 1,
                                TruthValue::False => -1,
                                TruthValue::Unproven => 0,
                            }
                        };
                        if let [a, b] = id.depends_on() {
                            set(&mut values, *a, s1);
                            set(&mut values, *b, s2);
                        }
                        let lattice = Lattice::from(values);
                        let matching = rules()
                            .iter()
                            .filter(|r| {
                                r.analysis == id
                                    && r.outcome == outcome
                                    && guard_holds(r.guard, &lattice)
                            })
                            .count();
                        assert_eq!(matching, 1, "{id} {outcome:?}");
                    }
                }
            }
        }
    }

    #[test]
    fn infer_rejects_missing_or_duplicate() {
        let test = crate::stats::paired_t_test(&[0.0, 1.0], &[0.0, 1.0]).unwrap();
        let make = |id| AnalysisResult {
            id,
            test,
            outcome: Eq,
        };
        let five: Vec<_> = AnalysisId::ALL[..5].iter().map(|&id| make(id)).collect();
        assert!(matches!(
            infer(&five),
            Err(Error::MissingAnalysis(AnalysisId::A6))
        ));
        let mut dup: Vec<_> = AnalysisId::ALL.iter().map(|&id| make(id)).collect();
        dup.push(make(AnalysisId::A3));
        assert!(matches!(
            infer(&dup),
            Err(Error::DuplicateAnalysis(AnalysisId::A3))
        ));
    }

    #[test]
    fn reinfer_threshold_crossing() {
        // A1 with p = 0.02 and positive difference, all others p = 0.5
        let test = |p: f64| PairedTTest {
            n: 100,
            mean_a: 0.6,
            mean_b: 0.5,
            mean_diff: 0.1,
            sd_diff: 0.3,
            t_stat: 1.0,
            df: 99,
            p_value: p,
        };
        let tests: Vec<_> = AnalysisId::ALL
            .iter()
            .map(|&id| (id, test(if id == AnalysisId::A1 { 0.02 } else { 0.5 })))
            .collect();
        let (_, loose) = reinfer(&tests, Alpha::new(0.05).unwrap()).unwrap();
        assert_eq!(loose, infer_outcomes(&[Hi, Eq, Eq, Eq, Eq, Eq]));
        let (analyses, strict) = reinfer(&tests, Alpha::new(0.01).unwrap()).unwrap();
        assert!(strict
            .verdicts
            .iter()
            .all(|v| v.state == TruthValue::Unproven));
        assert!(analyses.iter().all(|a| a.outcome == Eq));
    }

    #[test]
    fn confirmed_h5_warns() {
        let inf = infer_outcomes(&[Eq, Eq, Eq, Eq, Eq, Hi]);
        let w = warnings(&inf.verdicts);
        assert_eq!(w.len(), 1);
        assert!(w[0].starts_with("H5 confirmed"));
    }
}
