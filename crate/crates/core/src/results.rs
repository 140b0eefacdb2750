//! Per-item test results for the four model/data conditions.
//!
//! A result file is a CSV with a header row and the columns `id`,
//! `ground_truth`, `ml_label` and optionally `ml_uncertainty`. Row order is
//! significant: the four files of one experiment must list the same ids in
//! the same order.

use std::collections::HashSet;
use std::fmt;
use std::io::{Read, Write};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// One of the four model/test-data combinations.
///
/// `M` is the model trained without the extra concept information, `M+` the
/// one trained with it; `D` and `D+` are the matching test sets.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum ConditionTag {
    #[serde(rename = "m_d")]
    MD,
    #[serde(rename = "m_dplus")]
    MDplus,
    #[serde(rename = "mplus_d")]
    MplusD,
    #[serde(rename = "mplus_dplus")]
    MplusDplus,
}

impl ConditionTag {
    pub const ALL: [ConditionTag; 4] = [
        ConditionTag::MD,
        ConditionTag::MDplus,
        ConditionTag::MplusD,
        ConditionTag::MplusDplus,
    ];

    pub fn index(self) -> usize {
        match self {
            ConditionTag::MD => 0,
            ConditionTag::MDplus => 1,
            ConditionTag::MplusD => 2,
            ConditionTag::MplusDplus => 3,
        }
    }

    /// Wire key, e.g. `mplus_dplus`.
    pub fn key(self) -> &'static str {
        match self {
            ConditionTag::MD => "m_d",
            ConditionTag::MDplus => "m_dplus",
            ConditionTag::MplusD => "mplus_d",
            ConditionTag::MplusDplus => "mplus_dplus",
        }
    }

    /// Human-readable form, e.g. `M+,D+`.
    pub fn label(self) -> &'static str {
        match self {
            ConditionTag::MD => "M,D",
            ConditionTag::MDplus => "M,D+",
            ConditionTag::MplusD => "M+,D",
            ConditionTag::MplusDplus => "M+,D+",
        }
    }
}

impl fmt::Display for ConditionTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "R[{}]", self.label())
    }
}

impl FromStr for ConditionTag {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        ConditionTag::ALL
            .into_iter()
            .find(|c| c.key() == s)
            .ok_or_else(|| Error::Domain(format!("unknown condition `{s}`")))
    }
}

/// A ground-truth or predicted label.
#[derive(Debug, Clone, PartialEq)]
pub enum Label {
    Nominal(String),
    Numeric(f64),
}

impl Label {
    pub fn kind(&self) -> &'static str {
        match self {
            Label::Nominal(_) => "nominal",
            Label::Numeric(_) => "numeric",
        }
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Label::Nominal(s) => f.write_str(s),
            Label::Numeric(x) => write!(f, "{x}"),
        }
    }
}

/// How per-item correctness is derived from ground truth and model label.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub enum CorrectnessSpec {
    #[default]
    ExactMatch,
    NumericAbsolute {
        tolerance: f64,
    },
}

impl fmt::Display for CorrectnessSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CorrectnessSpec::ExactMatch => f.write_str("exact"),
            CorrectnessSpec::NumericAbsolute { tolerance } => write!(f, "numeric:{tolerance}"),
        }
    }
}

impl FromStr for CorrectnessSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s == "exact" {
            return Ok(CorrectnessSpec::ExactMatch);
        }
        let tolerance = s
            .strip_prefix("numeric:")
            .and_then(|t| t.parse::<f64>().ok())
            .filter(|t| t.is_finite() && *t >= 0.0)
            .ok_or_else(|| Error::InvalidCorrectnessSpec(s.to_string()))?;
        Ok(CorrectnessSpec::NumericAbsolute { tolerance })
    }
}

/// Correctness of one prediction: 1 when it counts as right, 0 otherwise.
pub fn compute_correctness(truth: &Label, label: &Label, spec: &CorrectnessSpec) -> Result<f64> {
    let hit = match (truth, label) {
        (Label::Numeric(a), Label::Numeric(b)) => match spec {
            CorrectnessSpec::ExactMatch => a == b,
            CorrectnessSpec::NumericAbsolute { tolerance } => (a - b).abs() <= *tolerance,
        },
        (Label::Nominal(a), Label::Nominal(b)) => match spec {
            CorrectnessSpec::ExactMatch => a == b,
            CorrectnessSpec::NumericAbsolute { .. } => {
                return Err(Error::Domain(
                    "numeric correctness requires numeric labels".into(),
                ))
            }
        },
        (a, b) => return Err(Error::LabelKindMismatch(a.kind(), b.kind())),
    };
    Ok(if hit { 1.0 } else { 0.0 })
}

/// One tested data object.
#[derive(Debug, Clone, PartialEq)]
pub struct ResultRecord {
    id: String,
    ground_truth: Label,
    ml_label: Label,
    ml_uncertainty: f64,
    correctness: f64,
    score: f64,
}

impl ResultRecord {
    pub fn new(
        id: impl Into<String>,
        ground_truth: Label,
        ml_label: Label,
        ml_uncertainty: f64,
        spec: &CorrectnessSpec,
    ) -> Result<Self> {
        if !(0.0..=1.0).contains(&ml_uncertainty) {
            return Err(Error::Domain(format!(
                "ml_uncertainty {ml_uncertainty} outside [0, 1]"
            )));
        }
        let correctness = compute_correctness(&ground_truth, &ml_label, spec)?;
        Ok(ResultRecord {
            id: id.into(),
            ground_truth,
            ml_label,
            ml_uncertainty,
            correctness,
            score: (1.0 - ml_uncertainty) * correctness,
        })
    }

    pub fn id(&self) -> &str {
        &self.id
    }

    pub fn ground_truth(&self) -> &Label {
        &self.ground_truth
    }

    pub fn ml_label(&self) -> &Label {
        &self.ml_label
    }

    pub fn ml_uncertainty(&self) -> f64 {
        self.ml_uncertainty
    }

    pub fn correctness(&self) -> f64 {
        self.correctness
    }

    /// Uncertainty-weighted correctness, `(1 - uncertainty) * correctness`.
    pub fn score(&self) -> f64 {
        self.score
    }
}

/// The ordered results of testing one model on one test set.
#[derive(Debug, Clone, PartialEq)]
pub struct ResultSet {
    condition: ConditionTag,
    records: Vec<ResultRecord>,
}

impl ResultSet {
    pub fn new(condition: ConditionTag, records: Vec<ResultRecord>) -> Result<Self> {
        if records.is_empty() {
            return Err(Error::EmptyResultSet);
        }
        let mut seen = HashSet::with_capacity(records.len());
        for (i, r) in records.iter().enumerate() {
            if !seen.insert(r.id.as_str()) {
                return Err(Error::DuplicateId {
                    row: i as u64 + 2,
                    id: r.id.clone(),
                });
            }
        }
        Ok(ResultSet { condition, records })
    }

    pub fn condition(&self) -> ConditionTag {
        self.condition
    }

    pub fn records(&self) -> &[ResultRecord] {
        &self.records
    }

    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }

    pub fn scores(&self) -> Vec<f64> {
        self.records.iter().map(ResultRecord::score).collect()
    }
}

/// Mean score of a result set.
pub fn accuracy(set: &ResultSet) -> Result<f64> {
    mean_score(set.records())
}

fn mean_score(records: &[ResultRecord]) -> Result<f64> {
    if records.is_empty() {
        return Err(Error::EmptyResultSet);
    }
    Ok(records.iter().map(|r| r.score).sum::<f64>() / records.len() as f64)
}

/// The four result sets of one experiment, aligned item by item.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadResults {
    sets: [ResultSet; 4],
}

impl QuadResults {
    pub fn get(&self, condition: ConditionTag) -> &ResultSet {
        &self.sets[condition.index()]
    }

    pub fn len(&self) -> usize {
        self.sets[0].len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn iter(&self) -> impl Iterator<Item = &ResultSet> {
        self.sets.iter()
    }
}

/// Checks that the four sets cover every condition once, have equal length
/// and list identical ids position by position. Nothing is reordered.
pub fn assemble_quad(sets: impl IntoIterator<Item = ResultSet>) -> Result<QuadResults> {
    let mut slots: [Option<ResultSet>; 4] = Default::default();
    for set in sets {
        let slot = &mut slots[set.condition.index()];
        if slot.is_some() {
            return Err(Error::DuplicateCondition(set.condition));
        }
        *slot = Some(set);
    }
    let mut taken = Vec::with_capacity(4);
    for (slot, condition) in slots.into_iter().zip(ConditionTag::ALL) {
        taken.push(slot.ok_or(Error::MissingCondition(condition))?);
    }
    let sets: [ResultSet; 4] = taken.try_into().expect("four slots");

    let reference = &sets[0];
    for other in &sets[1..] {
        if other.len() != reference.len() {
            return Err(Error::LengthMismatch {
                condition: other.condition,
                expected: reference.len(),
                found: other.len(),
            });
        }
    }
    for index in 0..reference.len() {
        let expected = &reference.records[index].id;
        for other in &sets[1..] {
            let found = &other.records[index].id;
            if found != expected {
                return Err(Error::IdMisaligned {
                    condition: other.condition,
                    index,
                    expected: expected.clone(),
                    found: found.clone(),
                });
            }
        }
    }
    Ok(QuadResults { sets })
}

struct RawRow {
    line: u64,
    id: String,
    truth: String,
    label: String,
    uncertainty: f64,
}

fn parse_decimal(text: &str) -> Option<f64> {
    text.trim().parse::<f64>().ok().filter(|x| x.is_finite())
}

fn column(headers: &csv::StringRecord, name: &str) -> Option<usize> {
    headers.iter().position(|h| h.trim() == name)
}

/// Reads one result file.
///
/// Label columns are numeric when every cell parses as a finite decimal,
/// nominal otherwise; the two label columns must agree. Errors carry the
/// 1-based file line (the header is line 1).
pub fn parse_result_file<R: Read>(
    reader: R,
    correctness: &CorrectnessSpec,
    condition: ConditionTag,
) -> Result<ResultSet> {
    let mut csv = csv::ReaderBuilder::new()
        .has_headers(true)
        .from_reader(reader);
    let headers = csv.headers()?.clone();
    let id_col = column(&headers, "id").ok_or(Error::MissingColumn("id"))?;
    let truth_col = column(&headers, "ground_truth").ok_or(Error::MissingColumn("ground_truth"))?;
    let label_col = column(&headers, "ml_label").ok_or(Error::MissingColumn("ml_label"))?;
    let unc_col = column(&headers, "ml_uncertainty");

    let mut rows = Vec::new();
    let mut seen = HashSet::new();
    for record in csv.records() {
        let record = record?;
        let line = record
            .position()
            .map_or(rows.len() as u64 + 2, |p| p.line());
        let field = |i: usize| record.get(i).unwrap_or("");
        let non_empty = |i: usize, column: &'static str| {
            let v = field(i);
            if v.is_empty() {
                Err(Error::EmptyField { row: line, column })
            } else {
                Ok(v.to_string())
            }
        };
        let id = non_empty(id_col, "id")?;
        let truth = non_empty(truth_col, "ground_truth")?;
        let label = non_empty(label_col, "ml_label")?;
        let uncertainty = match unc_col.map(field).map(str::trim) {
            None | Some("") => 0.0,
            Some(text) => parse_decimal(text)
                .filter(|u| (0.0..=1.0).contains(u))
                .ok_or_else(|| Error::InvalidUncertainty {
                    row: line,
                    text: text.to_string(),
                })?,
        };
        if !seen.insert(id.clone()) {
            return Err(Error::DuplicateId { row: line, id });
        }
        rows.push(RawRow {
            line,
            id,
            truth,
            label,
            uncertainty,
        });
    }
    if rows.is_empty() {
        return Err(Error::EmptyResultSet);
    }

    // first row whose cell is not a number, if any
    let first_nominal = |pick: fn(&RawRow) -> &str| {
        rows.iter()
            .find(|r| parse_decimal(pick(r)).is_none())
            .map(|r| (r.line, pick(r).to_string()))
    };
    let truth_nominal = first_nominal(|r| &r.truth);
    let label_nominal = first_nominal(|r| &r.label);

    if let CorrectnessSpec::NumericAbsolute { .. } = correctness {
        if let Some((row, value)) = truth_nominal {
            return Err(Error::NonNumericLabel {
                row,
                column: "ground_truth",
                value,
            });
        }
        if let Some((row, value)) = label_nominal {
            return Err(Error::NonNumericLabel {
                row,
                column: "ml_label",
                value,
            });
        }
    }
    let numeric = match (&truth_nominal, &label_nominal) {
        (None, None) => true,
        (Some(_), Some(_)) => false,
        (Some((row, _)), None) => {
            return Err(Error::MixedLabelKinds {
                row: *row,
                truth_kind: "nominal",
                label_kind: "numeric",
            })
        }
        (None, Some((row, _))) => {
            return Err(Error::MixedLabelKinds {
                row: *row,
                truth_kind: "numeric",
                label_kind: "nominal",
            })
        }
    };
    let to_label = |text: String| {
        if numeric {
            Label::Numeric(parse_decimal(&text).expect("checked numeric"))
        } else {
            Label::Nominal(text)
        }
    };

    let records = rows
        .into_iter()
        .map(|r| {
            let truth = to_label(r.truth);
            let label = to_label(r.label);
            let correctness = compute_correctness(&truth, &label, correctness)?;
            Ok(ResultRecord {
                id: r.id,
                ground_truth: truth,
                ml_label: label,
                ml_uncertainty: r.uncertainty,
                correctness,
                score: (1.0 - r.uncertainty) * correctness,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    ResultSet::new(condition, records)
}

/// Writes a result set in the same CSV layout [`parse_result_file`] reads,
/// always including the `ml_uncertainty` column.
pub fn write_result_set<W: Write>(set: &ResultSet, writer: W) -> Result<()> {
    let mut csv = csv::Writer::from_writer(writer);
    csv.write_record(["id", "ground_truth", "ml_label", "ml_uncertainty"])?;
    for r in &set.records {
        csv.write_record([
            r.id.clone(),
            r.ground_truth.to_string(),
            r.ml_label.to_string(),
            r.ml_uncertainty.to_string(),
        ])?;
    }
    csv.flush()?;
    Ok(())
}
