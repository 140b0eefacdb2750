use thiserror::Error;

use crate::inference::AnalysisId;
use crate::results::ConditionTag;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("malformed CSV{}: {message}", row_suffix(*row))]
    Csv { row: Option<u64>, message: String },

    #[error("missing required column `{0}`")]
    MissingColumn(&'static str),

    #[error("row {row}: empty value in column `{column}`")]
    EmptyField { row: u64, column: &'static str },

    #[error("row {row}: duplicate id `{id}`")]
    DuplicateId { row: u64, id: String },

    #[error("row {row}: ml_uncertainty `{text}` is not a number in [0, 1]")]
    InvalidUncertainty { row: u64, text: String },

    #[error("row {row}: non-numeric {column} `{value}` under numeric correctness")]
    NonNumericLabel {
        row: u64,
        column: &'static str,
        value: String,
    },

    #[error("row {row}: ground_truth column is {truth_kind} but ml_label column is {label_kind}")]
    MixedLabelKinds {
        row: u64,
        truth_kind: &'static str,
        label_kind: &'static str,
    },

    #[error("label kinds differ: cannot compare {0} with {1}")]
    LabelKindMismatch(&'static str, &'static str),

    #[error("invalid correctness spec `{0}` (expected `exact` or `numeric:TOL`)")]
    InvalidCorrectnessSpec(String),

    #[error("result set is empty")]
    EmptyResultSet,

    #[error("result set for {0} given more than once")]
    DuplicateCondition(ConditionTag),

    #[error("no result set for {0}")]
    MissingCondition(ConditionTag),

    #[error("{condition} has {found} records, expected {expected}")]
    LengthMismatch {
        condition: ConditionTag,
        expected: usize,
        found: usize,
    },

    #[error("{condition} id at index {index} is `{found}`, expected `{expected}`")]
    IdMisaligned {
        condition: ConditionTag,
        index: usize,
        expected: String,
        found: String,
    },

    #[error("sample vectors differ in length ({0} vs {1})")]
    SampleLengthMismatch(usize, usize),

    #[error("at least 2 samples required, got {0}")]
    TooFewSamples(usize),

    #[error("non-finite sample value at index {0}")]
    NonFiniteSample(usize),

    #[error("argument out of domain: {0}")]
    Domain(String),

    #[error("alpha must lie strictly between 0 and 1, got {0}")]
    InvalidAlpha(f64),

    #[error("analysis {0} missing")]
    MissingAnalysis(AnalysisId),

    #[error("analysis {0} given more than once")]
    DuplicateAnalysis(AnalysisId),

    #[error("unknown fixture scenario `{0}`")]
    UnknownScenario(String),

    #[error("invalid report: {0}")]
    InvalidReport(String),

    #[error("report invariant violated: {0}")]
    Inconsistent(String),

    #[error("{path}: {source}")]
    File {
        path: String,
        #[source]
        source: Box<Error>,
    },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// True for failures of internal consistency rather than bad input.
    pub fn is_invariant_violation(&self) -> bool {
        match self {
            Error::Inconsistent(_) => true,
            Error::File { source, .. } => source.is_invariant_violation(),
            _ => false,
        }
    }
}

fn row_suffix(row: Option<u64>) -> String {
    match row {
        Some(r) => format!(" at row {r}"),
        None => String::new(),
    }
}

impl From<csv::Error> for Error {
    fn from(err: csv::Error) -> Self {
        let row = err.position().map(|p| p.line());
        let message = err.to_string();
        match err.into_kind() {
            csv::ErrorKind::Io(io) => Error::Io(io),
            _ => Error::Csv { row, message },
        }
    }
}
