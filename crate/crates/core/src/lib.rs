//! Evaluation of concept hypotheses about a pair of ML models.
//!
//! Four result sets are compared: model `M` (trained without the concept's
//! extra information) and `M+` (trained with it), each tested on data with
//! and without that information. Six paired t-tests feed a staged rule
//! table that confirms, rejects or leaves unproven twelve hypotheses.

pub mod error;
pub mod fixture;
pub mod inference;
pub mod report;
pub mod results;
pub mod stats;

pub use error::{Error, Result};
pub use fixture::{generate_fixture, FixtureScenario, SplitMix64};
pub use inference::{
    apply_rules, infer, infer_outcomes, reinfer, run_analyses, warnings, AnalysisId,
    AnalysisResult, Caution, HypothesisId, HypothesisVerdict, Inference, Lattice, TruthValue, Vote,
};
pub use report::{analyze, analyze_quad, render_text, Metadata, Report};
pub use results::{
    accuracy, assemble_quad, compute_correctness, parse_result_file, write_result_set,
    ConditionTag, CorrectnessSpec, Label, QuadResults, ResultRecord, ResultSet,
};
pub use stats::{
    classify_outcome, confidence_interval, paired_t_test, regularized_incomplete_beta, t_cdf,
    t_inverse_cdf, Alpha, ComparisonOutcome, ConfidenceInterval, PairedTTest,
};
