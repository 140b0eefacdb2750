//! Command implementations behind the `hypolab` binary.

pub mod server;

use std::path::{Path, PathBuf};

use anyhow::Context;
use hypolab_core::{
    analyze, generate_fixture, render_text, Alpha, ConditionTag, CorrectnessSpec, FixtureScenario,
    Report,
};

/// Process exit status for a failed command.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExitCode {
    InputError = 1,
    InvariantViolation = 2,
}

/// Maps an error to its exit status: report invariant violations are
/// internal faults, everything else is bad input or environment.
pub fn exit_code(err: &anyhow::Error) -> ExitCode {
    let internal = err
        .chain()
        .filter_map(|e| e.downcast_ref::<hypolab_core::Error>())
        .any(hypolab_core::Error::is_invariant_violation);
    if internal {
        ExitCode::InvariantViolation
    } else {
        ExitCode::InputError
    }
}

pub struct AnalyzeArgs {
    pub inputs: [(ConditionTag, PathBuf); 4],
    pub alpha: Alpha,
    pub correctness: CorrectnessSpec,
    pub out: PathBuf,
}

/// Runs the pipeline, checks the result and writes the JSON report.
pub fn run_analyze(args: &AnalyzeArgs) -> anyhow::Result<Report> {
    let mut report = analyze(&args.inputs, args.correctness, args.alpha)?;
    report.metadata.timestamp = Some(chrono::Utc::now().to_rfc3339());
    report.validate()?;
    write_report(&report, &args.out)?;
    Ok(report)
}

pub fn write_report(report: &Report, path: &Path) -> anyhow::Result<()> {
    let mut json = report.to_json()?;
    json.push('\n');
    std::fs::write(path, json).with_context(|| format!("writing {}", path.display()))
}

/// Loads a report for re-use; a report that fails validation is bad input.
pub fn load_report(path: &Path) -> anyhow::Result<Report> {
    let report = Report::load(path)?;
    if let Err(err) = report.validate() {
        anyhow::bail!("{}: {err}", path.display());
    }
    Ok(report)
}

pub fn run_infer(path: &Path, alpha: Alpha) -> anyhow::Result<Report> {
    let report = load_report(path)?.reinfer(alpha)?;
    report.validate()?;
    Ok(report)
}

pub fn run_fixture(name: &str, n: usize, seed: u64, out: &Path) -> anyhow::Result<[PathBuf; 4]> {
    let scenario = FixtureScenario::builtin(name, n, seed)?;
    generate_fixture(&scenario, out)
        .with_context(|| format!("writing fixture to {}", out.display()))
}

pub fn emit(report: &Report, text: bool) -> anyhow::Result<String> {
    Ok(if text {
        render_text(report)
    } else {
        report.to_json()? + "\n"
    })
}
