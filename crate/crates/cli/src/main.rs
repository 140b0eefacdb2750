use std::path::PathBuf;
use std::process;

use clap::{Parser, Subcommand};
use hypolab::{emit, exit_code, load_report, run_analyze, run_fixture, run_infer, AnalyzeArgs};
use hypolab_core::{Alpha, ConditionTag, CorrectnessSpec};

#[derive(Parser)]
#[command(
    name = "hypolab",
    version,
    about = "Evaluate concept hypotheses from four paired ML result sets"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Analyze four result files and write a JSON report
    Analyze {
        #[arg(long = "m-d", value_name = "FILE")]
        m_d: PathBuf,
        #[arg(long = "m-dplus", value_name = "FILE")]
        m_dplus: PathBuf,
        #[arg(long = "mplus-d", value_name = "FILE")]
        mplus_d: PathBuf,
        #[arg(long = "mplus-dplus", value_name = "FILE")]
        mplus_dplus: PathBuf,
        #[arg(long, default_value_t = 0.05, value_parser = parse_alpha)]
        alpha: f64,
        /// `exact` or `numeric:TOL`
        #[arg(long, default_value = "exact")]
        correctness: CorrectnessSpec,
        #[arg(long, value_name = "FILE")]
        out: PathBuf,
        /// Also print a plain-text summary
        #[arg(long)]
        text: bool,
    },
    /// Re-evaluate a stored report at another significance threshold
    Infer {
        #[arg(long, value_name = "FILE")]
        report: PathBuf,
        #[arg(long, value_parser = parse_alpha)]
        alpha: f64,
        #[arg(long)]
        text: bool,
    },
    /// Serve a report and live re-inference over HTTP
    Serve {
        #[arg(long, value_name = "FILE")]
        report: PathBuf,
        #[arg(long, default_value_t = 8080)]
        port: u16,
        #[arg(long, value_name = "DIR")]
        ui_dir: Option<PathBuf>,
    },
    /// Generate synthetic result files for a built-in scenario
    Fixture {
        /// useful-concept, harmful-concept, null or already-learned
        #[arg(long)]
        scenario: String,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        seed: u64,
        #[arg(long, value_name = "DIR")]
        out: PathBuf,
    },
}

fn parse_alpha(s: &str) -> Result<f64, String> {
    let value: f64 = s.parse().map_err(|_| format!("`{s}` is not a number"))?;
    Alpha::new(value).map(Alpha::get).map_err(|e| e.to_string())
}

fn run(cli: Cli) -> anyhow::Result<()> {
    match cli.command {
        Command::Analyze {
            m_d,
            m_dplus,
            mplus_d,
            mplus_dplus,
            alpha,
            correctness,
            out,
            text,
        } => {
            let args = AnalyzeArgs {
                inputs: [
                    (ConditionTag::MD, m_d),
                    (ConditionTag::MDplus, m_dplus),
                    (ConditionTag::MplusD, mplus_d),
                    (ConditionTag::MplusDplus, mplus_dplus),
                ],
                alpha: Alpha::new(alpha)?,
                correctness,
                out,
            };
            let report = run_analyze(&args)?;
            if text {
                print!("{}", emit(&report, true)?);
            }
        }
        Command::Infer {
            report,
            alpha,
            text,
        } => {
            let updated = run_infer(&report, Alpha::new(alpha)?)?;
            print!("{}", emit(&updated, text)?);
        }
        Command::Serve {
            report,
            port,
            ui_dir,
        } => {
            let report = load_report(&report)?;
            let runtime = tokio::runtime::Runtime::new()?;
            runtime.block_on(hypolab::server::serve(report, port, ui_dir))?;
        }
        Command::Fixture {
            scenario,
            n,
            seed,
            out,
        } => {
            for path in run_fixture(&scenario, n, seed, &out)? {
                println!("{}", path.display());
            }
        }
    }
    Ok(())
}

fn main() {
    let cli = Cli::try_parse().unwrap_or_else(|err| {
        let _ = err.print();
        // usage errors are input errors; 2 is reserved for invariant violations
        process::exit(if err.use_stderr() { 1 } else { 0 });
    });
    if let Err(err) = run(cli) {
        eprintln!("error: {err:#}");
        process::exit(exit_code(&err) as i32);
    }
}
