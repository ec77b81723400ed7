//! `vequil` — exact-rational verification of vector equilibrium problems
//! over cone-ordered spaces, driven by a line-oriented problem config.
//!
//! Every subcommand prints a self-contained text report (the config is
//! embedded verbatim) so that `vequil verify` can later re-execute all
//! tasks and replay all certificates without any other input.

mod config;
mod report;
mod run;
mod sexpr;
mod suite;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use vequil_core::domain::BoxDomain;
use vequil_core::verdict::SamplingBudget;

#[derive(Parser)]
#[command(
    name = "vequil",
    version,
    about = "Exact-rational checker for weak vector equilibrium problems"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct TaskArgs {
    /// Problem configuration file.
    #[arg(long)]
    config: PathBuf,
    /// Emit the report as JSON instead of the line format.
    #[arg(long)]
    json: bool,
    /// Override the symbolic tail depth of the sampling budget.
    #[arg(long)]
    budget: Option<u32>,
    /// Override every per-axis grid count of the domain.
    #[arg(long)]
    grid: Option<u32>,
    /// Accepted for interface stability; all sampling is deterministic,
    /// so the seed does not influence any result.
    #[arg(long)]
    seed: Option<u64>,
}

#[derive(Subcommand)]
enum Command {
    /// Run every task in the configuration.
    Run(TaskArgs),
    /// Run only the cone-validation tasks.
    ValidateCone(TaskArgs),
    /// Run only the map-evaluation tasks.
    Eval(TaskArgs),
    /// Run only the semicontinuity tasks.
    Semicont(TaskArgs),
    /// Run only the level-set tasks.
    Levelset(TaskArgs),
    /// Run only the equilibrium-solving tasks.
    Solve(TaskArgs),
    /// Run only the transfer-condition tasks.
    CheckCondition(TaskArgs),
    /// Run only the coercivity tasks.
    Coercivity(TaskArgs),
    /// Run only the diagonal-membership tasks.
    Diagonal(TaskArgs),
    /// Run only the existence-probe tasks.
    Probe(TaskArgs),
    /// Run the built-in regression suite of pinned exact values.
    PaperSuite,
    /// Re-execute and replay a previously written report.
    Verify {
        /// Report file produced by another subcommand.
        path: PathBuf,
    },
}

fn run_filtered(args: &TaskArgs, kind: Option<&str>) -> ExitCode {
    let text = match std::fs::read_to_string(&args.config) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("error: cannot read {}: {e}", args.config.display());
            return ExitCode::from(2);
        }
    };
    let mut config = match config::parse_config(&text) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    if let Some(g) = args.grid {
        let counts = vec![g; config.domain.dim()];
        match BoxDomain::new(config.domain.lower().clone(), config.domain.upper().clone(), counts)
        {
            Ok(d) => config.domain = d,
            Err(e) => {
                eprintln!("error: bad grid override: {e}");
                return ExitCode::from(2);
            }
        }
    }
    let mut budget = SamplingBudget::default();
    if let Some(b) = args.budget {
        if b == 0 {
            eprintln!("error: budget must be positive");
            return ExitCode::from(2);
        }
        budget.tail_depth = b;
    }
    let _ = args.seed;
    match run::execute(&config, kind, &budget) {
        Ok((report, outcomes)) => {
            if args.json {
                print!("{}", report::write_report_json(&report));
            } else {
                print!("{}", report::write_report(&report));
            }
            if outcomes.iter().any(|o| o.expectation_missed) {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn verify(path: &PathBuf) -> ExitCode {
    let text = match std::fs::read_to_string(path) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("error: cannot read {}: {e}", path.display());
            return ExitCode::from(2);
        }
    };
    match run::verify_report(&text) {
        Ok(summary) => {
            println!(
                "verified {} task(s), replayed {} certificate(s)",
                summary.tasks_checked, summary.certificates_replayed
            );
            if summary.certificates_replayed == 0 {
                println!("note: no kernel-replayable certificates in this report");
            }
            match summary.failure {
                None => {
                    println!("report verifies");
                    ExitCode::SUCCESS
                }
                Some(reason) => {
                    println!("report does NOT verify: {reason}");
                    ExitCode::from(1)
                }
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn main() -> ExitCode {
    match Cli::parse().command {
        Command::Run(a) => run_filtered(&a, None),
        Command::ValidateCone(a) => run_filtered(&a, Some("validate-cone")),
        Command::Eval(a) => run_filtered(&a, Some("eval")),
        Command::Semicont(a) => run_filtered(&a, Some("semicont")),
        Command::Levelset(a) => run_filtered(&a, Some("levelset")),
        Command::Solve(a) => run_filtered(&a, Some("solve")),
        Command::CheckCondition(a) => run_filtered(&a, Some("check-condition")),
        Command::Coercivity(a) => run_filtered(&a, Some("coercivity")),
        Command::Diagonal(a) => run_filtered(&a, Some("diagonal")),
        Command::Probe(a) => run_filtered(&a, Some("probe")),
        Command::PaperSuite => match suite::run_paper_suite() {
            Ok(lines_and_ok) => {
                for line in &lines_and_ok.0 {
                    println!("{line}");
                }
                if lines_and_ok.1 {
                    ExitCode::SUCCESS
                } else {
                    ExitCode::from(1)
                }
            }
            Err(e) => {
                eprintln!("error: {e}");
                ExitCode::from(2)
            }
        },
        Command::Verify { path } => verify(&path),
    }
}
