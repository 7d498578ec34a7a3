use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use phisoft::decision::{decide, decide_single, Combine, DecisionConfig, RankingOrder};
use phisoft::io::{emit_for_path, emit_report_json, read_set, render_report, render_weights};
use phisoft::laws::{run_all, LawConfig};
use phisoft::{weights_from_importances, Aggregator, Execution, PhiSoftSet};

#[derive(Parser)]
#[command(name = "phisoft", version, about = "Pythagorean fuzzy parameterized soft set toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Parse a table and check its invariants.
    Validate { file: PathBuf },
    /// Combine two tables.
    Combine {
        #[arg(long, value_enum)]
        op: Op,
        a: PathBuf,
        b: PathBuf,
        /// Output file; `.json` selects JSON. Writes CSV to stdout when absent.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Print the normalized parameter weights of a table.
    Weights { file: PathBuf },
    /// Combine (when two tables are given), aggregate and rank.
    Decide {
        a: PathBuf,
        b: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "eintersect")]
        op: Op,
        #[arg(long, value_enum, default_value = "geometric")]
        agg: Agg,
        #[arg(long, value_enum, default_value = "es")]
        order: Order,
        /// Also write the full-precision report as JSON.
        #[arg(long, value_name = "OUT")]
        json: Option<PathBuf>,
    },
    /// Run the randomized law suites.
    Laws {
        #[arg(long, default_value_t = 10_000)]
        cases: usize,
        #[arg(long, default_value_t = LawConfig::default().seed)]
        seed: u64,
        /// Run cases on the calling thread only.
        #[arg(long)]
        sequential: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Op {
    Eunion,
    Eintersect,
    Runion,
    Rintersect,
}

impl From<Op> for Combine {
    fn from(op: Op) -> Self {
        match op {
            Op::Eunion => Combine::ExtendedUnion,
            Op::Eintersect => Combine::ExtendedIntersection,
            Op::Runion => Combine::RestrictedUnion,
            Op::Rintersect => Combine::RestrictedIntersection,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Agg {
    Geometric,
    Linear,
}

#[derive(Clone, Copy, ValueEnum)]
enum Order {
    /// Expectation score, then membership.
    Es,
    /// Membership, then expectation score.
    M,
    /// Score, then accuracy.
    Sfaf,
}

/// Validation or law failure; exits with status 1.
struct Failure(String);

type CmdResult = Result<(), Failure>;

fn fail(e: impl std::fmt::Display) -> Failure {
    Failure(e.to_string())
}

fn load(path: &Path) -> Result<PhiSoftSet, Failure> {
    read_set(path).map_err(|e| Failure(format!("{}: {e}", path.display())))
}

fn write_file(path: &Path, bytes: &[u8]) -> CmdResult {
    fs::write(path, bytes).map_err(|e| Failure(format!("{}: {e}", path.display())))
}

fn stdout(text: &[u8]) -> CmdResult {
    std::io::stdout().lock().write_all(text).map_err(fail)
}

fn run(command: Command) -> CmdResult {
    match command {
        Command::Validate { file } => {
            let set = load(&file)?;
            println!(
                "{}: ok ({} alternatives, {} parameters)",
                file.display(),
                set.universe().len(),
                set.parameters().len()
            );
            Ok(())
        }
        Command::Combine { op, a, b, output } => {
            let combined = Combine::from(op).apply(&load(&a)?, &load(&b)?).map_err(fail)?;
            match output {
                Some(out) => write_file(&out, &emit_for_path(&combined, &out)),
                None => stdout(&emit_for_path(&combined, Path::new("-"))),
            }
        }
        Command::Weights { file } => {
            let w = weights_from_importances(load(&file)?.parameters()).map_err(fail)?;
            stdout(render_weights(w.as_slice()).as_bytes())
        }
        Command::Decide { a, b, op, agg, order, json } => {
            let cfg = DecisionConfig {
                combine: op.into(),
                aggregator: match agg {
                    Agg::Geometric => Aggregator::Geometric,
                    Agg::Linear => Aggregator::Linear,
                },
                ranking_order: match order {
                    Order::Es => RankingOrder::EsThenMembership,
                    Order::M => RankingOrder::MembershipThenEs,
                    Order::Sfaf => RankingOrder::ScoreAccuracy,
                },
            };
            let first = load(&a)?;
            let report = match b {
                Some(b) => decide(&first, &load(&b)?, cfg),
                None => decide_single(&first, cfg),
            }
            .map_err(fail)?;
            if let Some(out) = json {
                write_file(&out, &emit_report_json(&report))?;
            }
            stdout(render_report(&report).as_bytes())
        }
        Command::Laws { cases, seed, sequential } => {
            let execution = if sequential { Execution::Sequential } else { Execution::default() };
            let report = run_all(&LawConfig { cases, seed, execution });
            let mut text = format!("seed {seed}, {cases} cases per suite\n");
            for s in &report.suites {
                match &s.counterexample {
                    None => text.push_str(&format!("ok    {}\n", s.name)),
                    Some(c) => text.push_str(&format!("FAIL  {} (case {}): {}\n", s.name, c.case, c.detail)),
                }
            }
            stdout(text.as_bytes())?;
            if report.passed() {
                Ok(())
            } else {
                Err(Failure("counterexample found".into()))
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure(msg)) => {
            eprintln!("phisoft: {msg}");
            ExitCode::from(1)
        }
    }
}
