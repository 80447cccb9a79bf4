//! `ds3` — scenario runner for the D(S₃) anyon workbench.
//!
//! Subcommands verify the fusion/braiding/transform identities, build and
//! analyze unitary embeddings, run synthetic process tomography, sweep
//! parametric noise, and drive the wavefront-matching inverse design. Every
//! run emits a JSON report with measured-vs-expected checks; the exit code
//! is 0 only when all checks pass.

mod report;
mod scenarios;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use report::{ScenarioReport, SweepReport};
use scenarios::{MethodName, OpName};

#[derive(Parser)]
#[command(name = "ds3", version, about = "Numerical workbench for D(S3) anyon simulation")]
struct Cli {
    /// RNG seed (falls back to DS3_SEED, then a fixed default).
    #[arg(long, global = true)]
    seed: Option<u64>,

    /// Write the JSON report to this path instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Also emit CSV tables where the scenario produces one.
    #[arg(long, global = true)]
    csv: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check the algebraic identities of the ribbon calculus.
    Verify {
        #[command(subcommand)]
        what: VerifyTarget,
    },
    /// Build a unitary embedding of a ribbon operator and analyze it.
    Dilate {
        #[arg(long, value_enum)]
        op: OpName,
        #[arg(long, value_enum)]
        method: MethodName,
    },
    /// Simulate prepare-and-measure data and reconstruct the process.
    Qpt {
        #[arg(long, value_enum)]
        op: OpName,
        /// Depolarizing strength applied after the process.
        #[arg(long, default_value_t = 0.0)]
        noise: f64,
        /// Poisson shots per setting; 0 means exact expectation values.
        #[arg(long, default_value_t = 0)]
        shots: u64,
    },
    /// Purity/fidelity table over a depolarizing-strength grid.
    NoiseTable {
        /// Comma-separated strengths, e.g. 0,0.1,0.2 (default 0..=1 by 0.1).
        #[arg(long)]
        grid: Option<String>,
    },
    /// Wavefront-matching inverse design of the embedded target.
    Wfm {
        #[arg(long, default_value_t = ds3_core::wfm::SUITE_MODES)]
        modes: usize,
        #[arg(long, default_value_t = ds3_core::wfm::SUITE_SWEEPS)]
        sweeps: usize,
    },
    /// The full verification sweep; exit 0 only if everything passes.
    All,
}

#[derive(Subcommand)]
enum VerifyTarget {
    /// Fusion identity and channel decomposition.
    Fusion,
    /// Exchange rewrite, R-matrix extraction and braiding matrices.
    Braiding,
    /// Abelian and non-Abelian basis transforms, MUB construction.
    Transforms,
}

fn resolve_seed(cli_seed: Option<u64>) -> u64 {
    cli_seed
        .or_else(|| {
            std::env::var("DS3_SEED")
                .ok()
                .and_then(|s| s.parse().ok())
        })
        .unwrap_or(7)
}

fn emit(text: &str, out: &Option<PathBuf>, extension_hint: Option<&str>) -> Result<(), String> {
    match out {
        None => {
            println!("{text}");
            Ok(())
        }
        Some(path) => {
            let target = match extension_hint {
                None => path.clone(),
                Some(ext) => path.with_extension(ext),
            };
            std::fs::write(&target, text)
                .map_err(|e| format!("cannot write {}: {e}", target.display()))
        }
    }
}

fn finish_scenario(
    rep: ScenarioReport,
    out: &Option<PathBuf>,
    csv: Option<String>,
    want_csv: bool,
) -> ExitCode {
    let passed = rep.all_passed();
    let failing = rep.failing();
    let json = serde_json::to_string_pretty(&rep).expect("report serializes");
    if emit(&json, out, None).is_err() {
        return ExitCode::from(2);
    }
    if want_csv {
        if let Some(table) = csv {
            if emit(&table, out, Some("csv")).is_err() {
                return ExitCode::from(2);
            }
        }
    }
    if passed {
        eprintln!("{}: all {} checks passed", rep.scenario, rep.checks.len());
        ExitCode::SUCCESS
    } else {
        eprintln!("{}: FAILED checks: {}", rep.scenario, failing.join("; "));
        ExitCode::from(1)
    }
}

fn parse_grid(grid: Option<String>) -> Result<Vec<f64>, String> {
    match grid {
        None => Ok((0..=10).map(|k| k as f64 / 10.0).collect()),
        Some(s) => {
            let mut values = Vec::new();
            for part in s.split(',') {
                let v: f64 = part
                    .trim()
                    .parse()
                    .map_err(|_| format!("invalid grid value {part:?}"))?;
                if !(0.0..=1.0).contains(&v) {
                    return Err(format!("grid value {v} outside [0, 1]"));
                }
                values.push(v);
            }
            if values.is_empty() {
                return Err("empty grid".into());
            }
            Ok(values)
        }
    }
}

fn run(cli: Cli) -> ExitCode {
    let seed = resolve_seed(cli.seed);
    let result: Result<ExitCode, String> = match cli.command {
        Command::Verify { what } => {
            let rep = match what {
                VerifyTarget::Fusion => scenarios::verify_fusion(seed),
                VerifyTarget::Braiding => scenarios::verify_braiding(seed),
                VerifyTarget::Transforms => scenarios::verify_transforms(seed),
            };
            Ok(finish_scenario(rep, &cli.out, None, false))
        }
        Command::Dilate { op, method } => scenarios::dilate(op, method, seed)
            .map(|rep| finish_scenario(rep, &cli.out, None, false)),
        Command::Qpt { op, noise, shots } => {
            scenarios::qpt(op, noise, shots, seed).and_then(|rep| {
                let csv = if cli.csv {
                    Some(scenarios::qpt_coupling_csv(op, noise, shots, seed)?)
                } else {
                    None
                };
                Ok(finish_scenario(rep, &cli.out, csv, cli.csv))
            })
        }
        Command::NoiseTable { grid } => parse_grid(grid).and_then(|g| {
            scenarios::noise_table(&g, seed)
                .map(|(rep, csv)| finish_scenario(rep, &cli.out, Some(csv), cli.csv))
        }),
        Command::Wfm { modes, sweeps } => scenarios::wfm(modes, sweeps, seed)
            .map(|rep| finish_scenario(rep, &cli.out, None, false)),
        Command::All => scenarios::all(seed).map(|reports| {
            let sweep = SweepReport::new(reports);
            let json = serde_json::to_string_pretty(&sweep).expect("report serializes");
            if emit(&json, &cli.out, None).is_err() {
                return ExitCode::from(2);
            }
            for s in &sweep.scenarios {
                let status = if s.all_passed() { "ok" } else { "FAILED" };
                eprintln!("{status:>6}  {} ({} checks)", s.scenario, s.checks.len());
            }
            if sweep.passed {
                eprintln!("all scenarios passed");
                ExitCode::SUCCESS
            } else {
                eprintln!("FAILED checks: {}", sweep.failing_checks.join("; "));
                ExitCode::from(1)
            }
        }),
    };
    match result {
        Ok(code) => code,
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}

fn main() -> ExitCode {
    run(Cli::parse())
}
