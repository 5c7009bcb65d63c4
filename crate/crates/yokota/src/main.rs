use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use yokota::run::{run_fixture, run_twist, run_twobridge, Options, RunError};
use yokota_core::solver::DEFAULT_SEED;
use yokota_core::SolverConfig;

/// Volumes and solution counts from Yokota potential functions.
#[derive(Parser)]
#[command(version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Exact pipeline for the twist knot C(2, n+1).
    Twist {
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        n: u64,
        /// Also run the generic solver and compare the essential sets.
        #[arg(long)]
        cross_check: bool,
        #[command(flatten)]
        solver: SolverArgs,
    },
    /// Degree bound for the 2-bridge link C(a_1, ..., a_m).
    Twobridge {
        #[arg(required = true, num_args = 1..)]
        conway: Vec<u64>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Generic multi-start pipeline for a triangulation fixture.
    Fixture {
        path: PathBuf,
        #[command(flatten)]
        solver: SolverArgs,
    },
}

#[derive(Args)]
struct SolverArgs {
    /// Random starts for the generic solver.
    #[arg(long, default_value_t = 1000)]
    attempts: usize,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
    #[arg(long, default_value_t = 1e-8)]
    tol_essential: f64,
    #[arg(long, default_value_t = 1e-8)]
    tol_dedup: f64,
    /// Write the JSON report here; `-` prints it instead of the table.
    #[arg(long)]
    out: Option<PathBuf>,
}

impl SolverArgs {
    fn options(&self, cross_check: bool) -> Result<Options, RunError> {
        for (name, v) in [("--tol-essential", self.tol_essential), ("--tol-dedup", self.tol_dedup)] {
            if !(v > 0.0 && v < 1.0) {
                return Err(RunError::Usage(format!("{name} must lie in (0, 1), got {v}")));
            }
        }
        let mut config = SolverConfig { attempts: self.attempts, seed: self.seed, ..SolverConfig::default() };
        config.tolerances.essential = self.tol_essential;
        config.tolerances.dedup = self.tol_dedup;
        Ok(Options { config, cross_check })
    }
}

fn emit(json: String, table: String, out: Option<&PathBuf>) -> Result<(), RunError> {
    match out {
        Some(p) if p.as_os_str() == "-" => print!("{json}"),
        Some(p) => {
            std::fs::write(p, json).map_err(|source| RunError::Io { path: p.display().to_string(), source })?;
            print!("{table}");
        }
        None => print!("{table}"),
    }
    Ok(())
}

fn run(cli: Cli) -> Result<(), RunError> {
    match cli.command {
        Command::Twist { n, cross_check, solver } => {
            let n = usize::try_from(n).map_err(|_| RunError::Usage(format!("n = {n} is too large")))?;
            let report = run_twist(n, &solver.options(cross_check)?)?;
            emit(report.to_json(), report.to_table(), solver.out.as_ref())
        }
        Command::Twobridge { conway, out } => {
            let report = run_twobridge(&conway)?;
            emit(report.to_json(), report.to_table(), out.as_ref())
        }
        Command::Fixture { path, solver } => {
            let report = run_fixture(&path, &solver.options(false)?)?;
            emit(report.to_json(), report.to_table(), solver.out.as_ref())
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
