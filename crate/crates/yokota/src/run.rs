//! The three commands as library calls.

use std::path::Path;

use yokota_core::solver::{solve_generic, solve_twist, SolutionSet};
use yokota_core::volume::{two_bridge_alpha, two_bridge_bound};
use yokota_core::{Error as CoreError, PotentialFunction, SolverConfig, VolumeReport};

use crate::fixture::{self, FixtureError};
use crate::report::{CrossCheck, Provenance, Report, TwoBridgeReport};

#[derive(Debug, thiserror::Error)]
pub enum RunError {
    #[error("{0}")]
    Usage(String),
    #[error("{path}: {source}")]
    Format { path: String, source: FixtureError },
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("solver failed: {0}")]
    Solver(#[from] CoreError),
}

impl RunError {
    /// 1 for solver failures, 2 for bad input.
    pub fn exit_code(&self) -> u8 {
        match self {
            RunError::Solver(_) => 1,
            _ => 2,
        }
    }
}

/// Solver settings shared by the commands.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Options {
    pub config: SolverConfig,
    pub cross_check: bool,
}

fn compare(exact: &SolutionSet, generic: &SolutionSet, tol: f64, config: &SolverConfig) -> CrossCheck {
    let near = |a: &SolutionSet, b: &SolutionSet| {
        a.essential().filter(|(_, s)| !b.essential().any(|(_, t)| s.distance(t) < tol)).count()
    };
    CrossCheck {
        attempts: config.attempts,
        seed: config.seed,
        generic_essential: generic.essential().count(),
        missing: near(exact, generic),
        extra: near(generic, exact),
    }
}

/// Exact pipeline for the twist knot `C(2, n+1)`.
pub fn run_twist(n: usize, opts: &Options) -> Result<Report, RunError> {
    if n < 1 {
        return Err(RunError::Usage(format!("twist needs n >= 1, got {n}")));
    }
    let config = &opts.config;
    let (potential, red, set) = solve_twist(n, config)?;
    let bound = two_bridge_bound(&[2, n as u64 + 1])?;
    let vr = VolumeReport::build(&potential, &set, Some(bound), &config.tolerances)?;
    let mut report = Report::new("twist", Provenance::exact(config), &potential, &vr);
    report.final_polynomial = Some(red.final_poly.to_string());
    if opts.cross_check {
        let generic = solve_generic(&potential, config)?;
        let check = compare(&set, &generic, config.tolerances.dedup, config);
        if check.missing > 0 || check.extra > 0 {
            report.warnings.push(format!(
                "generic solver disagrees with the exact set: {} missing, {} extra",
                check.missing, check.extra
            ));
        }
        report.cross_check = Some(check);
    }
    Ok(report)
}

/// `alpha` and the degree bound for `C(a_1, ..., a_m)`.
pub fn run_twobridge(conway: &[u64]) -> Result<TwoBridgeReport, RunError> {
    let bound = two_bridge_bound(conway).map_err(|e| RunError::Usage(e.to_string()))?;
    Ok(TwoBridgeReport { command: "twobridge".into(), conway: conway.to_vec(), alpha: two_bridge_alpha(conway), bound })
}

/// Generic pipeline for a fixture document already in memory.
pub fn run_fixture_str(src: &str, origin: &str, opts: &Options) -> Result<Report, RunError> {
    let tri = fixture::parse(src).map_err(|source| RunError::Format { path: origin.into(), source })?;
    let potential = PotentialFunction::assemble(tri);
    let config = &opts.config;
    let set = solve_generic(&potential, config)?;
    let vr = VolumeReport::build(&potential, &set, None, &config.tolerances)?;
    Ok(Report::new("fixture", Provenance::generic(config), &potential, &vr))
}

pub fn run_fixture(path: &Path, opts: &Options) -> Result<Report, RunError> {
    let origin = path.display().to_string();
    let src = std::fs::read_to_string(path).map_err(|source| RunError::Io { path: origin.clone(), source })?;
    run_fixture_str(&src, &origin, opts)
}
