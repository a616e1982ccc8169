//! Command-line front end: load a process spec from JSON, run exponent /
//! resolvent / asymptotic computations, and emit CSV tables or JSON reports.
//!
//! Exit codes: 0 success, 2 spec validation, 3 quadrature, 4 assumption
//! failure, 5 verification failure.

mod commands;

use clap::{Parser, ValueEnum};
use levy_resolvent::{Error, QuadratureConfig};
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CommandName {
    /// Tabulate theta, omega and |Psi| over a lambda grid (CSV).
    Exponent,
    /// Tabulate r_q(x) over an x grid for each requested q (CSV).
    Resolvent,
    /// Tabulate h(x) plus h_q(x) columns over an x grid (CSV).
    HTable,
    /// Empirical power-law verification of h at the origin (JSON report).
    Asymptotics,
    /// Run the integrability probes and report verdicts (JSON).
    Probes,
    /// Verify the stable closed form end to end (JSON report).
    VerifyStable,
    /// Verify the tempered polynomial family end to end (JSON report).
    VerifyExample14,
}

#[derive(Debug, Parser)]
#[command(
    name = "levy-resolvent",
    about = "Exponents, resolvent densities and the renormalized zero resolvent of 1d Levy processes",
    version
)]
pub struct Cli {
    /// Path to the process spec (JSON).
    #[arg(long)]
    pub spec: PathBuf,

    /// What to compute.
    #[arg(long, value_enum)]
    pub command: CommandName,

    /// Evaluation grid START:STOP:POINTS_PER_DECADE (geometric).
    #[arg(long)]
    pub grid: Option<String>,

    /// Interpret the grid linearly (POINTS_PER_DECADE becomes the total
    /// point count).
    #[arg(long)]
    pub linear: bool,

    /// Resolvent parameter(s); repeatable.
    #[arg(long = "q")]
    pub q: Vec<f64>,

    /// Output file; stdout when omitted.
    #[arg(long)]
    pub out: Option<PathBuf>,

    /// Relative quadrature tolerance override.
    #[arg(long)]
    pub rel_tol: Option<f64>,

    /// Absolute quadrature tolerance override.
    #[arg(long)]
    pub abs_tol: Option<f64>,

    /// Print per-integral diagnostics to stderr.
    #[arg(long)]
    pub verbose: bool,
}

impl Cli {
    pub fn quadrature_config(&self, defaults: QuadratureConfig) -> QuadratureConfig {
        let mut cfg = defaults;
        if let Some(r) = self.rel_tol {
            cfg.rel_tol = r;
            cfg.truncation_budget = r / 10.0;
        }
        if let Some(a) = self.abs_tol {
            cfg.abs_tol = a;
        }
        cfg
    }
}

fn exit_code_for(err: &Error) -> u8 {
    match err {
        Error::InvalidSpec(_) | Error::Domain(_) => 2,
        Error::QuadratureFailure(_)
        | Error::SlowDecay { .. }
        | Error::LambdaOutOfRange(_)
        | Error::NonIntegrableMeasure(_)
        | Error::DegenerateResolvent { .. } => 3,
        Error::AssumptionViolated { .. } | Error::UnstableLimit(_) | Error::CaseMismatch(_) => 4,
        Error::NotApplicable(_) => 5,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();

    if let Ok(raw) = std::env::var("LEVY_RESOLVENT_THREADS") {
        match raw.parse::<usize>() {
            Ok(n) if n >= 1 => {
                if let Err(e) = levy_resolvent::grid::configure_threads(n) {
                    eprintln!("warning: could not configure thread pool: {e}");
                }
            }
            _ => eprintln!("warning: ignoring unparsable LEVY_RESOLVENT_THREADS={raw}"),
        }
    }

    match commands::run(&cli) {
        Ok(outcome) => outcome,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code_for(&e))
        }
    }
}
