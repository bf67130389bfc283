//! Command-line front end: figure sweeps as reproducible CSV, the
//! quantumness-hierarchy demonstration, the property-verification suite,
//! and single-point quantifier evaluation.
//!
//! Exit codes: 0 success, 1 property failure, 2 usage error.

mod commands;

use clap::{Args, Parser, Subcommand};
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "rbn",
    version,
    about = "Realism-based nonlocality numerics: sweeps, bounds, hierarchy, verification"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct OptimizerArgs {
    /// θ points per side of the seeding lattice.
    #[arg(long, default_value_t = 24)]
    grid_theta: usize,
    /// φ points per side of the seeding lattice.
    #[arg(long, default_value_t = 12)]
    grid_phi: usize,
    /// Simplex objective tolerance.
    #[arg(long, default_value_t = 1e-13)]
    tol: f64,
    /// Seed (recorded in CSV headers; drives multistart search for d > 2).
    #[arg(long, default_value_t = 7)]
    seed: u64,
}

#[derive(Subcommand)]
enum Command {
    /// Local-monitoring suppression sweeps over the two-parameter family:
    /// one Werner CSV and one pure-state CSV per strength.
    Figure1 {
        /// Monitoring strengths: comma list (0.1,0.6) or linspace a:b:n.
        #[arg(long, default_value = "0.1,0.6")]
        eps: String,
        /// β grid as a:b:n within [0, 1].
        #[arg(long, default_value = "0:1:101")]
        beta_grid: String,
        /// α grid as a:b:n within [0, 1].
        #[arg(long, default_value = "0:1:101")]
        alpha_grid: String,
        /// Output directory for the CSV files.
        #[arg(long, default_value = ".")]
        out: String,
        #[command(flatten)]
        optimizer: OptimizerArgs,
    },
    /// Bilocal-monitoring sweep: N, Δ_B, and Δ^{εε} per (β, ε) row.
    Figure2 {
        /// Monitoring strengths: comma list or linspace a:b:n.
        #[arg(long, default_value = "0.1,0.6")]
        eps: String,
        /// β grid as a:b:n within [0, 1].
        #[arg(long, default_value = "0:1:101")]
        beta_grid: String,
        /// Output CSV path.
        #[arg(long, default_value = "figure2.csv")]
        out: String,
        #[command(flatten)]
        optimizer: OptimizerArgs,
    },
    /// Classical-classical separator: η with DFT-partner probes equals the
    /// Shannon entropy of the mixing weights while the optimized
    /// quantifier stays positive.
    Hierarchy {
        /// Mixing probabilities (at least two, nonnegative, summing to 1).
        #[arg(long, default_value = "0.5,0.5")]
        probs: String,
        /// Optional CSV report path (report always prints to stdout).
        #[arg(long)]
        out: Option<String>,
        #[command(flatten)]
        optimizer: OptimizerArgs,
    },
    /// Run every property suite; exits nonzero if any invariant fails.
    Verify {
        #[arg(long, default_value_t = 7)]
        seed: u64,
        /// Sample budget of the largest suites (others scale down).
        #[arg(long, default_value_t = 2000)]
        samples: usize,
        /// Optional path for the machine-readable summary.
        #[arg(long)]
        out: Option<String>,
    },
    /// Evaluate irreality, η, δ, reality gain, Γ, and bounds for one
    /// state/observable context.
    Eval {
        /// State file in the {dA, dB, re, im} JSON schema.
        #[arg(long)]
        state: String,
        /// A-side observable angles "theta,phi" (default σ_z).
        #[arg(long, default_value = "0,0")]
        obs_a: String,
        /// B-side observable angles "theta,phi" (default σ_z).
        #[arg(long, default_value = "0,0")]
        obs_b: String,
        /// Monitoring strength of the context; with no --eps-b this is the
        /// B-side strength of the local context δ^{1ε}.
        #[arg(long, default_value_t = 1.0)]
        eps: f64,
        /// B-side strength for a bilocal context δ^{εε'}; --eps then
        /// applies to side A.
        #[arg(long)]
        eps_b: Option<f64>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Figure1 {
            eps,
            beta_grid,
            alpha_grid,
            out,
            optimizer,
        } => commands::figure1(&eps, &beta_grid, &alpha_grid, &out, &optimizer),
        Command::Figure2 {
            eps,
            beta_grid,
            out,
            optimizer,
        } => commands::figure2(&eps, &beta_grid, &out, &optimizer),
        Command::Hierarchy {
            probs,
            out,
            optimizer,
        } => commands::hierarchy(&probs, out.as_deref(), &optimizer),
        Command::Verify { seed, samples, out } => commands::verify(seed, samples, out.as_deref()),
        Command::Eval {
            state,
            obs_a,
            obs_b,
            eps,
            eps_b,
        } => commands::eval(&state, &obs_a, &obs_b, eps, eps_b),
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(commands::CmdError::Property(msg)) => {
            eprintln!("property failure: {msg}");
            ExitCode::from(1)
        }
        Err(commands::CmdError::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
