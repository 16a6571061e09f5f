//! Command-line front end for switched-thermalization ergotropy analysis.
//!
//! Single points emit JSON (nested branch data); sweeps and region maps
//! emit CSV for plotting tools. Every output is deterministic for a given
//! invocation: identical arguments and seeds produce byte-identical files.
//! Set RAYON_NUM_THREADS to bound the worker pool; results do not depend
//! on the thread count.

mod args;
mod commands;
mod output;

use args::GridSpec;
use clap::{Args, Parser, Subcommand};
use commands::{Format, PointKind, RegionKindArg, SweepKind};
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "ergoswitch",
    version,
    about = "Ergotropy of thermalizing channels composed in superposed cyclic orders"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate a single experiment point and emit it as JSON.
    Point(PointCli),
    /// Sweep a temperature grid and emit CSV rows (β outer, β_in inner).
    Sweep(SweepCli),
    /// Tabulate the activation region over a (β, β_in) grid.
    Region(RegionCli),
    /// Run the full oracle suite; exit 0 only if every check passes.
    Verify(VerifyCli),
    /// Maximize the daemonic value over purifications of the input.
    Optimize(OptimizeCli),
    /// Compare sampled separable-discordant inputs with the purification
    /// optimum.
    Compare(CompareCli),
}

#[derive(Args)]
struct PointCli {
    /// Input kind fed to the switch.
    #[arg(long, value_enum)]
    kind: PointKind,
    /// Inverse temperature of the thermalizing maps.
    #[arg(long)]
    beta: Option<f64>,
    /// Inverse temperature of the target input ("inf" accepted).
    #[arg(long)]
    beta_in: Option<f64>,
    /// Number of switched channels.
    #[arg(long, default_value_t = 2)]
    n: usize,
    /// Purification weight α ∈ [0, 1] (purified kind).
    #[arg(long)]
    alpha: Option<f64>,
    /// Purification phase φ ∈ [0, 2π] (purified kind).
    #[arg(long)]
    phi: Option<f64>,
    /// Mixture temperatures (definite kind).
    #[arg(long, value_delimiter = ',')]
    betas: Vec<f64>,
    /// Mixture weights, summing to 1 (definite kind).
    #[arg(long, value_delimiter = ',')]
    weights: Vec<f64>,
    /// Output path, or - for stdout.
    #[arg(long, default_value = "-")]
    output: String,
}

#[derive(Args)]
struct SweepCli {
    #[arg(long, value_enum)]
    kind: SweepKind,
    /// Explicit β values, e.g. 0.1,0.4.
    #[arg(long, value_delimiter = ',')]
    betas: Vec<f64>,
    /// β grid as min:max:step (alternative to --betas).
    #[arg(long)]
    beta_grid: Option<GridSpec>,
    /// Explicit β_in values.
    #[arg(long, value_delimiter = ',')]
    beta_ins: Vec<f64>,
    /// β_in grid as min:max:step (alternative to --beta-ins).
    #[arg(long)]
    beta_in_grid: Option<GridSpec>,
    #[arg(long, default_value_t = 2)]
    n: usize,
    /// Fixed purification α (purified kind).
    #[arg(long, default_value_t = 0.0)]
    alpha: f64,
    /// Fixed purification φ (purified kind).
    #[arg(long, default_value_t = 0.0)]
    phi: f64,
    #[arg(long, default_value = "-")]
    output: String,
}

#[derive(Args)]
struct RegionCli {
    #[arg(long, value_enum)]
    kind: RegionKindArg,
    #[arg(long)]
    beta_grid: GridSpec,
    #[arg(long)]
    beta_in_grid: GridSpec,
    #[arg(long, default_value_t = 2)]
    n: usize,
    /// Seed of the pipeline cross-check subsample.
    #[arg(long, default_value_t = 7)]
    seed: u64,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
    #[arg(long, default_value = "-")]
    output: String,
}

#[derive(Args)]
struct VerifyCli {
    /// Largest switch order exercised by the scaling check.
    #[arg(long, default_value_t = 5)]
    n_max: usize,
    /// Matrix-agreement tolerance.
    #[arg(long, default_value_t = 1e-12)]
    tol_matrix: f64,
    /// Optimized-value tolerance.
    #[arg(long, default_value_t = 1e-9)]
    tol_value: f64,
    #[arg(long, default_value_t = 7)]
    seed: u64,
    /// Run only the named checks (repeatable).
    #[arg(long)]
    only: Vec<String>,
    #[arg(long, default_value = "-")]
    output: String,
}

#[derive(Args)]
struct OptimizeCli {
    #[arg(long)]
    beta: f64,
    #[arg(long)]
    beta_in: f64,
    #[arg(long, default_value = "-")]
    output: String,
}

#[derive(Args)]
struct CompareCli {
    #[arg(long)]
    beta: f64,
    #[arg(long)]
    beta_in: f64,
    /// Number of sampled separable inputs.
    #[arg(long, default_value_t = 64)]
    samples: usize,
    #[arg(long, default_value_t = 7)]
    seed: u64,
    #[arg(long, default_value = "-")]
    output: String,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Point(a) => commands::cmd_point(&commands::PointArgs {
            kind: a.kind,
            beta: a.beta,
            beta_in: a.beta_in,
            n: a.n,
            alpha: a.alpha,
            phi: a.phi,
            betas: a.betas,
            weights: a.weights,
            output: a.output,
        }),
        Command::Sweep(a) => commands::cmd_sweep(&commands::SweepArgs {
            kind: a.kind,
            betas: a.betas,
            beta_grid: a.beta_grid,
            beta_ins: a.beta_ins,
            beta_in_grid: a.beta_in_grid,
            n: a.n,
            alpha: a.alpha,
            phi: a.phi,
            output: a.output,
        }),
        Command::Region(a) => commands::cmd_region(&commands::RegionArgs {
            kind: a.kind,
            beta_grid: a.beta_grid,
            beta_in_grid: a.beta_in_grid,
            n: a.n,
            seed: a.seed,
            format: a.format,
            output: a.output,
        }),
        Command::Verify(a) => {
            return match commands::cmd_verify(&commands::VerifyArgs {
                n_max: a.n_max,
                tol_matrix: a.tol_matrix,
                tol_value: a.tol_value,
                seed: a.seed,
                only: a.only,
                output: a.output,
            }) {
                Ok(true) => ExitCode::SUCCESS,
                Ok(false) => ExitCode::FAILURE,
                Err(e) => {
                    eprintln!("error: {e}");
                    ExitCode::FAILURE
                }
            };
        }
        Command::Optimize(a) => commands::cmd_optimize(&commands::OptimizeArgs {
            beta: a.beta,
            beta_in: a.beta_in,
            output: a.output,
        }),
        Command::Compare(a) => commands::cmd_compare(&commands::CompareArgs {
            beta: a.beta,
            beta_in: a.beta_in,
            samples: a.samples,
            seed: a.seed,
            output: a.output,
        }),
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}
