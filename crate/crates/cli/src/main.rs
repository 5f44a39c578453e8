//! `nub`: command-line front end for `nub-core`.
//!
//! Exit codes: 0 on success, 1 on a negative verdict, 2 on input or usage
//! errors.

mod commands;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use commands::Construction;
use nub_core::budget;
use output::Format;

#[derive(Parser)]
#[command(
    name = "nub",
    version,
    about = "Random access codes and n-fold unbiased bases"
)]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value = "human")]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check the kUB condition on every k-subset of a basis-set file.
    Verify {
        #[arg(long)]
        input: PathBuf,
        /// Subset size; defaults to the number of bases.
        #[arg(long)]
        k: Option<usize>,
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
    },
    /// Quantum, classical and nUB success probabilities for a basis-set file.
    Asp {
        #[arg(long)]
        input: PathBuf,
    },
    /// Classical value and nUB bound for given n and d.
    Bounds {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        d: usize,
    },
    /// Classical / MUB / nUB comparison table.
    Table,
    /// See-saw maximization of the success probability.
    Seesaw {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        d: usize,
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value_t = 1000)]
        iters: usize,
        #[arg(long, default_value_t = 1e-12)]
        tol: f64,
        /// Write the final bases to this file.
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Gradient descent on the nUB residual with random restarts.
    Search {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        d: usize,
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        restarts: usize,
        #[arg(long, default_value_t = 2000)]
        iters: usize,
        /// Write the best bases to this file.
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Monte Carlo estimate of the n-cycle sum for Haar-random bases.
    HaarTest {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        d: usize,
        #[arg(long)]
        samples: usize,
        #[arg(long)]
        seed: u64,
    },
    /// Entropic uncertainty bound for a two-basis file.
    Uncertainty {
        #[arg(long)]
        input: PathBuf,
    },
    /// Residuals and kUB verdicts for a file or directory of basis sets.
    Scan {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        k: usize,
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
    },
    /// Print a built-in basis set as a document.
    Construct {
        #[arg(long, value_enum)]
        kind: Construction,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        d: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

fn run(cli: &Cli) -> nub_core::Result<output::Output> {
    match &cli.command {
        Command::Verify { input, k, tol } => commands::verify(input, *k, *tol),
        Command::Asp { input } => commands::asp(input),
        Command::Bounds { n, d } => commands::bounds(*n, *d),
        Command::Table => commands::table(),
        Command::Seesaw {
            n,
            d,
            seed,
            iters,
            tol,
            output,
        } => commands::seesaw(*n, *d, *seed, *iters, *tol, output.as_deref()),
        Command::Search {
            n,
            d,
            seed,
            restarts,
            iters,
            output,
        } => commands::search(*n, *d, *seed, *restarts, *iters, output.as_deref()),
        Command::HaarTest {
            n,
            d,
            samples,
            seed,
        } => commands::haar_test(*n, *d, *samples, *seed),
        Command::Uncertainty { input } => commands::uncertainty(input),
        Command::Scan { input, k, tol } => commands::scan(input, *k, *tol),
        Command::Construct { kind, n, d, seed } => commands::construct(*kind, *n, *d, *seed),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    if std::env::var(budget::OVERRIDE_ENV).is_ok_and(|v| !v.is_empty() && v != "0") {
        budget::disable();
    }
    match run(&cli) {
        Ok(out) => {
            print!("{}", out.render(cli.format));
            ExitCode::from(if out.positive { 0 } else { 1 })
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
