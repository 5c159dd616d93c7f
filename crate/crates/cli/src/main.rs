//! `listcolor`: solve, kernelize, generate, check and benchmark list
//! coloring instances.
//!
//! Exit codes: 0 YES (or success), 1 NO, 2 usage or parse error, 3 internal
//! assertion.

mod bench;
mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use listcolor::Error;

#[derive(Parser, Debug)]
#[command(name = "listcolor", version, about = "Exact solvers and kernels for list coloring with a clique modulator")]
struct Cli {
    /// Worker threads; output does not depend on this.
    #[arg(long, global = true, default_value_t = 1)]
    jobs: usize,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Decide an instance and print YES or NO.
    Solve(SolveArgs),
    /// Reduce an instance; the kernel goes to stdout, the trace to a side file.
    Kernel(KernelArgs),
    /// Carry a coloring of a kernel back to the original instance.
    Lift(LiftArgs),
    /// Generate an instance.
    Gen(GenArgs),
    /// Verify a coloring against an instance.
    Check(CheckArgs),
    /// Time the solvers over a range of modulator sizes; CSV on stdout.
    Bench(bench::BenchArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, ValueEnum)]
pub enum Alg {
    Sieve,
    Partition,
    Brute,
    BruteMod,
}

#[derive(Args, Debug)]
pub struct SolveArgs {
    #[arg(long, value_enum, default_value_t = Alg::Sieve)]
    pub alg: Alg,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Independent repetitions of the randomized test.
    #[arg(long, default_value_t = 2)]
    pub reps: usize,
    /// Vertex cap of the brute-force oracles.
    #[arg(long, default_value_t = listcolor::oracle::DEFAULT_VERTEX_CAP)]
    pub cap: usize,
    /// Write the coloring here on YES (brute and brute-mod only).
    #[arg(long)]
    pub coloring: Option<PathBuf>,
    /// Print a run report line to stderr.
    #[arg(long)]
    pub report: bool,
    pub file: PathBuf,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, ValueEnum)]
pub enum Problem {
    Pce,
    Rlc,
    RlcCompress,
    Save,
}

#[derive(Args, Debug)]
pub struct KernelArgs {
    #[arg(long, value_enum)]
    pub problem: Problem,
    /// Trace file; defaults to `<file>.trace`.
    #[arg(long)]
    pub trace: Option<PathBuf>,
    pub file: PathBuf,
}

#[derive(Args, Debug)]
pub struct LiftArgs {
    #[arg(long, value_enum)]
    pub problem: Problem,
    /// Trace written by `kernel`; defaults to `<original>.trace`.
    #[arg(long)]
    pub trace: Option<PathBuf>,
    pub original: PathBuf,
    pub reduced: PathBuf,
    pub coloring: PathBuf,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, ValueEnum)]
pub enum Model {
    Random,
    Planted,
    HittingSet,
    IndependentSet,
    Pce,
    Rlc,
    Save,
}

#[derive(Args, Debug)]
pub struct GenArgs {
    #[arg(long, value_enum)]
    pub model: Model,
    #[arg(long)]
    pub n: usize,
    /// Modulator size; hitting-set or independent-set size for the reductions.
    #[arg(long, default_value_t = 0)]
    pub k: usize,
    #[arg(long, default_value_t = 0.5)]
    pub density: f64,
    /// Number of colors; defaults to `n`.
    #[arg(long)]
    pub palette: Option<usize>,
    /// List size (random) or extra colors besides the planted one (planted).
    #[arg(long, default_value_t = 2)]
    pub list_size: usize,
    /// Number of sets (hitting-set).
    #[arg(long, default_value_t = 4)]
    pub sets: usize,
    /// Pre-coloring probability (pce, save).
    #[arg(long, default_value_t = 0.3)]
    pub precolor: f64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Args, Debug)]
pub struct CheckArgs {
    pub file: PathBuf,
    pub coloring: PathBuf,
}

/// A command's result: the exit status it asks for.
pub enum Status {
    Yes,
    No,
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Internal(_) => 3,
        _ => 2,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let pool = match rayon::ThreadPoolBuilder::new().num_threads(cli.jobs.max(1)).build() {
        Ok(p) => p,
        Err(e) => {
            eprintln!("error: cannot start {} worker threads: {e}", cli.jobs);
            return ExitCode::from(2);
        }
    };
    let res = pool.install(|| match cli.cmd {
        Cmd::Solve(a) => commands::solve(&a),
        Cmd::Kernel(a) => commands::kernel(&a),
        Cmd::Lift(a) => commands::lift(&a),
        Cmd::Gen(a) => commands::gen(&a),
        Cmd::Check(a) => commands::check(&a),
        Cmd::Bench(a) => bench::run(&a),
    });
    match res {
        Ok(Status::Yes) => ExitCode::SUCCESS,
        Ok(Status::No) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
