use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{error::ErrorKind, Args, Parser, Subcommand};
use twoflow::oracle::DEFAULT_BUDGET;
use twoflow::{approx_solve_with, oracle_solve, solve_exact, Algo, Epsilon, Instance, SolveOptions};

use crate::bench::{load_grid, run_bench};
use crate::format::{load_instance, save_instance, save_result, ResultDoc};
use crate::generate::{generate, Fraction, GenSpec};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_SOLVER: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "twoflow", version, about = "Two-stage flowshop makespan solvers")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Solve an instance exactly.
    Solve(SolveArgs),
    /// Solve within a factor (1 + eps) of the optimum.
    Approx(ApproxArgs),
    /// Brute-force optimum for small instances.
    Oracle(OracleArgs),
    /// Generate a random instance.
    Gen(GenArgs),
    /// Run a benchmark grid.
    Bench(BenchArgs),
}

#[derive(Debug, Args)]
struct SolveArgs {
    #[arg(long = "in", value_name = "FILE")]
    input: PathBuf,
    #[arg(long, default_value = "auto", value_parser = parse_algo)]
    algo: Algo,
    /// Report only the makespan, keeping two layers in memory.
    #[arg(long)]
    value_only: bool,
    /// Merge shop relabelings in dp1.
    #[arg(long)]
    canonical: bool,
    #[arg(long, default_value_t = 1)]
    threads: usize,
}

#[derive(Debug, Args)]
struct ApproxArgs {
    #[arg(long = "in", value_name = "FILE")]
    input: PathBuf,
    #[arg(long, value_name = "NUM/DEN", value_parser = parse_eps)]
    eps: Epsilon,
    #[arg(long, default_value = "auto", value_parser = parse_algo)]
    inner: Algo,
}

#[derive(Debug, Args)]
struct OracleArgs {
    #[arg(long = "in", value_name = "FILE")]
    input: PathBuf,
    #[arg(long, default_value_t = DEFAULT_BUDGET)]
    budget: u128,
}

#[derive(Debug, Args)]
struct GenArgs {
    #[arg(long)]
    n: usize,
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    m: u64,
    #[arg(long)]
    rmax: u64,
    #[arg(long)]
    tmax: u64,
    #[arg(long = "zero-r", default_value = "0", value_parser = parse_fraction)]
    zero_r: Fraction,
    #[arg(long)]
    seed: u64,
    #[arg(long, value_name = "FILE")]
    out: PathBuf,
}

#[derive(Debug, Args)]
struct BenchArgs {
    #[arg(long, value_name = "FILE")]
    grid: PathBuf,
    #[arg(long, value_name = "FILE")]
    out: PathBuf,
}

fn parse_algo(s: &str) -> Result<Algo, String> {
    s.parse()
}

fn parse_eps(s: &str) -> Result<Epsilon, String> {
    s.parse().map_err(|e: twoflow::Error| e.to_string())
}

fn parse_fraction(s: &str) -> Result<Fraction, String> {
    s.parse()
}

/// Failure of one command, carrying its exit code.
struct Failure {
    code: i32,
    msg: String,
}

fn usage(msg: impl Into<String>) -> Failure {
    Failure {
        code: EXIT_USAGE,
        msg: msg.into(),
    }
}

fn solver(e: twoflow::Error) -> Failure {
    Failure {
        code: EXIT_SOLVER,
        msg: e.to_string(),
    }
}

fn read_instance(path: &Path) -> Result<Instance, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| usage(format!("{}: {e}", path.display())))?;
    load_instance(&text).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn write_file(path: &Path, text: &str) -> Result<(), Failure> {
    std::fs::write(path, text).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn execute(cmd: Command, out: &mut dyn Write) -> Result<(), Failure> {
    let doc = match cmd {
        Command::Solve(a) => {
            let instance = read_instance(&a.input)?;
            let opts = SolveOptions {
                threads: a.threads,
                value_only: a.value_only,
                canonical: a.canonical,
                deadline: None,
            };
            let algo = a.algo.resolve(&instance);
            let outcome = solve_exact(&instance, algo, &opts).map_err(solver)?;
            match outcome.schedule {
                Some(s) => ResultDoc::from_schedule(&s, algo.name(), true, None),
                None => ResultDoc::value_only(outcome.makespan, algo.name()),
            }
        }
        Command::Approx(a) => {
            let instance = read_instance(&a.input)?;
            let outcome = approx_solve_with(&instance, a.eps, a.inner, &SolveOptions::default())
                .map_err(solver)?;
            ResultDoc::from_schedule(
                &outcome.schedule,
                "approx",
                outcome.exact_fallback,
                Some(a.eps.ratio_bound_string()),
            )
        }
        Command::Oracle(a) => {
            let instance = read_instance(&a.input)?;
            let s = oracle_solve(&instance, a.budget).map_err(solver)?;
            ResultDoc::from_schedule(&s, "oracle", true, None)
        }
        Command::Gen(a) => {
            let spec = GenSpec {
                n: a.n,
                m: usize::try_from(a.m).map_err(|_| usage("m too large"))?,
                r_max: a.rmax,
                t_max: a.tmax,
                zero_r: a.zero_r,
                seed: a.seed,
            };
            let instance = generate(&spec).map_err(|e| usage(e.to_string()))?;
            let mut text = save_instance(&instance);
            text.push('\n');
            return write_file(&a.out, &text);
        }
        Command::Bench(a) => {
            let text = std::fs::read_to_string(&a.grid)
                .map_err(|e| usage(format!("{}: {e}", a.grid.display())))?;
            let grid = load_grid(&text).map_err(|e| usage(format!("{}: {e}", a.grid.display())))?;
            let report = run_bench(&grid).map_err(|e| Failure {
                code: match e {
                    crate::error::BenchError::Grid(_) => EXIT_USAGE,
                    _ => EXIT_SOLVER,
                },
                msg: e.to_string(),
            })?;
            return write_file(&a.out, &report.render());
        }
    };
    out.write_all(save_result(&doc).as_bytes())
        .map_err(|e| usage(format!("stdout: {e}")))
}

/// Parses `args` (program name first), runs the command and returns the
/// process exit code. Result documents go to `out`, diagnostics to `err`.
pub fn run_cli<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{e}");
                    return EXIT_OK;
                }
                _ => EXIT_USAGE,
            };
            let _ = write!(err, "{e}");
            return code;
        }
    };
    match execute(cli.command, out) {
        Ok(()) => EXIT_OK,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.msg);
            f.code
        }
    }
}
