//! Command-line interface: instance generation, solving, verification
//! against the brute-force oracles, and benchmark tables.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage error,
//! 3 solve stopped at a limit with a nonzero gap.

mod bench;
mod verify;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use cflp::instance::{self, GammaMode, GenConfig};
use cflp::solver::{solve, CutFamily, SolveConfig, SolveStatus};

#[derive(Parser)]
#[command(name = "cflp", version, about = "Exact competitive facility location solver")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a random instance file.
    Generate(GenerateArgs),
    /// Solve an instance file.
    Solve(SolveArgs),
    /// Cross-check an instance against the brute-force oracles.
    Verify(verify::VerifyArgs),
    /// Run a benchmark matrix and print a comparison table.
    Bench(bench::BenchArgs),
}

#[derive(Args)]
struct GenerateArgs {
    /// Number of customers.
    #[arg(long)]
    m: usize,
    /// Number of facilities.
    #[arg(long)]
    n: usize,
    /// Choice limit: a positive integer, or `nh` for limits drawn uniformly
    /// from 1..=5 per customer.
    #[arg(long)]
    gamma: String,
    #[arg(long)]
    seed: u64,
    /// Output path; `-` writes to stdout.
    #[arg(long, default_value = "-")]
    out: String,
    /// Side length of the coordinate square.
    #[arg(long, default_value_t = 1000.0)]
    coord_max: f64,
    /// Fixed opening cost applied to every facility.
    #[arg(long, default_value_t = 2000.0)]
    fixed_cost: f64,
    /// Distance defining the outside option's utility.
    #[arg(long, default_value_t = 50.0)]
    outside_distance: f64,
    /// Smallest buying power (inclusive).
    #[arg(long, default_value_t = 10)]
    bp_min: u64,
    /// Largest buying power (inclusive).
    #[arg(long, default_value_t = 1000)]
    bp_max: u64,
}

#[derive(Args)]
struct SolveArgs {
    /// Instance file.
    #[arg(long = "in")]
    input: PathBuf,
    /// Cut family driving both stages.
    #[arg(long, default_value = "auto")]
    cuts: String,
    /// Wall-clock limit in seconds.
    #[arg(long, default_value_t = 7200.0)]
    time: f64,
    /// Relative gap at which the search stops (0 proves optimality).
    #[arg(long, default_value_t = 0.0)]
    gap: f64,
    /// Write the flat JSON report here (printed to stdout otherwise).
    #[arg(long)]
    report: Option<PathBuf>,
    /// Append one line per emitted cut (`customer kind |S| alpha0 nnz`).
    #[arg(long)]
    cut_log: Option<PathBuf>,
}

pub(crate) fn parse_gamma(s: &str) -> Result<GammaMode, String> {
    if s.eq_ignore_ascii_case("nh") {
        return Ok(GammaMode::Uniform(1, 5));
    }
    match s.parse::<usize>() {
        Ok(k) if k >= 1 => Ok(GammaMode::Constant(k)),
        _ => Err(format!("invalid choice limit '{s}' (expected a positive integer or 'nh')")),
    }
}

fn run_generate(args: &GenerateArgs) -> Result<(), String> {
    let mut cfg = GenConfig::new(args.m, args.n, parse_gamma(&args.gamma)?, args.seed);
    cfg.coord_max = args.coord_max;
    cfg.fixed_cost = args.fixed_cost;
    cfg.outside_distance = args.outside_distance;
    cfg.buying_power = (args.bp_min, args.bp_max);
    let inst = instance::generate(&cfg).map_err(|e| e.to_string())?;
    let text = instance::to_text(&inst);
    if args.out == "-" {
        print!("{text}");
    } else {
        std::fs::write(&args.out, text).map_err(|e| e.to_string())?;
    }
    Ok(())
}

fn run_solve(args: &SolveArgs) -> Result<ExitCode, String> {
    let inst = instance::read(&args.input).map_err(|e| e.to_string())?;
    let family: CutFamily = args.cuts.parse()?;
    let cfg = SolveConfig {
        family,
        time_limit: args.time,
        gap: args.gap,
        collect_cut_log: args.cut_log.is_some(),
        ..Default::default()
    };
    let report = solve(&inst, &cfg).map_err(|e| e.to_string())?;
    let json = report.to_json();
    match &args.report {
        Some(path) => std::fs::write(path, &json).map_err(|e| e.to_string())?,
        None => print!("{json}"),
    }
    if let Some(path) = &args.cut_log {
        std::fs::write(path, report.cut_log.join("\n") + "\n").map_err(|e| e.to_string())?;
    }
    eprintln!(
        "{}: nu={} ub={} lb={} gap={}% nodes={} cuts={} in {:.2}s",
        report.status.as_str(),
        report.nu,
        report.ub,
        report.lb,
        report.gap_pct,
        report.nodes,
        report.cuts.total(),
        report.t_seconds
    );
    if report.status == SolveStatus::Limit && report.gap_pct > 0.0 {
        return Ok(ExitCode::from(3));
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match &cli.command {
        Command::Generate(args) => run_generate(args).map(|()| ExitCode::SUCCESS),
        Command::Solve(args) => run_solve(args),
        Command::Verify(args) => verify::run(args),
        Command::Bench(args) => bench::run(args),
    };
    match outcome {
        Ok(code) => code,
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
