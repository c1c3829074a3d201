//! `bench`: runs a matrix of (m, n, gamma, seed) cells under one or more
//! cut families and prints an aligned comparison table with per-cell gap
//! improvements, an optional machine-readable JSON-lines file, and optional
//! performance-profile columns. Cells may run in parallel worker threads,
//! capped by the `CFLP_THREADS` environment variable; outputs are merged in
//! cell order regardless of scheduling.

use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;

use clap::Args;

use cflp::instance::{generate, GammaMode, GenConfig};
use cflp::solver::{gap_improvement, json_object, solve, CutFamily, SolveConfig, SolveReport, SolveStatus};

#[derive(Args)]
pub struct BenchArgs {
    /// Customer counts, comma separated.
    #[arg(long, value_delimiter = ',', required = true)]
    m: Vec<usize>,
    /// Facility counts, comma separated.
    #[arg(long, value_delimiter = ',', required = true)]
    n: Vec<usize>,
    /// Choice limits, comma separated; integers or `nh`.
    #[arg(long, value_delimiter = ',', required = true)]
    gamma: Vec<String>,
    /// Seeds: comma separated values and `a-b` ranges.
    #[arg(long, required = true)]
    seeds: String,
    /// Families to compare, comma separated; the first is the baseline for
    /// the gap-improvement columns.
    #[arg(long, value_delimiter = ',', required = true)]
    cuts: Vec<String>,
    /// Per-run time limit in seconds.
    #[arg(long, default_value_t = 600.0)]
    time: f64,
    /// Fixed opening cost for generated instances.
    #[arg(long, default_value_t = 2000.0)]
    fixed_cost: f64,
    /// Write the table here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Append one flat JSON document per run to this file.
    #[arg(long)]
    json: Option<PathBuf>,
    /// Also emit (threshold, fraction-solved) profile columns for time and
    /// node counts.
    #[arg(long, default_value_t = false)]
    profile: bool,
}

#[derive(Clone)]
struct Cell {
    m: usize,
    n: usize,
    gamma_label: String,
    gamma: GammaMode,
    seed: u64,
}

fn parse_seeds(spec: &str) -> Result<Vec<u64>, String> {
    let mut seeds = Vec::new();
    if spec.trim().is_empty() {
        return Ok(seeds); // empty matrix: header-only table
    }
    for part in spec.split(',') {
        let part = part.trim();
        if let Some((a, b)) = part.split_once('-') {
            let a: u64 = a.parse().map_err(|_| format!("bad seed range '{part}'"))?;
            let b: u64 = b.parse().map_err(|_| format!("bad seed range '{part}'"))?;
            if a > b {
                return Err(format!("empty seed range '{part}'"));
            }
            seeds.extend(a..=b);
        } else {
            seeds.push(part.parse().map_err(|_| format!("bad seed '{part}'"))?);
        }
    }
    Ok(seeds)
}

fn worker_threads(tasks: usize) -> usize {
    std::env::var("CFLP_THREADS")
        .ok()
        .and_then(|v| v.parse::<usize>().ok())
        .filter(|&t| t >= 1)
        .unwrap_or(1)
        .min(tasks.max(1))
}

pub fn run(args: &BenchArgs) -> Result<ExitCode, String> {
    let seeds = parse_seeds(&args.seeds)?;
    let families: Vec<CutFamily> =
        args.cuts.iter().map(|s| s.parse()).collect::<Result<_, _>>()?;
    if families.is_empty() {
        return Err("at least one cut family is required".into());
    }
    let mut cells = Vec::new();
    for &m in &args.m {
        for &n in &args.n {
            for glabel in &args.gamma {
                let gamma = crate::parse_gamma(glabel)?;
                for &seed in &seeds {
                    cells.push(Cell { m, n, gamma_label: glabel.clone(), gamma, seed });
                }
            }
        }
    }

    // Flatten to (cell, family) tasks and run them on a small worker pool.
    let tasks: Vec<(usize, usize)> = (0..cells.len())
        .flat_map(|c| (0..families.len()).map(move |f| (c, f)))
        .collect();
    let results: Mutex<Vec<Option<Result<SolveReport, String>>>> =
        Mutex::new(vec![None; tasks.len()]);
    let next = AtomicUsize::new(0);
    let nworkers = worker_threads(tasks.len());
    std::thread::scope(|scope| {
        for _ in 0..nworkers {
            scope.spawn(|| loop {
                let t = next.fetch_add(1, Ordering::SeqCst);
                if t >= tasks.len() {
                    break;
                }
                let (ci, fi) = tasks[t];
                let cell = &cells[ci];
                let mut gen = GenConfig::new(cell.m, cell.n, cell.gamma, cell.seed);
                gen.fixed_cost = args.fixed_cost;
                let outcome = generate(&gen).map_err(|e| e.to_string()).and_then(|inst| {
                    let cfg = SolveConfig {
                        family: families[fi],
                        time_limit: args.time,
                        ..Default::default()
                    };
                    solve(&inst, &cfg).map_err(|e| e.to_string())
                });
                results.lock().unwrap()[t] = Some(outcome);
            });
        }
    });
    let flat = results.into_inner().unwrap();
    let by_cell: Vec<Vec<Result<SolveReport, String>>> = (0..cells.len())
        .map(|c| {
            (0..families.len())
                .map(|f| flat[c * families.len() + f].clone().expect("task ran"))
                .collect()
        })
        .collect();

    let table = render_table(&cells, &families, &by_cell, args.profile);
    match &args.out {
        Some(path) => std::fs::write(path, &table).map_err(|e| e.to_string())?,
        None => print!("{table}"),
    }

    if let Some(path) = &args.json {
        let mut docs = String::new();
        for (ci, cell) in cells.iter().enumerate() {
            for (fi, family) in families.iter().enumerate() {
                match &by_cell[ci][fi] {
                    Ok(rep) => {
                        let mut fields = vec![
                            ("m", cell.m.to_string()),
                            ("n", cell.n.to_string()),
                            ("gamma", format!("\"{}\"", cell.gamma_label)),
                            ("seed", cell.seed.to_string()),
                        ];
                        fields.extend(rep.json_fields());
                        docs.push_str(json_object(&fields).replace('\n', " ").trim_end());
                        docs.push('\n');
                    }
                    Err(msg) => {
                        let fields = vec![
                            ("m", cell.m.to_string()),
                            ("n", cell.n.to_string()),
                            ("gamma", format!("\"{}\"", cell.gamma_label)),
                            ("seed", cell.seed.to_string()),
                            ("family", format!("\"{}\"", family.as_str())),
                            ("error", format!("{:?}", msg)),
                        ];
                        docs.push_str(json_object(&fields).replace('\n', " ").trim_end());
                        docs.push('\n');
                    }
                }
            }
        }
        std::fs::write(path, docs).map_err(|e| e.to_string())?;
    }

    let failed = by_cell.iter().flatten().filter(|r| r.is_err()).count();
    if failed > 0 {
        eprintln!("bench: {failed} run(s) failed; see table");
    }
    Ok(ExitCode::SUCCESS)
}

fn fmt_t(rep: &SolveReport) -> String {
    match rep.status {
        SolveStatus::Optimal => format!("{:.1}", rep.t_seconds),
        SolveStatus::Limit => format!("({:.1})", rep.gap_pct),
    }
}

fn render_table(
    cells: &[Cell],
    families: &[CutFamily],
    by_cell: &[Vec<Result<SolveReport, String>>],
    profile: bool,
) -> String {
    let mut header: Vec<String> =
        vec!["m".into(), "n".into(), "gamma".into(), "seed".into()];
    for fam in families {
        for col in ["T(G%)", "CT", "N", "nu", "UB1", "LB1", "T1"] {
            header.push(format!("{}:{}", fam.as_str(), col));
        }
    }
    for fam in &families[1..] {
        header.push(format!("GI%({})", fam.as_str()));
    }

    let mut rows: Vec<Vec<String>> = vec![header];
    for (ci, cell) in cells.iter().enumerate() {
        let mut row = vec![
            cell.m.to_string(),
            cell.n.to_string(),
            cell.gamma_label.clone(),
            cell.seed.to_string(),
        ];
        for fi in 0..families.len() {
            match &by_cell[ci][fi] {
                Ok(rep) => {
                    row.push(fmt_t(rep));
                    row.push(format!("{:.1}", rep.ct_seconds));
                    row.push(rep.nodes.to_string());
                    row.push(format!("{:.1}", rep.nu));
                    row.push(format!("{:.1}", rep.ub1));
                    row.push(format!("{:.1}", rep.lb1));
                    row.push(format!("{:.1}", rep.t1_seconds));
                }
                Err(_) => row.extend(std::iter::repeat("fail".to_string()).take(7)),
            }
        }
        if let Ok(base) = &by_cell[ci][0] {
            for fi in 1..families.len() {
                match &by_cell[ci][fi] {
                    Ok(rep) => {
                        let nu = rep.nu.max(base.nu);
                        match gap_improvement(base.ub1, rep.ub1, nu) {
                            Some(gi) => row.push(format!("{gi:.1}")),
                            None => row.push("--".into()),
                        }
                    }
                    Err(_) => row.push("fail".into()),
                }
            }
        } else {
            row.extend(std::iter::repeat("fail".to_string()).take(families.len() - 1));
        }
        rows.push(row);
    }

    let mut out = align(&rows);
    if profile {
        out.push_str(&render_profiles(families, by_cell));
    }
    out
}

fn align(rows: &[Vec<String>]) -> String {
    let ncols = rows.iter().map(|r| r.len()).max().unwrap_or(0);
    let mut width = vec![0usize; ncols];
    for row in rows {
        for (c, v) in row.iter().enumerate() {
            width[c] = width[c].max(v.len());
        }
    }
    let mut out = String::new();
    for row in rows {
        let line: Vec<String> =
            row.iter().enumerate().map(|(c, v)| format!("{v:>w$}", w = width[c])).collect();
        out.push_str(line.join("  ").trim_end());
        out.push('\n');
    }
    out
}

/// Plain columnar (threshold, fraction-solved) curves for wall time and
/// node counts, one fraction column per family, suitable for external
/// plotting.
fn render_profiles(
    families: &[CutFamily],
    by_cell: &[Vec<Result<SolveReport, String>>],
) -> String {
    let total = by_cell.len() as f64;
    let mut out = String::new();
    for (what, value) in [
        ("time", Box::new(|r: &SolveReport| r.t_seconds) as Box<dyn Fn(&SolveReport) -> f64>),
        ("nodes", Box::new(|r: &SolveReport| r.nodes as f64)),
    ] {
        let mut thresholds: Vec<f64> = by_cell
            .iter()
            .flatten()
            .filter_map(|r| r.as_ref().ok())
            .filter(|r| r.status == SolveStatus::Optimal)
            .map(|r| value(r))
            .collect();
        thresholds.sort_by(f64::total_cmp);
        thresholds.dedup();
        out.push_str(&format!("\n# profile {what}\n"));
        let mut head = vec![what.to_string()];
        head.extend(families.iter().map(|f| f.as_str().to_string()));
        out.push_str(&head.join(" "));
        out.push('\n');
        for &t in &thresholds {
            let mut line = vec![format!("{t}")];
            for fi in 0..families.len() {
                let solved = by_cell
                    .iter()
                    .filter(|cell| {
                        matches!(&cell[fi], Ok(r)
                            if r.status == SolveStatus::Optimal && value(r) <= t)
                    })
                    .count();
                line.push(format!("{:.3}", solved as f64 / total));
            }
            out.push_str(&line.join(" "));
            out.push('\n');
        }
    }
    out
}
