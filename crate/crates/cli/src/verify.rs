//! `verify`: cross-checks an instance file against the brute-force oracles.
//! Exhaustive where the facility count allows enumeration, sampled above
//! that. Exits 1 on the first failing suite.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::Args;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use cflp::capture::FacilitySet;
use cflp::cuts::{benders_cut, gamma1_cut, gamma1_rhs, si_cut, sibar_cut, CutRow};
use cflp::instance::{self, CustomerView, Instance};
use cflp::lifting::{lift_down, lift_up, solve_lift, CanonicalLift, LiftState};
use cflp::oracle;
use cflp::separation::separate_gamma1;

#[derive(Args)]
pub struct VerifyArgs {
    /// Instance file.
    #[arg(long = "in")]
    input: PathBuf,
    /// Which checks to run.
    #[arg(long, default_value = "all", value_parser = ["phi", "cuts", "lift", "hull", "all"])]
    suite: String,
}

const EXHAUSTIVE_N: usize = 12;

pub fn run(args: &VerifyArgs) -> Result<ExitCode, String> {
    let inst = instance::read(&args.input).map_err(|e| e.to_string())?;
    let mut failures = 0usize;
    let all = args.suite == "all";
    if all || args.suite == "phi" {
        failures += suite_phi(&inst);
    }
    if all || args.suite == "cuts" {
        failures += suite_cuts(&inst);
    }
    if all || args.suite == "lift" {
        failures += suite_lift(&inst);
    }
    if all || args.suite == "hull" {
        failures += suite_hull(&inst);
    }
    if failures > 0 {
        eprintln!("verify: {failures} check(s) failed");
        Ok(ExitCode::from(1))
    } else {
        println!("verify: all requested suites passed");
        Ok(ExitCode::SUCCESS)
    }
}

fn sets_to_check(n: usize, rng: &mut ChaCha8Rng) -> Vec<FacilitySet> {
    if n <= EXHAUSTIVE_N {
        (0u64..(1 << n)).map(|m| FacilitySet::from_mask(m, n)).collect()
    } else {
        let mut sets = vec![FacilitySet::empty(), FacilitySet::full(n)];
        for _ in 0..2000 {
            let size = rng.gen_range(0..=15.min(n));
            let mut idx: Vec<usize> = Vec::with_capacity(size);
            while idx.len() < size {
                let j = rng.gen_range(0..n);
                if !idx.contains(&j) {
                    idx.push(j);
                }
            }
            sets.push(FacilitySet::new(idx, n));
        }
        sets
    }
}

// Independent of the per-customer capture path: sorted views keep
// utilities nonincreasing, so the capture mass is the member prefix.
fn reference_phi(view: &CustomerView, set: &FacilitySet) -> f64 {
    let mass: f64 = set.indices().iter().take(view.gamma).map(|&k| view.u[k]).sum();
    mass / (mass + view.u0)
}

fn row_holds(view: &CustomerView, row: &CutRow, rng: &mut ChaCha8Rng) -> bool {
    let n = view.n();
    if n <= EXHAUSTIVE_N {
        return oracle::certify_valid(view, row).map(|c| c.valid).unwrap_or(false);
    }
    for _ in 0..5000 {
        let set = FacilitySet::new(
            (0..n).filter(|_| rng.gen_bool(0.5)).collect(),
            n,
        );
        let mut x = vec![0.0; n];
        for k in set.iter() {
            x[view.perm[k]] = 1.0;
        }
        if reference_phi(view, &set) > row.rhs_at(&x) + 1e-9 {
            return false;
        }
    }
    true
}

fn suite_phi(inst: &Instance) -> usize {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let mut bad = 0;
    for i in 0..inst.m {
        let view = inst.view(i).unwrap();
        for set in sets_to_check(inst.n, &mut rng) {
            let got = view.phi(&set);
            let want = match oracle::brute_phi(&view, &set) {
                Ok(v) => v,
                Err(_) => reference_phi(&view, &set),
            };
            if (got - want).abs() > 1e-12 {
                eprintln!("phi mismatch: customer {i}, set {:?}: {got} vs {want}", set.indices());
                bad += 1;
            }
            for j in 0..inst.n.min(16) {
                if set.contains(j) {
                    continue;
                }
                let direct = view.phi(&set.with(j)) - view.phi(&set);
                if (view.rho(&set, j) - direct).abs() > 1e-12 {
                    eprintln!("marginal mismatch: customer {i}, set {:?}, j={j}", set.indices());
                    bad += 1;
                }
            }
        }
    }
    println!("phi: capture values and marginals match enumeration ({} customers)", inst.m);
    bad
}

fn suite_cuts(inst: &Instance) -> usize {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let mut bad = 0;
    let mut rows = 0;
    for i in 0..inst.m {
        let view = inst.view(i).unwrap();
        let mut gens = vec![FacilitySet::empty(), FacilitySet::full(inst.n)];
        for _ in 0..12 {
            gens.push(FacilitySet::new(
                (0..inst.n).filter(|_| rng.gen_bool(0.3)).collect(),
                inst.n,
            ));
        }
        for g in &gens {
            for row in [si_cut(&view, g), sibar_cut(&view, g), benders_cut(&view, g)] {
                rows += 1;
                if !row_holds(&view, &row, &mut rng) {
                    eprintln!("invalid row: customer {i}, {row:?}");
                    bad += 1;
                }
            }
        }
        if view.gamma == 1 {
            for ell in 1..=inst.n {
                rows += 1;
                if !row_holds(&view, &gamma1_cut(&view, ell), &mut rng) {
                    eprintln!("invalid single-choice row: customer {i}, cutoff {ell}");
                    bad += 1;
                }
            }
        }
    }
    println!("cuts: {rows} emitted rows certified valid");
    bad
}

fn suite_lift(inst: &Instance) -> usize {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut bad = 0;
    // Dynamic program against enumeration on data drawn from the instance.
    for _ in 0..200 {
        let i = rng.gen_range(0..inst.m);
        let view = inst.view(i).unwrap();
        let p = rng.gen_range(1..=12.min(inst.n));
        let q = rng.gen_range(0..=p);
        let c = CanonicalLift {
            priced: (0..q)
                .map(|t| (view.u[t % view.n()], rng.gen_range(-0.5..0.5)))
                .filter(|&(_, a)| a > 0.0)
                .collect(),
            free: (q..p).map(|t| view.u[t % view.n()]).collect(),
            u0: view.u0,
            gamma: view.gamma,
            offset: 0.0,
        };
        let mut st = LiftState::new();
        if (solve_lift(&c, &mut st) - oracle::brute_lift(&c)).abs() > 1e-9 {
            eprintln!("lifting value mismatch on {c:?}");
            bad += 1;
        }
    }
    // Lifted rows stay valid.
    let mut rows = 0;
    for i in 0..inst.m {
        let view = inst.view(i).unwrap();
        for _ in 0..6 {
            let set = FacilitySet::new(
                (0..inst.n).filter(|_| rng.gen_bool(0.4)).collect(),
                inst.n,
            );
            let down = lift_down(&view, &set, set.indices());
            let up_order = set.complement(inst.n);
            let up = lift_up(&view, &set, up_order.indices());
            for row in [down, up] {
                match row {
                    Ok(row) => {
                        rows += 1;
                        if !row_holds(&view, &row, &mut rng) {
                            eprintln!("invalid lifted row: customer {i}, {row:?}");
                            bad += 1;
                        }
                    }
                    Err(e) => {
                        eprintln!("lifting failed for customer {i}: {e}");
                        bad += 1;
                    }
                }
            }
        }
    }
    println!("lift: dynamic program matches enumeration; {rows} lifted rows certified");
    bad
}

fn suite_hull(inst: &Instance) -> usize {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut bad = 0;
    let mut probed = 0;
    for i in 0..inst.m {
        let view = inst.view(i).unwrap();
        if view.gamma != 1 {
            continue;
        }
        if inst.n <= EXHAUSTIVE_N {
            probed += 1;
            match oracle::hull_probe_gamma1(&view, 300, 40 + i as u64) {
                Ok(true) => {}
                _ => {
                    eprintln!("hull probe failed for customer {i}");
                    bad += 1;
                }
            }
        }
        // Linear-time separator against the full row scan, any size.
        for _ in 0..200 {
            let x: Vec<f64> = (0..inst.n).map(|_| rng.gen_range(0.0..1.0)).collect();
            let w: f64 = rng.gen_range(0.0..1.0);
            let xs = view.to_sorted(&x);
            let min_rhs = (1..=inst.n)
                .map(|ell| gamma1_rhs(&view, ell, &xs))
                .fold(f64::INFINITY, f64::min);
            let claim = separate_gamma1(&view, w, &x, 1e-9);
            let consistent = match claim {
                Some(ref row) => w > min_rhs + 1e-9 && row.rhs_at(&x) <= min_rhs + 1e-9,
                None => w <= min_rhs + 2e-9,
            };
            if !consistent {
                eprintln!("separator disagreement for customer {i}");
                bad += 1;
            }
        }
    }
    if probed == 0 && inst.gamma.iter().all(|&g| g != 1) {
        println!("hull: no unit-limit customers, nothing to probe");
    } else {
        println!("hull: single-choice hull probes and separator scans agree");
    }
    bad
}
