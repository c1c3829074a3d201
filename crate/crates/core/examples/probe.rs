use cflp::instance::{generate, GammaMode, GenConfig};
use cflp::solver::{solve, CutFamily, SolveConfig};
use std::time::Instant;

fn main() {
    for gamma in [2usize, 3] {
        for seed in [1u64, 2] {
            let cfg_gen = GenConfig::new(100, 25, GammaMode::Constant(gamma), seed);
            let inst = generate(&cfg_gen).unwrap();
            for family in [CutFamily::Lsi, CutFamily::Gbd] {
                let cfg = SolveConfig { family, time_limit: 300.0, ..Default::default() };
                let t = Instant::now();
                let rep = solve(&inst, &cfg).unwrap();
                println!(
                    "gamma={gamma} seed={seed} family={:?}: status={:?} nu={:.1} ub1={:.1} lb1={:.1} nodes={} rounds={} cuts={} t={:.2}s",
                    family, rep.status, rep.nu, rep.ub1, rep.lb1, rep.nodes,
                    rep.rounds_stage1, rep.cuts.total(), t.elapsed().as_secs_f64()
                );
            }
        }
    }
}
