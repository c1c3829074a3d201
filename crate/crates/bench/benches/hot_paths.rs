//! Microbenchmarks for the solver's hot paths: capture evaluation,
//! lifting, separation, warm LP re-solves, and a small end-to-end solve.

use criterion::{criterion_group, criterion_main, BatchSize, Criterion};
use std::hint::black_box;

use cflp::capture::FacilitySet;
use cflp::instance::{generate, GammaMode, GenConfig};
use cflp::lifting::{lift_down, solve_lift, CanonicalLift, LiftState};
use cflp::lp::LpModel;
use cflp::separation::separate_fractional;
use cflp::solver::{solve, CutFamily, SolveConfig};
use cflp::CutKind;

fn bench_capture(c: &mut Criterion) {
    let inst = generate(&GenConfig::new(1, 100, GammaMode::Constant(3), 7)).unwrap();
    let view = inst.view(0).unwrap();
    let set = FacilitySet::new((0..100).step_by(3).collect(), 100);
    c.bench_function("capture/phi n=100", |b| {
        b.iter(|| black_box(view.phi(black_box(&set))))
    });
    c.bench_function("capture/rho n=100", |b| {
        b.iter(|| black_box(view.rho(black_box(&set), 1)))
    });
}

fn bench_lifting(c: &mut Criterion) {
    let inst = generate(&GenConfig::new(1, 50, GammaMode::Constant(3), 11)).unwrap();
    let view = inst.view(0).unwrap();
    let set = FacilitySet::new(vec![0, 1, 2], 50);
    c.bench_function("lifting/lift_down n=50 |S|=3", |b| {
        b.iter(|| black_box(lift_down(&view, &set, set.indices()).unwrap()))
    });
    let canonical = CanonicalLift {
        priced: (0..20).map(|t| (view.u[t], 0.01 + 0.001 * t as f64)).collect(),
        free: view.u[20..30].to_vec(),
        u0: view.u0,
        gamma: 3,
        offset: 0.0,
    };
    c.bench_function("lifting/dp q=20", |b| {
        b.iter_batched(
            LiftState::new,
            |mut st| black_box(solve_lift(&canonical, &mut st)),
            BatchSize::SmallInput,
        )
    });
}

fn bench_separation(c: &mut Criterion) {
    let inst = generate(&GenConfig::new(1, 50, GammaMode::Constant(2), 13)).unwrap();
    let view = inst.view(0).unwrap();
    let x: Vec<f64> = (0..50).map(|j| (j % 7) as f64 / 7.0).collect();
    c.bench_function("separation/lsi-down n=50", |b| {
        b.iter(|| {
            black_box(separate_fractional(&view, 0.9, black_box(&x), CutKind::LsiDown, 1e-6))
                .unwrap()
        })
    });
}

fn bench_lp(c: &mut Criterion) {
    let inst = generate(&GenConfig::new(40, 20, GammaMode::Constant(2), 17)).unwrap();
    // A stage-1-like model: solve, then re-solve after one extra row.
    let build = || {
        let mut bounds = vec![(0.0, 1.0); 60];
        let mut obj = vec![0.0; 60];
        for j in 0..20 {
            obj[j] = -inst.f[j];
        }
        for i in 0..40 {
            obj[20 + i] = inst.b[i];
        }
        let mut lp = LpModel::new(&bounds.drain(..).collect::<Vec<_>>(), &obj);
        for i in 0..40 {
            let view = inst.view(i).unwrap();
            let row = cflp::cuts::si_cut(&view, &FacilitySet::empty());
            let mut cols = vec![(20 + i, 1.0)];
            cols.extend(row.coeffs.iter().map(|&(j, a)| (j, -a)));
            lp.add_row(&cols, row.alpha0);
        }
        let mut lp = lp;
        lp.solve().unwrap();
        lp
    };
    c.bench_function("lp/warm resolve after row", |b| {
        b.iter_batched(
            build,
            |mut lp| {
                lp.add_row(&[(0, 1.0), (20, 1.0)], 0.7);
                black_box(lp.solve().unwrap())
            },
            BatchSize::SmallInput,
        )
    });
}

fn bench_solve(c: &mut Criterion) {
    let mut inst = generate(&GenConfig::new(20, 12, GammaMode::Constant(2), 19)).unwrap();
    for fj in inst.f.iter_mut() {
        *fj = 150.0;
    }
    for family in [CutFamily::Lsi, CutFamily::Gbd] {
        let cfg = SolveConfig { family, ..Default::default() };
        c.bench_function(&format!("solve/m=20 n=12 {}", family.as_str()), |b| {
            b.iter(|| black_box(solve(&inst, &cfg).unwrap()))
        });
    }
}

criterion_group!(benches, bench_capture, bench_lifting, bench_separation, bench_lp, bench_solve);
criterion_main!(benches);
