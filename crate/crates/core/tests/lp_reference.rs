//! Cross-checks the LP core against an independent dense two-phase tableau
//! simplex. The reference implementation below shares no code with the
//! production engine: bounds become explicit rows, infeasible starts go
//! through artificial variables, and pivoting follows Bland's rule.

use cflp::lp::{LpModel, LpStatus};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const TOL: f64 = 1e-9;

/// Maximizes `c.x` over `rows: a.x <= rhs` and `l <= x <= u` with a full
/// tableau. Returns `None` when infeasible.
fn tableau_max(c: &[f64], rows: &[(Vec<f64>, f64)], l: &[f64], u: &[f64]) -> Option<f64> {
    let nv = c.len();
    // Shift to x' = x - l, then append the upper-bound rows.
    let mut cons: Vec<(Vec<f64>, f64)> = Vec::new();
    for (a, b) in rows {
        let shift: f64 = a.iter().zip(l).map(|(ai, li)| ai * li).sum();
        cons.push((a.clone(), b - shift));
    }
    for j in 0..nv {
        let mut a = vec![0.0; nv];
        a[j] = 1.0;
        cons.push((a, u[j] - l[j]));
    }
    let m = cons.len();

    // Columns: nv structurals, m slacks, then artificials as needed.
    let mut art_of_row: Vec<Option<usize>> = vec![None; m];
    let mut n_art = 0;
    for (i, (_, b)) in cons.iter().enumerate() {
        if *b < 0.0 {
            art_of_row[i] = Some(n_art);
            n_art += 1;
        }
    }
    let ncols = nv + m + n_art;
    let mut t = vec![vec![0.0; ncols + 1]; m];
    let mut basis = vec![0usize; m];
    for (i, (a, b)) in cons.iter().enumerate() {
        let flip = if *b < 0.0 { -1.0 } else { 1.0 };
        for j in 0..nv {
            t[i][j] = flip * a[j];
        }
        t[i][nv + i] = flip;
        t[i][ncols] = flip * b;
        match art_of_row[i] {
            Some(k) => {
                t[i][nv + m + k] = 1.0;
                basis[i] = nv + m + k;
            }
            None => basis[i] = nv + i,
        }
    }

    let run = |t: &mut Vec<Vec<f64>>, basis: &mut Vec<usize>, cost: &[f64], limit: usize| -> bool {
        for _ in 0..200_000 {
            // Reduced costs under the current basis.
            let mut enter = None;
            for j in 0..limit {
                let mut d = cost[j];
                for i in 0..t.len() {
                    d -= cost[basis[i]] * t[i][j];
                }
                if d > TOL {
                    enter = Some(j);
                    break; // Bland: first improving column
                }
            }
            let Some(e) = enter else { return true };
            let mut leave: Option<usize> = None;
            let mut best = f64::INFINITY;
            for i in 0..t.len() {
                if t[i][e] > TOL {
                    let ratio = t[i][ncols] / t[i][e];
                    if ratio < best - TOL
                        || (ratio < best + TOL
                            && leave.map(|r| basis[i] < basis[r]).unwrap_or(false))
                    {
                        best = ratio;
                        leave = Some(i);
                    }
                }
            }
            let Some(r) = leave else { return false }; // unbounded
            let pv = t[r][e];
            for v in t[r].iter_mut() {
                *v /= pv;
            }
            for i in 0..t.len() {
                if i != r && t[i][e].abs() > 0.0 {
                    let f = t[i][e];
                    for j in 0..=ncols {
                        let w = t[r][j];
                        t[i][j] -= f * w;
                    }
                }
            }
            basis[r] = e;
        }
        panic!("reference simplex did not terminate");
    };

    if n_art > 0 {
        let mut cost1 = vec![0.0; ncols];
        for k in 0..n_art {
            cost1[nv + m + k] = -1.0;
        }
        assert!(run(&mut t, &mut basis, &cost1, ncols), "phase one cannot be unbounded");
        let obj1: f64 = basis
            .iter()
            .enumerate()
            .map(|(i, &b)| if b >= nv + m { -t[i][ncols] } else { 0.0 })
            .sum();
        if obj1 < -1e-7 {
            return None;
        }
        // Pivot any leftover artificial out of the basis.
        for i in 0..m {
            if basis[i] >= nv + m {
                if let Some(j) = (0..nv + m).find(|&j| t[i][j].abs() > 1e-7) {
                    let pv = t[i][j];
                    for v in t[i].iter_mut() {
                        *v /= pv;
                    }
                    let col: Vec<f64> = (0..m).map(|r| t[r][j]).collect();
                    for r in 0..m {
                        if r != i && col[r].abs() > 0.0 {
                            for jj in 0..=ncols {
                                let w = t[i][jj];
                                t[r][jj] -= col[r] * w;
                            }
                        }
                    }
                    basis[i] = j;
                }
            }
        }
    }

    let mut cost2 = vec![0.0; ncols];
    cost2[..nv].copy_from_slice(c);
    assert!(run(&mut t, &mut basis, &cost2, nv + m), "box-bounded model cannot be unbounded");

    let mut x = l.to_vec();
    for (i, &b) in basis.iter().enumerate() {
        if b < nv {
            x[b] = l[b] + t[i][ncols];
        }
    }
    Some(x.iter().zip(c).map(|(xi, ci)| xi * ci).sum())
}

#[test]
fn engine_matches_tableau_on_random_models() {
    let mut rng = ChaCha8Rng::seed_from_u64(0xBEEF);
    for trial in 0..120 {
        let nv = rng.gen_range(2..=9);
        let nr = rng.gen_range(0..=14);
        let l: Vec<f64> = (0..nv).map(|_| rng.gen_range(-1.0..0.5)).collect();
        let u: Vec<f64> = l.iter().map(|&li| li + rng.gen_range(0.1..2.0)).collect();
        let c: Vec<f64> = (0..nv).map(|_| rng.gen_range(-2.0..2.0)).collect();
        // Rows pass near a random box point so most models are feasible.
        let anchor: Vec<f64> =
            l.iter().zip(&u).map(|(&li, &ui)| rng.gen_range(li..=ui)).collect();
        let mut rows = Vec::new();
        for _ in 0..nr {
            let a: Vec<f64> = (0..nv).map(|_| rng.gen_range(-1.0..1.0)).collect();
            let act: f64 = a.iter().zip(&anchor).map(|(ai, xi)| ai * xi).sum();
            let rhs = act + rng.gen_range(-0.05..0.6);
            rows.push((a, rhs));
        }

        let bounds: Vec<(f64, f64)> = l.iter().zip(&u).map(|(&a, &b)| (a, b)).collect();
        let mut lp = LpModel::new(&bounds, &c);
        for (a, rhs) in &rows {
            let cols: Vec<(usize, f64)> = a.iter().copied().enumerate().collect();
            lp.add_row(&cols, *rhs);
        }
        let got = lp.solve().unwrap();
        let want = tableau_max(&c, &rows, &l, &u);
        match want {
            None => assert_eq!(got.status, LpStatus::Infeasible, "trial {trial}"),
            Some(obj) => {
                assert_eq!(got.status, LpStatus::Optimal, "trial {trial}");
                assert!(
                    (got.objective - obj).abs() <= 1e-7 * (1.0 + obj.abs()),
                    "trial {trial}: engine {} vs tableau {obj}",
                    got.objective
                );
            }
        }
    }
}

#[test]
fn engine_matches_tableau_under_incremental_edits() {
    let mut rng = ChaCha8Rng::seed_from_u64(0xFACE);
    for trial in 0..40 {
        let nv = rng.gen_range(2..=6);
        let c: Vec<f64> = (0..nv).map(|_| rng.gen_range(-2.0..2.0)).collect();
        let bounds = vec![(0.0, 1.0); nv];
        let mut lp = LpModel::new(&bounds, &c);
        let mut rows: Vec<(Vec<f64>, f64)> = Vec::new();
        let mut fixed: Vec<Option<f64>> = vec![None; nv];
        for step in 0..8 {
            // Alternate between adding a row and toggling a fix.
            if step % 2 == 0 {
                let a: Vec<f64> = (0..nv).map(|_| rng.gen_range(-1.0..1.0)).collect();
                let rhs = a.iter().map(|v| v.max(0.0)).sum::<f64>() * rng.gen_range(0.2..0.9);
                let cols: Vec<(usize, f64)> = a.iter().copied().enumerate().collect();
                lp.add_row(&cols, rhs);
                rows.push((a, rhs));
            } else {
                let j = rng.gen_range(0..nv);
                if fixed[j].is_some() {
                    fixed[j] = None;
                    lp.unfix(j).unwrap();
                } else {
                    let v = if rng.gen_bool(0.5) { 0.0 } else { 1.0 };
                    fixed[j] = Some(v);
                    lp.fix(j, v).unwrap();
                }
            }
            let got = lp.solve().unwrap();
            let l: Vec<f64> = (0..nv).map(|j| fixed[j].unwrap_or(0.0)).collect();
            let u: Vec<f64> = (0..nv).map(|j| fixed[j].unwrap_or(1.0)).collect();
            let want = tableau_max(&c, &rows, &l, &u);
            match want {
                None => assert_eq!(got.status, LpStatus::Infeasible, "trial {trial} step {step}"),
                Some(obj) => {
                    assert_eq!(got.status, LpStatus::Optimal, "trial {trial} step {step}");
                    assert!(
                        (got.objective - obj).abs() <= 1e-7 * (1.0 + obj.abs()),
                        "trial {trial} step {step}: engine {} vs tableau {obj}",
                        got.objective
                    );
                }
            }
        }
    }
}
