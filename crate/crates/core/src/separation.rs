//! Cut separation for one customer: exact separation at binary points, the
//! greedy heuristic at fractional points, lifting orderings driven by the
//! fractional values, and the linear-time exact separator for the
//! single-choice case.

use crate::capture::FacilitySet;
use crate::cuts::{
    bar_sgamma, benders_cut, gamma1_cut, gamma1_rhs, sgamma, si_cut, sibar_cut, CutKind, CutRow,
};
use crate::instance::CustomerView;
use crate::lifting::{lift_down, lift_up, LiftError};

/// Violation needed to accept a cut at fractional points.
pub const FRACTIONAL_TOL: f64 = 1e-6;
/// Violation needed to accept a cut at binary points; tighter so that
/// integral nodes are fathomed only when essentially exact.
pub const INTEGRAL_TOL: f64 = 1e-9;

const ONE_TOL: f64 = 1e-9;

fn sorted_point(view: &CustomerView, x: &[f64]) -> Vec<f64> {
    view.to_sorted(x)
}

fn binary_support(view: &CustomerView, xs: &[f64]) -> FacilitySet {
    FacilitySet::new(
        (0..view.n()).filter(|&k| xs[k] > 0.5).collect(),
        view.n(),
    )
}

/// Exact separation at a binary point: the support set generates a violated
/// row of each requested kind iff `w` exceeds the capture value by more
/// than `tol`.
pub fn separate_integral(
    view: &CustomerView,
    w: f64,
    x: &[f64],
    kinds: &[CutKind],
    tol: f64,
) -> Result<Vec<CutRow>, LiftError> {
    let xs = sorted_point(view, x);
    let support = binary_support(view, &xs);
    if w <= view.phi(&support) + tol {
        return Ok(Vec::new());
    }
    let mut out = Vec::with_capacity(kinds.len());
    for &kind in kinds {
        let row = match kind {
            CutKind::Si => si_cut(view, &support),
            CutKind::SiBar => sibar_cut(view, &support),
            CutKind::LsiDown => {
                let g = sgamma(view, &support);
                lift_down(view, &g, g.indices())?
            }
            CutKind::LsiUp => {
                let g = bar_sgamma(view, &support);
                lift_up(view, &g, g.complement(view.n()).indices())?
            }
            CutKind::Benders => benders_cut(view, &support),
            CutKind::Gamma1 => gamma1_cut(view, best_cutoff(view, &xs)),
        };
        debug_assert!(row.violation(w, x) > 0.0);
        out.push(row);
    }
    Ok(out)
}

/// Greedy separation at a fractional point. The candidate generator starts
/// from the variables at one and grows through the fractional variables in
/// nonincreasing order, keeping a member only when it increases the
/// violation. Lifted kinds first find a violated submodular row and then
/// lift it: generator members by nondecreasing fractional value for
/// down-lifting, non-members by nonincreasing value for up-lifting.
pub fn separate_fractional(
    view: &CustomerView,
    w: f64,
    x: &[f64],
    kind: CutKind,
    tol: f64,
) -> Result<Option<CutRow>, LiftError> {
    let xs = sorted_point(view, x);
    match kind {
        CutKind::Si => Ok(greedy(view, w, x, &xs, tol, si_cut)),
        CutKind::SiBar => Ok(greedy(view, w, x, &xs, tol, sibar_cut)),
        CutKind::LsiDown => {
            let Some(seed) = greedy(view, w, x, &xs, tol, si_cut) else {
                return Ok(None);
            };
            let g = FacilitySet::new(seed.generator.clone(), view.n());
            let order = order_by_value(g.indices(), &xs, false);
            let row = lift_down(view, &g, &order)?;
            debug_assert!(row.violation(w, x) >= seed.violation(w, x) - 1e-9);
            Ok(Some(row))
        }
        CutKind::LsiUp => {
            let Some(seed) = greedy(view, w, x, &xs, tol, sibar_cut) else {
                return Ok(None);
            };
            let g = FacilitySet::new(seed.generator.clone(), view.n());
            let order = order_by_value(g.complement(view.n()).indices(), &xs, true);
            let row = lift_up(view, &g, &order)?;
            debug_assert!(row.violation(w, x) >= seed.violation(w, x) - 1e-9);
            Ok(Some(row))
        }
        CutKind::Benders => {
            // Gradient cut anchored at the rounded point.
            let support = FacilitySet::new(
                (0..view.n()).filter(|&k| xs[k] >= 0.5).collect(),
                view.n(),
            );
            let row = benders_cut(view, &support);
            Ok((row.violation(w, x) > tol).then_some(row))
        }
        CutKind::Gamma1 => Ok(separate_gamma1(view, w, x, tol)),
    }
}

fn greedy(
    view: &CustomerView,
    w: f64,
    x: &[f64],
    xs: &[f64],
    tol: f64,
    build: fn(&CustomerView, &FacilitySet) -> CutRow,
) -> Option<CutRow> {
    let n = view.n();
    let ones: Vec<usize> = (0..n).filter(|&k| xs[k] >= 1.0 - ONE_TOL).collect();
    let mut frac: Vec<usize> =
        (0..n).filter(|&k| xs[k] > ONE_TOL && xs[k] < 1.0 - ONE_TOL).collect();
    frac.sort_by(|&a, &b| xs[b].partial_cmp(&xs[a]).unwrap().then(a.cmp(&b)));

    let mut current = FacilitySet::new(ones, n);
    let mut row = build(view, &current);
    let mut violation = row.violation(w, x);
    for &k in &frac {
        let grown = current.with(k);
        let cand = build(view, &grown);
        let v = cand.violation(w, x);
        if v > violation {
            current = grown;
            row = cand;
            violation = v;
        }
    }
    (violation > tol).then_some(row)
}

fn order_by_value(indices: &[usize], xs: &[f64], descending: bool) -> Vec<usize> {
    let mut order = indices.to_vec();
    order.sort_by(|&a, &b| {
        let cmp = if descending {
            xs[b].partial_cmp(&xs[a]).unwrap()
        } else {
            xs[a].partial_cmp(&xs[b]).unwrap()
        };
        cmp.then(a.cmp(&b))
    });
    order
}

/// Cutoff position whose single-choice row is the tightest at the point:
/// one when the best variable sits at one, otherwise the longest prefix
/// whose mass stays below one.
fn best_cutoff(view: &CustomerView, xs: &[f64]) -> usize {
    if xs[0] >= 1.0 - ONE_TOL {
        return 1;
    }
    let mut k = 1;
    let mut prefix = xs[0];
    for ell in 2..=view.n() {
        prefix += xs[ell - 1];
        if prefix < 1.0 {
            k = ell;
        }
    }
    k
}

/// Exact linear-time separation over the single-choice family: evaluates
/// only the row at the minimizing cutoff; when that row holds, every row of
/// the family holds. Requires choice limit 1.
pub fn separate_gamma1(view: &CustomerView, w: f64, x: &[f64], tol: f64) -> Option<CutRow> {
    assert_eq!(view.gamma, 1, "exact single-choice separation requires choice limit 1");
    let xs = sorted_point(view, x);
    let k = best_cutoff(view, &xs);
    let rhs = gamma1_rhs(view, k, &xs);
    (w > rhs + tol).then(|| gamma1_cut(view, k))
}
