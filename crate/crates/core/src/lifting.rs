//! Sequential lifting of the submodular seed inequalities.
//!
//! Down-lifting reintroduces the members of the generator set into the seed
//! `w <= phi(S) + sum_{j not in S} rho_j(S) x_j`, one variable at a time;
//! up-lifting reintroduces the non-members into
//! `w <= phi(S) - sum_{j in S} rho_j(S\j)(1 - x_j)`. Every step maximizes a
//! residual objective over the outcomes compatible with the variables still
//! fixed, which reduces to a cardinality-constrained 0-1 fractional problem
//! solved by a dynamic program over priced items, with zero-price items
//! folded into a prefix-sum table.
//!
//! Coefficients depend on the lifting ordering; every ordering yields a
//! valid, facet-defining row.

use std::collections::HashMap;

use thiserror::Error;

use crate::capture::FacilitySet;
use crate::cuts::{CutKind, CutRow, COEFF_DROP_TOL};
use crate::instance::CustomerView;

/// Slack allowed when checking lifted coefficients against their
/// submodular envelope; a violation beyond this signals a lifting bug.
pub const LIFT_BOUND_SLACK: f64 = 1e-9;

#[derive(Debug, Error)]
pub enum LiftError {
    #[error("lifted coefficient for variable {j} is {value}, outside its envelope bound {bound}")]
    CoefficientBound { j: usize, value: f64, bound: f64 },
    #[error("ordering must be a permutation of the expected index set")]
    BadOrdering,
}

/// A lifting problem in reduced form: maximize
/// `(sum u_j y_j + picked free mass) / (... + u0) - sum alpha_j y_j`
/// subject to at most `gamma` picks overall.
///
/// Items fixed to one and items whose price is nonpositive carry no
/// decision cost; they appear as free items, with the price surplus of the
/// nonpositive ones accumulated in `offset`. The solved value plus
/// `offset` is the value of the original fixed-variable maximization.
#[derive(Debug, Clone, PartialEq)]
pub struct CanonicalLift {
    /// Positively priced items `(utility, price)`, in caller order.
    pub priced: Vec<(f64, f64)>,
    /// Utilities of zero-cost items.
    pub free: Vec<f64>,
    pub u0: f64,
    pub gamma: usize,
    /// Constant collected from freed nonpositive prices.
    pub offset: f64,
}

/// Memo shared along one lifting sequence. Entries stay valid across steps
/// because the priced-item list only ever grows by appending; the table of
/// free-item prefix sums is rebuilt per solve.
#[derive(Debug, Default)]
pub struct LiftState {
    f: Vec<f64>,
    priced_sig: Vec<(u64, u64)>,
    memo: HashMap<(u32, u32, u64), f64>,
}

impl LiftState {
    pub fn new() -> LiftState {
        LiftState::default()
    }

    fn prepare(&mut self, c: &CanonicalLift) {
        let sig: Vec<(u64, u64)> =
            c.priced.iter().map(|&(u, a)| (u.to_bits(), a.to_bits())).collect();
        if !sig.starts_with(&self.priced_sig) {
            self.memo.clear();
        }
        self.priced_sig = sig;

        let mut free = c.free.clone();
        free.sort_by(|a, b| b.partial_cmp(a).unwrap());
        self.f = Vec::with_capacity(c.gamma + 1);
        let mut acc = 0.0;
        self.f.push(0.0);
        for tau in 1..=c.gamma {
            if tau <= free.len() {
                acc += free[tau - 1];
            }
            self.f.push(acc);
        }
    }
}

/// Builds the reduced problem from fixed-variable sets and an ordered price
/// list covering exactly the undecided variables.
///
/// Variables in `fixed_zero` disappear; variables in `fixed_one` become free
/// items; an undecided variable with nonpositive price is set to one (its
/// price, negated, joins the offset) and becomes a free item; the rest are
/// priced items in the order given.
pub fn reduce(
    view: &CustomerView,
    fixed_zero: &FacilitySet,
    fixed_one: &FacilitySet,
    prices: &[(usize, f64)],
) -> CanonicalLift {
    debug_assert!(fixed_zero.iter().all(|j| !fixed_one.contains(j)));
    let mut priced = Vec::new();
    let mut free: Vec<f64> = fixed_one.iter().map(|j| view.u[j]).collect();
    let mut offset = 0.0;
    for &(j, alpha) in prices {
        debug_assert!(!fixed_zero.contains(j) && !fixed_one.contains(j));
        if alpha <= 0.0 {
            free.push(view.u[j]);
            offset -= alpha;
        } else {
            priced.push((view.u[j], alpha));
        }
    }
    CanonicalLift { priced, free, u0: view.u0, gamma: view.gamma, offset }
}

/// Solves the reduced problem (without the offset) by the dynamic program
/// `Z_t(lambda, tau)`: the best value over the first `t` priced items with
/// exactly `tau` of them picked on top of a carried mass `lambda`. The
/// carried masses are exact sums of item utilities, so memoization keys on
/// their bit patterns.
pub fn solve_lift(c: &CanonicalLift, st: &mut LiftState) -> f64 {
    st.prepare(c);
    let q = c.priced.len();
    let mut prefix_u = vec![0.0; q + 1];
    let mut prefix_a = vec![0.0; q + 1];
    for (t, &(u, a)) in c.priced.iter().enumerate() {
        prefix_u[t + 1] = prefix_u[t] + u;
        prefix_a[t + 1] = prefix_a[t] + a;
    }

    struct Dp<'a> {
        c: &'a CanonicalLift,
        memo: &'a mut HashMap<(u32, u32, u64), f64>,
        prefix_u: Vec<f64>,
        prefix_a: Vec<f64>,
    }
    impl Dp<'_> {
        fn z(&mut self, t: usize, lambda: f64, tau: usize) -> f64 {
            if tau == 0 {
                return lambda / (lambda + self.c.u0);
            }
            if tau == t {
                let mass = self.prefix_u[t] + lambda;
                return mass / (mass + self.c.u0) - self.prefix_a[t];
            }
            let key = (t as u32, tau as u32, lambda.to_bits());
            if let Some(&v) = self.memo.get(&key) {
                return v;
            }
            let (u_t, a_t) = self.c.priced[t - 1];
            let skip = self.z(t - 1, lambda, tau);
            let take = -a_t + self.z(t - 1, lambda + u_t, tau - 1);
            let v = skip.max(take);
            self.memo.insert(key, v);
            v
        }
    }

    let mut dp = Dp { c, memo: &mut st.memo, prefix_u, prefix_a };
    let mut best = f64::NEG_INFINITY;
    for tau in 0..=c.gamma.min(q) {
        best = best.max(dp.z(q, st.f[c.gamma - tau], tau));
    }
    best
}

fn check_ordering(ordering: &[usize], expected: &FacilitySet) -> Result<(), LiftError> {
    let mut sorted = ordering.to_vec();
    sorted.sort_unstable();
    if sorted != expected.indices() {
        return Err(LiftError::BadOrdering);
    }
    Ok(())
}

/// Down-lifts the generator's members back into the one-sided seed row,
/// producing `w <= phi(S) + sum_{j not in S} rho_j(S) x_j - sum eta_j (1 - x_j)`.
/// `ordering` is the lifting order over `set`. Each coefficient is checked
/// against its lower envelope `rho_j(all but j)`.
pub fn lift_down(
    view: &CustomerView,
    set: &FacilitySet,
    ordering: &[usize],
) -> Result<CutRow, LiftError> {
    check_ordering(ordering, set)?;
    let n = view.n();
    let phi_s = view.phi(set);
    let outside: Vec<usize> = (0..n).filter(|&k| !set.contains(k)).collect();
    let rho_out: Vec<(usize, f64)> = outside.iter().map(|&k| (k, view.rho(set, k))).collect();

    let mut state = LiftState::new();
    let mut etas: Vec<(usize, f64)> = Vec::with_capacity(set.len());
    let mut eta_sum = 0.0;
    for (step, &jl) in ordering.iter().enumerate() {
        let fixed_one = FacilitySet::new(ordering[step + 1..].to_vec(), n);
        let fixed_zero = FacilitySet::new(vec![jl], n);
        let mut prices = rho_out.clone();
        prices.extend(etas.iter().copied());
        let c = reduce(view, &fixed_zero, &fixed_one, &prices);
        let nu = solve_lift(&c, &mut state) + c.offset;
        let eta = phi_s - eta_sum - nu;
        let floor = view.rho_min(jl);
        if eta < floor - LIFT_BOUND_SLACK {
            return Err(LiftError::CoefficientBound { j: jl, value: eta, bound: floor });
        }
        etas.push((jl, eta));
        eta_sum += eta;
    }

    let mut coeffs = vec![0.0; n];
    for &(k, r) in &rho_out {
        coeffs[k] = r;
    }
    for &(j, eta) in &etas {
        coeffs[j] = eta;
    }
    Ok(emit(view, CutKind::LsiDown, set, phi_s - eta_sum, &coeffs))
}

/// Up-lifts the non-members back into the complementary seed row, producing
/// `w <= phi(S) - sum_{j in S} rho_j(S\j)(1 - x_j) + sum zeta_j x_j`.
/// `ordering` is the lifting order over the complement of `set`. Each
/// coefficient is checked against its upper envelope `rho_j(empty)`.
pub fn lift_up(
    view: &CustomerView,
    set: &FacilitySet,
    ordering: &[usize],
) -> Result<CutRow, LiftError> {
    let n = view.n();
    check_ordering(ordering, &set.complement(n))?;
    let phi_s = view.phi(set);
    let rho_in: Vec<(usize, f64)> =
        set.iter().map(|k| (k, view.rho(&set.without(k), k))).collect();
    let rho_in_sum: f64 = rho_in.iter().map(|&(_, r)| r).sum();

    let mut state = LiftState::new();
    let mut zetas: Vec<(usize, f64)> = Vec::with_capacity(ordering.len());
    for (step, &jl) in ordering.iter().enumerate() {
        let fixed_zero = FacilitySet::new(ordering[step + 1..].to_vec(), n);
        let fixed_one = FacilitySet::new(vec![jl], n);
        let mut prices = rho_in.clone();
        prices.extend(zetas.iter().copied());
        let c = reduce(view, &fixed_zero, &fixed_one, &prices);
        let nu = solve_lift(&c, &mut state) + c.offset;
        let zeta = -phi_s + rho_in_sum + nu;
        let cap = view.rho_max(jl);
        if zeta > cap + LIFT_BOUND_SLACK {
            return Err(LiftError::CoefficientBound { j: jl, value: zeta, bound: cap });
        }
        zetas.push((jl, zeta));
    }

    let mut coeffs = vec![0.0; n];
    for &(k, r) in &rho_in {
        coeffs[k] = r;
    }
    for &(j, z) in &zetas {
        coeffs[j] = z;
    }
    Ok(emit(view, CutKind::LsiUp, set, phi_s - rho_in_sum, &coeffs))
}

fn emit(
    view: &CustomerView,
    kind: CutKind,
    set: &FacilitySet,
    alpha0: f64,
    coeffs_sorted: &[f64],
) -> CutRow {
    let mut coeffs: Vec<(usize, f64)> = coeffs_sorted
        .iter()
        .enumerate()
        .filter(|(_, &a)| a.abs() > COEFF_DROP_TOL)
        .map(|(k, &a)| (view.perm[k], a))
        .collect();
    coeffs.sort_unstable_by_key(|&(j, _)| j);
    CutRow { customer: view.customer, alpha0, coeffs, kind, generator: set.indices().to_vec() }
}
