//! Static inequality families on the hypograph of the capture probability:
//! the two submodular families, their simplified forms with truncated
//! generators, the single-choice family, and the Benders baseline cut.
//!
//! Every constructor returns a [`CutRow`] `w_i <= alpha0 + sum_j alpha_j x_j`
//! with coefficients indexed by original facility id.

use crate::capture::FacilitySet;
use crate::instance::CustomerView;

/// Magnitude below which a coefficient is dropped from the sparse row.
pub const COEFF_DROP_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CutKind {
    Si,
    SiBar,
    LsiDown,
    LsiUp,
    Benders,
    Gamma1,
}

impl std::fmt::Display for CutKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            CutKind::Si => "SI",
            CutKind::SiBar => "SIbar",
            CutKind::LsiDown => "LSI-down",
            CutKind::LsiUp => "LSI-up",
            CutKind::Benders => "Benders",
            CutKind::Gamma1 => "Gamma1",
        };
        f.write_str(s)
    }
}

/// One linear inequality `w_customer <= alpha0 + sum alpha_j x_j`.
#[derive(Debug, Clone, PartialEq)]
pub struct CutRow {
    pub customer: usize,
    pub alpha0: f64,
    /// Sorted by facility id; no stored coefficient is smaller than
    /// [`COEFF_DROP_TOL`] in magnitude.
    pub coeffs: Vec<(usize, f64)>,
    pub kind: CutKind,
    /// Generator set in the customer's sorted index space, kept for
    /// deduplication and provenance.
    pub generator: Vec<usize>,
}

impl CutRow {
    fn from_sorted(
        view: &CustomerView,
        kind: CutKind,
        generator: Vec<usize>,
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
        CutRow { customer: view.customer, alpha0, coeffs, kind, generator }
    }

    /// Right-hand side at a point over original facility ids.
    pub fn rhs_at(&self, x: &[f64]) -> f64 {
        self.alpha0 + self.coeffs.iter().map(|&(j, a)| a * x[j]).sum::<f64>()
    }

    /// Violation of the row by `(w, x)`; positive means violated.
    pub fn violation(&self, w: f64, x: &[f64]) -> f64 {
        w - self.rhs_at(x)
    }

    /// Key identifying a row up to regeneration: customer, family, and the
    /// generator after simplification.
    pub fn dedup_key(&self) -> (usize, CutKind, Vec<usize>) {
        (self.customer, self.kind, self.generator.clone())
    }

    /// One line for the optional cut log: `i kind |S| alpha0 nnz`.
    pub fn log_line(&self) -> String {
        format!(
            "{} {} {} {} {}",
            self.customer,
            self.kind,
            self.generator.len(),
            self.alpha0,
            self.coeffs.len()
        )
    }
}

/// Truncated generator: the members that can actually receive demand.
/// Generating from it yields the same submodular row with smaller support.
pub fn sgamma(view: &CustomerView, set: &FacilitySet) -> FacilitySet {
    view.truncate(set).truncated
}

/// Padded generator for the complementary family: once the set exceeds the
/// choice limit, all positions from its (gamma+1)-th member onward join.
/// The padded row dominates the raw one.
pub fn bar_sgamma(view: &CustomerView, set: &FacilitySet) -> FacilitySet {
    let n = view.n();
    if set.len() <= view.gamma {
        return set.clone();
    }
    let start = set.indices()[view.gamma];
    let mut v: Vec<usize> = set.iter().filter(|&k| k < start).collect();
    v.extend(start..n);
    FacilitySet::new(v, n)
}

/// Submodular inequality generated by `set`, emitted from its truncation:
/// `w <= phi(S) + sum_{j not in S} rho_j(S) x_j - sum_{j in S} rho_j(all but j) (1 - x_j)`.
pub fn si_cut(view: &CustomerView, set: &FacilitySet) -> CutRow {
    let s = sgamma(view, set);
    si_cut_raw(view, &s)
}

/// Same family without the generator truncation; only the oracle-facing
/// equivalence tests need this.
pub fn si_cut_raw(view: &CustomerView, set: &FacilitySet) -> CutRow {
    let n = view.n();
    let phi = view.phi(set);
    let mut coeffs = vec![0.0; n];
    let mut alpha0 = phi;
    for j in 0..n {
        if set.contains(j) {
            let r = view.rho_min(j);
            coeffs[j] = r;
            alpha0 -= r;
        } else {
            coeffs[j] = view.rho(set, j);
        }
    }
    CutRow::from_sorted(view, CutKind::Si, set.indices().to_vec(), alpha0, &coeffs)
}

/// Complementary submodular inequality, emitted from the padded generator:
/// `w <= phi(S) + sum_{j not in S} rho_j(empty) x_j - sum_{j in S} rho_j(S\j) (1 - x_j)`.
pub fn sibar_cut(view: &CustomerView, set: &FacilitySet) -> CutRow {
    let s = bar_sgamma(view, set);
    sibar_cut_raw(view, &s)
}

/// Complementary family without padding, for dominance tests.
pub fn sibar_cut_raw(view: &CustomerView, set: &FacilitySet) -> CutRow {
    let n = view.n();
    let phi = view.phi(set);
    let mut coeffs = vec![0.0; n];
    let mut alpha0 = phi;
    for j in 0..n {
        if set.contains(j) {
            let r = view.rho(&set.without(j), j);
            coeffs[j] = r;
            alpha0 -= r;
        } else {
            coeffs[j] = view.rho_max(j);
        }
    }
    CutRow::from_sorted(view, CutKind::SiBar, set.indices().to_vec(), alpha0, &coeffs)
}

/// Benders cut at a binary point with the given support (sorted index
/// space). The gradient coefficients treat the capture function through its
/// continuous relaxation, so the cut is valid but weaker than the
/// submodular rows.
pub fn benders_cut(view: &CustomerView, support: &FacilitySet) -> CutRow {
    let n = view.n();
    let gamma = view.gamma;
    let s = support.len();
    let mut coeffs = vec![0.0; n];
    let (mass, lambda): (f64, Box<dyn Fn(usize) -> f64>) = if s <= gamma {
        let mass: f64 = support.iter().map(|k| view.u[k]).fold(0.0, |a, b| a + b);
        let denom = (mass + view.u0) * (mass + view.u0);
        let u0 = view.u0;
        let u = view.u.clone();
        (mass, Box::new(move |j: usize| u0 * u[j] / denom))
    } else {
        let mass: f64 = support.indices()[..gamma].iter().map(|&k| view.u[k]).sum();
        let threshold = view.util(support.indices()[gamma]);
        let denom = (mass + view.u0) * (mass + view.u0);
        let u0 = view.u0;
        let u = view.u.clone();
        (mass, Box::new(move |j: usize| u0 * (u[j] - threshold).max(0.0) / denom))
    };
    let phi = mass / (mass + view.u0);
    let mut alpha0 = phi;
    for j in 0..n {
        coeffs[j] = lambda(j);
        if support.contains(j) {
            alpha0 -= coeffs[j];
        }
    }
    CutRow::from_sorted(view, CutKind::Benders, support.indices().to_vec(), alpha0, &coeffs)
}

/// Single-choice family, one row per cutoff position `ell` in `1..=n`:
/// `w <= h(u_{ell+1}) + sum_j (h(u_j) - h(u_{ell+1}))^+ x_j` where
/// `h(u) = u / (u + u0)` and the utility one past the end is zero. These n
/// rows describe the convex hull when the choice limit is 1.
///
/// Panics unless the view's choice limit is 1.
pub fn gamma1_cut(view: &CustomerView, ell: usize) -> CutRow {
    assert_eq!(view.gamma, 1, "single-choice family requires choice limit 1");
    assert!(ell >= 1 && ell <= view.n(), "cutoff position out of range");
    let h = |u: f64| u / (u + view.u0);
    let hcut = h(view.util(ell));
    let coeffs: Vec<f64> = (0..view.n()).map(|k| (h(view.u[k]) - hcut).max(0.0)).collect();
    CutRow::from_sorted(view, CutKind::Gamma1, vec![ell], hcut, &coeffs)
}

/// Right-hand side of the `ell`-th single-choice row at a point in sorted
/// index space, evaluated in O(ell) without building the row.
pub fn gamma1_rhs(view: &CustomerView, ell: usize, x_sorted: &[f64]) -> f64 {
    let h = |u: f64| u / (u + view.u0);
    let hcut = h(view.util(ell));
    let mut rhs = hcut;
    for k in 0..ell {
        rhs += (h(view.u[k]) - hcut).max(0.0) * x_sorted[k];
    }
    rhs
}
