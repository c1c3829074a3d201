//! Brute-force ground truth, kept on independent code paths from the
//! production evaluators: full enumeration of the location problem, the
//! definitional capture maximum, the lifting problem, cut-validity
//! certification, tight-point rank checks, and a convex-hull probe for the
//! single-choice case.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::capture::FacilitySet;
use crate::cuts::{gamma1_cut, CutRow};
use crate::instance::{CustomerView, Instance};
use crate::lifting::CanonicalLift;
use crate::lp::LpModel;

#[derive(Debug, Error)]
pub enum OracleError {
    #[error("enumeration limit exceeded: {0}")]
    TooLarge(String),
}

/// Exact objective of opening `open` (original facility ids), evaluated
/// directly from the instance data: per customer, the top utilities among
/// the open facilities against the outside option.
pub fn subset_value(inst: &Instance, open: &[usize]) -> f64 {
    let mut total = 0.0;
    for i in 0..inst.m {
        let mut utils: Vec<f64> = open.iter().map(|&j| inst.u[i][j]).collect();
        utils.sort_by(|a, b| b.partial_cmp(a).unwrap());
        let mass: f64 = utils.iter().take(inst.gamma[i]).sum();
        total += inst.b[i] * mass / (mass + inst.u0[i]);
    }
    total - open.iter().map(|&j| inst.f[j]).sum::<f64>()
}

/// Exact optimum by enumerating all facility subsets. Ties go to the
/// lexicographically smallest set. Guarded to 22 facilities.
pub fn brute_optimum(inst: &Instance) -> Result<(f64, Vec<usize>), OracleError> {
    if inst.n > 22 {
        return Err(OracleError::TooLarge(format!("n={} facilities", inst.n)));
    }
    let mut best = subset_value(inst, &[]);
    let mut best_set: Vec<usize> = Vec::new();
    for mask in 1u64..(1u64 << inst.n) {
        let open: Vec<usize> = (0..inst.n).filter(|&j| mask >> j & 1 == 1).collect();
        let v = subset_value(inst, &open);
        if v > best || (v == best && open < best_set) {
            best = v;
            best_set = open;
        }
    }
    Ok((best, best_set))
}

/// Capture probability by its definition: the best ratio over every subset
/// of `set` within the choice limit. Guarded to 22 members.
pub fn brute_phi(view: &CustomerView, set: &FacilitySet) -> Result<f64, OracleError> {
    let members = set.indices();
    if members.len() > 22 {
        return Err(OracleError::TooLarge(format!("|S|={}", members.len())));
    }
    let mut best = 0.0f64;
    for mask in 0u64..(1u64 << members.len()) {
        if (mask.count_ones() as usize) > view.gamma {
            continue;
        }
        let mass: f64 = members
            .iter()
            .enumerate()
            .filter(|&(pos, _)| mask >> pos & 1 == 1)
            .map(|(_, &k)| view.u[k])
            .sum();
        best = best.max(mass / (mass + view.u0));
    }
    Ok(best)
}

/// Reduced lifting problem by enumeration over all pick vectors within the
/// cardinality budget. Guarded to 20 items.
pub fn brute_lift(c: &CanonicalLift) -> f64 {
    let q = c.priced.len();
    let p = q + c.free.len();
    assert!(p <= 20, "enumeration limit exceeded: p={p}");
    let mut best = f64::NEG_INFINITY;
    for mask in 0u64..(1u64 << p) {
        if (mask.count_ones() as usize) > c.gamma {
            continue;
        }
        let mut mass = 0.0;
        let mut price = 0.0;
        for t in 0..q {
            if mask >> t & 1 == 1 {
                mass += c.priced[t].0;
                price += c.priced[t].1;
            }
        }
        for (t, &u) in c.free.iter().enumerate() {
            if mask >> (q + t) & 1 == 1 {
                mass += u;
            }
        }
        best = best.max(mass / (mass + c.u0) - price);
    }
    best
}

/// Outcome of certifying a cut row against every binary outcome.
#[derive(Debug, Clone, PartialEq)]
pub struct Certification {
    pub valid: bool,
    /// An outcome (sorted index space) the row cuts off, when invalid.
    pub witness: Option<Vec<usize>>,
}

/// Checks `phi(S') <= rhs(x^{S'}) + 1e-9` over all outcomes. Guarded to 22
/// facilities.
pub fn certify_valid(view: &CustomerView, row: &CutRow) -> Result<Certification, OracleError> {
    let n = view.n();
    if n > 22 {
        return Err(OracleError::TooLarge(format!("n={n}")));
    }
    for mask in 0u64..(1u64 << n) {
        let s = FacilitySet::from_mask(mask, n);
        let phi = top_gamma_ratio(view, &s);
        let mut x = vec![0.0; n];
        for k in s.iter() {
            x[view.perm[k]] = 1.0;
        }
        if phi > row.rhs_at(&x) + 1e-9 {
            return Ok(Certification { valid: false, witness: Some(s.indices().to_vec()) });
        }
    }
    Ok(Certification { valid: true, witness: None })
}

// Sorted views keep utilities nonincreasing, so the best subset within the
// limit is the member prefix. Written against the raw arrays on purpose.
fn top_gamma_ratio(view: &CustomerView, set: &FacilitySet) -> f64 {
    let mass: f64 = set.indices().iter().take(view.gamma).map(|&k| view.u[k]).sum();
    mass / (mass + view.u0)
}

/// Affine rank of the outcomes that satisfy the row with equality, computed
/// by Gaussian elimination with a 1e-7 pivot threshold. A facet of the
/// (n+1)-dimensional hypograph set reaches rank n + 1.
pub fn facet_rank(view: &CustomerView, row: &CutRow) -> Result<usize, OracleError> {
    let n = view.n();
    if n > 16 {
        return Err(OracleError::TooLarge(format!("n={n}")));
    }
    let mut points: Vec<Vec<f64>> = Vec::new();
    for mask in 0u64..(1u64 << n) {
        let s = FacilitySet::from_mask(mask, n);
        let phi = top_gamma_ratio(view, &s);
        let mut x = vec![0.0; n];
        for k in s.iter() {
            x[view.perm[k]] = 1.0;
        }
        if (phi - row.rhs_at(&x)).abs() <= 1e-9 {
            let mut p = Vec::with_capacity(n + 1);
            p.push(phi);
            p.extend_from_slice(&x);
            points.push(p);
        }
    }
    if points.is_empty() {
        return Ok(0);
    }
    let base = points[0].clone();
    let mut mat: Vec<Vec<f64>> = points[1..]
        .iter()
        .map(|p| p.iter().zip(&base).map(|(a, b)| a - b).collect())
        .collect();
    Ok(matrix_rank(&mut mat, 1e-7) + 1)
}

fn matrix_rank(mat: &mut [Vec<f64>], tol: f64) -> usize {
    let rows = mat.len();
    if rows == 0 {
        return 0;
    }
    let cols = mat[0].len();
    let mut rank = 0;
    let mut col = 0;
    while rank < rows && col < cols {
        let mut piv = rank;
        for r in rank + 1..rows {
            if mat[r][col].abs() > mat[piv][col].abs() {
                piv = r;
            }
        }
        if mat[piv][col].abs() < tol {
            col += 1;
            continue;
        }
        mat.swap(rank, piv);
        for r in 0..rows {
            if r != rank && mat[r][col].abs() > 0.0 {
                let factor = mat[r][col] / mat[rank][col];
                for c in col..cols {
                    let v = mat[rank][c];
                    mat[r][c] -= factor * v;
                }
            }
        }
        rank += 1;
        col += 1;
    }
    rank
}

/// Probes the single-choice convex-hull description: for random objectives
/// `beta * w + c . x` with `beta >= 0`, the LP maximum over the n
/// single-choice rows and the unit box must match the maximum over all
/// binary outcomes to 1e-9. Returns false on the first mismatch.
pub fn hull_probe_gamma1(view: &CustomerView, trials: usize, seed: u64) -> Result<bool, OracleError> {
    assert_eq!(view.gamma, 1, "hull probe applies to choice limit 1");
    let n = view.n();
    if n > 16 {
        return Err(OracleError::TooLarge(format!("n={n}")));
    }

    // Variables 0..n are the location variables, n is the capture variable.
    let mut bounds = vec![(0.0, 1.0); n + 1];
    bounds[n] = (0.0, 1.0);
    let rows: Vec<CutRow> = (1..=n).map(|ell| gamma1_cut(view, ell)).collect();

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..trials {
        let beta: f64 = rng.gen_range(0.0..2.0);
        let c: Vec<f64> = (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect();

        let mut obj = c.clone();
        obj.push(beta);
        let mut lp = LpModel::new(&bounds, &obj);
        for row in &rows {
            let mut cols: Vec<(usize, f64)> = vec![(n, 1.0)];
            // Row coefficients are in original ids; LP columns match.
            cols.extend(row.coeffs.iter().map(|&(j, a)| (j, -a)));
            lp.add_row(&cols, row.alpha0);
        }
        let sol = lp.solve().map_err(|e| OracleError::TooLarge(format!("lp failed: {e}")))?;

        let mut disc = f64::NEG_INFINITY;
        for mask in 0u64..(1u64 << n) {
            let s = FacilitySet::from_mask(mask, n);
            let phi = top_gamma_ratio(view, &s);
            let cs: f64 = s.iter().map(|k| c[view.perm[k]]).sum();
            disc = disc.max(beta * phi + cs);
        }
        if (sol.objective - disc).abs() > 1e-9 {
            return Ok(false);
        }
    }
    Ok(true)
}
