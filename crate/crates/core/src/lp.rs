//! Internal LP core: maximizes a linear objective over box-bounded
//! variables and a growing set of `<=` rows.
//!
//! The engine is a bounded-variable simplex working on the dual: the
//! starting basis (all slacks) is made dual feasible by parking each
//! structural variable at the bound matching its objective sign, and every
//! re-solve after adding rows or editing bounds starts from the previous
//! basis. The basis inverse is kept dense and updated by pivot row
//! operations, with periodic drift checks triggering refactorization. This
//! is intended for desk-scale models, up to a few thousand rows.
//!
//! All structural variables must have finite bounds. Rows are `a . x <= b`
//! over structural variables only.

use std::fmt::Write as _;

use thiserror::Error;

/// Primal feasibility and dual optimality tolerance.
pub const FEAS_TOL: f64 = 1e-9;
/// Smallest pivot magnitude accepted in the ratio test.
const PIVOT_TOL: f64 = 1e-10;
/// Basis-inverse drift triggering refactorization.
const DRIFT_TOL: f64 = 1e-8;
/// Pivots between drift checks.
const CHECK_EVERY: usize = 100;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LpStatus {
    Optimal,
    Infeasible,
    Unbounded,
}

#[derive(Debug, Error)]
pub enum LpError {
    #[error("numerical failure: {0}")]
    Numerical(String),
    #[error("unknown variable {0}")]
    UnknownVariable(usize),
}

#[derive(Debug, Clone)]
pub struct LpSolution {
    pub status: LpStatus,
    pub objective: f64,
    /// Structural variable values.
    pub x: Vec<f64>,
    /// Row duals, nonnegative at optimality.
    pub duals: Vec<f64>,
    /// Reduced costs of the structural variables.
    pub reduced_costs: Vec<f64>,
    /// Row activities `a . x`; slack is `rhs - activity`.
    pub row_activity: Vec<f64>,
}

#[derive(Debug, Clone)]
struct Row {
    cols: Vec<(usize, f64)>,
    rhs: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
enum VStat {
    Basic(usize),
    Lower,
    Upper,
}

#[derive(Debug, Clone)]
struct Basis {
    /// Variable basic in each row; slack r is variable `nvars + r`.
    basic: Vec<usize>,
    vstat: Vec<VStat>,
    /// Dense row-major inverse of the basis matrix.
    binv: Vec<f64>,
    xb: Vec<f64>,
    d: Vec<f64>,
    pivots: usize,
    degenerate_streak: usize,
    bland: bool,
}

/// A maximization LP with box bounds and `<=` rows.
#[derive(Debug, Clone)]
pub struct LpModel {
    nvars: usize,
    lower: Vec<f64>,
    upper: Vec<f64>,
    orig_lower: Vec<f64>,
    orig_upper: Vec<f64>,
    obj: Vec<f64>,
    rows: Vec<Row>,
    cols: Vec<Vec<(usize, f64)>>,
    basis: Option<Basis>,
}

impl LpModel {
    /// Creates a model with the given finite box bounds and objective.
    pub fn new(bounds: &[(f64, f64)], obj: &[f64]) -> LpModel {
        assert_eq!(bounds.len(), obj.len());
        for &(l, u) in bounds {
            assert!(l.is_finite() && u.is_finite() && l <= u, "bounds must be finite with l <= u");
        }
        let lower: Vec<f64> = bounds.iter().map(|b| b.0).collect();
        let upper: Vec<f64> = bounds.iter().map(|b| b.1).collect();
        LpModel {
            nvars: obj.len(),
            orig_lower: lower.clone(),
            orig_upper: upper.clone(),
            lower,
            upper,
            obj: obj.to_vec(),
            rows: Vec::new(),
            cols: vec![Vec::new(); obj.len()],
            basis: None,
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn num_rows(&self) -> usize {
        self.rows.len()
    }

    /// Adds `sum a_j x_j <= rhs`; returns the row index.
    pub fn add_row(&mut self, cols: &[(usize, f64)], rhs: f64) -> usize {
        let mut cs: Vec<(usize, f64)> = cols.iter().copied().filter(|&(_, a)| a != 0.0).collect();
        cs.sort_unstable_by_key(|&(j, _)| j);
        let r = self.rows.len();
        for &(j, a) in &cs {
            assert!(j < self.nvars, "row references unknown variable {j}");
            self.cols[j].push((r, a));
        }
        self.rows.push(Row { cols: cs, rhs });
        r
    }

    pub fn set_bounds(&mut self, j: usize, l: f64, u: f64) -> Result<(), LpError> {
        if j >= self.nvars {
            return Err(LpError::UnknownVariable(j));
        }
        assert!(l.is_finite() && u.is_finite() && l <= u);
        self.lower[j] = l;
        self.upper[j] = u;
        Ok(())
    }

    /// Pins variable `j` to `value`.
    pub fn fix(&mut self, j: usize, value: f64) -> Result<(), LpError> {
        self.set_bounds(j, value, value)
    }

    /// Restores the bounds variable `j` was created with.
    pub fn unfix(&mut self, j: usize) -> Result<(), LpError> {
        if j >= self.nvars {
            return Err(LpError::UnknownVariable(j));
        }
        self.lower[j] = self.orig_lower[j];
        self.upper[j] = self.orig_upper[j];
        Ok(())
    }

    fn var_lower(&self, j: usize) -> f64 {
        if j < self.nvars {
            self.lower[j]
        } else {
            0.0
        }
    }

    fn var_upper(&self, j: usize) -> f64 {
        if j < self.nvars {
            self.upper[j]
        } else {
            f64::INFINITY
        }
    }

    fn var_obj(&self, j: usize) -> f64 {
        if j < self.nvars {
            self.obj[j]
        } else {
            0.0
        }
    }

    fn col_entries(&self, j: usize) -> Vec<(usize, f64)> {
        if j < self.nvars {
            self.cols[j].clone()
        } else {
            vec![(j - self.nvars, 1.0)]
        }
    }

    /// Solves the model, warm-starting from the previous basis when one
    /// exists. A reported optimum satisfies every row and bound within
    /// 1e-9; anything worse comes back as an error, never as `Optimal`.
    pub fn solve(&mut self) -> Result<LpSolution, LpError> {
        self.sync_basis()?;
        let status = self.dual_simplex()?;
        if status == LpStatus::Optimal {
            if let Err(msg) = self.verify_primal() {
                // One shot at recovering through a clean factorization.
                self.refactor()?;
                self.refresh_values();
                let status = self.dual_simplex()?;
                if status != LpStatus::Optimal {
                    return Ok(self.extract(status));
                }
                self.verify_primal().map_err(|m| LpError::Numerical(format!("{msg}; then {m}")))?;
            }
        }
        Ok(self.extract(status))
    }

    /// Writes a plain-text description of the model: one `var` line per
    /// variable (`var j lower upper objective`) and one `row` line per
    /// constraint (`row r rhs j:coef ...`).
    pub fn dump(&self, out: &mut dyn std::io::Write) -> std::io::Result<()> {
        writeln!(out, "lp max vars {} rows {}", self.nvars, self.rows.len())?;
        for j in 0..self.nvars {
            writeln!(out, "var {} {} {} {}", j, self.lower[j], self.upper[j], self.obj[j])?;
        }
        for (r, row) in self.rows.iter().enumerate() {
            let mut line = format!("row {} {}", r, row.rhs);
            for &(j, a) in &row.cols {
                let _ = write!(line, " {j}:{a}");
            }
            writeln!(out, "{line}")?;
        }
        Ok(())
    }

    fn sync_basis(&mut self) -> Result<(), LpError> {
        let nr = self.rows.len();
        let needs_cold = match &self.basis {
            None => true,
            Some(b) => b.basic.len() > nr,
        };
        if needs_cold {
            self.cold_start();
        } else if self.basis.as_ref().unwrap().basic.len() < nr {
            self.extend_basis();
        }
        self.refresh_values();
        Ok(())
    }

    fn cold_start(&mut self) {
        let nr = self.rows.len();
        let nv = self.nvars;
        let mut vstat = Vec::with_capacity(nv + nr);
        for j in 0..nv {
            vstat.push(if self.obj[j] > 0.0 { VStat::Upper } else { VStat::Lower });
        }
        let mut basic = Vec::with_capacity(nr);
        for r in 0..nr {
            vstat.push(VStat::Basic(r));
            basic.push(nv + r);
        }
        let mut binv = vec![0.0; nr * nr];
        for r in 0..nr {
            binv[r * nr + r] = 1.0;
        }
        self.basis = Some(Basis {
            basic,
            vstat,
            binv,
            xb: vec![0.0; nr],
            d: vec![0.0; nv + nr],
            pivots: 0,
            degenerate_streak: 0,
            bland: false,
        });
    }

    /// Grows the basis after rows were added: the new slacks enter the
    /// basis and the inverse gains a bordered block, so the previous
    /// optimum stays dual feasible.
    fn extend_basis(&mut self) {
        let nr = self.rows.len();
        let b = self.basis.as_mut().unwrap();
        let old = b.basic.len();
        let nv = self.nvars;

        let mut binv = vec![0.0; nr * nr];
        for r in 0..old {
            binv[r * nr..r * nr + old].copy_from_slice(&b.binv[r * old..(r + 1) * old]);
        }
        for t in old..nr {
            // Row of the new constraint over currently basic variables,
            // multiplied through the old inverse and negated.
            let target = &mut binv[t * nr..(t + 1) * nr];
            for &(j, a) in &self.rows[t].cols {
                if let VStat::Basic(k) = b.vstat[j] {
                    for c in 0..old {
                        target[c] -= a * b.binv[k * old + c];
                    }
                }
            }
            target[t] = 1.0;
            b.basic.push(nv + t);
        }
        // Slack ids are appended, so existing statuses keep their meaning.
        for t in old..nr {
            b.vstat.push(VStat::Basic(t));
        }
        b.d.resize(nv + nr, 0.0);
        b.binv = binv;
        b.xb.resize(nr, 0.0);
    }

    /// Recomputes basic values and reduced costs from the current inverse,
    /// flipping nonbasic variables whose status no longer matches the sign
    /// of their reduced cost (bounds may have been edited between solves).
    fn refresh_values(&mut self) {
        let nr = self.rows.len();
        let y = self.dual_vector();
        let b = self.basis.as_mut().unwrap();
        for j in 0..self.nvars + nr {
            if let VStat::Basic(_) = b.vstat[j] {
                b.d[j] = 0.0;
                continue;
            }
            let c = if j < self.nvars { self.obj[j] } else { 0.0 };
            let mut d = c;
            if j < self.nvars {
                for &(r, a) in &self.cols[j] {
                    d -= y[r] * a;
                }
            } else {
                d -= y[j - self.nvars];
            }
            b.d[j] = d;
            let l = if j < self.nvars { self.lower[j] } else { 0.0 };
            let u = if j < self.nvars { self.upper[j] } else { f64::INFINITY };
            if u - l <= 0.0 {
                continue;
            }
            if b.vstat[j] == VStat::Lower && d > FEAS_TOL && u.is_finite() {
                b.vstat[j] = VStat::Upper;
            } else if b.vstat[j] == VStat::Upper && d < -FEAS_TOL {
                b.vstat[j] = VStat::Lower;
            }
        }
        self.recompute_xb();
    }

    fn nonbasic_value(&self, j: usize) -> f64 {
        let b = self.basis.as_ref().unwrap();
        match b.vstat[j] {
            VStat::Basic(r) => b.xb[r],
            VStat::Lower => self.var_lower(j),
            VStat::Upper => self.var_upper(j),
        }
    }

    fn rhs_adjusted(&self) -> Vec<f64> {
        let b = self.basis.as_ref().unwrap();
        let nr = self.rows.len();
        let mut rhs = vec![0.0; nr];
        for (r, row) in self.rows.iter().enumerate() {
            let mut v = row.rhs;
            for &(j, a) in &row.cols {
                if !matches!(b.vstat[j], VStat::Basic(_)) {
                    v -= a * self.nonbasic_value(j);
                }
            }
            // Nonbasic slacks sit at zero and contribute nothing.
            rhs[r] = v;
        }
        rhs
    }

    fn recompute_xb(&mut self) {
        let rhs = self.rhs_adjusted();
        let b = self.basis.as_mut().unwrap();
        let nr = rhs.len();
        for r in 0..nr {
            let row = &b.binv[r * nr..(r + 1) * nr];
            b.xb[r] = row.iter().zip(&rhs).map(|(c, v)| c * v).sum();
        }
    }

    fn dual_vector(&self) -> Vec<f64> {
        let b = self.basis.as_ref().unwrap();
        let nr = self.rows.len();
        let mut y = vec![0.0; nr];
        for (k, &bj) in b.basic.iter().enumerate() {
            let c = self.var_obj(bj);
            if c != 0.0 {
                let row = &b.binv[k * nr..(k + 1) * nr];
                for r in 0..nr {
                    y[r] += c * row[r];
                }
            }
        }
        y
    }

    fn dual_simplex(&mut self) -> Result<LpStatus, LpError> {
        let nr = self.rows.len();
        let nv = self.nvars;
        let ntot = nv + nr;
        let max_pivots = 2000 + 200 * (nr + ntot);
        let bland_after = 10 * (nr + ntot);
        let mut iter = 0usize;

        loop {
            iter += 1;
            if iter > max_pivots {
                return Err(LpError::Numerical(format!("pivot limit {max_pivots} exceeded")));
            }

            // Leaving row: the most infeasible basic variable, or the
            // smallest variable index under Bland's rule.
            let (mut leave, mut worst, mut below) = (usize::MAX, FEAS_TOL, false);
            {
                let b = self.basis.as_ref().unwrap();
                for r in 0..nr {
                    let j = b.basic[r];
                    let (l, u) = (self.var_lower(j), self.var_upper(j));
                    let (viol, is_below) = if b.xb[r] < l - FEAS_TOL {
                        (l - b.xb[r], true)
                    } else if b.xb[r] > u + FEAS_TOL {
                        (b.xb[r] - u, false)
                    } else {
                        continue;
                    };
                    let better = if b.bland {
                        leave == usize::MAX || j < b.basic[leave]
                    } else {
                        viol > worst
                    };
                    if better {
                        leave = r;
                        worst = viol.max(worst);
                        below = is_below;
                    }
                }
            }
            if leave == usize::MAX {
                // Primal feasible. Drift-triggered refactorizations can
                // leave a stale status sign; repair by bound flips and keep
                // pivoting if anything moved.
                let mut flipped = false;
                {
                    let b = self.basis.as_mut().unwrap();
                    for j in 0..ntot {
                        let (l, u) = if j < nv {
                            (self.lower[j], self.upper[j])
                        } else {
                            (0.0, f64::INFINITY)
                        };
                        if u - l <= 0.0 {
                            continue;
                        }
                        match b.vstat[j] {
                            VStat::Lower if b.d[j] > FEAS_TOL => {
                                if u.is_finite() {
                                    b.vstat[j] = VStat::Upper;
                                    flipped = true;
                                } else if b.d[j] > 100.0 * FEAS_TOL {
                                    return Err(LpError::Numerical(format!(
                                        "variable {j} is dual infeasible at an unbounded side"
                                    )));
                                }
                            }
                            VStat::Upper if b.d[j] < -FEAS_TOL => {
                                b.vstat[j] = VStat::Lower;
                                flipped = true;
                            }
                            _ => {}
                        }
                    }
                }
                if !flipped {
                    return Ok(LpStatus::Optimal);
                }
                self.recompute_xb();
                continue;
            }

            // Pivot row over all nonbasic variables.
            let brow: Vec<f64> = {
                let b = self.basis.as_ref().unwrap();
                b.binv[leave * nr..(leave + 1) * nr].to_vec()
            };
            let dir = if below { 1.0 } else { -1.0 };
            // Row entries for every nonbasic variable: candidates feed the
            // ratio test, the rest still need their reduced-cost update.
            let mut row_alphas: Vec<(usize, f64)> = Vec::new();
            let mut candidates: Vec<(usize, f64)> = Vec::new();
            {
                let b = self.basis.as_ref().unwrap();
                for j in 0..ntot {
                    let stat = b.vstat[j];
                    if matches!(stat, VStat::Basic(_)) {
                        continue;
                    }
                    let alpha = if j < nv {
                        self.cols[j].iter().map(|&(r, a)| brow[r] * a).sum::<f64>()
                    } else {
                        brow[j - nv]
                    };
                    if alpha.abs() <= 1e-13 {
                        continue;
                    }
                    row_alphas.push((j, alpha));
                    if self.var_upper(j) - self.var_lower(j) <= 0.0 {
                        continue; // fixed variables cannot move
                    }
                    if alpha.abs() <= PIVOT_TOL {
                        continue;
                    }
                    let ok = match stat {
                        VStat::Lower => dir * alpha < 0.0,
                        VStat::Upper => dir * alpha > 0.0,
                        VStat::Basic(_) => false,
                    };
                    if ok {
                        candidates.push((j, alpha));
                    }
                }
            }
            if candidates.is_empty() {
                return Ok(LpStatus::Infeasible);
            }

            // Dual ratio test.
            let (enter, alpha_e, theta) = {
                let b = self.basis.as_ref().unwrap();
                let mut best: Option<(usize, f64, f64)> = None;
                for &(j, alpha) in &candidates {
                    let ratio = dir * b.d[j] / alpha;
                    let better = match best {
                        None => true,
                        Some((bj, balpha, bratio)) => {
                            if b.bland {
                                ratio < bratio - 1e-12 || (ratio <= bratio + 1e-12 && j < bj)
                            } else {
                                ratio < bratio - 1e-12
                                    || (ratio <= bratio + 1e-12 && alpha.abs() > balpha.abs())
                            }
                        }
                    };
                    if better {
                        best = Some((j, alpha, ratio));
                    }
                }
                let (j, alpha, ratio) = best.unwrap();
                (j, alpha, dir * ratio)
            };

            // Entering column through the inverse.
            let mut ae = vec![0.0; nr];
            {
                let b = self.basis.as_ref().unwrap();
                for &(r, a) in &self.col_entries(enter) {
                    for k in 0..nr {
                        ae[k] += b.binv[k * nr + r] * a;
                    }
                }
            }
            if ae[leave].abs() <= PIVOT_TOL {
                // Numerically inconsistent with the row scan; refactor once.
                self.refactor()?;
                self.refresh_values();
                continue;
            }

            let lv = self.basis.as_ref().unwrap().basic[leave];
            let target = if below { self.var_lower(lv) } else { self.var_upper(lv) };
            let enter_bounds = (self.var_lower(enter), self.var_upper(enter));
            let b = self.basis.as_mut().unwrap();
            let delta = (b.xb[leave] - target) / ae[leave];
            let enter_val = match b.vstat[enter] {
                VStat::Lower => enter_bounds.0,
                VStat::Upper => enter_bounds.1,
                VStat::Basic(_) => unreachable!(),
            } + delta;

            for k in 0..nr {
                if k != leave {
                    b.xb[k] -= ae[k] * delta;
                }
            }
            b.xb[leave] = enter_val;

            // Reduced-cost update from the dual step.
            let step = b.d[enter] / alpha_e;
            for &(j, alpha) in &row_alphas {
                b.d[j] -= step * alpha;
            }
            b.d[enter] = 0.0;
            b.d[lv] = -step;

            b.vstat[lv] = if below { VStat::Lower } else { VStat::Upper };
            b.vstat[enter] = VStat::Basic(leave);
            b.basic[leave] = enter;

            // Pivot the inverse.
            let pivot = ae[leave];
            let (head, tail) = b.binv.split_at_mut(leave * nr);
            let (prow, rest) = tail.split_at_mut(nr);
            for v in prow.iter_mut() {
                *v /= pivot;
            }
            for (k, chunk) in head.chunks_mut(nr).enumerate() {
                let f = ae[k];
                if f != 0.0 {
                    for (c, p) in chunk.iter_mut().zip(prow.iter()) {
                        *c -= f * p;
                    }
                }
            }
            for (k0, chunk) in rest.chunks_mut(nr).enumerate() {
                let f = ae[leave + 1 + k0];
                if f != 0.0 {
                    for (c, p) in chunk.iter_mut().zip(prow.iter()) {
                        *c -= f * p;
                    }
                }
            }

            b.pivots += 1;
            if theta.abs() <= 1e-12 {
                b.degenerate_streak += 1;
                if b.degenerate_streak > bland_after {
                    b.bland = true;
                }
            } else {
                b.degenerate_streak = 0;
            }

            if b.pivots % CHECK_EVERY == 0 {
                let drift = self.measure_drift();
                if drift > DRIFT_TOL {
                    self.refactor()?;
                    self.recompute_xb();
                }
            }
        }
    }

    fn measure_drift(&self) -> f64 {
        let b = self.basis.as_ref().unwrap();
        let nr = self.rows.len();
        let rhs = self.rhs_adjusted();
        let mut lhs = vec![0.0; nr];
        for (k, &bj) in b.basic.iter().enumerate() {
            for &(r, a) in &self.col_entries(bj) {
                lhs[r] += a * b.xb[k];
            }
        }
        lhs.iter().zip(&rhs).map(|(a, c)| (a - c).abs()).fold(0.0, f64::max)
    }

    /// Rebuilds the inverse of the current basis matrix from scratch.
    fn refactor(&mut self) -> Result<(), LpError> {
        let nr = self.rows.len();
        let basic = self.basis.as_ref().unwrap().basic.clone();
        let mut mat = vec![0.0; nr * nr];
        for (k, &bj) in basic.iter().enumerate() {
            for &(r, a) in &self.col_entries(bj) {
                mat[r * nr + k] = a;
            }
        }
        let mut inv = vec![0.0; nr * nr];
        for r in 0..nr {
            inv[r * nr + r] = 1.0;
        }
        for col in 0..nr {
            let mut piv = col;
            for r in col + 1..nr {
                if mat[r * nr + col].abs() > mat[piv * nr + col].abs() {
                    piv = r;
                }
            }
            let pv = mat[piv * nr + col];
            if pv.abs() < 1e-12 {
                return Err(LpError::Numerical("singular basis during refactorization".into()));
            }
            if piv != col {
                for c in 0..nr {
                    mat.swap(col * nr + c, piv * nr + c);
                    inv.swap(col * nr + c, piv * nr + c);
                }
            }
            let pv = mat[col * nr + col];
            for c in 0..nr {
                mat[col * nr + c] /= pv;
                inv[col * nr + c] /= pv;
            }
            for r in 0..nr {
                if r != col {
                    let f = mat[r * nr + col];
                    if f != 0.0 {
                        for c in 0..nr {
                            mat[r * nr + c] -= f * mat[col * nr + c];
                            inv[r * nr + c] -= f * inv[col * nr + c];
                        }
                    }
                }
            }
        }
        let b = self.basis.as_mut().unwrap();
        b.binv = inv;
        // Reduced costs are refreshed from the clean inverse.
        let y = self.dual_vector();
        let b = self.basis.as_mut().unwrap();
        for j in 0..self.nvars + nr {
            if matches!(b.vstat[j], VStat::Basic(_)) {
                b.d[j] = 0.0;
            } else if j < self.nvars {
                let mut d = self.obj[j];
                for &(r, a) in &self.cols[j] {
                    d -= y[r] * a;
                }
                b.d[j] = d;
            } else {
                b.d[j] = -y[j - self.nvars];
            }
        }
        Ok(())
    }

    fn primal_x(&self) -> Vec<f64> {
        let b = self.basis.as_ref().unwrap();
        (0..self.nvars)
            .map(|j| match b.vstat[j] {
                VStat::Basic(r) => b.xb[r],
                VStat::Lower => self.lower[j],
                VStat::Upper => self.upper[j],
            })
            .collect()
    }

    fn verify_primal(&self) -> Result<(), String> {
        let x = self.primal_x();
        for (j, &v) in x.iter().enumerate() {
            if v < self.lower[j] - FEAS_TOL || v > self.upper[j] + FEAS_TOL {
                return Err(format!("variable {j} out of bounds: {v}"));
            }
        }
        for (r, row) in self.rows.iter().enumerate() {
            let act: f64 = row.cols.iter().map(|&(j, a)| a * x[j]).sum();
            if act > row.rhs + FEAS_TOL {
                return Err(format!("row {r} violated by {}", act - row.rhs));
            }
        }
        Ok(())
    }

    fn extract(&self, status: LpStatus) -> LpSolution {
        let x = self.primal_x();
        let objective = x.iter().zip(&self.obj).map(|(v, c)| v * c).sum();
        let duals = self.dual_vector();
        let b = self.basis.as_ref().unwrap();
        let reduced_costs = b.d[..self.nvars].to_vec();
        let row_activity = self
            .rows
            .iter()
            .map(|row| row.cols.iter().map(|&(j, a)| a * x[j]).sum())
            .collect();
        LpSolution { status, objective, x, duals, reduced_costs, row_activity }
    }
}
