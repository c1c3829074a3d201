//! Two-stage exact solver.
//!
//! Stage 1 runs a cutting-plane loop on the LP relaxation, rounding every
//! fractional optimum to grow an incumbent; the rows still saturated at the
//! final optimum seed stage 2, a best-bound branch-and-bound that separates
//! cuts lazily at integral node solutions.
//!
//! Cut families: the submodular pair, their lifted versions, the gradient
//! (Benders-style) baseline, and the exact single-choice family to which
//! unit-choice-limit customers are routed automatically.

use std::collections::HashSet;
use std::collections::BinaryHeap;
use std::time::{Duration, Instant};

use thiserror::Error;

use crate::capture::FacilitySet;
use crate::cuts::{CutKind, CutRow};
use crate::instance::{CustomerView, Instance};
use crate::lifting::LiftError;
use crate::lp::{LpError, LpModel, LpStatus};
use crate::separation::{separate_fractional, separate_integral};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CutFamily {
    Si,
    Lsi,
    Gbd,
    /// Lifted family, except that instances where every customer has choice
    /// limit 1 run entirely on the exact single-choice machinery.
    Auto,
}

impl CutFamily {
    pub fn as_str(&self) -> &'static str {
        match self {
            CutFamily::Si => "si",
            CutFamily::Lsi => "lsi",
            CutFamily::Gbd => "gbd",
            CutFamily::Auto => "auto",
        }
    }
}

impl std::str::FromStr for CutFamily {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "si" => Ok(CutFamily::Si),
            "lsi" => Ok(CutFamily::Lsi),
            "gbd" => Ok(CutFamily::Gbd),
            "auto" => Ok(CutFamily::Auto),
            other => Err(format!("unknown cut family '{other}' (expected si|lsi|gbd|auto)")),
        }
    }
}

#[derive(Debug, Clone)]
pub struct SolveConfig {
    pub family: CutFamily,
    /// Wall-clock limit in seconds.
    pub time_limit: f64,
    /// Relative gap at which the search may stop; zero proves optimality.
    pub gap: f64,
    pub stage1_max_rounds: usize,
    /// Violation needed to accept a cut at fractional points.
    pub fractional_tol: f64,
    /// Violation needed to accept a cut at integral points.
    pub integral_tol: f64,
    /// Record one log line per emitted cut in the report.
    pub collect_cut_log: bool,
    /// Reserved for randomized tie-breaking; the default algorithms use none.
    pub seed: u64,
}

impl Default for SolveConfig {
    fn default() -> Self {
        SolveConfig {
            family: CutFamily::Auto,
            time_limit: 7200.0,
            gap: 0.0,
            stage1_max_rounds: 500,
            fractional_tol: crate::separation::FRACTIONAL_TOL,
            integral_tol: crate::separation::INTEGRAL_TOL,
            collect_cut_log: false,
            seed: 0,
        }
    }
}

#[derive(Debug, Error)]
pub enum SolveError {
    #[error("lp core failed: {0}")]
    Lp(#[from] LpError),
    #[error("lifting failed: {0}")]
    Lift(#[from] LiftError),
    #[error("stage LP unexpectedly {0:?}")]
    BadLpStatus(LpStatus),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SolveStatus {
    Optimal,
    Limit,
}

impl SolveStatus {
    pub fn as_str(&self) -> &'static str {
        match self {
            SolveStatus::Optimal => "optimal",
            SolveStatus::Limit => "limit",
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct CutCounts {
    pub si: u64,
    pub sibar: u64,
    pub lsi_down: u64,
    pub lsi_up: u64,
    pub benders: u64,
    pub gamma1: u64,
}

impl CutCounts {
    fn add(&mut self, kind: CutKind) {
        match kind {
            CutKind::Si => self.si += 1,
            CutKind::SiBar => self.sibar += 1,
            CutKind::LsiDown => self.lsi_down += 1,
            CutKind::LsiUp => self.lsi_up += 1,
            CutKind::Benders => self.benders += 1,
            CutKind::Gamma1 => self.gamma1 += 1,
        }
    }

    pub fn total(&self) -> u64 {
        self.si + self.sibar + self.lsi_down + self.lsi_up + self.benders + self.gamma1
    }
}

/// Everything a run produces. Fields suffixed `_seconds` are wall-clock
/// measurements; all other fields are deterministic for a fixed instance
/// and configuration.
#[derive(Debug, Clone)]
pub struct SolveReport {
    pub family: CutFamily,
    pub status: SolveStatus,
    /// Best objective found, recomputed exactly from `best_set`.
    pub nu: f64,
    pub best_set: Vec<usize>,
    pub ub: f64,
    pub lb: f64,
    pub gap_pct: f64,
    /// Bounds at the end of the cutting-plane stage.
    pub ub1: f64,
    pub lb1: f64,
    pub nodes: u64,
    pub rounds_stage1: usize,
    pub cuts: CutCounts,
    pub t1_seconds: f64,
    pub ct_seconds: f64,
    pub t_seconds: f64,
    pub cut_log: Vec<String>,
}

impl SolveReport {
    /// Report fields as `(key, rendered JSON value)` pairs, in the order
    /// they are serialized.
    pub fn json_fields(&self) -> Vec<(&'static str, String)> {
        let set = self.best_set.iter().map(|j| j.to_string()).collect::<Vec<_>>().join(", ");
        vec![
            ("family", format!("\"{}\"", self.family.as_str())),
            ("status", format!("\"{}\"", self.status.as_str())),
            ("nu", fmt_f64(self.nu)),
            ("ub", fmt_f64(self.ub)),
            ("lb", fmt_f64(self.lb)),
            ("gap_pct", fmt_f64(self.gap_pct)),
            ("ub1", fmt_f64(self.ub1)),
            ("lb1", fmt_f64(self.lb1)),
            ("nodes", self.nodes.to_string()),
            ("rounds_stage1", self.rounds_stage1.to_string()),
            ("cuts_si", self.cuts.si.to_string()),
            ("cuts_sibar", self.cuts.sibar.to_string()),
            ("cuts_lsi_down", self.cuts.lsi_down.to_string()),
            ("cuts_lsi_up", self.cuts.lsi_up.to_string()),
            ("cuts_benders", self.cuts.benders.to_string()),
            ("cuts_gamma1", self.cuts.gamma1.to_string()),
            ("cuts_total", self.cuts.total().to_string()),
            ("best_set", format!("[{set}]")),
            ("t1_seconds", fmt_f64(self.t1_seconds)),
            ("ct_seconds", fmt_f64(self.ct_seconds)),
            ("t_seconds", fmt_f64(self.t_seconds)),
        ]
    }

    /// Flat single-object JSON document. Keys appear in a fixed order;
    /// floats use the shortest decimal that round-trips, so two runs with
    /// identical inputs produce identical bytes apart from the three
    /// `*_seconds` entries.
    pub fn to_json(&self) -> String {
        json_object(&self.json_fields())
    }
}

/// Renders `(key, raw value)` pairs as a single flat JSON object, one field
/// per line.
pub fn json_object(fields: &[(&str, String)]) -> String {
    let mut s = String::from("{\n");
    for (i, (key, val)) in fields.iter().enumerate() {
        let sep = if i + 1 == fields.len() { "" } else { "," };
        s.push_str(&format!("  \"{key}\": {val}{sep}\n"));
    }
    s.push_str("}\n");
    s
}

fn fmt_f64(v: f64) -> String {
    if v.is_finite() {
        format!("{v}")
    } else if v.is_nan() {
        "null".into()
    } else if v > 0.0 {
        "1e999".into()
    } else {
        "-1e999".into()
    }
}

/// Percentage gap improvement of a root bound over a baseline root bound:
/// `100 (ub_base - ub_new) / (ub_base - nu)`. `None` stands for equal
/// bounds (printed as `--`) or a baseline already at the optimum.
pub fn gap_improvement(ub_base: f64, ub_new: f64, nu: f64) -> Option<f64> {
    let scale = 1.0f64.max(ub_base.abs());
    if (ub_new - ub_base).abs() <= 1e-9 * scale {
        return None;
    }
    let denom = ub_base - nu;
    if denom.abs() <= 1e-12 * scale {
        return None;
    }
    Some(100.0 * (ub_base - ub_new) / denom)
}

/// Exact objective of a facility set, evaluated through the per-customer
/// capture machinery.
pub fn exact_value(inst: &Instance, views: &[CustomerView], open: &[usize]) -> f64 {
    let mut is_open = vec![false; inst.n];
    for &j in open {
        is_open[j] = true;
    }
    let mut total = 0.0;
    for view in views {
        let set = FacilitySet::new(
            (0..inst.n).filter(|&k| is_open[view.perm[k]]).collect(),
            inst.n,
        );
        total += inst.b[view.customer] * view.phi(&set);
    }
    total - inst.open_cost(open)
}

/// Rounds a fractional point to its nearest binary neighbor (ties go up)
/// and evaluates it exactly.
pub fn round_heuristic(
    inst: &Instance,
    views: &[CustomerView],
    x: &[f64],
) -> (Vec<usize>, f64) {
    let open: Vec<usize> = (0..inst.n).filter(|&j| x[j] >= 0.5).collect();
    let value = exact_value(inst, views, &open);
    (open, value)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum EffFamily {
    Si,
    Lsi,
    Gbd,
    Gamma1,
}

fn resolve_family(family: CutFamily, inst: &Instance) -> EffFamily {
    match family {
        CutFamily::Si => EffFamily::Si,
        CutFamily::Lsi => EffFamily::Lsi,
        CutFamily::Gbd => EffFamily::Gbd,
        CutFamily::Auto => {
            if inst.all_gamma_one() {
                EffFamily::Gamma1
            } else {
                EffFamily::Lsi
            }
        }
    }
}

fn kinds_for(family: EffFamily, gamma_one: bool) -> &'static [CutKind] {
    match family {
        // Unit-limit customers always get the exact single-choice rows;
        // they are the same inequalities either family would produce.
        EffFamily::Si | EffFamily::Lsi | EffFamily::Gamma1 if gamma_one => &[CutKind::Gamma1],
        EffFamily::Si => &[CutKind::Si, CutKind::SiBar],
        EffFamily::Lsi => &[CutKind::LsiDown, CutKind::LsiUp],
        EffFamily::Gamma1 => &[CutKind::Gamma1],
        EffFamily::Gbd => &[CutKind::Benders],
    }
}

struct Driver<'a> {
    inst: &'a Instance,
    views: Vec<CustomerView>,
    cfg: &'a SolveConfig,
    family: EffFamily,
    start: Instant,
    sep_time: Duration,
    cuts: CutCounts,
    cut_log: Vec<String>,
}

impl<'a> Driver<'a> {
    fn time_up(&self) -> bool {
        self.start.elapsed().as_secs_f64() >= self.cfg.time_limit
    }

    fn base_lp(&self) -> LpModel {
        let n = self.inst.n;
        let m = self.inst.m;
        let mut bounds = Vec::with_capacity(n + m);
        let mut obj = Vec::with_capacity(n + m);
        for j in 0..n {
            bounds.push((0.0, 1.0));
            obj.push(-self.inst.f[j]);
        }
        for i in 0..m {
            bounds.push((0.0, 1.0));
            obj.push(self.inst.b[i]);
        }
        LpModel::new(&bounds, &obj)
    }

    /// Adds the row to the LP without touching the emission counters.
    fn install(&self, model: &mut LpModel, row: &CutRow) {
        let n = self.inst.n;
        let mut cols: Vec<(usize, f64)> = Vec::with_capacity(row.coeffs.len() + 1);
        cols.push((n + row.customer, 1.0));
        for &(j, a) in &row.coeffs {
            cols.push((j, -a));
        }
        model.add_row(&cols, row.alpha0);
    }

    /// Counts a newly emitted cut and logs it when requested.
    fn record(&mut self, row: &CutRow) {
        self.cuts.add(row.kind);
        if self.cfg.collect_cut_log {
            self.cut_log.push(row.log_line());
        }
    }
}

struct Stage1 {
    kept: Vec<CutRow>,
    ub1: f64,
    lb1: f64,
    incumbent: Vec<usize>,
    rounds: usize,
    hit_limit: bool,
}

fn run_stage1(drv: &mut Driver) -> Result<Stage1, SolveError> {
    let inst = drv.inst;
    let n = inst.n;
    let mut model = drv.base_lp();
    let mut meta: Vec<CutRow> = Vec::new();
    let mut dedup: HashSet<(usize, CutKind, Vec<usize>)> = HashSet::new();

    let mut incumbent: Vec<usize> = Vec::new();
    let mut lb1 = exact_value(inst, &drv.views, &incumbent);
    let mut prev_ub = f64::INFINITY;
    let mut stall = 0usize;
    let mut rounds = 0usize;
    let mut hit_limit = false;

    let last = loop {
        let sol = model.solve()?;
        if sol.status != LpStatus::Optimal {
            return Err(SolveError::BadLpStatus(sol.status));
        }
        rounds += 1;
        let ub = sol.objective;

        let (rset, rval) = round_heuristic(inst, &drv.views, &sol.x[..n]);
        if rval > lb1 {
            lb1 = rval;
            incumbent = rset;
        }

        if rounds >= drv.cfg.stage1_max_rounds {
            break sol;
        }
        if drv.time_up() {
            hit_limit = true;
            break sol;
        }
        if prev_ub - ub < 1e-9 {
            stall += 1;
            if stall >= 10 {
                break sol;
            }
        } else {
            stall = 0;
        }
        prev_ub = ub;

        let t = Instant::now();
        let mut fresh: Vec<CutRow> = Vec::new();
        for i in 0..inst.m {
            let view = &drv.views[i];
            let w = sol.x[n + i];
            let mut best: Option<CutRow> = None;
            for &kind in kinds_for(drv.family, view.gamma == 1) {
                if let Some(row) =
                    separate_fractional(view, w, &sol.x[..n], kind, drv.cfg.fractional_tol)?
                {
                    let better = match &best {
                        None => true,
                        Some(b) => row.violation(w, &sol.x[..n]) > b.violation(w, &sol.x[..n]),
                    };
                    if better {
                        best = Some(row);
                    }
                }
            }
            if let Some(row) = best {
                if !dedup.contains(&row.dedup_key()) {
                    fresh.push(row);
                }
            }
        }
        drv.sep_time += t.elapsed();

        if fresh.is_empty() {
            break sol;
        }
        for row in fresh {
            dedup.insert(row.dedup_key());
            drv.install(&mut model, &row);
            drv.record(&row);
            meta.push(row);
        }
    };

    // Keep the rows the final optimum saturates. LP row r is
    // `w_i - a.x <= alpha0`, so its slack is `alpha0 - activity`.
    let kept = meta
        .into_iter()
        .enumerate()
        .filter(|(r, row)| row.alpha0 - last.row_activity[*r] <= 1e-7)
        .map(|(_, row)| row)
        .collect();

    Ok(Stage1 { kept, ub1: last.objective, lb1, incumbent, rounds, hit_limit })
}

/// Bounds produced by the cutting-plane stage alone.
#[derive(Debug, Clone)]
pub struct RootBounds {
    pub ub1: f64,
    pub lb1: f64,
    pub incumbent: Vec<usize>,
    pub rounds: usize,
}

/// Runs only the cutting-plane stage and reports its bounds.
pub fn root_bounds(inst: &Instance, cfg: &SolveConfig) -> Result<RootBounds, SolveError> {
    let mut drv = Driver {
        inst,
        views: inst.views(),
        cfg,
        family: resolve_family(cfg.family, inst),
        start: Instant::now(),
        sep_time: Duration::ZERO,
        cuts: CutCounts::default(),
        cut_log: Vec::new(),
    };
    let s1 = run_stage1(&mut drv)?;
    Ok(RootBounds { ub1: s1.ub1, lb1: s1.lb1, incumbent: s1.incumbent, rounds: s1.rounds })
}

struct HeapNode {
    bound: f64,
    id: u64,
    fixes: Vec<(usize, bool)>,
}

impl PartialEq for HeapNode {
    fn eq(&self, other: &Self) -> bool {
        self.bound == other.bound && self.id == other.id
    }
}
impl Eq for HeapNode {}
impl PartialOrd for HeapNode {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for HeapNode {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        // Best bound first; older node wins ties.
        self.bound
            .total_cmp(&other.bound)
            .then_with(|| other.id.cmp(&self.id))
    }
}

/// Solves an instance with the configured family. Exact whenever it
/// reports `Optimal`; a time limit yields `Limit` with the proven gap.
pub fn solve(inst: &Instance, cfg: &SolveConfig) -> Result<SolveReport, SolveError> {
    let start = Instant::now();
    let family = resolve_family(cfg.family, inst);
    let mut drv = Driver {
        inst,
        views: inst.views(),
        cfg,
        family,
        start,
        sep_time: Duration::ZERO,
        cuts: CutCounts::default(),
        cut_log: Vec::new(),
    };

    let s1_start = Instant::now();
    let stage1 = run_stage1(&mut drv)?;
    let t1 = s1_start.elapsed().as_secs_f64();

    let mut lb = stage1.lb1;
    let mut best_set = stage1.incumbent.clone();
    let mut ub = stage1.ub1;
    let mut nodes = 0u64;
    let mut status = SolveStatus::Optimal;

    if stage1.hit_limit {
        status = SolveStatus::Limit;
    } else {
        let n = inst.n;
        let mut model = drv.base_lp();
        let mut dedup: HashSet<(usize, CutKind, Vec<usize>)> = HashSet::new();
        for row in &stage1.kept {
            dedup.insert(row.dedup_key());
        }
        // Stage-1 already counted these emissions.
        for row in &stage1.kept {
            drv.install(&mut model, row);
        }

        let mut heap = BinaryHeap::new();
        heap.push(HeapNode { bound: stage1.ub1, id: 0, fixes: Vec::new() });
        let mut next_id = 1u64;
        let mut cur_fix: Vec<Option<bool>> = vec![None; n];

        while let Some(node) = heap.pop() {
            // Best-bound order: the popped bound is a global upper bound.
            ub = lb.max(node.bound);
            if drv.time_up() {
                status = SolveStatus::Limit;
                break;
            }
            if node.bound <= prune_threshold(lb, cfg.gap) {
                break;
            }
            nodes += 1;

            // Rebind variable bounds to this node's fixes.
            let mut target: Vec<Option<bool>> = vec![None; n];
            for &(j, v) in &node.fixes {
                target[j] = Some(v);
            }
            for j in 0..n {
                if cur_fix[j] != target[j] {
                    match target[j] {
                        None => model.unfix(j)?,
                        Some(true) => model.fix(j, 1.0)?,
                        Some(false) => model.fix(j, 0.0)?,
                    }
                    cur_fix[j] = target[j];
                }
            }

            loop {
                let sol = model.solve()?;
                if sol.status == LpStatus::Infeasible {
                    break;
                }
                if sol.status != LpStatus::Optimal {
                    return Err(SolveError::BadLpStatus(sol.status));
                }
                if sol.objective <= prune_threshold(lb, cfg.gap) {
                    break;
                }
                let frac_j = most_fractional(&sol.x[..n]);
                match frac_j {
                    None => {
                        // Integral point: lazy exact separation.
                        let t = Instant::now();
                        let mut fresh: Vec<CutRow> = Vec::new();
                        for i in 0..inst.m {
                            let view = &drv.views[i];
                            let rows = separate_integral(
                                view,
                                sol.x[n + i],
                                &sol.x[..n],
                                kinds_for(drv.family, view.gamma == 1),
                                drv.cfg.integral_tol,
                            )?;
                            for row in rows {
                                if !dedup.contains(&row.dedup_key()) {
                                    fresh.push(row);
                                }
                            }
                        }
                        drv.sep_time += t.elapsed();
                        if fresh.is_empty() {
                            let open: Vec<usize> =
                                (0..n).filter(|&j| sol.x[j] > 0.5).collect();
                            let val = exact_value(inst, &drv.views, &open);
                            if val > lb {
                                lb = val;
                                best_set = open;
                            }
                            break;
                        }
                        for row in fresh {
                            dedup.insert(row.dedup_key());
                            drv.install(&mut model, &row);
                            drv.record(&row);
                        }
                    }
                    Some(j) => {
                        for value in [false, true] {
                            let mut fixes = node.fixes.clone();
                            fixes.push((j, value));
                            heap.push(HeapNode { bound: sol.objective, id: next_id, fixes });
                            next_id += 1;
                        }
                        break;
                    }
                }
            }
        }
        if status == SolveStatus::Optimal && heap.is_empty() {
            ub = lb;
        }
    }

    let nu = exact_value(inst, &drv.views, &best_set);
    let gap_pct = if ub <= lb {
        0.0
    } else if ub.abs() <= 1e-300 {
        0.0
    } else {
        100.0 * (ub - lb) / ub
    };

    Ok(SolveReport {
        family: cfg.family,
        status,
        nu,
        best_set,
        ub,
        lb,
        gap_pct,
        ub1: stage1.ub1,
        lb1: stage1.lb1,
        nodes,
        rounds_stage1: stage1.rounds,
        cuts: drv.cuts,
        t1_seconds: t1,
        ct_seconds: drv.sep_time.as_secs_f64(),
        t_seconds: start.elapsed().as_secs_f64(),
        cut_log: drv.cut_log,
    })
}

fn prune_threshold(lb: f64, gap: f64) -> f64 {
    lb + gap.max(0.0) * lb.abs()
}

/// Index of the variable closest to one half, `None` when the point is
/// integral to 1e-9. Ties break to the smallest index.
fn most_fractional(x: &[f64]) -> Option<usize> {
    let mut best: Option<(usize, f64)> = None;
    for (j, &v) in x.iter().enumerate() {
        let frac = v.min(1.0 - v);
        if frac <= 1e-9 {
            continue;
        }
        let score = (v - 0.5).abs();
        match best {
            Some((_, s)) if s <= score => {}
            _ => best = Some((j, score)),
        }
    }
    best.map(|(j, _)| j)
}

/// Convenience wrapper: the baseline solver with gradient cuts only.
pub fn solve_gbd(inst: &Instance, cfg: &SolveConfig) -> Result<SolveReport, SolveError> {
    let mut cfg = cfg.clone();
    cfg.family = CutFamily::Gbd;
    solve(inst, &cfg)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instance::{generate, GammaMode, GenConfig};
    use crate::oracle::brute_optimum;

    fn ex1_instance() -> Instance {
        Instance::new(
            vec![30.0],
            vec![1.0, 1.0, 1.0],
            vec![vec![5.0, 4.0, 3.0]],
            vec![10.0],
            vec![1],
        )
        .unwrap()
    }

    #[test]
    fn stage1_is_exact_on_the_single_choice_example() {
        let inst = ex1_instance();
        let cfg = SolveConfig { family: CutFamily::Auto, ..Default::default() };
        let rep = solve(&inst, &cfg).unwrap();
        assert_eq!(rep.status, SolveStatus::Optimal);
        assert_eq!(rep.nu, 9.0);
        assert_eq!(rep.best_set, vec![0]);
        // The single-choice rows describe the hull: both stage-1 bounds hit
        // the optimum.
        assert!((rep.ub1 - 9.0).abs() < 1e-6);
        assert!((rep.lb1 - 9.0).abs() < 1e-9);
    }

    #[test]
    fn round_heuristic_thresholds_at_one_half() {
        let inst = ex1_instance();
        let views = inst.views();
        let (s, v) = round_heuristic(&inst, &views, &[0.499, 0.5, 0.1]);
        assert_eq!(s, vec![1]);
        assert!((v - (30.0 * (4.0 / 14.0) - 1.0)).abs() < 1e-12);
        let (s, v) = round_heuristic(&inst, &views, &[0.0, 0.0, 0.0]);
        assert!(s.is_empty());
        assert_eq!(v, 0.0);
        // Binary points are fixed points of the rounding.
        let (s, _) = round_heuristic(&inst, &views, &[1.0, 0.0, 1.0]);
        assert_eq!(s, vec![0, 2]);
    }

    #[test]
    fn zero_utility_customer_contributes_nothing() {
        let inst = Instance::new(
            vec![10.0, 10.0],
            vec![0.5, 0.5],
            vec![vec![0.0, 0.0], vec![3.0, 1.0]],
            vec![1.0, 1.0],
            vec![2, 2],
        )
        .unwrap();
        for family in [CutFamily::Si, CutFamily::Lsi, CutFamily::Gbd] {
            let cfg = SolveConfig { family, ..Default::default() };
            let rep = solve(&inst, &cfg).unwrap();
            let (opt, set) = brute_optimum(&inst).unwrap();
            assert_eq!(rep.nu, opt);
            assert_eq!(rep.best_set, set);
        }
    }

    #[test]
    fn all_paths_match_enumeration_on_small_instances() {
        for seed in 0..8u64 {
            let gammas = [
                GammaMode::Constant(1),
                GammaMode::Constant(2),
                GammaMode::Constant(3),
                GammaMode::Uniform(1, 4),
            ];
            let cfg_gen = GenConfig::new(3, 7, gammas[(seed % 4) as usize], 1000 + seed);
            let mut inst = generate(&cfg_gen).unwrap();
            // Rescale costs so the optimum opens a nontrivial set.
            let scale = inst.b.iter().sum::<f64>() / (2.0 * inst.n as f64);
            for fj in inst.f.iter_mut() {
                *fj = scale * 0.2;
            }
            let (opt, set) = brute_optimum(&inst).unwrap();
            for family in [CutFamily::Si, CutFamily::Lsi, CutFamily::Gbd, CutFamily::Auto] {
                let cfg = SolveConfig { family, ..Default::default() };
                let rep = solve(&inst, &cfg).unwrap();
                assert_eq!(rep.status, SolveStatus::Optimal);
                assert_eq!(
                    exact_value(&inst, &inst.views(), &rep.best_set),
                    exact_value(&inst, &inst.views(), &set),
                    "family {family:?} seed {seed}: got {:?} want {:?} (nu {} vs {})",
                    rep.best_set,
                    set,
                    rep.nu,
                    opt
                );
                assert!(rep.lb <= rep.ub + 1e-9);
                assert!(rep.ub >= opt - 1e-7);
            }
        }
    }

    #[test]
    fn proportional_special_case_matches_enumeration() {
        // Choice limit at n reduces to the proportional rule.
        let cfg_gen = GenConfig::new(2, 6, GammaMode::Constant(6), 321);
        let mut inst = generate(&cfg_gen).unwrap();
        for fj in inst.f.iter_mut() {
            *fj = 20.0;
        }
        let (opt, _) = brute_optimum(&inst).unwrap();
        let rep = solve(&inst, &SolveConfig::default()).unwrap();
        assert!((rep.nu - opt).abs() == 0.0);
    }

    #[test]
    fn reports_are_deterministic_modulo_timing() {
        let cfg_gen = GenConfig::new(4, 6, GammaMode::Uniform(1, 3), 2024);
        let mut inst = generate(&cfg_gen).unwrap();
        for fj in inst.f.iter_mut() {
            *fj = 50.0;
        }
        let cfg = SolveConfig { family: CutFamily::Lsi, ..Default::default() };
        let a = solve(&inst, &cfg).unwrap();
        let b = solve(&inst, &cfg).unwrap();
        let strip = |r: &SolveReport| {
            r.to_json()
                .lines()
                .filter(|l| !l.contains("_seconds"))
                .collect::<Vec<_>>()
                .join("\n")
        };
        assert_eq!(strip(&a), strip(&b));
    }

    #[test]
    fn gap_improvement_reporting() {
        assert_eq!(gap_improvement(100.0, 100.0, 90.0), None);
        let gi = gap_improvement(100.0, 92.0, 90.0).unwrap();
        assert!((gi - 80.0).abs() < 1e-9);
        assert_eq!(gap_improvement(90.0, 90.0, 90.0), None);
    }

    #[test]
    fn bound_ordering_between_families() {
        let cfg_gen = GenConfig::new(5, 8, GammaMode::Constant(2), 777);
        let mut inst = generate(&cfg_gen).unwrap();
        for fj in inst.f.iter_mut() {
            *fj = 30.0;
        }
        let ub = |family| {
            let cfg = SolveConfig { family, ..Default::default() };
            solve(&inst, &cfg).unwrap().ub1
        };
        let (lsi, si, gbd) = (ub(CutFamily::Lsi), ub(CutFamily::Si), ub(CutFamily::Gbd));
        assert!(lsi <= si + 1e-7, "lifted root bound {lsi} vs submodular {si}");
        assert!(si <= gbd + 1e-7, "submodular root bound {si} vs gradient {gbd}");
    }
}
