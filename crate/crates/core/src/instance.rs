//! Problem data: instances, per-customer sorted views, random generation,
//! and the plain-text instance file format.

use std::fmt::Write as _;
use std::path::Path;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

/// A competitive facility location instance under the limited choice rule.
///
/// `m` customers split their buying power among their top-`gamma[i]` open
/// facilities (by utility) and an outside option with utility `u0[i]`.
#[derive(Debug, Clone, PartialEq)]
pub struct Instance {
    /// Number of customers.
    pub m: usize,
    /// Number of candidate facilities.
    pub n: usize,
    /// Buying power per customer, positive.
    pub b: Vec<f64>,
    /// Fixed opening cost per facility, nonnegative.
    pub f: Vec<f64>,
    /// Utility matrix, `u[i][j] >= 0`.
    pub u: Vec<Vec<f64>>,
    /// Outside-option utility per customer, strictly positive.
    pub u0: Vec<f64>,
    /// Choice limit per customer, at least 1.
    pub gamma: Vec<usize>,
}

#[derive(Debug, Error, PartialEq)]
pub enum InstanceError {
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("buying power must be positive (customer {0})")]
    BuyingPower(usize),
    #[error("fixed cost must be nonnegative and finite (facility {0})")]
    FixedCost(usize),
    #[error("utility must be nonnegative and finite (customer {0}, facility {1})")]
    Utility(usize, usize),
    #[error("outside utility must be positive (customer {0})")]
    OutsideUtility(usize),
    #[error("choice limit must be at least 1 (customer {0})")]
    Gamma(usize),
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("io error: {0}")]
    Io(String),
    #[error("generator failed: {0}")]
    Generate(String),
}

impl Instance {
    /// Validates all field invariants and assembles an instance.
    pub fn new(
        b: Vec<f64>,
        f: Vec<f64>,
        u: Vec<Vec<f64>>,
        u0: Vec<f64>,
        gamma: Vec<usize>,
    ) -> Result<Self, InstanceError> {
        let m = b.len();
        let n = f.len();
        if u.len() != m || u0.len() != m || gamma.len() != m {
            return Err(InstanceError::Dimension(format!(
                "expected {m} customer rows, got u={}, u0={}, gamma={}",
                u.len(),
                u0.len(),
                gamma.len()
            )));
        }
        for (i, row) in u.iter().enumerate() {
            if row.len() != n {
                return Err(InstanceError::Dimension(format!(
                    "utility row {i} has {} entries, expected {n}",
                    row.len()
                )));
            }
        }
        for (i, &bi) in b.iter().enumerate() {
            if !(bi > 0.0) || !bi.is_finite() {
                return Err(InstanceError::BuyingPower(i));
            }
        }
        for (j, &fj) in f.iter().enumerate() {
            if !(fj >= 0.0) || !fj.is_finite() {
                return Err(InstanceError::FixedCost(j));
            }
        }
        for (i, row) in u.iter().enumerate() {
            for (j, &uij) in row.iter().enumerate() {
                if !(uij >= 0.0) || !uij.is_finite() {
                    return Err(InstanceError::Utility(i, j));
                }
            }
        }
        for (i, &v) in u0.iter().enumerate() {
            if !(v > 0.0) || !v.is_finite() {
                return Err(InstanceError::OutsideUtility(i));
            }
        }
        for (i, &g) in gamma.iter().enumerate() {
            if g < 1 {
                return Err(InstanceError::Gamma(i));
            }
        }
        Ok(Instance { m, n, b, f, u, u0, gamma })
    }

    /// Sorted per-customer view; fails on an out-of-range customer index.
    pub fn view(&self, i: usize) -> Result<CustomerView, InstanceError> {
        if i >= self.m {
            return Err(InstanceError::Dimension(format!(
                "customer index {i} out of range (m={})",
                self.m
            )));
        }
        Ok(CustomerView::build(self, i))
    }

    /// Views for all customers, in customer order.
    pub fn views(&self) -> Vec<CustomerView> {
        (0..self.m).map(|i| CustomerView::build(self, i)).collect()
    }

    /// True when every customer has choice limit 1.
    pub fn all_gamma_one(&self) -> bool {
        self.gamma.iter().all(|&g| g == 1)
    }

    /// Total fixed cost of a set of facilities (original indices).
    pub fn open_cost(&self, open: &[usize]) -> f64 {
        open.iter().map(|&j| self.f[j]).sum()
    }
}

/// One customer's data with facilities relabeled in nonincreasing utility
/// order. All cut arithmetic happens in this sorted index space; results are
/// mapped back to original facility ids only when a cut row is emitted.
#[derive(Debug, Clone)]
pub struct CustomerView {
    /// Customer index in the owning instance.
    pub customer: usize,
    /// `perm[k]` is the original facility id at sorted position `k`.
    /// Ties are broken by ascending original index.
    pub perm: Vec<usize>,
    /// Utilities in nonincreasing order; `u[perm[k]]` for position `k`.
    pub u: Vec<f64>,
    /// Outside-option utility, positive.
    pub u0: f64,
    /// Effective choice limit, `min(gamma_i, n)`.
    pub gamma: usize,
}

impl CustomerView {
    fn build(inst: &Instance, i: usize) -> CustomerView {
        let n = inst.n;
        let mut perm: Vec<usize> = (0..n).collect();
        perm.sort_by(|&a, &b| {
            inst.u[i][b].partial_cmp(&inst.u[i][a]).unwrap().then(a.cmp(&b))
        });
        let u = perm.iter().map(|&j| inst.u[i][j]).collect();
        CustomerView {
            customer: i,
            perm,
            u,
            u0: inst.u0[i],
            gamma: inst.gamma[i].min(n.max(1)),
        }
    }

    /// Number of facilities.
    pub fn n(&self) -> usize {
        self.u.len()
    }

    /// Utility at sorted position `k`, with the empty-tail convention that
    /// every position past the last facility has utility zero.
    pub fn util(&self, k: usize) -> f64 {
        if k < self.u.len() {
            self.u[k]
        } else {
            0.0
        }
    }

    /// Maps a point over original facility ids into sorted index space.
    pub fn to_sorted(&self, x_original: &[f64]) -> Vec<f64> {
        self.perm.iter().map(|&j| x_original[j]).collect()
    }
}

/// How per-customer choice limits are drawn by the generator.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GammaMode {
    /// Every customer gets the same limit.
    Constant(usize),
    /// Uniform integer in `lo..=hi` per customer. The non-homogeneous
    /// benchmark setting is `Uniform(1, 5)`.
    Uniform(usize, usize),
}

/// Configuration for the random instance generator.
///
/// Customers and facilities are placed uniformly on a square; utilities
/// follow the gravity rule `u_ij = 1 / d_ij^2` with the outside option at a
/// fixed reference distance.
#[derive(Debug, Clone, PartialEq)]
pub struct GenConfig {
    pub m: usize,
    pub n: usize,
    pub gamma: GammaMode,
    pub seed: u64,
    /// Side length of the coordinate square.
    pub coord_max: f64,
    /// Fixed cost applied to every facility.
    pub fixed_cost: f64,
    /// Inclusive integer range for buying powers.
    pub buying_power: (u64, u64),
    /// Distance defining the outside-option utility `1 / d^2`.
    pub outside_distance: f64,
}

impl GenConfig {
    pub fn new(m: usize, n: usize, gamma: GammaMode, seed: u64) -> Self {
        GenConfig {
            m,
            n,
            gamma,
            seed,
            coord_max: 1000.0,
            fixed_cost: 2000.0,
            buying_power: (10, 1000),
            outside_distance: 50.0,
        }
    }

    fn validate(&self) -> Result<(), InstanceError> {
        if self.m == 0 || self.n == 0 {
            return Err(InstanceError::Generate("m and n must be positive".into()));
        }
        if self.buying_power.0 == 0 || self.buying_power.0 > self.buying_power.1 {
            return Err(InstanceError::Generate("empty buying-power range".into()));
        }
        if !(self.coord_max > 0.0) || !(self.outside_distance > 0.0) {
            return Err(InstanceError::Generate("ranges must be positive".into()));
        }
        match self.gamma {
            GammaMode::Constant(k) if k >= 1 => Ok(()),
            GammaMode::Uniform(lo, hi) if lo >= 1 && lo <= hi => Ok(()),
            _ => Err(InstanceError::Generate("choice-limit range must start at 1 or above".into())),
        }
    }
}

/// Generates a random instance. Deterministic for a fixed config: the stream
/// is a ChaCha8 generator seeded with `cfg.seed`, consumed in the order
/// customer coordinates, facility coordinates, buying powers, choice limits.
///
/// A facility drawn onto a customer point (distance zero) is redrawn, at
/// most 100 times, so that the gravity utility is always finite.
pub fn generate(cfg: &GenConfig) -> Result<Instance, InstanceError> {
    cfg.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let side = cfg.coord_max;

    let customers: Vec<(f64, f64)> =
        (0..cfg.m).map(|_| (rng.gen_range(0.0..side), rng.gen_range(0.0..side))).collect();

    let mut facilities: Vec<(f64, f64)> = Vec::with_capacity(cfg.n);
    for j in 0..cfg.n {
        let mut placed = false;
        for _ in 0..100 {
            let p = (rng.gen_range(0.0..side), rng.gen_range(0.0..side));
            if customers.iter().all(|c| dist(*c, p) > 0.0) {
                facilities.push(p);
                placed = true;
                break;
            }
        }
        if !placed {
            return Err(InstanceError::Generate(format!(
                "could not place facility {j} away from all customers"
            )));
        }
    }

    let b: Vec<f64> = (0..cfg.m)
        .map(|_| rng.gen_range(cfg.buying_power.0..=cfg.buying_power.1) as f64)
        .collect();

    let gamma: Vec<usize> = match cfg.gamma {
        GammaMode::Constant(k) => vec![k; cfg.m],
        GammaMode::Uniform(lo, hi) => (0..cfg.m).map(|_| rng.gen_range(lo..=hi)).collect(),
    };

    let u0 = vec![gravity_utility(cfg.outside_distance); cfg.m];
    let f = vec![cfg.fixed_cost; cfg.n];
    let u: Vec<Vec<f64>> = customers
        .iter()
        .map(|&c| facilities.iter().map(|&p| gravity_utility(dist(c, p))).collect())
        .collect();

    Instance::new(b, f, u, u0, gamma)
}

/// Gravity attraction law: utility decays with the squared distance.
pub fn gravity_utility(d: f64) -> f64 {
    1.0 / (d * d)
}

fn dist(a: (f64, f64), b: (f64, f64)) -> f64 {
    ((a.0 - b.0).powi(2) + (a.1 - b.1).powi(2)).sqrt()
}

/// Serializes an instance in the line-oriented text format.
///
/// ```text
/// cflp 1
/// m n
/// b_1 ... b_m
/// f_1 ... f_n
/// gamma_1 ... gamma_m
/// u0_1 ... u0_m
/// u_11 ... u_1n        (one line per customer)
/// ```
///
/// Values are whitespace separated; `#` starts a comment. Floats are written
/// as the shortest decimal that round-trips the binary value, so
/// `write` followed by `read` reproduces the instance exactly.
pub fn to_text(inst: &Instance) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "cflp 1");
    let _ = writeln!(s, "{} {}", inst.m, inst.n);
    let _ = writeln!(s, "{}", join(&inst.b));
    let _ = writeln!(s, "{}", join(&inst.f));
    let _ = writeln!(
        s,
        "{}",
        inst.gamma.iter().map(|g| g.to_string()).collect::<Vec<_>>().join(" ")
    );
    let _ = writeln!(s, "{}", join(&inst.u0));
    for row in &inst.u {
        let _ = writeln!(s, "{}", join(row));
    }
    s
}

fn join(v: &[f64]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
}

/// Parses the text format produced by [`to_text`].
pub fn from_text(text: &str) -> Result<Instance, InstanceError> {
    let mut tokens: Vec<(usize, &str)> = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("");
        for tok in line.split_whitespace() {
            tokens.push((lineno + 1, tok));
        }
    }
    let mut pos = 0usize;
    let mut next = |what: &str| -> Result<(usize, &str), InstanceError> {
        let t = tokens.get(pos).copied().ok_or_else(|| InstanceError::Parse {
            line: tokens.last().map(|t| t.0).unwrap_or(0),
            msg: format!("unexpected end of file while reading {what}"),
        })?;
        pos += 1;
        Ok(t)
    };

    let (line, magic) = next("header")?;
    if magic != "cflp" {
        return Err(InstanceError::Parse { line, msg: format!("expected header 'cflp', got '{magic}'") });
    }
    let (line, version) = next("format version")?;
    if version != "1" {
        return Err(InstanceError::Parse { line, msg: format!("unsupported format version '{version}'") });
    }

    let m = parse_usize(next("customer count")?, "customer count")?;
    let n = parse_usize(next("facility count")?, "facility count")?;

    let mut b = Vec::with_capacity(m);
    for i in 0..m {
        b.push(parse_f64(next("buying power")?, &format!("buying power of customer {i}"))?);
    }
    let mut f = Vec::with_capacity(n);
    for j in 0..n {
        f.push(parse_f64(next("fixed cost")?, &format!("fixed cost of facility {j}"))?);
    }
    let mut gamma = Vec::with_capacity(m);
    for i in 0..m {
        gamma.push(parse_usize(next("choice limit")?, &format!("choice limit of customer {i}"))?);
    }
    let mut u0 = Vec::with_capacity(m);
    for i in 0..m {
        u0.push(parse_f64(next("outside utility")?, &format!("outside utility of customer {i}"))?);
    }
    let mut u = Vec::with_capacity(m);
    for i in 0..m {
        let mut row = Vec::with_capacity(n);
        for j in 0..n {
            row.push(parse_f64(next("utility")?, &format!("utility of customer {i}, facility {j}"))?);
        }
        u.push(row);
    }
    if pos != tokens.len() {
        let (line, tok) = tokens[pos];
        return Err(InstanceError::Parse { line, msg: format!("trailing data '{tok}'") });
    }
    Instance::new(b, f, u, u0, gamma)
}

fn parse_usize((line, tok): (usize, &str), what: &str) -> Result<usize, InstanceError> {
    tok.parse().map_err(|_| InstanceError::Parse { line, msg: format!("invalid {what}: '{tok}'") })
}

fn parse_f64((line, tok): (usize, &str), what: &str) -> Result<f64, InstanceError> {
    tok.parse().map_err(|_| InstanceError::Parse { line, msg: format!("invalid {what}: '{tok}'") })
}

/// Reads an instance file from disk.
pub fn read(path: &Path) -> Result<Instance, InstanceError> {
    let text = std::fs::read_to_string(path).map_err(|e| InstanceError::Io(e.to_string()))?;
    from_text(&text)
}

/// Writes an instance file to disk.
pub fn write(inst: &Instance, path: &Path) -> Result<(), InstanceError> {
    std::fs::write(path, to_text(inst)).map_err(|e| InstanceError::Io(e.to_string()))
}
