//! Capture probability of a facility set for one customer: evaluation,
//! top-gamma truncation, and marginal gains. Everything here works in the
//! sorted index space of a [`CustomerView`].

use crate::instance::CustomerView;

/// A set of facilities in sorted index space: strictly increasing indices
/// in `0..n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct FacilitySet(Vec<usize>);

impl FacilitySet {
    /// Builds a set from indices, sorting and deduplicating. Panics if an
    /// index is out of range.
    pub fn new(mut indices: Vec<usize>, n: usize) -> FacilitySet {
        indices.sort_unstable();
        indices.dedup();
        if let Some(&last) = indices.last() {
            assert!(last < n, "facility index {last} out of range (n={n})");
        }
        FacilitySet(indices)
    }

    pub fn empty() -> FacilitySet {
        FacilitySet(Vec::new())
    }

    pub fn full(n: usize) -> FacilitySet {
        FacilitySet((0..n).collect())
    }

    /// All indices except `j`.
    pub fn all_but(n: usize, j: usize) -> FacilitySet {
        FacilitySet((0..n).filter(|&k| k != j).collect())
    }

    /// Decodes a bitmask over `0..n`; bit `k` set means index `k` is in.
    pub fn from_mask(mask: u64, n: usize) -> FacilitySet {
        FacilitySet((0..n).filter(|&k| mask >> k & 1 == 1).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, j: usize) -> bool {
        self.0.binary_search(&j).is_ok()
    }

    pub fn indices(&self) -> &[usize] {
        &self.0
    }

    pub fn with(&self, j: usize) -> FacilitySet {
        let mut v = self.0.clone();
        match v.binary_search(&j) {
            Ok(_) => {}
            Err(pos) => v.insert(pos, j),
        }
        FacilitySet(v)
    }

    pub fn without(&self, j: usize) -> FacilitySet {
        FacilitySet(self.0.iter().copied().filter(|&k| k != j).collect())
    }

    /// Complement within `0..n`.
    pub fn complement(&self, n: usize) -> FacilitySet {
        FacilitySet((0..n).filter(|&k| !self.contains(k)).collect())
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().copied()
    }
}

impl From<FacilitySet> for Vec<usize> {
    fn from(s: FacilitySet) -> Vec<usize> {
        s.0
    }
}

/// Top-gamma truncation of a set: the prefix that actually receives demand.
#[derive(Debug, Clone, PartialEq)]
pub struct TruncationInfo {
    /// Cutoff position: the gamma-th smallest index of the set when the set
    /// has at least gamma elements, otherwise `n` (the zero sentinel).
    pub cutoff: usize,
    /// Utility at the cutoff, zero at the sentinel.
    pub cutoff_utility: f64,
    /// The truncated set: all members at positions up to the cutoff.
    pub truncated: FacilitySet,
    /// Total utility of the truncated set.
    pub mass: f64,
}

impl CustomerView {
    /// Truncation data for `set`.
    pub fn truncate(&self, set: &FacilitySet) -> TruncationInfo {
        let n = self.n();
        let s = set.len();
        let kept = s.min(self.gamma);
        let cutoff = if s <= self.gamma.saturating_sub(1) {
            n
        } else {
            set.indices()[self.gamma - 1]
        };
        let truncated = FacilitySet(set.indices()[..kept].to_vec());
        // fold from +0.0: the empty sum must not be the negative zero.
        let mass: f64 = truncated.iter().map(|k| self.u[k]).fold(0.0, |a, b| a + b);
        TruncationInfo { cutoff, cutoff_utility: self.util(cutoff), truncated, mass }
    }

    /// Capture probability of `set`: the fraction of the customer's demand
    /// attracted by its top-gamma members against the outside option.
    /// Always in `[0, 1)`.
    pub fn phi(&self, set: &FacilitySet) -> f64 {
        let mass = self.truncate(set).mass;
        mass / (mass + self.u0)
    }

    /// Marginal gain of adding facility `j` to `set`. Panics if `j` is
    /// already in the set. Equals `phi(set + j) - phi(set)` identically.
    pub fn rho(&self, set: &FacilitySet, j: usize) -> f64 {
        assert!(!set.contains(j), "marginal gain requires j not in the set (j={j})");
        let tr = self.truncate(set);
        let gain = (self.util(j) - tr.cutoff_utility).max(0.0);
        self.u0 * gain / ((tr.mass + gain + self.u0) * (tr.mass + self.u0))
    }

    /// Marginal gain of `j` with respect to every other facility being open.
    /// This is the smallest marginal `j` can have.
    pub fn rho_min(&self, j: usize) -> f64 {
        self.rho(&FacilitySet::all_but(self.n(), j), j)
    }

    /// Marginal gain of `j` on the empty set, the largest marginal.
    pub fn rho_max(&self, j: usize) -> f64 {
        self.rho(&FacilitySet::empty(), j)
    }
}
