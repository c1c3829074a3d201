//! Exact solver library for competitive facility location under the limited
//! choice rule: customers split their buying power among their best few open
//! facilities and an outside option, and the task is to choose facilities
//! maximizing revenue minus opening cost.
//!
//! The solver is a two-stage branch-and-cut over an internal LP core.
//! Cutting planes come from the submodularity of the per-customer capture
//! probability: the two classic submodular families, their sequentially
//! lifted (facet-defining) strengthenings computed by a pseudo-polynomial
//! dynamic program, an exact linear-time family for unit choice limits, and
//! a gradient-based baseline for comparison. A brute-force oracle module
//! cross-checks every polyhedral claim at small scale.

pub mod capture;
pub mod cuts;
pub mod instance;
pub mod lifting;
pub mod lp;
pub mod oracle;
pub mod separation;
pub mod solver;

pub use capture::{FacilitySet, TruncationInfo};
pub use cuts::{CutKind, CutRow};
pub use instance::{CustomerView, GammaMode, GenConfig, Instance, InstanceError};
pub use lifting::{CanonicalLift, LiftState};
pub use lp::{LpModel, LpSolution, LpStatus};
pub use solver::{CutCounts, CutFamily, SolveConfig, SolveReport, SolveStatus};
