//! Exact gamma_I solvers.
//!
//! Three engines, one dispatcher:
//!
//! * [`solve_brute_force`] — lexicographic scan of all `3^order` labelings;
//! * [`solve_profile_dp`] — min-plus transfer-matrix DP over column
//!   profiles of cycle products;
//! * [`solve_branch_and_bound`] — label DFS with demand/coverage pruning
//!   for arbitrary digraphs;
//! * [`solve_instance`] / [`solve_digraph`] — pick the cheapest applicable
//!   method, preferring verified closed-form certificates.
//!
//! Every result's witness is re-verified before it is returned, whatever
//! the method. Solvers share no mutable state; concurrent solves of
//! different instances are safe.

use std::time::{Duration, Instant};

use crate::constructions;
use crate::digraph::{Digraph, ProductInstance};
use crate::error::{Error, Result};
use crate::idf::{self, Labeling};

pub mod minplus;

mod bnb;
mod brute;
mod transfer;

pub use bnb::{solve_branch_and_bound, solve_branch_and_bound_seq, solve_branch_and_bound_with};
pub use brute::{solve_brute_force, solve_brute_force_seq, solve_brute_force_with};
pub use transfer::{
    build_transfer_system, solve_profile_dp, solve_profile_dp_with, state_digit, state_weight,
    TransferSystem,
};

/// Size caps keeping every solver at desk scale. All are configuration, not
/// correctness: raise them and the same code runs longer.
#[derive(Debug, Clone)]
pub struct SolverConfig {
    /// Largest order brute force will enumerate (3^order labelings).
    pub max_brute_order: usize,
    /// Largest column height for the transfer DP (3^rows states).
    pub max_dp_rows: usize,
    /// Largest order for branch and bound.
    pub max_bnb_order: usize,
}

impl Default for SolverConfig {
    fn default() -> Self {
        Self {
            max_brute_order: 16,
            max_dp_rows: 6,
            max_bnb_order: 24,
        }
    }
}

/// Which engine produced a result.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SolveMethod {
    BruteForce,
    ProfileDp,
    BranchAndBound,
    ClosedForm,
}

impl SolveMethod {
    pub fn as_str(self) -> &'static str {
        match self {
            SolveMethod::BruteForce => "brute-force",
            SolveMethod::ProfileDp => "profile-dp",
            SolveMethod::BranchAndBound => "branch-and-bound",
            SolveMethod::ClosedForm => "closed-form",
        }
    }
}

impl std::fmt::Display for SolveMethod {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, Default)]
pub struct SolveStats {
    /// Labelings scanned, search nodes, or DP state expansions, depending
    /// on the method.
    pub nodes_expanded: u64,
    pub elapsed: Duration,
}

/// An exact value with its witness: `weight(witness) == gamma` and the
/// witness passes the verifier (checked on construction for every method).
#[derive(Debug, Clone)]
pub struct SolveResult {
    pub gamma: u32,
    pub witness: Labeling,
    pub method: SolveMethod,
    pub stats: SolveStats,
}

/// Snapshot emitted by solvers as they work.
#[derive(Debug, Clone, Copy)]
pub struct ProgressEvent {
    pub states_expanded: u64,
    pub incumbent: Option<u32>,
}

/// Observer hook for long-running solves. `()` ignores everything, and any
/// `Fn(ProgressEvent) + Sync` closure works directly.
pub trait Progress: Sync {
    fn report(&self, event: ProgressEvent);
}

impl Progress for () {
    fn report(&self, _: ProgressEvent) {}
}

impl<F: Fn(ProgressEvent) + Sync> Progress for F {
    fn report(&self, event: ProgressEvent) {
        self(event)
    }
}

/// Final gate every solver exits through: the witness must verify at
/// exactly the claimed weight.
pub(crate) fn checked_result(
    d: &Digraph,
    gamma: u32,
    witness: Labeling,
    method: SolveMethod,
    stats: SolveStats,
) -> Result<SolveResult> {
    if witness.weight() != gamma {
        return Err(Error::WitnessInvalid(format!(
            "{method} claimed gamma {gamma} but the witness weighs {}",
            witness.weight()
        )));
    }
    if let Some(v) = idf::first_undominated(d, &witness)? {
        return Err(Error::WitnessInvalid(format!(
            "{method} witness leaves vertex {v} undominated"
        )));
    }
    Ok(SolveResult {
        gamma,
        witness,
        method,
        stats,
    })
}

/// Exact gamma_I for a cycle product: a verified closed-form certificate
/// when the instance is covered, the profile DP otherwise, then branch and
/// bound and brute force as fallbacks. Refusals of every engine are
/// collected into one error.
pub fn solve_instance(inst: &ProductInstance, config: &SolverConfig) -> Result<SolveResult> {
    solve_instance_with(inst, config, &())
}

pub fn solve_instance_with(
    inst: &ProductInstance,
    config: &SolverConfig,
    progress: &dyn Progress,
) -> Result<SolveResult> {
    if let Some(gamma) = constructions::closed_form_gamma(inst) {
        let start = Instant::now();
        let cert = constructions::certificate_for(inst)?
            .expect("every closed-form case has a construction");
        debug_assert_eq!(cert.claimed_weight, gamma);
        let stats = SolveStats {
            nodes_expanded: 0,
            elapsed: start.elapsed(),
        };
        return checked_result(
            &inst.digraph(),
            gamma,
            cert.labeling,
            SolveMethod::ClosedForm,
            stats,
        );
    }

    let mut refusals = Vec::new();
    match solve_profile_dp_with(inst, config, progress) {
        Err(e @ Error::CapExceeded { .. }) => refusals.push(format!("profile-dp: {e}")),
        other => return other,
    }
    let d = inst.digraph();
    match solve_branch_and_bound_with(&d, config, progress) {
        Err(e @ Error::CapExceeded { .. }) => refusals.push(format!("branch-and-bound: {e}")),
        other => return other,
    }
    match solve_brute_force_with(&d, config, progress) {
        Err(e @ Error::CapExceeded { .. }) => refusals.push(format!("brute-force: {e}")),
        other => return other,
    }
    Err(Error::SolversRefused(refusals.join("; ")))
}

/// How small a digraph must be before plain brute force beats setting up
/// the branch-and-bound machinery.
const BRUTE_FIRST_MAX_ORDER: usize = 10;

/// Exact gamma_I for an arbitrary digraph. Digraphs with max in- and
/// out-degree at most 1 are answered immediately (gamma equals the order);
/// everything else goes to brute force or branch and bound by size.
pub fn solve_digraph(d: &Digraph, config: &SolverConfig) -> Result<SolveResult> {
    solve_digraph_with(d, config, &())
}

pub fn solve_digraph_with(
    d: &Digraph,
    config: &SolverConfig,
    progress: &dyn Progress,
) -> Result<SolveResult> {
    if idf::order_upper_bound_is_tight(d) {
        let start = Instant::now();
        let witness = Labeling::constant(d.order(), 1)?;
        let stats = SolveStats {
            nodes_expanded: 0,
            elapsed: start.elapsed(),
        };
        return checked_result(d, d.order() as u32, witness, SolveMethod::ClosedForm, stats);
    }

    let mut refusals = Vec::new();
    if d.order() <= BRUTE_FIRST_MAX_ORDER {
        match solve_brute_force_with(d, config, progress) {
            Err(e @ Error::CapExceeded { .. }) => refusals.push(format!("brute-force: {e}")),
            other => return other,
        }
    }
    match solve_branch_and_bound_with(d, config, progress) {
        Err(e @ Error::CapExceeded { .. }) => refusals.push(format!("branch-and-bound: {e}")),
        other => return other,
    }
    match solve_brute_force_with(d, config, progress) {
        Err(e @ Error::CapExceeded { .. }) => {
            if d.order() > BRUTE_FIRST_MAX_ORDER {
                refusals.push(format!("brute-force: {e}"));
            }
        }
        other => return other,
    }
    Err(Error::SolversRefused(refusals.join("; ")))
}
