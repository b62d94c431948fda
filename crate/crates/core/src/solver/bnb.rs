//! Depth-first branch and bound over vertex labels: the generic fallback
//! for digraphs without product structure.
//!
//! Vertices are decided in id order, labels tried 0, 1, 2, so complete
//! assignments appear in lexicographic order. Constraint propagation keeps,
//! per vertex, the label sum of its decided in-neighbors and the count of
//! undecided ones; a decided 0 whose in-sum can no longer reach 2 kills the
//! branch immediately. Two sound bounds prune the rest:
//!
//! * demand: decided 0s still short of in-sum 2 need the difference
//!   supplied by undecided in-neighbors, and one unit of label supplies at
//!   most `max_out_degree` of it;
//! * coverage: every undecided vertex needs 2 units (own label counted
//!   double, or in-supply), undecided weight `w` provides at most
//!   `(2 + max_out_degree) * w` of that, and decided vertices have already
//!   contributed their arcs into the undecided region.
//!
//! The parallel variant splits the tree at depth 2 into 9 fixed-prefix
//! subtrees sharing an atomic incumbent. Subtrees prune only strictly worse
//! branches against the shared incumbent, so a branch containing an optimum
//! is never cut by another worker and the merged (weight, prefix, witness)
//! is the same as the sequential result.

use std::sync::atomic::{AtomicU32, AtomicU64, Ordering};
use std::time::Instant;

#[cfg(feature = "parallel")]
use rayon::prelude::*;

use crate::digraph::Digraph;
use crate::error::{Error, Result};
use crate::idf::{self, Labeling};
use crate::solver::{
    checked_result, Progress, ProgressEvent, SolveMethod, SolveResult, SolveStats, SolverConfig,
};

const PROGRESS_INTERVAL: u64 = 1 << 16;

pub fn solve_branch_and_bound(d: &Digraph, config: &SolverConfig) -> Result<SolveResult> {
    solve_branch_and_bound_with(d, config, &())
}

pub fn solve_branch_and_bound_with(
    d: &Digraph,
    config: &SolverConfig,
    progress: &dyn Progress,
) -> Result<SolveResult> {
    run(d, config, progress, cfg!(feature = "parallel"))
}

/// Single-threaded variant, available regardless of the `parallel` feature.
pub fn solve_branch_and_bound_seq(d: &Digraph, config: &SolverConfig) -> Result<SolveResult> {
    run(d, config, &(), false)
}

fn run(
    d: &Digraph,
    config: &SolverConfig,
    progress: &dyn Progress,
    parallel: bool,
) -> Result<SolveResult> {
    let order = d.order();
    if order > config.max_bnb_order {
        return Err(Error::CapExceeded {
            what: "branch-and-bound order",
            requested: order,
            limit: config.max_bnb_order,
            flag: "SolverConfig::max_bnb_order",
        });
    }
    let start = Instant::now();

    // degree short-circuit: gamma equals the order, no search needed
    if idf::order_upper_bound_is_tight(d) {
        let witness = Labeling::constant(order, 1)?;
        let stats = SolveStats {
            nodes_expanded: 0,
            elapsed: start.elapsed(),
        };
        return checked_result(d, order as u32, witness, SolveMethod::BranchAndBound, stats);
    }

    let incumbent = AtomicU32::new(order as u32 + 1);
    let nodes = AtomicU64::new(0);
    let ctx = Context {
        digraph: d,
        order,
        max_out_degree: d.max_out_degree() as u32,
        incumbent: &incumbent,
        nodes: &nodes,
        progress,
    };

    let best = if parallel && order >= 2 {
        #[cfg(feature = "parallel")]
        {
            search_parallel(&ctx)
        }
        #[cfg(not(feature = "parallel"))]
        {
            unreachable!("parallel search requested without the parallel feature")
        }
    } else {
        let mut state = State::new(&ctx, true);
        state.dfs(&ctx);
        state.flush_nodes(&ctx);
        state.best
    };

    let (gamma, labels) = best.expect("the all-ones labeling is always feasible");
    let stats = SolveStats {
        nodes_expanded: nodes.load(Ordering::Relaxed),
        elapsed: start.elapsed(),
    };
    checked_result(
        d,
        gamma,
        Labeling::new(labels)?,
        SolveMethod::BranchAndBound,
        stats,
    )
}

#[cfg(feature = "parallel")]
fn search_parallel(ctx: &Context) -> Option<(u32, Vec<u8>)> {
    let results: Vec<Option<(u32, Vec<u8>)>> = (0usize..9)
        .into_par_iter()
        .map(|prefix| {
            let (l0, l1) = ((prefix / 3) as u8, (prefix % 3) as u8);
            let mut state = State::new(ctx, false);
            if state.apply(ctx, 0, l0) && state.apply(ctx, 1, l1) {
                if state.depth == ctx.order {
                    state.record_if_better(ctx);
                } else if !state.should_cut(ctx) {
                    state.dfs(ctx);
                }
            }
            state.flush_nodes(ctx);
            state.best
        })
        .collect();
    // prefix order is lexicographic order, so the first-seen optimum wins ties
    results.into_iter().flatten().min_by_key(|(w, _)| *w)
}

struct Context<'a> {
    digraph: &'a Digraph,
    order: usize,
    max_out_degree: u32,
    incumbent: &'a AtomicU32,
    nodes: &'a AtomicU64,
    progress: &'a dyn Progress,
}

struct State {
    labels: Vec<u8>,
    depth: usize,
    weight: u32,
    /// Per vertex: label sum over its decided in-neighbors.
    in_sum: Vec<u32>,
    /// Per vertex: number of still-undecided in-neighbors.
    undecided_in: Vec<u32>,
    /// Total residual demand of decided 0s that still have undecided
    /// in-neighbors.
    demand: u32,
    /// Sum of `in_sum` over undecided vertices: supply already flowing from
    /// decided labels into the undecided region.
    external_supply: u32,
    /// Pruning an equal-weight branch is fine sequentially (its optima are
    /// lexicographically later) but must not happen against the shared
    /// incumbent in parallel mode.
    allow_equal_prune: bool,
    local_nodes: u64,
    best: Option<(u32, Vec<u8>)>,
}

fn residual(in_sum: u32) -> u32 {
    2u32.saturating_sub(in_sum)
}

impl State {
    fn new(ctx: &Context, allow_equal_prune: bool) -> Self {
        let order = ctx.order;
        Self {
            labels: vec![0; order],
            depth: 0,
            weight: 0,
            in_sum: vec![0; order],
            undecided_in: (0..order).map(|v| ctx.digraph.in_degree(v) as u32).collect(),
            demand: 0,
            external_supply: 0,
            allow_equal_prune,
            local_nodes: 0,
            best: None,
        }
    }

    /// Decides vertex `k` (the current depth) with `label`, updating all
    /// incremental tallies. Returns false when some decided 0 can no longer
    /// be dominated; bookkeeping completes either way so `undo` stays
    /// unconditional.
    fn apply(&mut self, ctx: &Context, k: usize, label: u8) -> bool {
        debug_assert_eq!(k, self.depth);
        let label_value = u32::from(label);
        self.labels[k] = label;
        self.weight += label_value;
        let mut feasible = true;
        if label == 0 {
            if self.undecided_in[k] == 0 {
                if self.in_sum[k] < 2 {
                    feasible = false;
                }
            } else {
                self.demand += residual(self.in_sum[k]);
            }
        }
        self.external_supply -= self.in_sum[k];
        for &w in ctx.digraph.out_neighbors(k) {
            self.undecided_in[w] -= 1;
            if w < k {
                if self.labels[w] == 0 {
                    let old = residual(self.in_sum[w]);
                    self.in_sum[w] += label_value;
                    let new = residual(self.in_sum[w]);
                    if self.undecided_in[w] == 0 {
                        self.demand -= old;
                        if new > 0 {
                            feasible = false;
                        }
                    } else {
                        self.demand = self.demand + new - old;
                    }
                } else {
                    self.in_sum[w] += label_value;
                }
            } else {
                self.in_sum[w] += label_value;
                self.external_supply += label_value;
            }
        }
        self.depth += 1;
        feasible
    }

    fn undo(&mut self, ctx: &Context, k: usize, label: u8) {
        let label_value = u32::from(label);
        self.depth -= 1;
        for &w in ctx.digraph.out_neighbors(k) {
            if w < k {
                if self.labels[w] == 0 {
                    if self.undecided_in[w] == 0 {
                        self.in_sum[w] -= label_value;
                        self.demand += residual(self.in_sum[w]);
                    } else {
                        let new = residual(self.in_sum[w]);
                        self.in_sum[w] -= label_value;
                        let old = residual(self.in_sum[w]);
                        self.demand = self.demand + old - new;
                    }
                } else {
                    self.in_sum[w] -= label_value;
                }
            } else {
                self.in_sum[w] -= label_value;
                self.external_supply -= label_value;
            }
            self.undecided_in[w] += 1;
        }
        self.external_supply += self.in_sum[k];
        if label == 0 && self.undecided_in[k] > 0 {
            self.demand -= residual(self.in_sum[k]);
        }
        self.weight -= label_value;
    }

    fn local_best_weight(&self) -> u32 {
        self.best.as_ref().map_or(u32::MAX, |(w, _)| *w)
    }

    /// Weight the undecided remainder must still add, by the stronger of
    /// the demand and coverage arguments.
    fn remainder_bound(&self, ctx: &Context) -> u32 {
        let dplus = ctx.max_out_degree;
        let demand_bound = if self.demand == 0 {
            0
        } else {
            self.demand.div_ceil(dplus.max(1))
        };
        let undecided = (ctx.order - self.depth) as u32;
        let uncovered = (2 * undecided).saturating_sub(self.external_supply);
        let coverage_bound = uncovered.div_ceil(2 + dplus);
        demand_bound.max(coverage_bound)
    }

    fn should_cut(&self, ctx: &Context) -> bool {
        let bound = self.weight + self.remainder_bound(ctx);
        if bound >= self.local_best_weight() {
            return true;
        }
        let incumbent = ctx.incumbent.load(Ordering::Relaxed);
        if self.allow_equal_prune {
            bound >= incumbent
        } else {
            bound > incumbent
        }
    }

    fn record_if_better(&mut self, ctx: &Context) {
        if self.weight < self.local_best_weight() {
            self.best = Some((self.weight, self.labels.clone()));
            ctx.incumbent.fetch_min(self.weight, Ordering::Relaxed);
        }
    }

    fn count_node(&mut self, ctx: &Context) {
        self.local_nodes += 1;
        if self.local_nodes == PROGRESS_INTERVAL {
            self.flush_nodes(ctx);
        }
    }

    fn flush_nodes(&mut self, ctx: &Context) {
        if self.local_nodes == 0 {
            return;
        }
        let total = ctx.nodes.fetch_add(self.local_nodes, Ordering::Relaxed) + self.local_nodes;
        self.local_nodes = 0;
        let seen = ctx.incumbent.load(Ordering::Relaxed);
        ctx.progress.report(ProgressEvent {
            states_expanded: total,
            incumbent: (seen <= ctx.order as u32).then_some(seen),
        });
    }

    fn dfs(&mut self, ctx: &Context) {
        let k = self.depth;
        for label in 0..=2u8 {
            self.count_node(ctx);
            if self.apply(ctx, k, label) {
                if self.depth == ctx.order {
                    self.record_if_better(ctx);
                } else if !self.should_cut(ctx) {
                    self.dfs(ctx);
                }
            }
            self.undo(ctx, k, label);
        }
    }
}
