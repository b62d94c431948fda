//! Column-profile transfer system for cycle products.
//!
//! A state is one column's label vector, encoded base-3 (digit `i` = label
//! of row `i`). A transition `s -> t` is feasible when every 0-labeled row
//! of the entering column `t` is dominated given the previous column `s`,
//! and costs the label sum of `t`, so each column is charged exactly once,
//! on entry. gamma_I of the product is then the cheapest closed walk of
//! length `n` in this system: walking `u_0 -> u_1 -> ... -> u_n = u_0` and
//! reading column `k` off `u_k` checks every column once, including both
//! cyclic wrap constraints (column 1 against column n as its predecessor,
//! column n as the final step's target).

use std::time::Instant;

use crate::digraph::{ProductInstance, ProductKind};
use crate::error::{Error, Result};
use crate::idf::{self, Labeling};
use crate::solver::minplus::{Cost, MinPlusMatrix, INFINITY};
use crate::solver::{
    checked_result, Progress, ProgressEvent, SolveMethod, SolveResult, SolveStats, SolverConfig,
};

/// Label of row `i` in state `s`.
pub fn state_digit(s: usize, i: usize) -> u8 {
    ((s / 3usize.pow(i as u32)) % 3) as u8
}

/// Sum of a state's base-3 digits: the weight charged on entering it.
pub fn state_weight(mut s: usize) -> Cost {
    let mut w = 0;
    while s > 0 {
        w += (s % 3) as Cost;
        s /= 3;
    }
    w
}

fn pow3(m: usize) -> usize {
    3usize.pow(m as u32)
}

/// Whether every 0-labeled row of the entering column `t` is dominated.
/// Row `i` of the new column is fed by row `i-1` of its own column, row `i`
/// of the previous column, and (strong products only) row `i-1` of the
/// previous column.
fn transition_feasible(kind: ProductKind, rows: usize, s: usize, t: usize) -> bool {
    for i in 0..rows {
        if state_digit(t, i) == 0 {
            let prev_row = (i + rows - 1) % rows;
            let mut sum = u32::from(state_digit(t, prev_row)) + u32::from(state_digit(s, i));
            if kind == ProductKind::Strong {
                sum += u32::from(state_digit(s, prev_row));
            }
            if sum < 2 {
                return false;
            }
        }
    }
    true
}

/// The full `3^m x 3^m` transition-cost matrix over column states.
#[derive(Debug, Clone)]
pub struct TransferSystem {
    kind: ProductKind,
    rows: usize,
    matrix: MinPlusMatrix,
}

impl TransferSystem {
    pub fn kind(&self) -> ProductKind {
        self.kind
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn state_count(&self) -> usize {
        self.matrix.dim()
    }

    pub fn matrix(&self) -> &MinPlusMatrix {
        &self.matrix
    }

    /// Cost of entering `t` from `s`: the label sum of `t` when feasible,
    /// [`INFINITY`] otherwise.
    pub fn transition_cost(&self, s: usize, t: usize) -> Cost {
        self.matrix.get(s, t)
    }
}

/// Builds the transfer system for columns of `rows` labels. The state space
/// is `3^rows`, so the row count is capped by
/// [`SolverConfig::max_dp_rows`].
pub fn build_transfer_system(
    kind: ProductKind,
    rows: usize,
    config: &SolverConfig,
) -> Result<TransferSystem> {
    if rows < 2 {
        return Err(Error::Parameter(format!(
            "transfer system needs at least 2 rows, got {rows}"
        )));
    }
    if rows > config.max_dp_rows {
        return Err(Error::CapExceeded {
            what: "transfer DP rows",
            requested: rows,
            limit: config.max_dp_rows,
            flag: "--max-dp-rows",
        });
    }
    let size = pow3(rows);
    let weights: Vec<Cost> = (0..size).map(state_weight).collect();
    let matrix = MinPlusMatrix::from_fn(size, |s, t| {
        if transition_feasible(kind, rows, s, t) {
            weights[t]
        } else {
            INFINITY
        }
    });
    Ok(TransferSystem { kind, rows, matrix })
}

/// Exact gamma_I for a cycle product via the min-plus power of the transfer
/// matrix: the smallest diagonal entry of `T^n` is the cheapest closed
/// walk. Factors are swapped up front when the second is smaller, keeping
/// the state space at `3^min(m,n)`; the witness is mapped back through the
/// factor swap afterwards.
pub fn solve_profile_dp(inst: &ProductInstance, config: &SolverConfig) -> Result<SolveResult> {
    solve_profile_dp_with(inst, config, &())
}

pub fn solve_profile_dp_with(
    inst: &ProductInstance,
    config: &SolverConfig,
    progress: &dyn Progress,
) -> Result<SolveResult> {
    let start = Instant::now();
    let swap = inst.n() < inst.m();
    let oriented = if swap { inst.swapped() } else { *inst };
    let system = build_transfer_system(oriented.kind(), oriented.m(), config)?;
    let states = system.state_count() as u64;
    progress.report(ProgressEvent {
        states_expanded: states,
        incumbent: None,
    });

    let cols = oriented.n();
    let power = system.matrix().power(cols as u64);
    let (start_state, gamma) = power.min_diagonal();
    debug_assert!(gamma < INFINITY, "the all-ones column walk is feasible");
    progress.report(ProgressEvent {
        states_expanded: states * cols as u64,
        incumbent: Some(gamma),
    });

    let walk = reconstruct_closed_walk(&system, start_state, cols, gamma);
    let oriented_labeling = labeling_from_walk(&oriented, &walk);
    let witness = if swap {
        idf::transpose_product_labeling(&oriented, &oriented_labeling)?
    } else {
        oriented_labeling
    };

    let stats = SolveStats {
        nodes_expanded: states * cols as u64,
        elapsed: start.elapsed(),
    };
    checked_result(
        &inst.digraph(),
        gamma,
        witness,
        SolveMethod::ProfileDp,
        stats,
    )
}

/// Recovers a gamma-realizing closed walk `start -> ... -> start` of the
/// given length: forward distance layers from `start`, then a backward pass
/// that takes the numerically smallest predecessor at each step.
fn reconstruct_closed_walk(
    system: &TransferSystem,
    start: usize,
    len: usize,
    expected: Cost,
) -> Vec<usize> {
    let size = system.state_count();
    let matrix = system.matrix();

    // dist[k][u]: cheapest walk of length k from start to u
    let mut dist: Vec<Vec<Cost>> = Vec::with_capacity(len + 1);
    let mut first = vec![INFINITY; size];
    first[start] = 0;
    dist.push(first);
    for k in 1..=len {
        let prev = &dist[k - 1];
        let mut next = vec![INFINITY; size];
        for (u, &du) in prev.iter().enumerate() {
            if du == INFINITY {
                continue;
            }
            for (v, &cost) in matrix.row(u).iter().enumerate() {
                let candidate = du.saturating_add(cost);
                if candidate < next[v] {
                    next[v] = candidate;
                }
            }
        }
        dist.push(next);
    }
    debug_assert_eq!(dist[len][start], expected);

    let mut walk = vec![0usize; len + 1];
    walk[len] = start;
    for k in (1..=len).rev() {
        let target = walk[k];
        let need = dist[k][target];
        let pred = (0..size)
            .find(|&u| {
                dist[k - 1][u] != INFINITY
                    && dist[k - 1][u].saturating_add(matrix.get(u, target)) == need
            })
            .expect("a realizing predecessor exists");
        walk[k - 1] = pred;
    }
    debug_assert_eq!(walk[0], start);
    walk
}

/// Column `j` (0-based) of the product takes its labels from walk state
/// `j + 1`; state digits are row labels.
fn labeling_from_walk(inst: &ProductInstance, walk: &[usize]) -> Labeling {
    Labeling::from_fn(inst.order(), |v| {
        let (i, j) = inst.coords(v);
        state_digit(walk[j + 1], i)
    })
    .expect("state digits are labels")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn config() -> SolverConfig {
        SolverConfig::default()
    }

    // states are written least-significant digit first: (d0, d1) = d0 + 3*d1
    fn state2(d0: u8, d1: u8) -> usize {
        d0 as usize + 3 * d1 as usize
    }

    #[test]
    fn state_encoding() {
        let s = state2(1, 2);
        assert_eq!(state_digit(s, 0), 1);
        assert_eq!(state_digit(s, 1), 2);
        assert_eq!(state_weight(s), 3);
        assert_eq!(state_weight(0), 0);
    }

    #[test]
    fn cartesian_digon_transitions() {
        let system = build_transfer_system(ProductKind::Cartesian, 2, &config()).unwrap();
        let ones = state2(1, 1);
        // entering (0,0): row 0 sees t(1) + s(0) = 0 + 1 < 2
        assert_eq!(system.transition_cost(ones, state2(0, 0)), INFINITY);
        // no zero rows in the target: always feasible, costs its weight
        assert_eq!(system.transition_cost(ones, ones), 2);
    }

    #[test]
    fn strong_digon_transitions() {
        let system = build_transfer_system(ProductKind::Strong, 2, &config()).unwrap();
        let ones = state2(1, 1);
        // row 0 of (0,0) sees t(1) + s(0) + s(1) = 0 + 1 + 1 = 2
        assert_eq!(system.transition_cost(ones, state2(0, 0)), 0);
    }

    #[test]
    fn row_cap_enforced() {
        let err = build_transfer_system(ProductKind::Cartesian, 7, &config()).unwrap_err();
        assert!(matches!(err, Error::CapExceeded { requested: 7, limit: 6, .. }));
        assert!(build_transfer_system(ProductKind::Cartesian, 1, &config()).is_err());
    }

    #[test]
    fn dp_matches_closed_forms() {
        let cases = [
            (ProductKind::Cartesian, 3, 5, 10),
            (ProductKind::Cartesian, 2, 7, 8),
            (ProductKind::Strong, 3, 3, 5),
            (ProductKind::Cartesian, 4, 4, 8),
            (ProductKind::Strong, 2, 6, 6),
        ];
        for (kind, m, n, expected) in cases {
            let inst = ProductInstance::new(kind, m, n).unwrap();
            let result = solve_profile_dp(&inst, &config()).unwrap();
            assert_eq!(result.gamma, expected, "{inst}");
            assert_eq!(result.method, SolveMethod::ProfileDp);
            assert_eq!(result.witness.weight(), expected);
        }
    }

    #[test]
    fn dp_swaps_oversized_first_factor() {
        // 9 rows would blow the cap; 9 columns is fine
        let inst = ProductInstance::new(ProductKind::Cartesian, 9, 2).unwrap();
        let result = solve_profile_dp(&inst, &config()).unwrap();
        assert_eq!(result.gamma, 10);
        assert_eq!(result.witness.len(), 18);
    }

    #[test]
    fn dp_cross_checked_against_commuted_closed_form() {
        // 4x3 has no direct closed form (min factor is 3 -> 2*max = 8)
        let inst = ProductInstance::new(ProductKind::Cartesian, 4, 3).unwrap();
        let result = solve_profile_dp(&inst, &config()).unwrap();
        assert_eq!(result.gamma, 8);
    }

    #[test]
    fn conjectured_case_4_by_5() {
        // open in closed form; the DP is the ground truth here
        let inst = ProductInstance::new(ProductKind::Cartesian, 4, 5).unwrap();
        let result = solve_profile_dp(&inst, &config()).unwrap();
        assert_eq!(result.gamma, 12);
    }
}
