//! Exhaustive minimum over all `3^order` labelings.
//!
//! Labelings are scanned as base-3 odometers with vertex 0 in the most
//! significant digit, so numeric index order is lexicographic label order
//! and the reported witness is the first optimum. The scan is split into
//! index chunks; chunks share an atomic incumbent for pruning but only skip
//! candidates strictly worse than it, so every chunk still records its own
//! first optimum and the merged result is deterministic under any
//! scheduling.

use std::ops::Range;
use std::sync::atomic::{AtomicU32, AtomicU64, Ordering};
use std::time::Instant;

#[cfg(feature = "parallel")]
use rayon::prelude::*;

use crate::digraph::Digraph;
use crate::error::{Error, Result};
use crate::idf::Labeling;
use crate::solver::{
    checked_result, Progress, ProgressEvent, SolveMethod, SolveResult, SolveStats, SolverConfig,
};

const CHUNKS: u64 = 256;

pub fn solve_brute_force(d: &Digraph, config: &SolverConfig) -> Result<SolveResult> {
    solve_brute_force_with(d, config, &())
}

pub fn solve_brute_force_with(
    d: &Digraph,
    config: &SolverConfig,
    progress: &dyn Progress,
) -> Result<SolveResult> {
    run(d, config, progress, cfg!(feature = "parallel"))
}

/// Single-threaded variant, available regardless of the `parallel` feature.
pub fn solve_brute_force_seq(d: &Digraph, config: &SolverConfig) -> Result<SolveResult> {
    run(d, config, &(), false)
}

fn run(
    d: &Digraph,
    config: &SolverConfig,
    progress: &dyn Progress,
    parallel: bool,
) -> Result<SolveResult> {
    let order = d.order();
    if order > config.max_brute_order {
        return Err(Error::CapExceeded {
            what: "brute-force order",
            requested: order,
            limit: config.max_brute_order,
            flag: "--max-brute",
        });
    }
    let start = Instant::now();
    let total = 3u64.pow(order as u32);
    // all-ones is an IDF, so anything heavier than `order` can be skipped
    let incumbent = AtomicU32::new(order as u32 + 1);
    let explored = AtomicU64::new(0);

    let step = |range: Range<u64>| {
        let len = range.end - range.start;
        let best = scan_range(d, range, &incumbent);
        let done = explored.fetch_add(len, Ordering::Relaxed) + len;
        let seen = incumbent.load(Ordering::Relaxed);
        progress.report(ProgressEvent {
            states_expanded: done,
            incumbent: (seen <= order as u32).then_some(seen),
        });
        best
    };

    let chunks = chunk_ranges(total, CHUNKS.min(total));
    let best = if parallel {
        #[cfg(feature = "parallel")]
        {
            chunks.into_par_iter().map(step).reduce(|| None, merge)
        }
        #[cfg(not(feature = "parallel"))]
        {
            unreachable!("parallel scan requested without the parallel feature")
        }
    } else {
        chunks.into_iter().map(step).fold(None, merge)
    };

    let (gamma, index) = best.expect("the all-ones labeling is always feasible");
    let witness = Labeling::new(decode(order, index))?;
    let stats = SolveStats {
        nodes_expanded: total,
        elapsed: start.elapsed(),
    };
    checked_result(d, gamma, witness, SolveMethod::BruteForce, stats)
}

fn chunk_ranges(total: u64, chunks: u64) -> Vec<Range<u64>> {
    (0..chunks)
        .map(|c| (total * c / chunks)..(total * (c + 1) / chunks))
        .filter(|r| !r.is_empty())
        .collect()
}

/// Keeps the smaller (weight, index) pair; index order is label-vector
/// lexicographic order.
fn merge(a: Option<(u32, u64)>, b: Option<(u32, u64)>) -> Option<(u32, u64)> {
    match (a, b) {
        (Some(x), Some(y)) => Some(x.min(y)),
        (x, None) => x,
        (None, y) => y,
    }
}

fn decode(order: usize, index: u64) -> Vec<u8> {
    let mut labels = vec![0u8; order];
    let mut code = index;
    for v in (0..order).rev() {
        labels[v] = (code % 3) as u8;
        code /= 3;
    }
    labels
}

/// Scans one index range, returning its first optimum. Candidates strictly
/// heavier than the shared incumbent, or no better than the chunk's own
/// best, are skipped without a domination check; equal-weight candidates
/// are still checked so the first-index tie break survives the merge.
fn scan_range(d: &Digraph, range: Range<u64>, incumbent: &AtomicU32) -> Option<(u32, u64)> {
    let order = d.order();
    let mut labels = decode(order, range.start);
    let mut weight: u32 = labels.iter().map(|&l| u32::from(l)).sum();
    let mut local_best = u32::MAX;
    let mut best = None;

    for index in range.start..range.end {
        if index > range.start {
            // odometer increment, least significant digit last
            let mut v = order - 1;
            loop {
                if labels[v] < 2 {
                    labels[v] += 1;
                    weight += 1;
                    break;
                }
                labels[v] = 0;
                weight -= 2;
                v -= 1; // cannot underflow: index < 3^order
            }
        }
        if weight >= local_best || weight > incumbent.load(Ordering::Relaxed) {
            continue;
        }
        if dominates(d, &labels) {
            local_best = weight;
            best = Some((weight, index));
            incumbent.fetch_min(weight, Ordering::Relaxed);
        }
    }
    best
}

/// Sum-form domination check on the raw scan buffer.
fn dominates(d: &Digraph, labels: &[u8]) -> bool {
    for (v, &label) in labels.iter().enumerate() {
        if label == 0 {
            let mut sum = 0u32;
            for &u in d.in_neighbors(v) {
                sum += u32::from(labels[u]);
                if sum >= 2 {
                    break;
                }
            }
            if sum < 2 {
                return false;
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::digraph::{directed_cycle, ProductInstance, ProductKind};

    fn config() -> SolverConfig {
        SolverConfig::default()
    }

    #[test]
    fn cycle_gamma_equals_order() {
        let result = solve_brute_force(&directed_cycle(4).unwrap(), &config()).unwrap();
        assert_eq!(result.gamma, 4);
    }

    #[test]
    fn smallest_products() {
        let cart = ProductInstance::new(ProductKind::Cartesian, 2, 2).unwrap();
        assert_eq!(solve_brute_force(&cart.digraph(), &config()).unwrap().gamma, 2);

        let strong = ProductInstance::new(ProductKind::Strong, 2, 2).unwrap();
        assert_eq!(
            solve_brute_force(&strong.digraph(), &config()).unwrap().gamma,
            2
        );
    }

    #[test]
    fn witness_is_first_lexicographic_optimum() {
        // C2: (0,2) dominates and precedes (1,1) and (2,0) lexicographically
        let result = solve_brute_force(&directed_cycle(2).unwrap(), &config()).unwrap();
        assert_eq!(result.gamma, 2);
        assert_eq!(result.witness.values(), &[0, 2]);
    }

    #[test]
    fn sequential_matches_default() {
        for (kind, m, n) in [
            (ProductKind::Cartesian, 2, 3),
            (ProductKind::Strong, 2, 3),
            (ProductKind::Cartesian, 3, 3),
        ] {
            let d = ProductInstance::new(kind, m, n).unwrap().digraph();
            let par = solve_brute_force(&d, &config()).unwrap();
            let seq = solve_brute_force_seq(&d, &config()).unwrap();
            assert_eq!(par.gamma, seq.gamma);
            assert_eq!(par.witness, seq.witness);
        }
    }

    #[test]
    fn cap_refusal_names_the_flag() {
        let d = ProductInstance::new(ProductKind::Cartesian, 5, 4)
            .unwrap()
            .digraph();
        let err = solve_brute_force(&d, &config()).unwrap_err();
        assert!(err.to_string().contains("--max-brute"), "{err}");
    }

    #[test]
    fn progress_reports_monotone_exploration() {
        use std::sync::Mutex;
        let events: Mutex<Vec<u64>> = Mutex::new(Vec::new());
        let observer = |event: ProgressEvent| {
            events.lock().unwrap().push(event.states_expanded);
        };
        let d = directed_cycle(6).unwrap();
        solve_brute_force_with(&d, &config(), &observer).unwrap();
        let seen = events.into_inner().unwrap();
        assert!(!seen.is_empty());
        assert_eq!(seen.iter().copied().max(), Some(3u64.pow(6)));
    }
}
