//! Exact Italian domination numbers for directed cycles and their cartesian
//! and strong products.
//!
//! An Italian dominating function labels every vertex 0, 1 or 2 so that
//! each 0-labeled vertex sees in-neighbor labels summing to at least 2;
//! gamma_I is the minimum total weight of such a labeling. This crate
//! builds the digraphs ([`digraph`]), verifies labelings and computes
//! bounds ([`idf`]), emits the known optimal constructions as verified
//! certificates ([`constructions`]), and solves instances exactly
//! ([`solver`]) by lexicographic brute force, a min-plus transfer-matrix
//! DP over column profiles, or branch and bound.
//!
//! With the default `parallel` feature the solver inner loops run on rayon;
//! without it everything falls back to the sequential code paths with
//! identical results.

pub mod constructions;
pub mod digraph;
mod error;
pub mod idf;
pub mod solver;

pub use digraph::{
    cartesian_product, directed_cycle, directed_path, strong_product, Digraph, ProductInstance,
    ProductKind,
};
pub use error::{Error, Result};
pub use idf::Labeling;
pub use solver::{
    solve_digraph, solve_instance, SolveMethod, SolveResult, SolveStats, SolverConfig,
};
