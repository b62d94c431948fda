//! Cross-method equivalence: the three exact engines must agree everywhere
//! they all run, and the DP internals must satisfy their algebra.

use idom_core::idf::{self, Labeling};
use idom_core::solver::{
    build_transfer_system, solve_branch_and_bound, solve_brute_force, solve_profile_dp,
    SolverConfig,
};
use idom_core::{Digraph, ProductInstance, ProductKind};

const BOTH_KINDS: [ProductKind; 2] = [ProductKind::Cartesian, ProductKind::Strong];

fn small_instances() -> Vec<ProductInstance> {
    let mut out = Vec::new();
    for kind in BOTH_KINDS {
        for m in 2..=8 {
            for n in 2..=8 {
                if m * n <= 16 {
                    out.push(ProductInstance::new(kind, m, n).unwrap());
                }
            }
        }
    }
    out
}

fn assert_witness(d: &Digraph, gamma: u32, witness: &Labeling, what: &str) {
    assert_eq!(witness.weight(), gamma, "{what}: witness weight");
    assert!(idf::is_idf(d, witness).unwrap(), "{what}: witness invalid");
}

#[test]
fn dp_brute_and_bnb_agree_on_all_small_products() {
    let config = SolverConfig::default();
    for inst in small_instances() {
        let d = inst.digraph();
        let brute = solve_brute_force(&d, &config).unwrap();
        let dp = solve_profile_dp(&inst, &config).unwrap();
        let bnb = solve_branch_and_bound(&d, &config).unwrap();

        assert_eq!(dp.gamma, brute.gamma, "{inst}: dp vs brute");
        assert_eq!(bnb.gamma, brute.gamma, "{inst}: bnb vs brute");

        assert_witness(&d, brute.gamma, &brute.witness, "brute");
        assert_witness(&d, dp.gamma, &dp.witness, "dp");
        assert_witness(&d, bnb.gamma, &bnb.witness, "bnb");

        // both search engines report the lexicographically first optimum,
        // so an unsound pruning bound would show up as a witness mismatch
        assert_eq!(bnb.witness, brute.witness, "{inst}: bnb vs brute witness");

        // bound sandwich
        let lower = idf::general_lower_bound(&d);
        assert!(lower <= brute.gamma, "{inst}: lower bound violated");
        assert!(brute.gamma <= d.order() as u32, "{inst}: order bound violated");

        // each DP column is charged exactly once
        let profile = idf::column_profile(&inst, &dp.witness).unwrap();
        assert_eq!(profile.total(), dp.gamma, "{inst}: column charge");
    }
}

#[test]
fn transfer_power_routes_agree() {
    let config = SolverConfig::default();
    for kind in BOTH_KINDS {
        for rows in 2..=4 {
            let matrix = build_transfer_system(kind, rows, &config)
                .unwrap()
                .matrix()
                .clone();
            for n in 1..=8 {
                assert_eq!(
                    matrix.power(n),
                    matrix.power_iterative(n),
                    "{kind:?} rows={rows} n={n}"
                );
            }
        }
    }
}

#[test]
fn column_inequality_on_strong_witnesses() {
    // consecutive column weights of a strong-product IDF sum to at least m
    let config = SolverConfig::default();
    for inst in small_instances()
        .into_iter()
        .filter(|i| i.kind() == ProductKind::Strong)
    {
        let dp = solve_profile_dp(&inst, &config).unwrap();
        let profile = idf::column_profile(&inst, &dp.witness).unwrap();
        let weights = profile.column_weights();
        for k in 0..weights.len() {
            let next = weights[(k + 1) % weights.len()];
            assert!(
                weights[k] + next >= inst.m() as u32,
                "{inst}: columns {k},{} sum below m",
                (k + 1) % weights.len()
            );
        }
    }
}
