//! Structural invariants of products, labelings and the verifier.

use idom_core::idf::{self, Labeling};
use idom_core::{Digraph, ProductInstance, ProductKind};
use proptest::prelude::*;

const BOTH_KINDS: [ProductKind; 2] = [ProductKind::Cartesian, ProductKind::Strong];

/// Literal two-case domination check (two in-neighbors labeled 1, or one
/// labeled 2), kept independent of the library's sum-form verifier.
fn is_idf_two_case(d: &Digraph, f: &Labeling) -> bool {
    (0..d.order()).all(|v| {
        if f.get(v) != 0 {
            return true;
        }
        let ins = d.in_neighbors(v);
        let ones = ins.iter().filter(|&&u| f.get(u) == 1).count();
        let twos = ins.iter().filter(|&&u| f.get(u) == 2).count();
        twos >= 1 || ones >= 2
    })
}

#[test]
fn products_commute_up_to_transposition() {
    for kind in BOTH_KINDS {
        for m in 2..=5 {
            for n in 2..=5 {
                let a = ProductInstance::new(kind, m, n).unwrap();
                let b = a.swapped();
                let da = a.digraph();
                let db = b.digraph();
                let mut relabeled: Vec<(usize, usize)> = da
                    .arcs()
                    .map(|(u, v)| {
                        let (ui, uj) = a.coords(u);
                        let (vi, vj) = a.coords(v);
                        (b.vertex_id(uj, ui), b.vertex_id(vj, vi))
                    })
                    .collect();
                relabeled.sort_unstable();
                let arcs_b: Vec<(usize, usize)> = db.arcs().collect();
                assert_eq!(relabeled, arcs_b, "{kind:?} {m}x{n}");
            }
        }
    }
}

#[test]
fn strong_arcs_contain_cartesian_arcs() {
    for m in 2..=5 {
        for n in 2..=5 {
            let cart = ProductInstance::new(ProductKind::Cartesian, m, n)
                .unwrap()
                .digraph();
            let strong = ProductInstance::new(ProductKind::Strong, m, n)
                .unwrap()
                .digraph();
            for (u, v) in cart.arcs() {
                assert!(strong.has_arc(u, v), "{m}x{n}: missing {u}->{v}");
            }
        }
    }
}

#[test]
fn product_degrees_are_uniform() {
    for m in 2..=5 {
        for n in 2..=5 {
            let cart = ProductInstance::new(ProductKind::Cartesian, m, n)
                .unwrap()
                .digraph();
            let strong = ProductInstance::new(ProductKind::Strong, m, n)
                .unwrap()
                .digraph();
            for v in 0..cart.order() {
                assert_eq!(cart.in_degree(v), 2);
                assert_eq!(cart.out_degree(v), 2);
                assert_eq!(strong.in_degree(v), 3);
                assert_eq!(strong.out_degree(v), 3);
            }
        }
    }
}

#[test]
fn instance_bounds_match_the_expanded_digraph() {
    // BoundReport::for_instance derives bounds from product structure
    // without expanding the digraph; both routes must agree
    for kind in BOTH_KINDS {
        for m in 2..=6 {
            for n in 2..=6 {
                let inst = ProductInstance::new(kind, m, n).unwrap();
                let d = inst.digraph();
                let report = idf::BoundReport::for_instance(&inst, None);
                let general = idf::general_lower_bound(&d);
                let expected = match kind {
                    ProductKind::Cartesian => general,
                    ProductKind::Strong => {
                        general.max(idf::strong_column_lower_bound(&inst).unwrap())
                    }
                };
                assert_eq!(report.lower, expected, "{inst}");
                assert_eq!(report.upper, d.order() as u32, "{inst}");
            }
        }
    }
}

/// Random cycle-product instance with mn <= 20 plus a random labeling.
fn instance_and_labels() -> impl Strategy<Value = (ProductInstance, Vec<u8>)> {
    (0..BOTH_KINDS.len(), 2usize..=10, 2usize..=10)
        .prop_filter("order within 20", |(_, m, n)| m * n <= 20)
        .prop_flat_map(|(k, m, n)| {
            let inst = ProductInstance::new(BOTH_KINDS[k], m, n).unwrap();
            let labels = proptest::collection::vec(0u8..=2, m * n);
            (Just(inst), labels)
        })
}

proptest! {
    /// The sum-form verifier agrees with the literal two-case definition.
    #[test]
    fn sum_form_matches_two_case_definition((inst, labels) in instance_and_labels()) {
        let d = inst.digraph();
        let f = Labeling::new(labels).unwrap();
        prop_assert_eq!(idf::is_idf(&d, &f).unwrap(), is_idf_two_case(&d, &f));
    }

    /// Raising labels pointwise never breaks domination.
    #[test]
    fn is_idf_is_monotone(
        (inst, labels) in instance_and_labels(),
        bumps in proptest::collection::vec(0u8..=2, 20),
    ) {
        let d = inst.digraph();
        let f = Labeling::new(labels.clone()).unwrap();
        let raised: Vec<u8> = labels
            .iter()
            .zip(bumps.iter().cycle())
            .map(|(&l, &b)| (l + b).min(2))
            .collect();
        let g = Labeling::new(raised).unwrap();
        if idf::is_idf(&d, &f).unwrap() {
            prop_assert!(idf::is_idf(&d, &g).unwrap());
        }
    }

    /// Grid text round-trips losslessly.
    #[test]
    fn grid_round_trips((inst, labels) in instance_and_labels()) {
        let f = Labeling::new(labels).unwrap();
        let text = idf::write_grid(&inst, &f).unwrap();
        prop_assert_eq!(idf::parse_grid(&text, inst.m(), inst.n()).unwrap(), f);
    }

    /// Column profiles partition the weight.
    #[test]
    fn column_profile_partitions_weight((inst, labels) in instance_and_labels()) {
        let f = Labeling::new(labels).unwrap();
        let profile = idf::column_profile(&inst, &f).unwrap();
        prop_assert_eq!(profile.total(), f.weight());
        prop_assert_eq!(profile.column_weights().len(), inst.n());
    }
}
