mod common;

use apexobs_core::blocks::BlockDecomposition;
use apexobs_core::io::{from_graph6, to_graph6};
use apexobs_core::{
    canonical_form, decompose, is_in_class, is_minor, isomorphic, make_named, min_apex_size,
    ClassId, Graph,
};
use common::*;
use proptest::prelude::*;
use rand::{rngs::StdRng, SeedableRng};

const CLASSES: [ClassId; 4] = [
    ClassId::SubUnicyclic,
    ClassId::Pseudoforest,
    ClassId::Cactus,
    ClassId::Forest,
];

#[test]
fn canonical_form_agrees_with_brute_force() {
    for n in 0..=6 {
        let reps = all_graphs(n);
        let forms: std::collections::HashSet<Vec<u8>> = reps
            .iter()
            .map(|a| canonical_form(&from_matrix(a)))
            .collect();
        assert_eq!(forms.len(), reps.len(), "n={n}");
    }
    assert_eq!(all_graphs(5).len(), 34);
}

#[test]
fn minor_relation_on_five_vertices() {
    let graphs: Vec<Matrix> = (0..=5).flat_map(all_graphs).collect();
    for g in &graphs {
        let closure = minor_closure(g);
        let gg = from_matrix(g);
        for h in &graphs {
            let expected = closure.contains(&brute_canon(h));
            assert_eq!(
                is_minor(&from_matrix(h), &gg),
                expected,
                "{} in {}",
                to_graph6(&from_matrix(h)),
                to_graph6(&gg)
            );
        }
    }
}

#[test]
fn apex_size_matches_subset_oracle() {
    let mut rng = StdRng::seed_from_u64(7);
    for i in 0..200 {
        let n = 1 + i % 8;
        let g = random_graph(&mut rng, n, 0.45);
        let a = matrix(&g);
        for c in CLASSES {
            assert_eq!(
                min_apex_size(&g, c),
                min_apex_oracle(&a, c),
                "{c} {}",
                to_graph6(&g)
            );
        }
    }
}

#[test]
fn class_membership_matches_oracle() {
    for n in 0..=6 {
        for a in all_graphs(n) {
            let g = from_matrix(&a);
            for c in CLASSES {
                assert_eq!(
                    is_in_class(&g, c),
                    in_class_oracle(&a, &vec![true; n], c),
                    "{c} {}",
                    to_graph6(&g)
                );
            }
        }
    }
}

fn arb_graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n).prop_flat_map(|n| {
        proptest::collection::vec(any::<bool>(), n * (n - 1) / 2).prop_map(move |bits| {
            let mut edges = Vec::new();
            let mut i = 0;
            for u in 0..n {
                for v in u + 1..n {
                    if bits[i] {
                        edges.push((u, v));
                    }
                    i += 1;
                }
            }
            Graph::from_edges(n, &edges).unwrap()
        })
    })
}

fn block_edge_total(g: &Graph, d: &BlockDecomposition) -> usize {
    d.blocks.iter().map(|&b| g.edges_within(b)).sum()
}

proptest! {
    #![proptest_config(ProptestConfig { failure_persistence: None, ..ProptestConfig::with_cases(200) })]

    #[test]
    fn cactus_iff_no_diamond_minor(g in arb_graph(8)) {
        let diamond = make_named("K4_minus").unwrap();
        prop_assert_eq!(is_in_class(&g, ClassId::Cactus), !is_minor(&diamond, &g));
    }

    #[test]
    fn zero_apex_iff_member(g in arb_graph(9)) {
        for c in CLASSES {
            prop_assert_eq!(min_apex_size(&g, c) == 0, is_in_class(&g, c));
        }
    }

    #[test]
    fn blocks_partition_edges(g in arb_graph(12)) {
        let d = decompose(&g);
        prop_assert_eq!(block_edge_total(&g, &d), g.m());
        for (i, a) in d.blocks.iter().enumerate() {
            for b in &d.blocks[i + 1..] {
                prop_assert!((a & b).count_ones() <= 1);
                prop_assert!((a & b) & !d.cut_vertices == 0);
            }
        }
    }

    #[test]
    fn canonical_form_ignores_labels(g in arb_graph(14), seed in any::<u64>()) {
        let mut rng = StdRng::seed_from_u64(seed);
        let h = shuffled(&mut rng, &g);
        prop_assert_eq!(canonical_form(&g), canonical_form(&h));
        prop_assert!(isomorphic(&g, &h));
    }

    #[test]
    fn graph6_round_trip(g in arb_graph(20)) {
        prop_assert_eq!(from_graph6(&to_graph6(&g)).unwrap(), g);
    }

    #[test]
    fn minors_never_grow(g in arb_graph(7)) {
        for h in apexobs_core::one_step_minors(&g) {
            prop_assert!(h.n() + h.m() < g.n() + g.m());
            prop_assert!(is_minor(&h, &g));
        }
    }
}
