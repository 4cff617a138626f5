// SPDX-License-Identifier: Apache-2.0

use proptest::prelude::*;
use uec_core::essential::{check_cpdag, cpdag_of, mec_members};
use uec_core::moves::saturate;
use uec_core::oracle::{enumerate_dags, labeled_dag_count, truth};
use uec_core::text::{numeric_labels, GraphDocument};
use uec_core::udg::{clique_cover, is_maximal_in_uec, max_independent_set_size, same_uec, udg_of, udg_of_with, UdgConstruction};
use uec_core::Dag;

/// Random DAG: arcs follow a shuffled node order.
fn dag(max_n: usize) -> impl Strategy<Value = Dag> {
    (1..=max_n).prop_flat_map(|n| {
        let pairs = n * (n - 1) / 2;
        (Just(n), Just((0..n).collect::<Vec<_>>()).prop_shuffle(), proptest::collection::vec(any::<bool>(), pairs))
    })
    .prop_map(|(n, order, bits)| {
        let mut edges = Vec::new();
        let mut k = 0;
        for i in 0..n {
            for j in i + 1..n {
                if bits[k] {
                    edges.push((order[i], order[j]));
                }
                k += 1;
            }
        }
        Dag::new(n, edges).unwrap()
    })
}

proptest! {
    #[test]
    fn constructions_match_path_search(g in dag(8)) {
        let expected = truth::udg(&g);
        for c in [UdgConstruction::TrekSearch, UdgConstruction::CommonAncestor, UdgConstruction::SourceCliques] {
            prop_assert_eq!(udg_of_with(&g, c), expected.clone());
        }
    }

    #[test]
    fn cover_size_is_independence_number(g in dag(8)) {
        let u = udg_of(&g);
        let cover = clique_cover(&g);
        prop_assert_eq!(cover.len(), g.sources().len());
        prop_assert!(cover.is_minimal_cover_of(&u));
        prop_assert_eq!(max_independent_set_size(&u).unwrap(), truth::max_independent_set(&u));
        prop_assert_eq!(cover.len(), truth::max_independent_set(&u));
    }

    #[test]
    fn saturation_stays_in_class(g in dag(8)) {
        let (s, added) = saturate(&g);
        prop_assert!(same_uec(&g, &s).unwrap());
        prop_assert!(is_maximal_in_uec(&s));
        prop_assert_eq!(s.edge_count(), g.edge_count() + added.len());
    }

    #[test]
    fn essential_graph_is_valid_and_contains_the_dag(g in dag(6)) {
        let e = cpdag_of(&g);
        prop_assert!(check_cpdag(e.graph()).is_none());
        prop_assert!(mec_members(&e).unwrap().contains(&g));
    }

    #[test]
    fn documents_round_trip(g in dag(10)) {
        let doc = GraphDocument::from_dag("g", &numeric_labels(g.node_count()), &g);
        let text = doc.emit();
        let back = GraphDocument::parse(&text).unwrap();
        prop_assert_eq!(back.emit(), text);
        prop_assert_eq!(back.to_dag().unwrap(), g);
    }
}

#[test]
fn six_node_enumeration_matches_recurrence() {
    assert_eq!(enumerate_dags(6).unwrap().count() as u128, labeled_dag_count(6));
    assert_eq!(labeled_dag_count(6), 3_781_503);
}
