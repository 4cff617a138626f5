// SPDX-License-Identifier: Apache-2.0

use std::collections::BTreeSet;

use uec_core::essential::{
    check_cpdag, cpdag_of, is_removable, is_removable_by_members, is_sole_protector, leading_treks_only,
    materialize_completions, mec_members, mec_members_exhaustive, predict_completions, protectors, Cpdag,
};
use uec_core::oracle::enumerate_dags;
use uec_core::udg::udg_of;
use uec_core::{ChainGraph, Dag};

fn cpdag(n: usize, directed: &[(usize, usize)], undirected: &[(usize, usize)]) -> Cpdag {
    Cpdag::new(ChainGraph::new(n, directed.iter().copied(), undirected.iter().copied()).unwrap()).unwrap()
}

fn all_cpdags(n: usize) -> BTreeSet<Cpdag> {
    enumerate_dags(n).unwrap().map(|d| cpdag_of(&d)).collect()
}

#[test]
fn members_round_trip_through_the_essential_graph() {
    for n in 1..=4 {
        let mut covered = 0;
        for g in all_cpdags(n) {
            let members = mec_members(&g).unwrap();
            assert_eq!(members, mec_members_exhaustive(&g).unwrap());
            assert!(members.iter().all(|d| cpdag_of(d) == g));
            covered += members.len();
        }
        // every DAG belongs to exactly one class
        assert_eq!(covered, enumerate_dags(n).unwrap().count());
    }
}

#[test]
fn removability_examples() {
    let collider = cpdag(3, &[(0, 2), (1, 2)], &[]);
    assert!(!is_removable(&collider, 0, 2).unwrap());
    let triangle = cpdag(3, &[], &[(0, 1), (0, 2), (1, 2)]);
    assert!(is_removable(&triangle, 0, 2).unwrap());
    let path = cpdag(3, &[], &[(0, 1), (1, 2)]);
    assert!(!is_removable(&path, 0, 1).unwrap());
    for (g, v, w) in [(&collider, 0, 2), (&triangle, 0, 2), (&path, 0, 1)] {
        assert_eq!(is_removable(g, v, w).unwrap(), is_removable_by_members(g, v, w).unwrap());
    }
    assert!(is_removable(&path, 0, 2).is_err());
}

#[test]
fn protector_examples() {
    let chain = ChainGraph::new(3, [(0, 1), (1, 2)], []).unwrap();
    let found = protectors(&chain, 0, 1).unwrap();
    assert_eq!(found.len(), 1);
    assert_eq!((found[0].configuration, found[0].protected.clone()), (1, vec![(1, 2)]));

    // each arrow of a lone collider is protected only by the other one
    let collider = ChainGraph::new(3, [(0, 2), (1, 2)], []).unwrap();
    let found = protectors(&collider, 0, 2).unwrap();
    assert!(found.iter().any(|m| m.configuration == 2 && m.protected == vec![(1, 2)]));
    assert!(is_sole_protector(&collider, 0, 2).unwrap());

    let undirected = ChainGraph::new(3, [], [(0, 1), (1, 2)]).unwrap();
    assert!(protectors(&undirected, 0, 1).is_err());
}

#[test]
fn leading_trek_examples() {
    // v = 0, a = 1, w = 2, b = 3
    let leading = ChainGraph::new(3, [(0, 1)], [(1, 2)]).unwrap();
    assert!(leading_treks_only(&leading, 0, 2).unwrap());
    let late = ChainGraph::new(3, [(1, 2)], [(0, 1)]).unwrap();
    assert!(!leading_treks_only(&late, 0, 2).unwrap());
    let mixed = ChainGraph::new(4, [(0, 1), (3, 2)], [(1, 2), (0, 3)]).unwrap();
    assert!(!leading_treks_only(&mixed, 0, 2).unwrap());
}

#[test]
fn triangle_edge_removal_is_already_complete() {
    let triangle = cpdag(3, &[], &[(0, 1), (0, 2), (1, 2)]);
    let p = predict_completions(&triangle, 0, 1).unwrap();
    assert!(p.is_already_complete);
    assert_eq!(p.predicted_count, 1);
    let found = materialize_completions(&triangle, 0, 1).unwrap();
    assert_eq!(found, vec![cpdag(3, &[], &[(0, 2), (1, 2)])]);
}

#[test]
fn complete_graph_on_four_nodes_has_three_completions() {
    // The count formula gives |T| = 2 here, but deleting the edge from a
    // member where both common neighbours are parents of the same endpoint
    // adds no v-structure and keeps every pair dependent, so the
    // edge-deleted graph is a third completion.
    let k4 = cpdag(4, &[], &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]);
    let p = predict_completions(&k4, 0, 1).unwrap();
    assert_eq!((p.is_already_complete, p.predicted_count), (false, 2));
    let found = materialize_completions(&k4, 0, 1).unwrap();
    assert_eq!(found.len(), 3);
    assert!(found.contains(&cpdag(4, &[], &[(0, 2), (0, 3), (1, 2), (1, 3), (2, 3)])));
    for c in &found {
        assert!(check_cpdag(c.graph()).is_none());
        let member = &mec_members(c).unwrap()[0];
        assert_eq!(udg_of(member), udg_of(&mec_members(&k4).unwrap()[0]));
    }
}

/// Directed edges of CPDAGs on up to five nodes whose prediction uses a
/// single two-node clique and only leading treks.
fn directed_two_clique_witnesses() -> Vec<(Cpdag, usize, usize)> {
    let mut out = Vec::new();
    for n in 3..=5 {
        for g in all_cpdags(n) {
            for (v, w) in g.directed_edges() {
                if !is_removable(&g, v, w).unwrap() {
                    continue;
                }
                let p = predict_completions(&g, v, w).unwrap();
                let reduced = g.without_edge(v, w).unwrap();
                if p.t.len() == 2 && p.clique_term == Some(3) && leading_treks_only(&reduced, v, w).unwrap() {
                    out.push((g.clone(), v, w));
                }
            }
        }
    }
    out
}

#[test]
fn directed_two_clique_case() {
    let witnesses = directed_two_clique_witnesses();
    assert!(!witnesses.is_empty(), "no witness on up to five nodes");
    let mut agree = 0;
    let mut disagree = Vec::new();
    for (g, v, w) in &witnesses {
        assert_eq!(predict_completions(g, *v, *w).unwrap().predicted_count, 3);
        let found = materialize_completions(g, *v, *w).unwrap().len();
        if found == 3 {
            agree += 1;
        } else {
            disagree.push(format!("{g:?} edge {v}->{w}: {found} completions"));
        }
    }
    assert!(disagree.is_empty(), "{agree} witnesses agree, {} disagree:\n{}", disagree.len(), disagree.join("\n"));
}

#[test]
fn dag_to_cpdag_examples() {
    let collider = cpdag_of(&Dag::new(3, [(0, 2), (1, 2)]).unwrap());
    assert_eq!(collider.directed_edges(), vec![(0, 2), (1, 2)]);
    let chain = cpdag_of(&Dag::new(3, [(0, 1), (1, 2)]).unwrap());
    assert_eq!(chain.undirected_edges(), vec![(0, 1), (1, 2)]);
    assert_eq!(mec_members(&chain).unwrap().len(), 3);
    let triangle = cpdag_of(&Dag::new(3, [(0, 1), (0, 2), (1, 2)]).unwrap());
    assert_eq!(mec_members(&triangle).unwrap().len(), 6);
}
