// SPDX-License-Identifier: Apache-2.0
//! Graph types over dense node ids with bitset adjacency.

mod chain;
mod dag;
mod nodeset;
mod undirected;

pub use chain::ChainGraph;
pub use dag::Dag;
pub use nodeset::{Iter as NodeSetIter, NodeSet, MAX_NODES};
pub use undirected::UndirectedGraph;


#[cfg(test)]
mod props {
    use super::strategies;
    use super::*;
    use proptest::prelude::*;

    proptest! {
        #[test]
        fn an_is_monotone_and_idempotent(g in strategies::dag(7), a in any::<u64>(), b in any::<u64>()) {
            let all = g.nodes().bits();
            let small = NodeSet::from_bits(a & b & all);
            let big = NodeSet::from_bits(a & all);
            prop_assert!(g.an(small).is_subset(g.an(big)));
            prop_assert!(g.de(small).is_subset(g.de(big)));
            prop_assert_eq!(g.an(g.an(big)), g.an(big));
            prop_assert_eq!(g.de(g.de(big)), g.de(big));
            prop_assert!(big.is_subset(g.an(big)));
        }

        #[test]
        fn ma_is_an_antichain_of_sources(g in strategies::dag(7), a in any::<u64>()) {
            let set = NodeSet::from_bits(a & g.nodes().bits());
            let ma = g.ma(set);
            prop_assert!(ma.is_subset(g.sources()));
            for v in ma {
                prop_assert!(g.an_of(v).intersection(ma) == NodeSet::singleton(v));
            }
            prop_assert_eq!(g.ma(g.nodes()), g.sources());
        }

        #[test]
        fn trek_reachability_matches_path_search(g in strategies::dag(6)) {
            for v in 0..g.node_count() {
                for w in 0..g.node_count() {
                    if v != w {
                        prop_assert_eq!(g.trek_reachable(v, w).unwrap(), g.has_collider_free_path(v, w));
                    }
                }
            }
        }

        #[test]
        fn topological_order_respects_edges(g in strategies::dag(8)) {
            let order = g.topological_order();
            let mut pos = vec![0; g.node_count()];
            for (i, &v) in order.iter().enumerate() {
                pos[v] = i;
            }
            for (v, w) in g.edges() {
                prop_assert!(pos[v] < pos[w]);
            }
        }

        #[test]
        fn chain_components_partition_nodes(g in strategies::chain_graph(7)) {
            let comps = g.chain_components();
            let mut union = NodeSet::EMPTY;
            for c in &comps {
                prop_assert!(union.is_disjoint(*c));
                union = union.union(*c);
                // mutual <= reachability inside a block
                for v in *c {
                    prop_assert!(c.is_subset(g.anterior(v).unwrap()));
                    prop_assert_eq!(g.component_of(v), *c);
                }
            }
            prop_assert_eq!(union, g.nodes());
        }

        #[test]
        fn anterior_reduces_to_ancestors_without_undirected_edges(d in strategies::dag(7)) {
            let g = ChainGraph::from_dag(&d);
            for v in 0..d.node_count() {
                prop_assert_eq!(g.anterior(v).unwrap(), d.an_of(v));
                prop_assert_eq!(g.minimal_anterior(v).unwrap(), d.ma(NodeSet::singleton(v)));
            }
        }
    }
}
