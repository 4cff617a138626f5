// SPDX-License-Identifier: Apache-2.0
//! Unconditional dependence graphs and the source-clique cover.
//!
//! Two nodes of a DAG are adjacent in its dependence graph iff they are
//! d-connected given the empty set. Equivalently they share an ancestor, or
//! both descend from a common source node. All three constructions are
//! available through [`udg_of_with`]; [`udg_of`] uses the source cliques.

use crate::error::{Error, Result};
use crate::graph::{Dag, NodeSet, UndirectedGraph};
use crate::moves::{classify_pair, PairClass};

/// How [`udg_of_with`] decides dependence.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum UdgConstruction {
    /// Search for a collider-free simple path between every pair.
    TrekSearch,
    /// Join pairs whose ancestor sets intersect.
    CommonAncestor,
    /// Union of the cliques `de(s)` over source nodes `s`.
    SourceCliques,
}

pub fn udg_of(g: &Dag) -> UndirectedGraph {
    udg_of_with(g, UdgConstruction::SourceCliques)
}

pub fn udg_of_with(g: &Dag, construction: UdgConstruction) -> UndirectedGraph {
    let n = g.node_count();
    let mut adj = vec![NodeSet::EMPTY; n];
    match construction {
        UdgConstruction::TrekSearch => {
            for v in 0..n {
                for w in v + 1..n {
                    if g.has_collider_free_path(v, w) {
                        adj[v].insert(w);
                        adj[w].insert(v);
                    }
                }
            }
        }
        UdgConstruction::CommonAncestor => {
            for v in 0..n {
                for w in v + 1..n {
                    if !g.an_of(v).is_disjoint(g.an_of(w)) {
                        adj[v].insert(w);
                        adj[w].insert(v);
                    }
                }
            }
        }
        UdgConstruction::SourceCliques => {
            for s in g.sources() {
                let clique = g.de_of(s);
                for v in clique {
                    adj[v] = adj[v].union(clique.without(v));
                }
            }
        }
    }
    UndirectedGraph::from_adjacency_unchecked(adj)
}

/// The minimal edge clique cover of a dependence graph induced by a DAG:
/// one clique `de(s)` per source `s`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliqueCover {
    cliques: Vec<(usize, NodeSet)>,
}

impl CliqueCover {
    /// `(source, clique)` pairs sorted by the clique's smallest member.
    pub fn cliques(&self) -> &[(usize, NodeSet)] {
        &self.cliques
    }

    pub fn len(&self) -> usize {
        self.cliques.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cliques.is_empty()
    }

    pub fn sources(&self) -> NodeSet {
        self.cliques.iter().map(|&(s, _)| s).collect()
    }

    /// The cliques without their source keys, sorted. Members of one
    /// equivalence class agree on this even when their sources differ.
    pub fn clique_sets(&self) -> Vec<NodeSet> {
        let mut sets: Vec<NodeSet> = self.cliques.iter().map(|&(_, c)| c).collect();
        sets.sort_unstable_by_key(|c| (c.first(), c.bits()));
        sets
    }

    /// Every edge of `u` lies in some clique, every clique is a clique of
    /// `u`, and dropping any clique uncovers an edge.
    pub fn is_minimal_cover_of(&self, u: &UndirectedGraph) -> bool {
        let n = u.node_count();
        let covered_by = |skip: Option<usize>, v: usize, w: usize| {
            self.cliques
                .iter()
                .enumerate()
                .any(|(i, &(_, c))| Some(i) != skip && c.contains(v) && c.contains(w))
        };
        if !self.cliques.iter().all(|&(_, c)| u.is_clique(c)) {
            return false;
        }
        let edges = u.edges();
        if !edges.iter().all(|&(v, w)| covered_by(None, v, w)) {
            return false;
        }
        // isolated nodes are covered by their singleton clique only
        let lone: NodeSet = (0..n).filter(|&v| u.neighbors(v).is_empty()).collect();
        (0..self.cliques.len()).all(|i| {
            let c = self.cliques[i].1;
            let needed_for_edge = edges.iter().any(|&(v, w)| !covered_by(Some(i), v, w));
            needed_for_edge || !c.intersection(lone).is_empty()
        })
    }
}

pub fn clique_cover(g: &Dag) -> CliqueCover {
    let mut cliques: Vec<(usize, NodeSet)> = g.sources().iter().map(|s| (s, g.de_of(s))).collect();
    cliques.sort_unstable_by_key(|&(s, c)| (c.first(), c.bits(), s));
    CliqueCover { cliques }
}

/// A dependence graph together with its clique cover.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UecCertificate {
    pub udg: UndirectedGraph,
    pub cover: CliqueCover,
}

pub fn certificate(g: &Dag) -> UecCertificate {
    UecCertificate { udg: udg_of(g), cover: clique_cover(g) }
}

fn check_same_size(a: &Dag, b: &Dag) -> Result<()> {
    if a.node_count() != b.node_count() {
        return Err(Error::NodeCountMismatch(a.node_count(), b.node_count()));
    }
    Ok(())
}

pub fn same_uec(a: &Dag, b: &Dag) -> Result<bool> {
    check_same_size(a, b)?;
    Ok(udg_of(a) == udg_of(b))
}

/// First pair `(v, w)`, `v < w`, on which the two graphs disagree about
/// unconditional dependence.
pub fn distinguishing_pair(a: &Dag, b: &Dag) -> Result<Option<(usize, usize)>> {
    check_same_size(a, b)?;
    let (ua, ub) = (udg_of(a), udg_of(b));
    for v in 0..a.node_count() {
        let diff = NodeSet::from_bits(ua.neighbors(v).bits() ^ ub.neighbors(v).bits());
        if let Some(w) = diff.iter().find(|&w| w > v) {
            return Ok(Some((v, w)));
        }
    }
    Ok(None)
}

/// True iff no single arc can be added while staying in the class.
pub fn is_maximal_in_uec(g: &Dag) -> bool {
    let n = g.node_count();
    (0..n).all(|v| {
        (0..n).filter(|&w| w != v).all(|w| {
            !matches!(
                classify_pair(g, v, w),
                Ok(PairClass::ImpliedByTransitivity | PairClass::PartiallyWeaklyCovered { .. })
            )
        })
    })
}

/// Node budget for the exact independent-set search.
pub const MIS_NODE_BUDGET: usize = 20;

/// Exact maximum independent set size by branch and bound.
pub fn max_independent_set_size(u: &UndirectedGraph) -> Result<usize> {
    if u.node_count() > MIS_NODE_BUDGET {
        return Err(Error::Budget(format!(
            "independent set search limited to {MIS_NODE_BUDGET} nodes, got {}",
            u.node_count()
        )));
    }
    fn branch(u: &UndirectedGraph, remaining: NodeSet, taken: usize, best: &mut usize) {
        if taken + remaining.len() <= *best {
            return;
        }
        // highest-degree vertex within the remaining graph
        let pick = remaining
            .iter()
            .max_by_key(|&v| u.neighbors(v).intersection(remaining).len());
        let Some(v) = pick else {
            *best = (*best).max(taken);
            return;
        };
        if u.neighbors(v).is_disjoint(remaining) {
            // no edges left: take everything
            *best = (*best).max(taken + remaining.len());
            return;
        }
        branch(u, remaining.difference(u.neighbors(v)).without(v), taken + 1, best);
        branch(u, remaining.without(v), taken, best);
    }
    let mut best = 0;
    branch(u, NodeSet::full(u.node_count()), 0, &mut best);
    Ok(best)
}
