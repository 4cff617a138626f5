// SPDX-License-Identifier: Apache-2.0

use std::fmt;

use super::dag::check_node_count;
use super::nodeset::NodeSet;
use crate::error::{Error, Result};

/// Simple undirected graph; skeletons and dependence graphs.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct UndirectedGraph {
    adj: Vec<NodeSet>,
}

impl UndirectedGraph {
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        check_node_count(n)?;
        let mut adj = vec![NodeSet::EMPTY; n];
        for (v, w) in edges {
            for x in [v, w] {
                if x >= n {
                    return Err(Error::NodeOutOfRange { node: x, node_count: n });
                }
            }
            if v == w {
                return Err(Error::SelfLoop(v));
            }
            adj[v].insert(w);
            adj[w].insert(v);
        }
        Ok(UndirectedGraph { adj })
    }

    pub fn empty(n: usize) -> Result<Self> {
        Self::new(n, [])
    }

    pub(crate) fn from_adjacency_unchecked(adj: Vec<NodeSet>) -> Self {
        debug_assert!(adj.iter().enumerate().all(|(v, a)| !a.contains(v)));
        UndirectedGraph { adj }
    }

    #[inline]
    pub fn node_count(&self) -> usize {
        self.adj.len()
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> NodeSet {
        self.adj[v]
    }

    #[inline]
    pub fn adjacent(&self, v: usize, w: usize) -> bool {
        v < self.adj.len() && self.adj[v].contains(w)
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|a| a.len()).sum::<usize>() / 2
    }

    /// Edges as `(min, max)` pairs in ascending order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for v in 0..self.adj.len() {
            for w in self.adj[v].iter().filter(|&w| w > v) {
                out.push((v, w));
            }
        }
        out
    }

    pub fn is_clique(&self, set: NodeSet) -> bool {
        set.iter().all(|v| set.without(v).is_subset(self.adj[v]))
    }

    pub fn is_independent(&self, set: NodeSet) -> bool {
        set.iter().all(|v| self.adj[v].is_disjoint(set))
    }

    /// Induced subgraph on `keep`; ids are preserved, other nodes become isolated.
    pub fn restricted_to(&self, keep: NodeSet) -> UndirectedGraph {
        let adj = self
            .adj
            .iter()
            .enumerate()
            .map(|(v, a)| if keep.contains(v) { a.intersection(keep) } else { NodeSet::EMPTY })
            .collect();
        UndirectedGraph { adj }
    }

    /// Connected components in order of their smallest member.
    pub fn components(&self) -> Vec<NodeSet> {
        let mut seen = NodeSet::EMPTY;
        let mut out = Vec::new();
        for v in 0..self.adj.len() {
            if seen.contains(v) {
                continue;
            }
            let comp = self.reach(NodeSet::singleton(v), NodeSet::full(self.adj.len()));
            seen = seen.union(comp);
            out.push(comp);
        }
        out
    }

    /// Nodes reachable from `start` through nodes of `within`.
    pub fn reach(&self, start: NodeSet, within: NodeSet) -> NodeSet {
        let mut seen = start;
        let mut frontier = start;
        while !frontier.is_empty() {
            let mut next = NodeSet::EMPTY;
            for v in frontier {
                next = next.union(self.adj[v]);
            }
            frontier = next.intersection(within).difference(seen);
            seen = seen.union(frontier);
        }
        seen
    }
}

impl fmt::Debug for UndirectedGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Ug({}; ", self.adj.len())?;
        for (i, (v, w)) in self.edges().iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{v}-{w}")?;
        }
        write!(f, ")")
    }
}
