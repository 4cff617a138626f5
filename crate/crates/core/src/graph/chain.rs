// SPDX-License-Identifier: Apache-2.0

use std::fmt;

use super::dag::{check_node_count, Dag};
use super::nodeset::NodeSet;
use super::undirected::UndirectedGraph;
use crate::error::{Error, Result};

/// A mixed graph with directed and undirected edges and no partially
/// directed cycle. PDAGs and essential graphs live here.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ChainGraph {
    parents: Vec<NodeSet>,
    undirected: Vec<NodeSet>,
}

impl ChainGraph {
    pub fn new(
        n: usize,
        directed: impl IntoIterator<Item = (usize, usize)>,
        undirected: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self> {
        check_node_count(n)?;
        let mut parents = vec![NodeSet::EMPTY; n];
        let mut und = vec![NodeSet::EMPTY; n];
        let check = |v: usize, w: usize| -> Result<()> {
            for x in [v, w] {
                if x >= n {
                    return Err(Error::NodeOutOfRange { node: x, node_count: n });
                }
            }
            if v == w {
                return Err(Error::SelfLoop(v));
            }
            Ok(())
        };
        for (v, w) in directed {
            check(v, w)?;
            if parents[v].contains(w) {
                return Err(Error::ParallelEdge(v, w));
            }
            parents[w].insert(v);
        }
        for (v, w) in undirected {
            check(v, w)?;
            if parents[v].contains(w) || parents[w].contains(v) {
                return Err(Error::ParallelEdge(v, w));
            }
            und[v].insert(w);
            und[w].insert(v);
        }
        let g = ChainGraph { parents, undirected: und };
        g.check_no_partially_directed_cycle()?;
        Ok(g)
    }

    pub(crate) fn from_parts_unchecked(parents: Vec<NodeSet>, undirected: Vec<NodeSet>) -> Self {
        ChainGraph { parents, undirected }
    }

    pub fn from_dag(dag: &Dag) -> Self {
        ChainGraph {
            parents: dag.parent_sets().to_vec(),
            undirected: vec![NodeSet::EMPTY; dag.node_count()],
        }
    }

    fn check_no_partially_directed_cycle(&self) -> Result<()> {
        // a directed edge v -> w closes a partially directed cycle iff w <= v
        for w in 0..self.node_count() {
            for v in self.parents[w] {
                if self.anterior_unchecked(v).contains(w) {
                    return Err(Error::PartiallyDirectedCycle(v, w));
                }
            }
        }
        Ok(())
    }

    #[inline]
    pub fn node_count(&self) -> usize {
        self.parents.len()
    }

    pub fn nodes(&self) -> NodeSet {
        NodeSet::full(self.node_count())
    }

    #[inline]
    pub fn parents(&self, v: usize) -> NodeSet {
        self.parents[v]
    }

    pub fn children(&self, v: usize) -> NodeSet {
        (0..self.node_count()).filter(|&c| self.parents[c].contains(v)).collect()
    }

    /// Undirected neighbours.
    #[inline]
    pub fn undirected_neighbors(&self, v: usize) -> NodeSet {
        self.undirected[v]
    }

    /// All neighbours regardless of edge type.
    pub fn neighbors(&self, v: usize) -> NodeSet {
        self.parents[v].union(self.children(v)).union(self.undirected[v])
    }

    #[inline]
    pub fn has_directed(&self, v: usize, w: usize) -> bool {
        w < self.node_count() && self.parents[w].contains(v)
    }

    #[inline]
    pub fn has_undirected(&self, v: usize, w: usize) -> bool {
        v < self.node_count() && self.undirected[v].contains(w)
    }

    pub fn adjacent(&self, v: usize, w: usize) -> bool {
        self.has_directed(v, w) || self.has_directed(w, v) || self.has_undirected(v, w)
    }

    /// Number of directed edges pointing into `v`.
    pub fn in_degree(&self, v: usize) -> usize {
        self.parents[v].len()
    }

    pub fn directed_edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for w in 0..self.node_count() {
            for v in self.parents[w] {
                out.push((v, w));
            }
        }
        out.sort_unstable();
        out
    }

    pub fn undirected_edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for v in 0..self.node_count() {
            for w in self.undirected[v].iter().filter(|&w| w > v) {
                out.push((v, w));
            }
        }
        out
    }

    pub fn is_dag(&self) -> bool {
        self.undirected.iter().all(|u| u.is_empty())
    }

    pub fn to_dag(&self) -> Option<Dag> {
        if !self.is_dag() {
            return None;
        }
        Dag::from_parents(self.parents.clone())
    }

    pub fn skeleton(&self) -> UndirectedGraph {
        let adj = (0..self.node_count()).map(|v| self.neighbors(v)).collect();
        UndirectedGraph::from_adjacency_unchecked(adj)
    }

    /// The undirected part as a graph on the same node set.
    pub fn undirected_part(&self) -> UndirectedGraph {
        UndirectedGraph::from_adjacency_unchecked(self.undirected.clone())
    }

    pub(crate) fn check_node(&self, v: usize) -> Result<()> {
        if v >= self.node_count() {
            return Err(Error::NodeOutOfRange { node: v, node_count: self.node_count() });
        }
        Ok(())
    }

    /// Blocks of mutual `<=` reachability, i.e. connected components of the
    /// undirected part, ordered by smallest member.
    pub fn chain_components(&self) -> Vec<NodeSet> {
        self.undirected_part().components()
    }

    /// Chain component containing `v`.
    pub fn component_of(&self, v: usize) -> NodeSet {
        self.undirected_part().reach(NodeSet::singleton(v), self.nodes())
    }

    fn anterior_unchecked(&self, v: usize) -> NodeSet {
        let mut seen = NodeSet::singleton(v);
        let mut frontier = seen;
        while !frontier.is_empty() {
            let mut next = NodeSet::EMPTY;
            for u in frontier {
                next = next.union(self.parents[u]).union(self.undirected[u]);
            }
            frontier = next.difference(seen);
            seen = seen.union(frontier);
        }
        seen
    }

    /// `at(v)`: nodes `u` with `u <= v` (reflexive).
    pub fn anterior(&self, v: usize) -> Result<NodeSet> {
        self.check_node(v)?;
        Ok(self.anterior_unchecked(v))
    }

    /// `mt(v)`: members `u` of `at(v)` whose anterior is exactly their chain
    /// component.
    pub fn minimal_anterior(&self, v: usize) -> Result<NodeSet> {
        let at = self.anterior(v)?;
        Ok(at
            .iter()
            .filter(|&u| self.anterior_unchecked(u) == self.component_of(u))
            .collect())
    }

    /// Removes the edge between `v` and `w`, whichever type it is.
    pub fn without_edge(&self, v: usize, w: usize) -> Result<ChainGraph> {
        self.check_node(v)?;
        self.check_node(w)?;
        let mut g = self.clone();
        if g.parents[w].contains(v) {
            g.parents[w].remove(v);
        } else if g.parents[v].contains(w) {
            g.parents[v].remove(w);
        } else if g.undirected[v].contains(w) {
            g.undirected[v].remove(w);
            g.undirected[w].remove(v);
        } else {
            return Err(Error::MissingEdge(v, w));
        }
        Ok(g)
    }
}

impl fmt::Debug for ChainGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Cg({}; ", self.node_count())?;
        let mut first = true;
        for (v, w) in self.directed_edges() {
            if !first {
                write!(f, ", ")?;
            }
            first = false;
            write!(f, "{v}->{w}")?;
        }
        for (v, w) in self.undirected_edges() {
            if !first {
                write!(f, ", ")?;
            }
            first = false;
            write!(f, "{v}-{w}")?;
        }
        write!(f, ")")
    }
}
