// SPDX-License-Identifier: Apache-2.0

use std::cmp::Reverse;
use std::collections::BinaryHeap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::OnceLock;

use super::nodeset::{NodeSet, MAX_NODES};
use super::undirected::UndirectedGraph;
use crate::error::{Error, Result};

/// A labeled directed acyclic graph over dense node ids `0..node_count`.
///
/// Values are immutable; edits return new graphs. Ancestor and descendant
/// closures are computed on first use and cached.
#[derive(Clone)]
pub struct Dag {
    n: usize,
    parents: Vec<NodeSet>,
    children: Vec<NodeSet>,
    closure: OnceLock<Closure>,
}

#[derive(Clone)]
struct Closure {
    ancestors: Vec<NodeSet>,
    descendants: Vec<NodeSet>,
}

pub(crate) fn check_node_count(n: usize) -> Result<()> {
    if n == 0 || n > MAX_NODES {
        return Err(Error::NodeCount { got: n, max: MAX_NODES });
    }
    Ok(())
}

impl Dag {
    /// Builds a DAG from `(tail, head)` pairs. Repeated pairs are ignored.
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        check_node_count(n)?;
        let mut parents = vec![NodeSet::EMPTY; n];
        for (v, w) in edges {
            for x in [v, w] {
                if x >= n {
                    return Err(Error::NodeOutOfRange { node: x, node_count: n });
                }
            }
            if v == w {
                return Err(Error::SelfLoop(v));
            }
            if parents[v].contains(w) {
                return Err(Error::ParallelEdge(v, w));
            }
            parents[w].insert(v);
        }
        if let Some((v, w)) = find_cycle_edge(&parents) {
            return Err(Error::Cycle(v, w));
        }
        Ok(Self::from_parents_unchecked(parents))
    }

    pub fn empty(n: usize) -> Result<Self> {
        Self::new(n, [])
    }

    /// Builds a graph from per-node parent sets, returning `None` if the
    /// result would not be a DAG.
    pub fn from_parents(parents: Vec<NodeSet>) -> Option<Self> {
        let n = parents.len();
        if n == 0 || n > MAX_NODES {
            return None;
        }
        let all = NodeSet::full(n);
        for (v, p) in parents.iter().enumerate() {
            if p.contains(v) || !p.is_subset(all) {
                return None;
            }
        }
        if find_cycle_edge(&parents).is_some() {
            return None;
        }
        Some(Self::from_parents_unchecked(parents))
    }

    fn from_parents_unchecked(parents: Vec<NodeSet>) -> Self {
        let n = parents.len();
        let mut children = vec![NodeSet::EMPTY; n];
        for (w, p) in parents.iter().enumerate() {
            for v in p.iter() {
                children[v].insert(w);
            }
        }
        Dag { n, parents, children, closure: OnceLock::new() }
    }

    #[inline]
    pub fn node_count(&self) -> usize {
        self.n
    }

    pub fn nodes(&self) -> NodeSet {
        NodeSet::full(self.n)
    }

    #[inline]
    pub fn parents(&self, v: usize) -> NodeSet {
        self.parents[v]
    }

    #[inline]
    pub fn children(&self, v: usize) -> NodeSet {
        self.children[v]
    }

    pub fn parent_sets(&self) -> &[NodeSet] {
        &self.parents
    }

    #[inline]
    pub fn has_edge(&self, v: usize, w: usize) -> bool {
        w < self.n && self.parents[w].contains(v)
    }

    #[inline]
    pub fn adjacent(&self, v: usize, w: usize) -> bool {
        self.has_edge(v, w) || self.has_edge(w, v)
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> NodeSet {
        self.parents[v].union(self.children[v])
    }

    pub fn edge_count(&self) -> usize {
        self.parents.iter().map(|p| p.len()).sum()
    }

    /// All edges sorted by `(tail, head)`.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for v in 0..self.n {
            for w in self.children[v] {
                out.push((v, w));
            }
        }
        out
    }

    /// Nodes without parents.
    pub fn sources(&self) -> NodeSet {
        (0..self.n).filter(|&v| self.parents[v].is_empty()).collect()
    }

    pub(crate) fn check_node(&self, v: usize) -> Result<()> {
        if v >= self.n {
            return Err(Error::NodeOutOfRange { node: v, node_count: self.n });
        }
        Ok(())
    }

    pub(crate) fn check_set(&self, set: NodeSet) -> Result<()> {
        match set.difference(self.nodes()).first() {
            Some(v) => Err(Error::NodeOutOfRange { node: v, node_count: self.n }),
            None => Ok(()),
        }
    }

    fn closure(&self) -> &Closure {
        self.closure.get_or_init(|| {
            let order = self.topological_order();
            let mut ancestors = vec![NodeSet::EMPTY; self.n];
            for &v in &order {
                let mut an = NodeSet::singleton(v);
                for p in self.parents[v] {
                    an = an.union(ancestors[p]);
                }
                ancestors[v] = an;
            }
            let mut descendants = vec![NodeSet::EMPTY; self.n];
            for &v in order.iter().rev() {
                let mut de = NodeSet::singleton(v);
                for c in self.children[v] {
                    de = de.union(descendants[c]);
                }
                descendants[v] = de;
            }
            Closure { ancestors, descendants }
        })
    }

    /// Reflexive ancestors of a single node.
    #[inline]
    pub fn an_of(&self, v: usize) -> NodeSet {
        self.closure().ancestors[v]
    }

    /// Reflexive descendants of a single node.
    #[inline]
    pub fn de_of(&self, v: usize) -> NodeSet {
        self.closure().descendants[v]
    }

    /// `an(A)`, reflexive. Members outside the node range are ignored.
    pub fn an(&self, set: NodeSet) -> NodeSet {
        let c = self.closure();
        set.intersection(self.nodes())
            .iter()
            .fold(NodeSet::EMPTY, |acc, v| acc.union(c.ancestors[v]))
    }

    /// `de(A)`, reflexive.
    pub fn de(&self, set: NodeSet) -> NodeSet {
        let c = self.closure();
        set.intersection(self.nodes())
            .iter()
            .fold(NodeSet::EMPTY, |acc, v| acc.union(c.descendants[v]))
    }

    /// `pa(A)`: union of the parent sets.
    pub fn pa(&self, set: NodeSet) -> NodeSet {
        set.intersection(self.nodes())
            .iter()
            .fold(NodeSet::EMPTY, |acc, v| acc.union(self.parents[v]))
    }

    /// Maximal ancestors: the source nodes among `an(A)`.
    pub fn ma(&self, set: NodeSet) -> NodeSet {
        let an = self.an(set);
        an.iter().filter(|&v| self.parents[v].is_empty()).collect()
    }

    pub fn ancestors(&self, set: NodeSet) -> Result<NodeSet> {
        self.check_set(set)?;
        Ok(self.an(set))
    }

    pub fn descendants(&self, set: NodeSet) -> Result<NodeSet> {
        self.check_set(set)?;
        Ok(self.de(set))
    }

    pub fn parents_of_set(&self, set: NodeSet) -> Result<NodeSet> {
        self.check_set(set)?;
        Ok(self.pa(set))
    }

    pub fn maximal_ancestors(&self, set: NodeSet) -> Result<NodeSet> {
        self.check_set(set)?;
        Ok(self.ma(set))
    }

    /// Whether `v` and `w` are d-connected given the empty set, decided by a
    /// shared ancestor.
    pub fn trek_reachable(&self, v: usize, w: usize) -> Result<bool> {
        self.check_node(v)?;
        self.check_node(w)?;
        if v == w {
            return Err(Error::SameNode(v));
        }
        Ok(!self.an_of(v).is_disjoint(self.an_of(w)))
    }

    /// Definitional trek test: searches simple paths from `v` to `w` that
    /// contain no collider. Exponential; meant as a ground truth for small
    /// graphs.
    pub fn has_collider_free_path(&self, v: usize, w: usize) -> bool {
        assert!(v < self.n && w < self.n && v != w);
        // arrived_into: the last edge on the path points into the current node
        fn search(g: &Dag, cur: usize, target: usize, visited: NodeSet, arrived_into: bool) -> bool {
            for next in g.neighbors(cur).difference(visited) {
                let into_cur = g.has_edge(next, cur);
                if arrived_into && into_cur {
                    continue;
                }
                if next == target {
                    return true;
                }
                let into_next = g.has_edge(cur, next);
                if search(g, next, target, visited.with(next), into_next) {
                    return true;
                }
            }
            false
        }
        search(self, v, w, NodeSet::singleton(v), false)
    }

    /// Kahn's algorithm, always taking the smallest available id.
    pub fn topological_order(&self) -> Vec<usize> {
        let mut indeg: Vec<usize> = self.parents.iter().map(|p| p.len()).collect();
        let mut heap: BinaryHeap<Reverse<usize>> =
            (0..self.n).filter(|&v| indeg[v] == 0).map(Reverse).collect();
        let mut order = Vec::with_capacity(self.n);
        while let Some(Reverse(v)) = heap.pop() {
            order.push(v);
            for c in self.children[v] {
                indeg[c] -= 1;
                if indeg[c] == 0 {
                    heap.push(Reverse(c));
                }
            }
        }
        debug_assert_eq!(order.len(), self.n);
        order
    }

    /// Adds `v -> w`. Fails if the pair is already adjacent or a cycle arises.
    pub fn with_edge(&self, v: usize, w: usize) -> Result<Dag> {
        self.check_node(v)?;
        self.check_node(w)?;
        if v == w {
            return Err(Error::SelfLoop(v));
        }
        if self.adjacent(v, w) {
            return Err(Error::AdjacentPair(v, w));
        }
        if self.an_of(v).contains(w) {
            return Err(Error::Cycle(v, w));
        }
        let mut parents = self.parents.clone();
        parents[w].insert(v);
        Ok(Self::from_parents_unchecked(parents))
    }

    pub fn without_edge(&self, v: usize, w: usize) -> Result<Dag> {
        self.check_node(v)?;
        self.check_node(w)?;
        if !self.has_edge(v, w) {
            return Err(Error::MissingEdge(v, w));
        }
        let mut parents = self.parents.clone();
        parents[w].remove(v);
        Ok(Self::from_parents_unchecked(parents))
    }

    /// Replaces `v -> w` with `w -> v`.
    pub fn with_reversed(&self, v: usize, w: usize) -> Result<Dag> {
        self.check_node(v)?;
        self.check_node(w)?;
        if !self.has_edge(v, w) {
            return Err(Error::MissingEdge(v, w));
        }
        // a cycle appears iff another directed path v ~> w exists
        if self.an(self.parents[w].without(v)).contains(v) {
            return Err(Error::Cycle(w, v));
        }
        let mut parents = self.parents.clone();
        parents[w].remove(v);
        parents[v].insert(w);
        Ok(Self::from_parents_unchecked(parents))
    }

    pub fn skeleton(&self) -> UndirectedGraph {
        let adj = (0..self.n).map(|v| self.neighbors(v)).collect();
        UndirectedGraph::from_adjacency_unchecked(adj)
    }

    /// Unshielded colliders `(a, c, b)` with `a -> c <- b`, `a < b`, and `a`, `b`
    /// nonadjacent; sorted.
    pub fn v_structures(&self) -> Vec<(usize, usize, usize)> {
        let mut out = Vec::new();
        for c in 0..self.n {
            let pa = self.parents[c];
            for a in pa {
                for b in pa.iter().filter(|&b| b > a) {
                    if !self.adjacent(a, b) {
                        out.push((a, c, b));
                    }
                }
            }
        }
        out.sort_unstable();
        out
    }
}

/// Returns an edge on some directed cycle, if one exists.
fn find_cycle_edge(parents: &[NodeSet]) -> Option<(usize, usize)> {
    let n = parents.len();
    let mut removed = NodeSet::EMPTY;
    loop {
        let ready: NodeSet = (0..n)
            .filter(|&v| !removed.contains(v) && parents[v].is_subset(removed))
            .collect();
        if ready.is_empty() {
            break;
        }
        removed = removed.union(ready);
    }
    let rest = NodeSet::full(n).difference(removed);
    let w = rest.first()?;
    let v = parents[w].intersection(rest).first()?;
    Some((v, w))
}

impl PartialEq for Dag {
    fn eq(&self, other: &Self) -> bool {
        self.parents == other.parents
    }
}

impl Eq for Dag {}

impl Hash for Dag {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.parents.hash(state);
    }
}

impl PartialOrd for Dag {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Dag {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.parents.cmp(&other.parents)
    }
}

impl fmt::Debug for Dag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Dag({}; ", self.n)?;
        let edges = self.edges();
        for (i, (v, w)) in edges.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{v}->{w}")?;
        }
        write!(f, ")")
    }
}
