// SPDX-License-Identifier: Apache-2.0

use std::fmt;
use std::ops::Deref;

use super::chordal::is_chordal;
use crate::error::{Error, Result};
use crate::graph::{ChainGraph, Dag, NodeSet};

/// A chain graph known to be the essential graph of some Markov equivalence
/// class.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cpdag(ChainGraph);

/// The first essential-graph condition a chain graph fails.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CpdagViolation {
    /// The chain component is not chordal.
    NonChordalComponent(NodeSet),
    /// `p -> v -- w` with `p` and `w` nonadjacent.
    ArrowIntoLine { p: usize, v: usize, w: usize },
    /// `tail -> head` is not strongly protected.
    UnprotectedArrow { tail: usize, head: usize },
}

impl CpdagViolation {
    pub fn describe(&self, labels: &[String]) -> String {
        match *self {
            CpdagViolation::NonChordalComponent(c) => {
                let names: Vec<&str> = c.iter().map(|u| labels[u].as_str()).collect();
                format!("chain component {{{}}} is not chordal", names.join(", "))
            }
            CpdagViolation::ArrowIntoLine { p, v, w } => format!(
                "induced subgraph {} -> {} -- {} with {} and {} nonadjacent",
                labels[p], labels[v], labels[w], labels[p], labels[w]
            ),
            CpdagViolation::UnprotectedArrow { tail, head } => {
                format!("edge {} -> {} is not strongly protected", labels[tail], labels[head])
            }
        }
    }
}

/// Whether the arrow `a -> b` of `g` sits in one of the four strongly
/// protecting configurations.
pub fn is_strongly_protected(g: &ChainGraph, a: usize, b: usize) -> bool {
    let pa_a = g.parents(a);
    let pa_b = g.parents(b);
    if pa_a.iter().any(|c| !g.adjacent(c, b)) {
        return true;
    }
    if pa_b.without(a).iter().any(|c| !g.adjacent(c, a)) {
        return true;
    }
    if !g.children(a).intersection(pa_b).is_empty() {
        return true;
    }
    let both = g.undirected_neighbors(a).intersection(pa_b);
    both.iter().any(|c1| both.iter().any(|c2| c1 < c2 && !g.adjacent(c1, c2)))
}

/// Checks the essential-graph conditions in a fixed order: chordal chain
/// components, then no `p -> v -- w` induced subgraph, then strong
/// protection of every arrow.
pub fn check_cpdag(g: &ChainGraph) -> Option<CpdagViolation> {
    let und = g.undirected_part();
    for c in g.chain_components() {
        if c.len() > 3 && !is_chordal(&und, c) {
            return Some(CpdagViolation::NonChordalComponent(c));
        }
    }
    for v in g.nodes() {
        for p in g.parents(v) {
            if let Some(w) = g.undirected_neighbors(v).iter().find(|&w| !g.adjacent(p, w)) {
                return Some(CpdagViolation::ArrowIntoLine { p, v, w });
            }
        }
    }
    g.directed_edges()
        .into_iter()
        .find(|&(a, b)| !is_strongly_protected(g, a, b))
        .map(|(tail, head)| CpdagViolation::UnprotectedArrow { tail, head })
}

impl Cpdag {
    /// Validates `g`, naming the first violated condition on failure.
    pub fn new(g: ChainGraph) -> Result<Self> {
        match check_cpdag(&g) {
            None => Ok(Cpdag(g)),
            Some(violation) => {
                let labels: Vec<String> = (0..g.node_count()).map(|i| i.to_string()).collect();
                Err(Error::InvalidCpdag(violation.describe(&labels)))
            }
        }
    }

    pub fn graph(&self) -> &ChainGraph {
        &self.0
    }

    pub fn into_inner(self) -> ChainGraph {
        self.0
    }
}

impl Deref for Cpdag {
    type Target = ChainGraph;

    fn deref(&self) -> &ChainGraph {
        &self.0
    }
}

impl fmt::Debug for Cpdag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// Essential graph of `g`: arrows of v-structures kept, everything else
/// undirected, then orientation rules applied until nothing changes.
pub fn cpdag_of(g: &Dag) -> Cpdag {
    let n = g.node_count();
    let mut parents = vec![NodeSet::EMPTY; n];
    for (a, c, b) in g.v_structures() {
        parents[c].insert(a);
        parents[c].insert(b);
    }
    let mut und: Vec<NodeSet> = (0..n).map(|v| g.neighbors(v).difference(parents[v])).collect();
    for (v, ps) in parents.iter().enumerate() {
        for p in *ps {
            und[p].remove(v);
        }
    }
    let adjacent = |x: usize, y: usize| g.adjacent(x, y);
    loop {
        let mut changed = false;
        for x in 0..n {
            for y in und[x] {
                let children_x: NodeSet = (0..n).filter(|&c| parents[c].contains(x)).collect();
                let r1 = parents[x].iter().any(|a| !adjacent(a, y));
                let r2 = !children_x.intersection(parents[y]).is_empty();
                let both = und[x].intersection(parents[y]);
                let r3 = both.iter().any(|c| both.iter().any(|d| c < d && !adjacent(c, d)));
                if r1 || r2 || r3 {
                    und[x].remove(y);
                    und[y].remove(x);
                    parents[y].insert(x);
                    changed = true;
                }
            }
        }
        if !changed {
            break;
        }
    }
    Cpdag(ChainGraph::from_parts_unchecked(parents, und))
}
