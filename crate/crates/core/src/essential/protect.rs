// SPDX-License-Identifier: Apache-2.0

use crate::error::{Error, Result};
use crate::graph::ChainGraph;

/// One induced-subgraph match showing which arrows `v -> w` protects.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct ProtectorMatch {
    /// Configuration number, 1 to 4.
    pub configuration: u8,
    pub protected: Vec<(usize, usize)>,
}

fn require_arrow(g: &ChainGraph, v: usize, w: usize) -> Result<()> {
    g.check_node(v)?;
    g.check_node(w)?;
    if !g.has_directed(v, w) {
        return Err(Error::MissingEdge(v, w));
    }
    Ok(())
}

fn matches_unchecked(g: &ChainGraph, v: usize, w: usize) -> Vec<ProtectorMatch> {
    let mut out = Vec::new();
    let mut push = |configuration, protected: Vec<(usize, usize)>| {
        out.push(ProtectorMatch { configuration, protected });
    };
    // (1) v -> w -> a, v and a nonadjacent
    for a in g.children(w) {
        if a != v && !g.adjacent(v, a) {
            push(1, vec![(w, a)]);
        }
    }
    // (2) v -> w <- b, v and b nonadjacent
    for b in g.parents(w).without(v) {
        if !g.adjacent(v, b) {
            push(2, vec![(b, w)]);
        }
    }
    // (3) c -> v -> w with c -> w
    for c in g.parents(v).intersection(g.parents(w)) {
        push(3, vec![(c, w)]);
    }
    // (4) v -- d1 -- d2, all three into w, v and d2 nonadjacent
    for d1 in g.undirected_neighbors(v).intersection(g.parents(w)) {
        for d2 in g.undirected_neighbors(d1).intersection(g.parents(w)).without(v) {
            if !g.adjacent(v, d2) {
                push(4, vec![(d1, w), (d2, w)]);
            }
        }
    }
    out.sort();
    out
}

/// Every configuration in which the arrow `v -> w` protects other arrows,
/// matched as induced subgraphs.
pub fn protectors(g: &ChainGraph, v: usize, w: usize) -> Result<Vec<ProtectorMatch>> {
    require_arrow(g, v, w)?;
    Ok(matches_unchecked(g, v, w))
}

/// Whether some arrow protected by `v -> w` has no other protector.
pub fn is_sole_protector(g: &ChainGraph, v: usize, w: usize) -> Result<bool> {
    require_arrow(g, v, w)?;
    let protected_elsewhere = |edge: (usize, usize)| {
        g.directed_edges()
            .into_iter()
            .filter(|&e| e != (v, w))
            .any(|(x, y)| matches_unchecked(g, x, y).iter().any(|m| m.protected.contains(&edge)))
    };
    Ok(matches_unchecked(g, v, w)
        .iter()
        .flat_map(|m| m.protected.iter().copied())
        .any(|edge| !protected_elsewhere(edge)))
}

/// Whether any arrow of `g` lists `(a, b)` among the arrows it protects.
pub fn has_protector(g: &ChainGraph, a: usize, b: usize) -> bool {
    g.directed_edges()
        .into_iter()
        .any(|(x, y)| matches_unchecked(g, x, y).iter().any(|m| m.protected.contains(&(a, b))))
}
