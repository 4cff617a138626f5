// SPDX-License-Identifier: Apache-2.0
//! Definitional ground truth, written without the library's shortcuts.

use crate::graph::{Dag, NodeSet, UndirectedGraph};

/// Whether some simple path between `v` and `w` has no collider.
fn connected_without_collider(g: &Dag, v: usize, w: usize) -> bool {
    fn walk(g: &Dag, cur: usize, came_in: bool, target: usize, visited: NodeSet) -> bool {
        for next in g.neighbors(cur).difference(visited) {
            if came_in && g.has_edge(next, cur) {
                continue;
            }
            if next == target || walk(g, next, g.has_edge(cur, next), target, visited.with(next)) {
                return true;
            }
        }
        false
    }
    walk(g, v, false, w, NodeSet::singleton(v))
}

/// Dependence graph by raw collider-free path search.
pub fn udg(g: &Dag) -> UndirectedGraph {
    let n = g.node_count();
    let mut edges = Vec::new();
    for v in 0..n {
        for w in v + 1..n {
            if connected_without_collider(g, v, w) {
                edges.push((v, w));
            }
        }
    }
    UndirectedGraph::new(n, edges).expect("pairs are in range")
}

fn acyclic(parents: &[NodeSet]) -> bool {
    let mut left = NodeSet::full(parents.len());
    loop {
        let ready: NodeSet = left.iter().filter(|&v| parents[v].is_disjoint(left)).collect();
        if ready.is_empty() {
            return left.is_empty();
        }
        left = left.difference(ready);
    }
}

pub(crate) fn dag_from(parents: Vec<NodeSet>) -> Option<Dag> {
    if acyclic(&parents) {
        Dag::from_parents(parents)
    } else {
        None
    }
}

/// `g` plus `v -> w`, if that is still acyclic.
pub fn inserted(g: &Dag, v: usize, w: usize) -> Option<Dag> {
    let mut p = g.parent_sets().to_vec();
    p[w].insert(v);
    dag_from(p)
}

pub fn deleted(g: &Dag, v: usize, w: usize) -> Dag {
    let mut p = g.parent_sets().to_vec();
    p[w].remove(v);
    Dag::from_parents(p).expect("deleting an arc keeps a DAG acyclic")
}

/// `g` with `v -> w` turned around, if that is still acyclic.
pub fn reversed(g: &Dag, v: usize, w: usize) -> Option<Dag> {
    let mut p = g.parent_sets().to_vec();
    p[w].remove(v);
    p[v].insert(w);
    dag_from(p)
}

/// Skeleton and sorted v-structures `(a, c, b)` with `a < b`.
pub type MecKey = (UndirectedGraph, Vec<(usize, usize, usize)>);

pub fn mec_key(g: &Dag) -> MecKey {
    let n = g.node_count();
    let mut vs = Vec::new();
    for c in 0..n {
        for a in 0..n {
            for b in a + 1..n {
                if g.has_edge(a, c) && g.has_edge(b, c) && !g.adjacent(a, b) {
                    vs.push((a, c, b));
                }
            }
        }
    }
    vs.sort_unstable();
    (g.skeleton(), vs)
}

/// Size of a largest independent set, by trying every subset.
pub fn max_independent_set(u: &UndirectedGraph) -> usize {
    let n = u.node_count();
    (0u64..1 << n)
        .map(NodeSet::from_bits)
        .filter(|&s| s.iter().all(|v| u.neighbors(v).is_disjoint(s)))
        .map(|s| s.len())
        .max()
        .unwrap_or(0)
}
