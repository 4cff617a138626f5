// SPDX-License-Identifier: Apache-2.0
//! Maximum cardinality search, chordality, and maximal cliques.

use crate::graph::{NodeSet, UndirectedGraph};

/// One maximum cardinality search ordering of `within`, breaking ties by
/// smallest id.
pub fn mcs_order(g: &UndirectedGraph, within: NodeSet) -> Vec<usize> {
    let mut order = Vec::with_capacity(within.len());
    let mut numbered = NodeSet::EMPTY;
    while numbered != within {
        let v = within
            .difference(numbered)
            .iter()
            .max_by_key(|&u| (g.neighbors(u).intersection(numbered).len(), std::cmp::Reverse(u)))
            .unwrap();
        order.push(v);
        numbered.insert(v);
    }
    order
}

/// Every maximum cardinality search ordering of `within`, from every start
/// vertex and every tie branch. Stops early once `limit` orderings have been
/// produced and returns `None`.
pub fn all_mcs_orders(g: &UndirectedGraph, within: NodeSet, limit: usize) -> Option<Vec<Vec<usize>>> {
    fn go(
        g: &UndirectedGraph,
        within: NodeSet,
        numbered: NodeSet,
        prefix: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
        limit: usize,
    ) -> bool {
        if numbered == within {
            if out.len() >= limit {
                return false;
            }
            out.push(prefix.clone());
            return true;
        }
        let rest = within.difference(numbered);
        let best = rest.iter().map(|u| g.neighbors(u).intersection(numbered).len()).max().unwrap();
        for u in rest {
            if g.neighbors(u).intersection(numbered).len() == best {
                prefix.push(u);
                let ok = go(g, within, numbered.with(u), prefix, out, limit);
                prefix.pop();
                if !ok {
                    return false;
                }
            }
        }
        true
    }
    let mut out = Vec::new();
    go(g, within, NodeSet::EMPTY, &mut Vec::new(), &mut out, limit).then_some(out)
}

/// Whether the subgraph induced by `within` is chordal: the reverse of an
/// MCS ordering must be a perfect elimination ordering.
pub fn is_chordal(g: &UndirectedGraph, within: NodeSet) -> bool {
    let order = mcs_order(g, within);
    let mut earlier = NodeSet::EMPTY;
    for &v in &order {
        let back = g.neighbors(v).intersection(earlier);
        // the latest-numbered earlier neighbour must see all the others
        if let Some(&p) = order.iter().rev().find(|&&u| back.contains(u)) {
            if !back.without(p).is_subset(g.neighbors(p)) {
                return false;
            }
        }
        earlier.insert(v);
    }
    true
}

/// Maximal cliques of the subgraph induced by `within`, via Bron–Kerbosch
/// with pivoting. Sorted by bit pattern.
pub fn maximal_cliques(g: &UndirectedGraph, within: NodeSet) -> Vec<NodeSet> {
    fn bk(g: &UndirectedGraph, within: NodeSet, r: NodeSet, mut p: NodeSet, mut x: NodeSet, out: &mut Vec<NodeSet>) {
        if p.is_empty() && x.is_empty() {
            out.push(r);
            return;
        }
        let nb = |u: usize| g.neighbors(u).intersection(within);
        let pivot = p.union(x).iter().max_by_key(|&u| nb(u).intersection(p).len()).unwrap();
        for v in p.difference(nb(pivot)) {
            bk(g, within, r.with(v), p.intersection(nb(v)), x.intersection(nb(v)), out);
            p.remove(v);
            x.insert(v);
        }
    }
    let mut out = Vec::new();
    if !within.is_empty() {
        bk(g, within, NodeSet::EMPTY, within, NodeSet::EMPTY, &mut out);
    }
    out.sort_unstable();
    out
}
