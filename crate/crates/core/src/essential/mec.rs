// SPDX-License-Identifier: Apache-2.0

use std::collections::BTreeSet;

use super::chordal::all_mcs_orders;
use super::cpdag::{cpdag_of, Cpdag};
use crate::error::{Error, Result};
use crate::graph::{Dag, NodeSet};

/// Largest member list [`mec_members`] will build.
pub const MEC_MEMBER_BUDGET: usize = 1 << 16;
/// Largest number of search orderings explored in one chain component.
pub const MCS_ORDER_BUDGET: usize = 1 << 20;
/// Most undirected edges [`mec_members_exhaustive`] will try orienting.
pub const EXHAUSTIVE_EDGE_BUDGET: usize = 20;

/// Distinct orientations of one chain component, each stored as the parent
/// sets it adds.
fn component_orientations(g: &Cpdag, comp: NodeSet) -> Result<Vec<Vec<(usize, NodeSet)>>> {
    let und = g.undirected_part();
    let orders = all_mcs_orders(&und, comp, MCS_ORDER_BUDGET).ok_or_else(|| {
        Error::Budget(format!("more than {MCS_ORDER_BUDGET} search orderings in one chain component"))
    })?;
    let mut seen = BTreeSet::new();
    for order in orders {
        let mut pos = [0usize; crate::graph::MAX_NODES];
        for (i, &v) in order.iter().enumerate() {
            pos[v] = i;
        }
        let added: Vec<(usize, NodeSet)> = comp
            .iter()
            .map(|v| (v, und.neighbors(v).iter().filter(|&u| pos[u] < pos[v]).collect()))
            .collect();
        seen.insert(added);
    }
    Ok(seen.into_iter().collect())
}

/// All DAGs whose essential graph is `g`, in canonical order.
///
/// Each chain component is oriented by every maximum cardinality search
/// ordering, deduplicated, and the components are combined independently.
pub fn mec_members(g: &Cpdag) -> Result<Vec<Dag>> {
    let n = g.node_count();
    let base: Vec<NodeSet> = (0..n).map(|v| g.parents(v)).collect();
    let mut partial = vec![base];
    for comp in g.chain_components() {
        if comp.len() < 2 {
            continue;
        }
        let options = component_orientations(g, comp)?;
        if partial.len().saturating_mul(options.len()) > MEC_MEMBER_BUDGET {
            return Err(Error::Budget(format!("equivalence class has more than {MEC_MEMBER_BUDGET} members")));
        }
        partial = partial
            .iter()
            .flat_map(|p| {
                options.iter().map(move |added| {
                    let mut p = p.clone();
                    for &(v, extra) in added {
                        p[v] = p[v].union(extra);
                    }
                    p
                })
            })
            .collect();
    }
    let mut members: Vec<Dag> = partial
        .into_iter()
        .map(|p| {
            Dag::from_parents(p).ok_or_else(|| Error::Verification("search ordering produced a cycle".into()))
        })
        .collect::<Result<_>>()?;
    members.sort_unstable();
    Ok(members)
}

/// All DAGs whose essential graph is `g`, found by trying every orientation
/// of the undirected edges. Only practical for small graphs.
pub fn mec_members_exhaustive(g: &Cpdag) -> Result<Vec<Dag>> {
    let edges = g.undirected_edges();
    if edges.len() > EXHAUSTIVE_EDGE_BUDGET {
        return Err(Error::Budget(format!(
            "{} undirected edges exceed the exhaustive limit of {EXHAUSTIVE_EDGE_BUDGET}",
            edges.len()
        )));
    }
    let n = g.node_count();
    let mut members = Vec::new();
    for mask in 0u64..1 << edges.len() {
        let mut parents: Vec<NodeSet> = (0..n).map(|v| g.parents(v)).collect();
        for (i, &(a, b)) in edges.iter().enumerate() {
            if mask >> i & 1 == 0 {
                parents[b].insert(a);
            } else {
                parents[a].insert(b);
            }
        }
        if let Some(d) = Dag::from_parents(parents) {
            if cpdag_of(&d) == *g {
                members.push(d);
            }
        }
    }
    members.sort_unstable();
    Ok(members)
}
