// SPDX-License-Identifier: Apache-2.0

use std::collections::BTreeSet;

use super::chordal::maximal_cliques;
use super::cpdag::{cpdag_of, Cpdag};
use super::mec::mec_members;
use super::protect::is_sole_protector;
use crate::error::{Error, Result};
use crate::graph::{ChainGraph, NodeSet};
use crate::moves::{classify_pair, PairClass};
use crate::udg::udg_of;

fn require_edge(g: &ChainGraph, v: usize, w: usize) -> Result<()> {
    g.check_node(v)?;
    g.check_node(w)?;
    if !g.has_directed(v, w) && !g.has_undirected(v, w) {
        return Err(Error::MissingEdge(v, w));
    }
    Ok(())
}

/// Removability of `v -> w` or `v -- w`: after deleting the edge, every
/// minimal anterior node of `v` must be one of `w`.
pub fn is_removable(g: &Cpdag, v: usize, w: usize) -> Result<bool> {
    require_edge(g, v, w)?;
    let h = g.without_edge(v, w)?;
    Ok(h.minimal_anterior(v)?.is_subset(h.minimal_anterior(w)?))
}

/// Removability by search: some member of the class holds the edge as an
/// arc whose deletion leaves its endpoints implied by transitivity or
/// partially weakly covered. For an undirected edge either orientation of
/// the arc is accepted.
pub fn is_removable_by_members(g: &Cpdag, v: usize, w: usize) -> Result<bool> {
    require_edge(g, v, w)?;
    for d in mec_members(g)? {
        let (a, b) = if d.has_edge(v, w) { (v, w) } else { (w, v) };
        let cut = d.without_edge(a, b)?;
        match classify_pair(&cut, a, b)? {
            PairClass::ImpliedByTransitivity | PairClass::PartiallyWeaklyCovered { .. } => return Ok(true),
            _ => {}
        }
    }
    Ok(false)
}

/// Whether `g` has at least one partially directed trek between `v` and `w`
/// and every such trek is leading: `v -> u1` followed only by undirected
/// edges.
///
/// A partially directed trek is a simple path with at least one directed
/// edge on which no arrow pointing towards `w` comes before an arrow
/// pointing back towards `v`, so some orientation of its lines makes it
/// collider free.
pub fn leading_treks_only(g: &ChainGraph, v: usize, w: usize) -> Result<bool> {
    g.check_node(v)?;
    g.check_node(w)?;
    if v == w {
        return Err(Error::SameNode(v));
    }
    #[derive(Clone, Copy, Default)]
    struct State {
        seen_forward: bool,
        directed: usize,
        leading: bool,
    }
    struct Search<'a> {
        g: &'a ChainGraph,
        target: usize,
        found: bool,
        all_leading: bool,
    }
    impl Search<'_> {
        fn go(&mut self, at: usize, visited: NodeSet, depth: usize, st: State) {
            for u in self.g.neighbors(at).difference(visited) {
                let mut next = st;
                if self.g.has_directed(at, u) {
                    next.seen_forward = true;
                    next.directed += 1;
                    next.leading &= depth == 0;
                } else if self.g.has_directed(u, at) {
                    if st.seen_forward {
                        continue;
                    }
                    next.directed += 1;
                    next.leading = false;
                }
                if u == self.target {
                    if next.directed > 0 {
                        self.found = true;
                        self.all_leading &= next.leading && next.directed == 1;
                    }
                    continue;
                }
                self.go(u, visited.with(u), depth + 1, next);
            }
        }
    }
    let mut s = Search { g, target: w, found: false, all_leading: true };
    s.go(v, NodeSet::singleton(v), 0, State { leading: true, ..State::default() });
    Ok(s.found && s.all_leading)
}

/// Closed-form description of the width-1 completions of a removal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CompletionPrediction {
    /// Common neighbours `T` of `v` and `w` inside `w`'s chain component.
    pub t: NodeSet,
    pub is_already_complete: bool,
    pub predicted_count: usize,
    /// `sum(2^|K| - 1)` over the maximal cliques `K` of the graph on `T`,
    /// reported only where the count uses it.
    pub clique_term: Option<usize>,
}

/// Predicts how many width-1 completions removing `v -> w` or `v -- w`
/// has. Fails if the edge is not removable.
pub fn predict_completions(g: &Cpdag, v: usize, w: usize) -> Result<CompletionPrediction> {
    if !is_removable(g, v, w)? {
        return Err(Error::Precondition(format!("edge {v} {w} is not removable")));
    }
    let t = g.neighbors(v).intersection(g.undirected_neighbors(w));
    if g.has_directed(v, w) {
        if t.is_empty() && !is_sole_protector(g, v, w)? {
            return Ok(CompletionPrediction { t, is_already_complete: true, predicted_count: 1, clique_term: None });
        }
        let c: usize = maximal_cliques(&g.undirected_part(), t).iter().map(|k| (1usize << k.len()) - 1).sum();
        let leading = leading_treks_only(&g.without_edge(v, w)?, v, w)?;
        let predicted_count = if leading { c } else { c + 1 };
        Ok(CompletionPrediction { t, is_already_complete: false, predicted_count, clique_term: Some(c) })
    } else if t.len() <= 1 {
        Ok(CompletionPrediction { t, is_already_complete: true, predicted_count: 1, clique_term: None })
    } else {
        let predicted_count = t.len() + usize::from(g.in_degree(v) > 0);
        Ok(CompletionPrediction { t, is_already_complete: false, predicted_count, clique_term: None })
    }
}

/// The essential graphs reached by deleting the edge from some member of
/// the class without changing that member's dependence graph, deduplicated
/// and sorted.
pub fn materialize_completions(g: &Cpdag, v: usize, w: usize) -> Result<Vec<Cpdag>> {
    require_edge(g, v, w)?;
    let mut found = BTreeSet::new();
    for d in mec_members(g)? {
        let (a, b) = if d.has_edge(v, w) { (v, w) } else { (w, v) };
        let cut = d.without_edge(a, b)?;
        if udg_of(&cut) == udg_of(&d) {
            found.insert(cpdag_of(&cut));
        }
    }
    Ok(found.into_iter().collect())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CompletionReport {
    pub is_already_complete: bool,
    pub completions: Vec<Cpdag>,
    pub predicted_count: usize,
    pub clique_term: Option<usize>,
}

/// Width-1 completions of removing `v -> w` or `v -- w`, computed both from
/// the closed form and by materializing them. Disagreement between the two
/// is reported as [`Error::Verification`].
pub fn width1_completions(g: &Cpdag, v: usize, w: usize) -> Result<CompletionReport> {
    let prediction = predict_completions(g, v, w)?;
    let completions = materialize_completions(g, v, w)?;
    if prediction.is_already_complete {
        let removed = g.without_edge(v, w)?;
        if completions.len() != 1 || *completions[0].graph() != removed {
            return Err(Error::Verification(format!(
                "edge {v} {w}: graph with the edge removed should be the only completion, found {} completions",
                completions.len()
            )));
        }
    } else if completions.len() != prediction.predicted_count {
        return Err(Error::Verification(format!(
            "edge {v} {w}: predicted {} completions, found {}",
            prediction.predicted_count,
            completions.len()
        )));
    }
    Ok(CompletionReport {
        is_already_complete: prediction.is_already_complete,
        completions,
        predicted_count: prediction.predicted_count,
        clique_term: prediction.clique_term,
    })
}
