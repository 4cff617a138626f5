// SPDX-License-Identifier: Apache-2.0

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;
use std::time::Instant;

use rand::distributions::{Distribution, WeightedIndex};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::truth::{self, mec_key};
use super::{enumerate_dags, mec_partition, uec_partition};
use crate::error::{Error, Result};
use crate::essential::{
    check_cpdag, cpdag_of, is_removable, is_removable_by_members, materialize_completions, mec_members,
    mec_members_exhaustive, predict_completions, Cpdag,
};
use crate::graph::{ChainGraph, Dag, UndirectedGraph};
use crate::moves::{
    can_delete, can_insert, can_reverse, delta, find_edge, find_reference, find_reference_with_insertions,
    is_weakly_covered, transformation_sequence, MoveKind,
};
use crate::text::{numeric_labels, GraphDocument};
use crate::udg::{clique_cover, max_independent_set_size, udg_of_with, UdgConstruction};

/// Pairs drawn by the sampled mode of the pair claims.
pub const SAMPLED_PAIRS: usize = 10_000;
pub const SAMPLE_SEED: u64 = 0x005e_ed0f_da65;
/// Failures kept in a report; the count is always exact.
const KEPT_FAILURES: usize = 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Claim {
    /// Path search, common ancestors and source cliques give one graph.
    UdgTriple,
    /// Sources versus clique cover and independent sets.
    CoverSuite,
    /// Single-arc insertion and deletion predicates.
    InsertionIff,
    /// Single-arc reversal predicate.
    ReversalIff,
    /// Reference graphs are built by class-preserving insertions.
    ReferenceGraph,
    /// Each selected reversal is weakly covered and shrinks the difference.
    FindEdge,
    /// Move sequences replay from one graph to the other inside the class.
    TransformReplay,
    /// Minimal anterior criterion versus a scan over class members.
    RemovabilityIff,
    /// Predicted completion counts versus brute force.
    CompletionsCount,
    /// Every Markov class sits inside one dependence class.
    MecInUec,
    /// Member enumeration inverts essential-graph construction.
    MecRoundTrip,
}

impl Claim {
    pub const ALL: [Claim; 11] = [
        Claim::UdgTriple,
        Claim::CoverSuite,
        Claim::InsertionIff,
        Claim::ReversalIff,
        Claim::ReferenceGraph,
        Claim::FindEdge,
        Claim::TransformReplay,
        Claim::RemovabilityIff,
        Claim::CompletionsCount,
        Claim::MecInUec,
        Claim::MecRoundTrip,
    ];

    pub fn id(self) -> &'static str {
        match self {
            Claim::UdgTriple => "Thm1-triple",
            Claim::CoverSuite => "Lem2",
            Claim::InsertionIff => "Lem3-iff",
            Claim::ReversalIff => "Lem4-iff",
            Claim::ReferenceGraph => "RefGraph",
            Claim::FindEdge => "FindEdge",
            Claim::TransformReplay => "Thm6-replay",
            Claim::RemovabilityIff => "Removability-iff",
            Claim::CompletionsCount => "Completions-count",
            Claim::MecInUec => "MEC-in-UEC",
            Claim::MecRoundTrip => "MEC-roundtrip",
        }
    }

    pub fn from_id(id: &str) -> Option<Claim> {
        Claim::ALL.into_iter().find(|c| c.id().eq_ignore_ascii_case(id))
    }

    /// Largest `n` this claim runs at.
    pub fn max_nodes(self) -> usize {
        5
    }

    /// Pair claims run exhaustively up to this `n` and sample beyond it.
    fn exhaustive_pair_limit(self) -> Option<usize> {
        match self {
            Claim::ReferenceGraph | Claim::FindEdge | Claim::TransformReplay => Some(4),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Failure {
    /// Offending graphs as documents in the command-line text format.
    pub graphs: Vec<String>,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub claim: String,
    pub n: usize,
    pub mode: &'static str,
    pub checked: u64,
    pub failed: u64,
    pub duration_ms: u128,
    pub failures: Vec<Failure>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.failed == 0
    }

    pub fn to_text(&self) -> String {
        let mut out = format!(
            "{} n={} {}: {} checked, {} failed ({} ms)\n",
            self.claim, self.n, self.mode, self.checked, self.failed, self.duration_ms
        );
        for f in &self.failures {
            let _ = writeln!(out, "FAIL {}", f.detail);
            for g in &f.graphs {
                out.push_str(g);
            }
        }
        out
    }
}

#[derive(Default)]
struct Tally {
    checked: u64,
    failed: u64,
    failures: Vec<Failure>,
}

impl Tally {
    fn check(&mut self, ok: bool, fail: impl FnOnce() -> Failure) {
        self.checked += 1;
        if !ok {
            self.fail(fail());
        }
    }

    fn fail(&mut self, f: Failure) {
        self.failed += 1;
        if self.failures.len() < KEPT_FAILURES {
            self.failures.push(f);
        }
    }
}

/// Runs `f` on every item in parallel and merges tallies in item order.
fn run<T: Sync>(items: &[T], f: impl Fn(&T, &mut Tally) + Sync) -> Tally {
    let parts: Vec<Tally> = items
        .par_iter()
        .map(|item| {
            let mut t = Tally::default();
            f(item, &mut t);
            t
        })
        .collect();
    let mut total = Tally::default();
    for p in parts {
        total.checked += p.checked;
        let kept = p.failures.len() as u64;
        for f in p.failures {
            total.fail(f);
        }
        total.failed += p.failed - kept;
    }
    total
}

fn doc(name: &str, g: &Dag) -> String {
    GraphDocument::from_dag(name, &numeric_labels(g.node_count()), g).emit()
}

fn cpdag_doc(name: &str, g: &ChainGraph) -> String {
    GraphDocument::from_chain_graph(name, &numeric_labels(g.node_count()), g).emit()
}

fn failure(graphs: Vec<String>, detail: String) -> Failure {
    Failure { graphs, detail }
}

/// Runs one claim on all graphs with `n` nodes (or, for the pair claims
/// beyond their exhaustive limit, on [`SAMPLED_PAIRS`] seeded random pairs).
pub fn verify(claim: Claim, n: usize) -> Result<VerificationReport> {
    if n == 0 {
        return Err(Error::Input("node count must be at least 1".into()));
    }
    if n > claim.max_nodes() {
        return Err(Error::Budget(format!("{} runs on at most {} nodes, got {n}", claim.id(), claim.max_nodes())));
    }
    let start = Instant::now();
    let mut mode = "exhaustive";
    let tally = match claim {
        Claim::UdgTriple => udg_triple(n)?,
        Claim::CoverSuite => cover_suite(n)?,
        Claim::InsertionIff => insertion_iff(n)?,
        Claim::ReversalIff => reversal_iff(n)?,
        Claim::ReferenceGraph | Claim::FindEdge | Claim::TransformReplay => {
            let pairs = if claim.exhaustive_pair_limit().is_some_and(|limit| n <= limit) {
                all_pairs(n)?
            } else {
                mode = "sampled";
                sampled_pairs(n, SAMPLED_PAIRS, SAMPLE_SEED)?
            };
            let check = match claim {
                Claim::ReferenceGraph => reference_graph,
                Claim::FindEdge => find_edge_steps,
                _ => transform_replay,
            };
            run(&pairs, |(a, b), t| check(a, b, t))
        }
        Claim::RemovabilityIff => removability_iff(n)?,
        Claim::CompletionsCount => completions_count(n)?,
        Claim::MecInUec => mec_in_uec(n)?,
        Claim::MecRoundTrip => mec_round_trip(n)?,
    };
    Ok(VerificationReport {
        claim: claim.id().to_string(),
        n,
        mode,
        checked: tally.checked,
        failed: tally.failed,
        duration_ms: start.elapsed().as_millis(),
        failures: tally.failures,
    })
}

/// Every claim that runs at `n`, in [`Claim::ALL`] order.
pub fn verify_all(n: usize) -> Result<Vec<VerificationReport>> {
    let runnable: Vec<Claim> = Claim::ALL.into_iter().filter(|c| n <= c.max_nodes()).collect();
    if runnable.is_empty() && n > 0 {
        let max = Claim::ALL.iter().map(|c| c.max_nodes()).max().unwrap_or(0);
        return Err(Error::Budget(format!("claims run on at most {max} nodes, got {n}")));
    }
    runnable.into_iter().map(|c| verify(c, n)).collect()
}

fn dags(n: usize) -> Result<Vec<Dag>> {
    Ok(enumerate_dags(n)?.collect())
}

fn udg_triple(n: usize) -> Result<Tally> {
    let all = dags(n)?;
    Ok(run(&all, |g, t| {
        let expected = truth::udg(g);
        for c in [UdgConstruction::TrekSearch, UdgConstruction::CommonAncestor, UdgConstruction::SourceCliques] {
            let got = udg_of_with(g, c);
            t.check(got == expected, || {
                failure(vec![doc("g", g)], format!("{c:?} gives {got:?}, path search gives {expected:?}"))
            });
        }
    }))
}

fn cover_suite(n: usize) -> Result<Tally> {
    let blocks: Vec<(UndirectedGraph, Vec<Dag>)> = uec_partition(n)?.into_iter().collect();
    Ok(run(&blocks, |(u, members), t| {
        let mis = truth::max_independent_set(u);
        for g in members {
            let cover = clique_cover(g);
            let sources = g.sources();
            let fail = |what: &str| failure(vec![doc("g", g)], what.to_string());
            t.check(sources.len() == cover.len(), || fail("source count differs from cover size"));
            t.check(u.is_independent(sources) && sources.len() == mis, || {
                fail("sources are not a maximum independent set of the dependence graph")
            });
            t.check(max_independent_set_size(u) == Ok(mis), || fail("branch and bound disagrees with subset search"));
            t.check(cover.is_minimal_cover_of(u), || fail("source cliques are not a minimal clique cover"));
        }
        let first = &members[0];
        let sets = clique_cover(first).clique_sets();
        for g in &members[1..] {
            t.check(clique_cover(g).clique_sets() == sets, || {
                failure(vec![doc("a", first), doc("b", g)], "equivalent graphs have different clique sets".into())
            });
            t.check(g.sources().len() == first.sources().len(), || {
                failure(vec![doc("a", first), doc("b", g)], "equivalent graphs have different source counts".into())
            });
        }
    }))
}

fn insertion_iff(n: usize) -> Result<Tally> {
    let all = dags(n)?;
    Ok(run(&all, |g, t| {
        let u = truth::udg(g);
        for v in 0..n {
            for w in 0..n {
                if v == w {
                    continue;
                }
                if g.adjacent(v, w) {
                    if !g.has_edge(v, w) {
                        continue;
                    }
                    let expected = truth::udg(&truth::deleted(g, v, w)) == u;
                    let got = can_delete(g, v, w);
                    t.check(got == Ok(expected), || {
                        failure(vec![doc("g", g)], format!("delete {} {}: predicate {got:?}, ground truth {expected}", v + 1, w + 1))
                    });
                } else {
                    let expected = truth::inserted(g, v, w).is_some_and(|h| truth::udg(&h) == u);
                    let got = can_insert(g, v, w);
                    t.check(got == Ok(expected), || {
                        failure(vec![doc("g", g)], format!("insert {} {}: predicate {got:?}, ground truth {expected}", v + 1, w + 1))
                    });
                }
            }
        }
    }))
}

fn reversal_iff(n: usize) -> Result<Tally> {
    let all = dags(n)?;
    Ok(run(&all, |g, t| {
        let u = truth::udg(g);
        for (v, w) in g.edges() {
            let expected = truth::reversed(g, v, w).is_some_and(|h| truth::udg(&h) == u);
            let got = can_reverse(g, v, w);
            let covered = is_weakly_covered(g, v, w);
            t.check(got == Ok(expected) && covered == Ok(expected), || {
                failure(
                    vec![doc("g", g)],
                    format!("reverse {} {}: predicate {got:?}, weakly covered {covered:?}, ground truth {expected}", v + 1, w + 1),
                )
            });
        }
    }))
}

fn all_pairs(n: usize) -> Result<Vec<(Dag, Dag)>> {
    let mut pairs = Vec::new();
    for block in uec_partition(n)?.into_values() {
        for a in &block {
            for b in &block {
                pairs.push((a.clone(), b.clone()));
            }
        }
    }
    Ok(pairs)
}

/// Ordered pairs drawn uniformly from all ordered pairs inside dependence
/// classes: a class is chosen with weight `size^2`, then both ends
/// uniformly within it.
pub(crate) fn sampled_pairs(n: usize, count: usize, seed: u64) -> Result<Vec<(Dag, Dag)>> {
    let blocks: Vec<Vec<Dag>> = uec_partition(n)?.into_values().collect();
    let weights: Vec<u64> = blocks.iter().map(|b| (b.len() * b.len()) as u64).collect();
    let pick = WeightedIndex::new(&weights).map_err(|e| Error::Verification(e.to_string()))?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Ok((0..count)
        .map(|_| {
            let block = &blocks[pick.sample(&mut rng)];
            (block[rng.gen_range(0..block.len())].clone(), block[rng.gen_range(0..block.len())].clone())
        })
        .collect())
}

fn pair_docs(a: &Dag, b: &Dag) -> Vec<String> {
    vec![doc("a", a), doc("b", b)]
}

fn reference_graph(a: &Dag, b: &Dag, t: &mut Tally) {
    let (h, inserted) = match find_reference_with_insertions(a, b) {
        Ok(x) => x,
        Err(e) => return t.check(false, || failure(pair_docs(a, b), format!("reference graph: {e}"))),
    };
    let u = truth::udg(a);
    let mut cur = a.clone();
    for &(v, w) in &inserted {
        match truth::inserted(&cur, v, w).filter(|_| !cur.adjacent(v, w)) {
            Some(next) if truth::udg(&next) == u => cur = next,
            _ => {
                return t.check(false, || {
                    failure(pair_docs(a, b), format!("reference insertion {} -> {} leaves the class", v + 1, w + 1))
                })
            }
        }
    }
    t.check(cur == h, || failure(pair_docs(a, b), "insertions do not rebuild the reference graph".into()));
    let union: BTreeSet<(usize, usize)> = a.skeleton().edges().into_iter().chain(b.skeleton().edges()).collect();
    let skel: BTreeSet<(usize, usize)> = h.skeleton().edges().into_iter().collect();
    t.check(skel == union && a.edges().iter().all(|&(v, w)| h.has_edge(v, w)), || {
        failure(pair_docs(a, b), "reference graph is not a plus the missing adjacencies of b".into())
    });
}

fn find_edge_steps(a: &Dag, b: &Dag, t: &mut Tally) {
    let refs = find_reference(a, b).and_then(|h| Ok((h, find_reference(b, a)?)));
    let (mut cur, target) = match refs {
        Ok(x) => x,
        Err(e) => return t.check(false, || failure(pair_docs(a, b), format!("reference graph: {e}"))),
    };
    let u = truth::udg(a);
    let mut remaining = delta(&cur, &target).map(|d| d.len()).unwrap_or(0);
    while remaining > 0 {
        let (v, w) = match find_edge(&cur, &target) {
            Ok(e) => e,
            Err(e) => return t.check(false, || failure(pair_docs(a, b), format!("find_edge: {e}"))),
        };
        let next = match truth::reversed(&cur, v, w).filter(|h| truth::udg(h) == u) {
            Some(h) => h,
            None => {
                return t.check(false, || {
                    failure(pair_docs(a, b), format!("selected arc {} -> {} is not weakly covered", v + 1, w + 1))
                })
            }
        };
        let left = delta(&next, &target).map(|d| d.len()).unwrap_or(usize::MAX);
        t.check(left + 1 == remaining, || {
            failure(pair_docs(a, b), format!("reversing {} -> {} does not shrink the difference by one", v + 1, w + 1))
        });
        if left + 1 != remaining {
            return;
        }
        cur = next;
        remaining = left;
    }
}

fn transform_replay(a: &Dag, b: &Dag, t: &mut Tally) {
    let seq = match transformation_sequence(a, b) {
        Ok(s) => s,
        Err(e) => return t.check(false, || failure(pair_docs(a, b), format!("transformation_sequence: {e}"))),
    };
    let u = truth::udg(a);
    let mut cur = a.clone();
    for (i, m) in seq.moves().iter().enumerate() {
        let (v, w) = (m.tail, m.head);
        let next = match m.kind {
            MoveKind::Insert if !cur.adjacent(v, w) => truth::inserted(&cur, v, w),
            MoveKind::Reverse if cur.has_edge(v, w) => truth::reversed(&cur, v, w),
            MoveKind::Delete if cur.has_edge(v, w) => Some(truth::deleted(&cur, v, w)),
            _ => None,
        };
        match next {
            Some(h) if truth::udg(&h) == u => cur = h,
            _ => {
                return t.check(false, || {
                    failure(
                        pair_docs(a, b),
                        format!("move {} ({} {} {}) leaves the class", i + 1, m.kind.keyword(), v + 1, w + 1),
                    )
                })
            }
        }
    }
    t.check(cur == *b, || failure(pair_docs(a, b), "replay does not end at b".into()));
    let adjacency_gain = b.skeleton().edges().iter().filter(|&&(v, w)| !a.adjacent(v, w)).count();
    let adjacency_loss = a.skeleton().edges().iter().filter(|&&(v, w)| !b.adjacent(v, w)).count();
    let reversals = find_reference(a, b)
        .and_then(|h| delta(&h, &find_reference(b, a)?))
        .map(|d| d.len());
    let counts = seq.counts();
    t.check(
        counts.insert == adjacency_gain && Ok(counts.reverse) == reversals && counts.delete == adjacency_loss,
        || {
            failure(
                pair_docs(a, b),
                format!(
                    "phase counts {}/{}/{} but expected {adjacency_gain}/{reversals:?}/{adjacency_loss}",
                    counts.insert, counts.reverse, counts.delete
                ),
            )
        },
    );
}

/// Markov classes keyed independently, each with its essential graph.
fn classes(n: usize) -> Result<Vec<(Cpdag, Vec<Dag>)>> {
    let blocks: Vec<Vec<Dag>> = mec_partition(n)?.into_values().collect();
    Ok(blocks.into_par_iter().map(|b| (cpdag_of(&b[0]), b)).collect())
}

/// Edges of `g` as ordered pairs; undirected edges appear both ways.
fn edge_instances(g: &ChainGraph) -> Vec<(usize, usize)> {
    let mut out = g.directed_edges();
    for (v, w) in g.undirected_edges() {
        out.push((v, w));
        out.push((w, v));
    }
    out
}

/// The member's arc between `v` and `w`, in whichever direction it has.
fn arc(d: &Dag, v: usize, w: usize) -> (usize, usize) {
    if d.has_edge(v, w) {
        (v, w)
    } else {
        (w, v)
    }
}

fn removability_iff(n: usize) -> Result<Tally> {
    let cls = classes(n)?;
    Ok(run(&cls, |(g, members), t| {
        for (v, w) in edge_instances(g) {
            let expected = members.iter().any(|d| {
                let (x, y) = arc(d, v, w);
                truth::udg(&truth::deleted(d, x, y)) == truth::udg(d)
            });
            let got = is_removable(g, v, w);
            let scanned = is_removable_by_members(g, v, w);
            t.check(got == Ok(expected) && scanned == Ok(expected), || {
                failure(
                    vec![cpdag_doc("g", g)],
                    format!("edge {} {}: criterion {got:?}, member scan {scanned:?}, ground truth {expected}", v + 1, w + 1),
                )
            });
        }
    }))
}

fn completions_count(n: usize) -> Result<Tally> {
    let cls = classes(n)?;
    Ok(run(&cls, |(g, members), t| {
        let class_udgs: BTreeSet<UndirectedGraph> = members.iter().map(truth::udg).collect();
        for (v, w) in edge_instances(g) {
            if !matches!(is_removable(g, v, w), Ok(true)) {
                continue;
            }
            let fail = |detail: String| failure(vec![cpdag_doc("g", g)], format!("edge {} {}: {detail}", v + 1, w + 1));
            // distinct Markov classes reachable by a class-preserving deletion
            let mut reached: BTreeMap<truth::MecKey, Dag> = BTreeMap::new();
            for d in members {
                let (x, y) = arc(d, v, w);
                let cut = truth::deleted(d, x, y);
                if truth::udg(&cut) == truth::udg(d) {
                    reached.entry(mec_key(&cut)).or_insert(cut);
                }
            }
            let removed = g.without_edge(v, w).expect("edge is present");
            let complete = reached.len() == 1 && *cpdag_of(reached.values().next().unwrap()).graph() == removed;
            match predict_completions(g, v, w) {
                Ok(p) => {
                    t.check(p.is_already_complete == complete, || {
                        fail(format!("already-complete flag {} but brute force says {complete}", p.is_already_complete))
                    });
                    if !complete {
                        t.check(p.predicted_count == reached.len(), || {
                            fail(format!("predicted {} completions, brute force found {}", p.predicted_count, reached.len()))
                        });
                    }
                }
                Err(e) => t.check(false, || fail(format!("prediction failed: {e}"))),
            }
            match materialize_completions(g, v, w) {
                Ok(found) => {
                    t.check(found.len() == reached.len(), || {
                        fail(format!("materialized {} completions, brute force found {}", found.len(), reached.len()))
                    });
                    for c in &found {
                        t.check(check_cpdag(c).is_none(), || fail(format!("completion {c:?} is not a valid essential graph")));
                        let linked = mec_members(c)
                            .map(|ms| ms.iter().any(|m| class_udgs.contains(&truth::udg(m))))
                            .unwrap_or(false);
                        t.check(linked, || fail(format!("completion {c:?} shares no dependence graph with the class")));
                    }
                }
                Err(e) => t.check(false, || fail(format!("materialization failed: {e}"))),
            }
        }
    }))
}

fn mec_in_uec(n: usize) -> Result<Tally> {
    let blocks: Vec<Vec<Dag>> = mec_partition(n)?.into_values().collect();
    let total: usize = blocks.iter().map(Vec::len).sum();
    let mut tally = run(&blocks, |b, t| {
        let u = truth::udg(&b[0]);
        t.check(b.iter().all(|d| truth::udg(d) == u), || {
            failure(b.iter().map(|d| doc("g", d)).collect(), "Markov class spans several dependence classes".into())
        });
    });
    let dag_count = enumerate_dags(n)?.count();
    tally.check(total == dag_count, || {
        failure(vec![], format!("Markov classes hold {total} DAGs but there are {dag_count}"))
    });
    Ok(tally)
}

fn mec_round_trip(n: usize) -> Result<Tally> {
    let cls = classes(n)?;
    Ok(run(&cls, |(g, members), t| {
        let fail = |what: &str| failure(vec![cpdag_doc("g", g)], what.to_string());
        t.check(check_cpdag(g).is_none(), || fail("essential graph fails validation"));
        t.check(members.iter().all(|d| cpdag_of(d) == *g), || fail("class members map to different essential graphs"));
        t.check(mec_members(g).as_ref() == Ok(members), || fail("search-ordering members differ from the class"));
        t.check(mec_members_exhaustive(g).as_ref() == Ok(members), || fail("exhaustive members differ from the class"));
    }))
}
