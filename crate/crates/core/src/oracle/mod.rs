// SPDX-License-Identifier: Apache-2.0
//! Exhaustive enumeration of small DAGs and brute-force checks of the
//! library's predicates against definitional ground truth.

mod claims;
pub mod truth;

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::graph::{Dag, NodeSet, UndirectedGraph};

pub use claims::{verify, verify_all, Claim, Failure, VerificationReport, SAMPLED_PAIRS, SAMPLE_SEED};

/// Largest node count [`enumerate_dags`] accepts.
pub const MAX_ENUMERATION_NODES: usize = 6;
/// Largest node count for the partitions.
pub const MAX_PARTITION_NODES: usize = 5;

/// Every labeled DAG on `n` nodes, each exactly once.
///
/// Each unordered pair of nodes gets one of three states (absent, forward,
/// backward); the iterator walks all `3^(n(n-1)/2)` codes and keeps the
/// acyclic ones.
#[derive(Debug, Clone)]
pub struct DagEnumeration {
    n: usize,
    pairs: Vec<(usize, usize)>,
    code: u64,
    end: u64,
}

pub fn enumerate_dags(n: usize) -> Result<DagEnumeration> {
    if !(1..=MAX_ENUMERATION_NODES).contains(&n) {
        return Err(Error::Input(format!("can enumerate DAGs on 1 to {MAX_ENUMERATION_NODES} nodes, got {n}")));
    }
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|v| (v + 1..n).map(move |w| (v, w))).collect();
    let end = 3u64.pow(pairs.len() as u32);
    Ok(DagEnumeration { n, pairs, code: 0, end })
}

impl DagEnumeration {
    pub fn node_count(&self) -> usize {
        self.n
    }
}

impl Iterator for DagEnumeration {
    type Item = Dag;

    fn next(&mut self) -> Option<Dag> {
        while self.code < self.end {
            let mut c = self.code;
            self.code += 1;
            let mut parents = vec![NodeSet::EMPTY; self.n];
            for &(v, w) in &self.pairs {
                match c % 3 {
                    1 => parents[w].insert(v),
                    2 => parents[v].insert(w),
                    _ => {}
                }
                c /= 3;
            }
            if let Some(d) = truth::dag_from(parents) {
                return Some(d);
            }
        }
        None
    }
}

fn binomial(n: u32, k: u32) -> u128 {
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

/// Number of labeled DAGs on `n` nodes, from the inclusion-exclusion
/// recurrence over the set of source nodes.
pub fn labeled_dag_count(n: u32) -> u128 {
    let mut a = vec![1i128];
    for m in 1..=n {
        let mut total = 0i128;
        for k in 1..=m {
            let term = binomial(m, k) as i128 * (1i128 << (k * (m - k))) * a[(m - k) as usize];
            total += if k % 2 == 1 { term } else { -term };
        }
        a.push(total);
    }
    a[n as usize] as u128
}

fn partition_dags(n: usize) -> Result<Vec<Dag>> {
    if n > MAX_PARTITION_NODES {
        return Err(Error::Budget(format!("partitions are limited to {MAX_PARTITION_NODES} nodes, got {n}")));
    }
    Ok(enumerate_dags(n)?.collect())
}

/// All DAGs on `n` nodes grouped by dependence graph (path search). Blocks
/// are sorted.
pub fn uec_partition(n: usize) -> Result<BTreeMap<UndirectedGraph, Vec<Dag>>> {
    Ok(group(partition_dags(n)?, truth::udg))
}

/// All DAGs on `n` nodes grouped by skeleton and v-structures.
pub fn mec_partition(n: usize) -> Result<BTreeMap<truth::MecKey, Vec<Dag>>> {
    Ok(group(partition_dags(n)?, truth::mec_key))
}

fn group<K: Ord + Send>(dags: Vec<Dag>, key: impl Fn(&Dag) -> K + Sync) -> BTreeMap<K, Vec<Dag>> {
    use rayon::prelude::*;
    let keys: Vec<K> = dags.par_iter().map(&key).collect();
    let mut out: BTreeMap<K, Vec<Dag>> = BTreeMap::new();
    for (k, d) in keys.into_iter().zip(dags) {
        out.entry(k).or_default().push(d);
    }
    for block in out.values_mut() {
        block.sort_unstable();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::udg::same_uec;

    #[test]
    fn recurrence_values() {
        let known = [1u128, 1, 3, 25, 543, 29281, 3781503];
        for (n, &k) in known.iter().enumerate() {
            assert_eq!(labeled_dag_count(n as u32), k);
        }
    }

    #[test]
    fn enumeration_counts_match_recurrence() {
        for n in 1..=5 {
            assert_eq!(enumerate_dags(n).unwrap().count() as u128, labeled_dag_count(n as u32), "n = {n}");
        }
        assert!(enumerate_dags(0).is_err());
        assert!(enumerate_dags(7).is_err());
    }

    #[test]
    fn enumeration_is_duplicate_free() {
        let all: Vec<Dag> = enumerate_dags(4).unwrap().collect();
        let distinct: std::collections::BTreeSet<&[NodeSet]> = all.iter().map(Dag::parent_sets).collect();
        assert_eq!(distinct.len(), all.len());
        let two: Vec<Dag> = enumerate_dags(2).unwrap().collect();
        assert_eq!(two.len(), 3);
    }

    #[test]
    fn two_node_classes() {
        let uec = uec_partition(2).unwrap();
        assert_eq!(uec.len(), 2);
        let sizes: Vec<usize> = uec.values().map(Vec::len).collect();
        assert_eq!(sizes, vec![1, 2]);
    }

    #[test]
    fn complete_dependence_block_on_three_nodes() {
        let uec = uec_partition(3).unwrap();
        let complete = UndirectedGraph::new(3, [(0, 1), (0, 2), (1, 2)]).unwrap();
        let block = &uec[&complete];
        for d in [
            Dag::new(3, [(0, 1), (1, 2)]).unwrap(),
            Dag::new(3, [(2, 1), (1, 0)]).unwrap(),
            Dag::new(3, [(1, 0), (1, 2)]).unwrap(),
            Dag::new(3, [(0, 1), (0, 2), (1, 2)]).unwrap(),
        ] {
            assert!(block.contains(&d));
        }
    }

    #[test]
    fn uec_blocks_are_same_uec_classes() {
        let uec = uec_partition(3).unwrap();
        let blocks: Vec<&Vec<Dag>> = uec.values().collect();
        for (i, a) in blocks.iter().enumerate() {
            for (j, b) in blocks.iter().enumerate() {
                assert_eq!(same_uec(&a[0], &b[b.len() - 1]).unwrap(), i == j);
            }
        }
    }
}
