// SPDX-License-Identifier: Apache-2.0
//! Line-oriented graph documents.
//!
//! ```text
//! graph example nodes=4
//! a b c d
//! a -> c
//! b -> c
//! c -- d
//! ```
//!
//! The first non-comment line is the header. A body line with an arrow
//! (`->`) or a line (`--`) is an edge; any other body line declares node
//! labels. Labels get ids in order of first appearance. Lines starting with
//! `#` are comments.

use std::collections::HashMap;
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::graph::{ChainGraph, Dag};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GraphDocument {
    pub name: String,
    pub labels: Vec<String>,
    pub directed: Vec<(usize, usize)>,
    pub undirected: Vec<(usize, usize)>,
}

/// Labels `1..=n`.
pub fn numeric_labels(n: usize) -> Vec<String> {
    (1..=n).map(|i| i.to_string()).collect()
}

impl GraphDocument {
    pub fn node_count(&self) -> usize {
        self.labels.len()
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut header: Option<(String, usize)> = None;
        let mut ids: HashMap<String, usize> = HashMap::new();
        let mut labels = Vec::new();
        let mut directed = Vec::new();
        let mut undirected = Vec::new();
        let mut id_of = |label: &str, labels: &mut Vec<String>| -> usize {
            *ids.entry(label.to_string()).or_insert_with(|| {
                labels.push(label.to_string());
                labels.len() - 1
            })
        };
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let err = |message: String| Error::Parse { line, message };
            let trimmed = raw.trim();
            if trimmed.is_empty() || trimmed.starts_with('#') {
                continue;
            }
            let tokens: Vec<&str> = trimmed.split_whitespace().collect();
            let Some((_, n)) = header else {
                header = Some(parse_header(&tokens).map_err(err)?);
                continue;
            };
            let is_edge_token = |t: &str| t == "->" || t == "--";
            if tokens.iter().any(|t| is_edge_token(t)) {
                let [v, op, w] = tokens[..] else {
                    return Err(err(format!("expected `<v> -> <w>` or `<v> -- <w>`, got `{trimmed}`")));
                };
                if is_edge_token(v) || is_edge_token(w) || !is_edge_token(op) {
                    return Err(err(format!("expected `<v> -> <w>` or `<v> -- <w>`, got `{trimmed}`")));
                }
                let edge = (id_of(v, &mut labels), id_of(w, &mut labels));
                if op == "->" {
                    directed.push(edge);
                } else {
                    undirected.push(edge);
                }
            } else {
                for t in tokens {
                    id_of(t, &mut labels);
                }
            }
            if labels.len() > n {
                return Err(err(format!("more than {n} distinct node labels")));
            }
        }
        let Some((name, n)) = header else {
            return Err(Error::Parse { line: 0, message: "missing `graph <name> nodes=<n>` header".into() });
        };
        if labels.len() < n {
            return Err(Error::Parse {
                line: 0,
                message: format!("header declares {n} nodes but only {} are named", labels.len()),
            });
        }
        Ok(GraphDocument { name, labels, directed, undirected })
    }

    /// Canonical text: header, every label in id order, arrows sorted by
    /// `(tail, head)`, then lines sorted by `(min, max)`.
    pub fn emit(&self) -> String {
        let mut out = format!("graph {} nodes={}\n{}\n", self.name, self.labels.len(), self.labels.join(" "));
        let mut directed = self.directed.clone();
        directed.sort_unstable();
        let mut undirected: Vec<(usize, usize)> = self.undirected.iter().map(|&(v, w)| (v.min(w), v.max(w))).collect();
        undirected.sort_unstable();
        for (v, w) in directed {
            let _ = writeln!(out, "{} -> {}", self.labels[v], self.labels[w]);
        }
        for (v, w) in undirected {
            let _ = writeln!(out, "{} -- {}", self.labels[v], self.labels[w]);
        }
        out
    }

    /// Graphviz rendering; undirected edges are drawn without arrowheads.
    pub fn to_dot(&self) -> String {
        let quote = |s: &str| format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""));
        let mut out = format!("digraph {} {{\n", quote(&self.name));
        for l in &self.labels {
            let _ = writeln!(out, "  {};", quote(l));
        }
        for &(v, w) in &self.directed {
            let _ = writeln!(out, "  {} -> {};", quote(&self.labels[v]), quote(&self.labels[w]));
        }
        for &(v, w) in &self.undirected {
            let _ = writeln!(out, "  {} -> {} [dir=none];", quote(&self.labels[v]), quote(&self.labels[w]));
        }
        out.push_str("}\n");
        out
    }

    pub fn from_dag(name: &str, labels: &[String], g: &Dag) -> Self {
        GraphDocument { name: name.to_string(), labels: labels.to_vec(), directed: g.edges(), undirected: vec![] }
    }

    pub fn from_chain_graph(name: &str, labels: &[String], g: &ChainGraph) -> Self {
        GraphDocument {
            name: name.to_string(),
            labels: labels.to_vec(),
            directed: g.directed_edges(),
            undirected: g.undirected_edges(),
        }
    }

    pub fn from_undirected(name: &str, labels: &[String], edges: Vec<(usize, usize)>) -> Self {
        GraphDocument { name: name.to_string(), labels: labels.to_vec(), directed: vec![], undirected: edges }
    }

    pub fn to_dag(&self) -> Result<Dag> {
        if !self.undirected.is_empty() {
            return Err(Error::Input(format!("graph `{}` has undirected edges but a DAG is required", self.name)));
        }
        Dag::new(self.node_count(), self.directed.iter().copied())
    }

    pub fn to_chain_graph(&self) -> Result<ChainGraph> {
        ChainGraph::new(self.node_count(), self.directed.iter().copied(), self.undirected.iter().copied())
    }

    /// Re-indexes `self` so its labels line up with `labels`.
    pub fn relabel_to(&self, labels: &[String]) -> Result<GraphDocument> {
        let mismatch = || {
            Error::Input(format!("graph `{}` does not have the same node labels as the first graph", self.name))
        };
        if labels.len() != self.labels.len() {
            return Err(Error::NodeCountMismatch(labels.len(), self.labels.len()));
        }
        let target: HashMap<&str, usize> = labels.iter().enumerate().map(|(i, l)| (l.as_str(), i)).collect();
        let map: Vec<usize> =
            self.labels.iter().map(|l| target.get(l.as_str()).copied().ok_or_else(mismatch)).collect::<Result<_>>()?;
        Ok(GraphDocument {
            name: self.name.clone(),
            labels: labels.to_vec(),
            directed: self.directed.iter().map(|&(v, w)| (map[v], map[w])).collect(),
            undirected: self.undirected.iter().map(|&(v, w)| (map[v], map[w])).collect(),
        })
    }
}

fn parse_header(tokens: &[&str]) -> std::result::Result<(String, usize), String> {
    let usage = || "expected header `graph <name> nodes=<n>`".to_string();
    let ["graph", name, count] = tokens[..] else {
        return Err(usage());
    };
    let n = count.strip_prefix("nodes=").ok_or_else(usage)?;
    let n: usize = n.parse().map_err(|_| format!("bad node count `{n}`"))?;
    if n == 0 || n > crate::graph::MAX_NODES {
        return Err(format!("node count must be between 1 and {}, got {n}", crate::graph::MAX_NODES));
    }
    Ok((name.to_string(), n))
}
