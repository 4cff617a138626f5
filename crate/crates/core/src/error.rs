// SPDX-License-Identifier: Apache-2.0

use thiserror::Error;

/// Errors raised by graph construction and the equivalence-class operations.
///
/// The variants fall into three families that the CLI maps onto distinct exit
/// statuses: malformed input, violated preconditions, and exceeded search
/// budgets. [`Error::Verification`] is reserved for internal consistency
/// checks that should never fire.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("node {node} is out of range for a graph on {node_count} nodes")]
    NodeOutOfRange { node: usize, node_count: usize },

    #[error("graphs support between 1 and {max} nodes, got {got}")]
    NodeCount { got: usize, max: usize },

    #[error("self-loop on node {0}")]
    SelfLoop(usize),

    #[error("edge {0} -> {1} would create a directed cycle")]
    Cycle(usize, usize),

    #[error("nodes {0} and {1} are joined by more than one edge")]
    ParallelEdge(usize, usize),

    #[error("chain graph contains a partially directed cycle through {0} -> {1}")]
    PartiallyDirectedCycle(usize, usize),

    #[error("edge {0} -> {1} is not present")]
    MissingEdge(usize, usize),

    #[error("nodes {0} and {1} are adjacent")]
    AdjacentPair(usize, usize),

    #[error("expected two distinct nodes, got {0} twice")]
    SameNode(usize),

    #[error("graphs have different node counts ({0} vs {1})")]
    NodeCountMismatch(usize, usize),

    #[error("invalid input: {0}")]
    Input(String),

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("move {index} ({kind} {tail} {head}) is illegal: {reason}")]
    IllegalMove { index: usize, kind: &'static str, tail: usize, head: usize, reason: String },

    #[error("not an essential graph: {0}")]
    InvalidCpdag(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("search budget exceeded: {0}")]
    Budget(String),

    #[error("internal verification failed: {0}")]
    Verification(String),
}

pub type Result<T> = std::result::Result<T, Error>;
