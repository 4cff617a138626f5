// SPDX-License-Identifier: Apache-2.0
//! Unconditional equivalence of DAGs.

pub mod error;
pub mod essential;
pub mod graph;
pub mod moves;
pub mod oracle;
pub mod text;
pub mod udg;

pub use error::{Error, Result};
pub use graph::{ChainGraph, Dag, NodeSet, UndirectedGraph};
