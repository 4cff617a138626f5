// SPDX-License-Identifier: Apache-2.0

use std::collections::HashMap;
use std::fmt::Write as _;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum MoveKind {
    Insert,
    Reverse,
    Delete,
}

impl MoveKind {
    pub fn keyword(self) -> &'static str {
        match self {
            MoveKind::Insert => "insert",
            MoveKind::Reverse => "reverse",
            MoveKind::Delete => "delete",
        }
    }

    fn from_keyword(s: &str) -> Option<Self> {
        match s {
            "insert" => Some(MoveKind::Insert),
            "reverse" => Some(MoveKind::Reverse),
            "delete" => Some(MoveKind::Delete),
            _ => None,
        }
    }
}

/// One step: insert, reverse or delete the arc `tail -> head`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct EdgeMove {
    pub kind: MoveKind,
    pub tail: usize,
    pub head: usize,
}

impl EdgeMove {
    pub fn new(kind: MoveKind, tail: usize, head: usize) -> Self {
        EdgeMove { kind, tail, head }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct PhaseCounts {
    pub insert: usize,
    pub reverse: usize,
    pub delete: usize,
}

/// Moves in phase order: all insertions, then reversals, then deletions.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct MoveSequence {
    moves: Vec<EdgeMove>,
    counts: PhaseCounts,
}

impl MoveSequence {
    /// Fails if the moves are not in phase order.
    pub fn new(moves: Vec<EdgeMove>) -> Result<Self> {
        if let Some(i) = moves.windows(2).position(|w| w[0].kind > w[1].kind) {
            return Err(Error::Precondition(format!(
                "move {} ({}) follows a later phase",
                i + 1,
                moves[i + 1].kind.keyword()
            )));
        }
        let count = |k| moves.iter().filter(|m| m.kind == k).count();
        let counts = PhaseCounts {
            insert: count(MoveKind::Insert),
            reverse: count(MoveKind::Reverse),
            delete: count(MoveKind::Delete),
        };
        Ok(MoveSequence { moves, counts })
    }

    pub fn moves(&self) -> &[EdgeMove] {
        &self.moves
    }

    pub fn counts(&self) -> PhaseCounts {
        self.counts
    }

    pub fn len(&self) -> usize {
        self.moves.len()
    }

    pub fn is_empty(&self) -> bool {
        self.moves.is_empty()
    }

    /// One `kind tail head` line per move, using `labels[id]` for nodes.
    pub fn to_text(&self, labels: &[String]) -> String {
        let mut out = String::new();
        for m in &self.moves {
            let _ = writeln!(out, "{} {} {}", m.kind.keyword(), labels[m.tail], labels[m.head]);
        }
        out
    }

    /// Parses the line format written by [`MoveSequence::to_text`]. Blank
    /// lines and `#` comments are skipped.
    pub fn parse(text: &str, labels: &[String]) -> Result<Self> {
        let ids: HashMap<&str, usize> = labels.iter().enumerate().map(|(i, l)| (l.as_str(), i)).collect();
        let mut moves = Vec::new();
        for (i, line) in text.lines().enumerate() {
            let lineno = i + 1;
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let parse_err = |message: String| Error::Parse { line: lineno, message };
            let tokens: Vec<&str> = line.split_whitespace().collect();
            let [kind, tail, head] = tokens[..] else {
                return Err(parse_err(format!("expected `<kind> <tail> <head>`, got `{line}`")));
            };
            let kind = MoveKind::from_keyword(kind)
                .ok_or_else(|| parse_err(format!("unknown move kind `{kind}`")))?;
            let node = |label: &str| {
                ids.get(label).copied().ok_or_else(|| parse_err(format!("unknown node `{label}`")))
            };
            moves.push(EdgeMove::new(kind, node(tail)?, node(head)?));
        }
        MoveSequence::new(moves).map_err(|e| Error::Parse { line: 0, message: e.to_string() })
    }
}
