// SPDX-License-Identifier: Apache-2.0
//! Essential graphs (CPDAGs) and single-edge removals from them.

pub mod chordal;
mod completion;
mod cpdag;
mod mec;
mod protect;

pub use completion::{
    is_removable, is_removable_by_members, leading_treks_only, materialize_completions, predict_completions,
    width1_completions, CompletionPrediction, CompletionReport,
};
pub use cpdag::{check_cpdag, cpdag_of, is_strongly_protected, Cpdag, CpdagViolation};
pub use mec::{mec_members, mec_members_exhaustive, EXHAUSTIVE_EDGE_BUDGET, MCS_ORDER_BUDGET, MEC_MEMBER_BUDGET};
pub use protect::{has_protector, is_sole_protector, protectors, ProtectorMatch};
