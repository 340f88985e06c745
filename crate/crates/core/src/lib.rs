//! One-sided crossing minimization on two-layer graphs where the dummy nodes of the free
//! layer may only form a limited number of gaps.
//!
//! A gap is a maximal run of consecutive dummy nodes. Two restrictions are supported: side gaps
//! only (every gap touches an end of the layer) and at most `k` gaps.

pub mod crossings;
pub mod error;
pub mod exact;
pub mod gaps;
pub mod generator;
pub mod heuristics;
pub mod instance;
pub mod permutation;

pub use crossings::{
    block_crossings, count_crossings, count_gaps, pairwise_crossings, CrossingMatrix, GapReport,
};
pub use error::{Error, Result};
pub use gaps::{
    canonical_dummy_order, k_gap_merge, side_gap_merge, solve_kgaps, solve_sidegaps, BaseAlgorithm,
};
pub use generator::{generate, GenParams};
pub use heuristics::{heuristic_order, is_dummy_independent_witness, HeuristicKind};
pub use instance::{BipartiteInstance, Layer, Node, NodeId, NodeKind, Violation};
pub use permutation::{induced, Permutation};
