use std::time::Duration;

use thiserror::Error;

use crate::instance::{NodeId, Violation};

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid instance: {}", join_violations(.0))]
    InvalidInstance(Vec<Violation>),

    #[error("unknown node id {0}")]
    UnknownNode(NodeId),

    #[error("node {0} appears more than once")]
    DuplicateNode(NodeId),

    #[error("permutation does not cover the expected node set: {0}")]
    NotAPermutation(String),

    #[error("node sets overlap at {0}")]
    OverlappingSets(NodeId),

    #[error("gap budget must be at least 1, got {0}")]
    InvalidGapBudget(usize),

    #[error("brute-force enumeration refused for {size} top nodes (limit {limit})")]
    OracleTooLarge { size: usize, limit: usize },

    #[error("invalid generator parameters: {0}")]
    InvalidParams(String),

    #[error("malformed model: {0}")]
    MalformedModel(String),

    #[error("no feasible solution found within {0:?}")]
    NoSolution(Duration),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

fn join_violations(v: &[Violation]) -> String {
    v.iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join("; ")
}
