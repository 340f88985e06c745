//! Median and barycenter orderings for classic one-sided crossing minimization.
//!
//! Both are dummy-independent: a node's key depends only on π1 and its own neighborhood, so
//! adding or removing other top nodes never changes the relative order of the rest.

use std::cmp::Ordering;
use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use crate::error::Result;
use crate::instance::{BipartiteInstance, NodeId};
use crate::permutation::{induced, Permutation};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum HeuristicKind {
    Median,
    Barycenter,
}

impl fmt::Display for HeuristicKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            HeuristicKind::Median => "median",
            HeuristicKind::Barycenter => "barycenter",
        })
    }
}

impl FromStr for HeuristicKind {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "median" => Ok(HeuristicKind::Median),
            "barycenter" => Ok(HeuristicKind::Barycenter),
            other => Err(format!("unknown heuristic '{other}'")),
        }
    }
}

/// Exact rational sort key `num / den` with `den > 0`.
#[derive(Debug, Clone, Copy)]
pub struct Key {
    num: i64,
    den: i64,
}

impl Key {
    pub fn new(num: i64, den: i64) -> Self {
        assert!(den > 0);
        Key { num, den }
    }

    pub fn as_f64(&self) -> f64 {
        self.num as f64 / self.den as f64
    }
}

impl PartialEq for Key {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Key {}

impl PartialOrd for Key {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Key {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.num as i128 * other.den as i128).cmp(&(other.num as i128 * self.den as i128))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Parity {
    Odd,
    Even,
}

#[derive(Debug, Clone, Copy)]
pub struct KeyedNode {
    pub id: NodeId,
    pub key: Key,
    pub degree_parity: Parity,
}

impl KeyedNode {
    fn sort_tuple(&self) -> (Key, u8, NodeId) {
        let parity = match self.degree_parity {
            Parity::Odd => 0,
            Parity::Even => 1,
        };
        (self.key, parity, self.id)
    }
}

/// Sort key of a node from the sorted π1 positions of its neighbors.
pub fn node_key(positions: &[usize], kind: HeuristicKind) -> Key {
    if positions.is_empty() {
        return Key::new(-1, 1);
    }
    match kind {
        // left median
        HeuristicKind::Median => Key::new(positions[(positions.len() - 1) / 2] as i64, 1),
        HeuristicKind::Barycenter => Key::new(
            positions.iter().map(|&p| p as i64).sum(),
            positions.len() as i64,
        ),
    }
}

pub fn keyed_node(inst: &BipartiteInstance, id: NodeId, kind: HeuristicKind) -> Result<KeyedNode> {
    let positions = inst.neighbors_of(id)?;
    Ok(KeyedNode {
        id,
        key: node_key(positions, kind),
        degree_parity: if positions.len() % 2 == 1 {
            Parity::Odd
        } else {
            Parity::Even
        },
    })
}

/// Orders `subset` ascending by key; ties put odd degree before even degree, then smaller id.
pub fn heuristic_order(
    inst: &BipartiteInstance,
    subset: impl IntoIterator<Item = NodeId>,
    kind: HeuristicKind,
) -> Result<Permutation> {
    let mut keyed = subset
        .into_iter()
        .map(|id| keyed_node(inst, id, kind))
        .collect::<Result<Vec<_>>>()?;
    keyed.sort_by_key(KeyedNode::sort_tuple);
    Permutation::new(keyed.into_iter().map(|k| k.id).collect())
}

/// Checks that ordering only the real top nodes gives the same real order as ordering all
/// top nodes and then restricting to the reals.
pub fn is_dummy_independent_witness(inst: &BipartiteInstance, kind: HeuristicKind) -> Result<bool> {
    let reals = heuristic_order(inst, inst.real_top_ids(), kind)?;
    let full = heuristic_order(inst, inst.top_ids(), kind)?;
    let real_set: HashSet<NodeId> = inst.real_top_ids().collect();
    Ok(induced(&full, &real_set) == reals)
}
