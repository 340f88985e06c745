use std::collections::{HashMap, HashSet};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::instance::NodeId;

/// An ordered arrangement of node ids with constant-time position lookup.
///
/// Positions are 0-based.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "PermutationFile", into = "PermutationFile")]
pub struct Permutation {
    order: Vec<NodeId>,
    position: HashMap<NodeId, usize>,
}

#[derive(Serialize, Deserialize)]
struct PermutationFile {
    order: Vec<NodeId>,
}

impl TryFrom<PermutationFile> for Permutation {
    type Error = Error;

    fn try_from(file: PermutationFile) -> Result<Self> {
        Permutation::new(file.order)
    }
}

impl From<Permutation> for PermutationFile {
    fn from(p: Permutation) -> Self {
        PermutationFile { order: p.order }
    }
}

impl Permutation {
    pub fn new(order: Vec<NodeId>) -> Result<Self> {
        let mut position = HashMap::with_capacity(order.len());
        for (i, &id) in order.iter().enumerate() {
            if position.insert(id, i).is_some() {
                return Err(Error::DuplicateNode(id));
            }
        }
        Ok(Permutation { order, position })
    }

    pub fn empty() -> Self {
        Permutation {
            order: Vec::new(),
            position: HashMap::new(),
        }
    }

    pub fn order(&self) -> &[NodeId] {
        &self.order
    }

    pub fn into_order(self) -> Vec<NodeId> {
        self.order
    }

    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }

    pub fn position(&self, id: NodeId) -> Option<usize> {
        self.position.get(&id).copied()
    }

    pub fn contains(&self, id: NodeId) -> bool {
        self.position.contains_key(&id)
    }

    /// `a` comes strictly before `b`. Both must be present.
    pub fn precedes(&self, a: NodeId, b: NodeId) -> bool {
        self.position[&a] < self.position[&b]
    }

    pub fn iter(&self) -> impl Iterator<Item = NodeId> + '_ {
        self.order.iter().copied()
    }

    /// Concatenation of two permutations over disjoint ground sets.
    pub fn concat(&self, other: &Permutation) -> Result<Permutation> {
        let mut order = self.order.clone();
        order.extend_from_slice(&other.order);
        Permutation::new(order)
    }

    /// Checks that this permutation is exactly a permutation of `ground`.
    pub fn ensure_covers(&self, ground: impl IntoIterator<Item = NodeId>) -> Result<()> {
        let mut expected = 0usize;
        for id in ground {
            if !self.contains(id) {
                return Err(Error::NotAPermutation(format!("missing node {id}")));
            }
            expected += 1;
        }
        if expected != self.len() {
            return Err(Error::NotAPermutation(format!(
                "expected {expected} nodes, got {}",
                self.len()
            )));
        }
        Ok(())
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("permutation serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }
}

/// The permutation induced on `subset`: relative order of the kept elements is preserved.
/// Ids in `subset` that are not part of `pi` are ignored.
pub fn induced(pi: &Permutation, subset: &HashSet<NodeId>) -> Permutation {
    let order = pi.iter().filter(|id| subset.contains(id)).collect();
    Permutation::new(order).expect("subsequence of a permutation has no duplicates")
}
