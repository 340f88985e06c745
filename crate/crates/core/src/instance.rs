//! Two-layer graph with a fixed bottom order and top nodes tagged real or dummy.

use std::collections::{HashMap, HashSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::permutation::Permutation;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct NodeId(pub u32);

impl fmt::Display for NodeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Layer {
    Bottom,
    Top,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum NodeKind {
    Real,
    Dummy,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Node {
    pub id: NodeId,
    pub layer: Layer,
    pub kind: NodeKind,
}

/// A broken instance invariant. Reported as data by [`BipartiteInstance::validate`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    DuplicateId(NodeId),
    /// An edge whose first endpoint is not a bottom node or whose second is not a top node.
    EdgeNotBipartite { from: NodeId, to: NodeId },
    ParallelEdge { from: NodeId, to: NodeId },
    DummyDegree { id: NodeId, degree: usize },
    Pi1Mismatch(String),
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::DuplicateId(id) => write!(f, "duplicate node id {id}"),
            Violation::EdgeNotBipartite { from, to } => {
                write!(f, "edge not bipartite: ({from}, {to})")
            }
            Violation::ParallelEdge { from, to } => write!(f, "parallel edge ({from}, {to})"),
            Violation::DummyDegree { id, degree } => {
                write!(f, "dummy degree ≠ 1: node {id} has degree {degree}")
            }
            Violation::Pi1Mismatch(msg) => write!(f, "pi1 is not a permutation of the bottom layer: {msg}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BipartiteInstance {
    bottom: Vec<Node>,
    top: Vec<Node>,
    edges: Vec<(NodeId, NodeId)>,
    pi1: Permutation,
    // derived lookups
    top_index: HashMap<NodeId, usize>,
    top_neighbors: Vec<Vec<usize>>,
}

impl BipartiteInstance {
    /// Builds an instance without checking its invariants; see [`Self::validate`].
    ///
    /// Edges are `(bottom id, top id)` pairs.
    pub fn new(
        bottom: Vec<(NodeId, NodeKind)>,
        top: Vec<(NodeId, NodeKind)>,
        edges: Vec<(NodeId, NodeId)>,
        pi1: Permutation,
    ) -> Self {
        let bottom: Vec<Node> = bottom
            .into_iter()
            .map(|(id, kind)| Node { id, layer: Layer::Bottom, kind })
            .collect();
        let top: Vec<Node> = top
            .into_iter()
            .map(|(id, kind)| Node { id, layer: Layer::Top, kind })
            .collect();

        let mut top_index = HashMap::with_capacity(top.len());
        for (i, n) in top.iter().enumerate() {
            top_index.entry(n.id).or_insert(i);
        }
        let bottom_ids: HashSet<NodeId> = bottom.iter().map(|n| n.id).collect();
        let mut top_neighbors = vec![Vec::new(); top.len()];
        for &(b, t) in &edges {
            if !bottom_ids.contains(&b) {
                continue;
            }
            if let (Some(&ti), Some(pos)) = (top_index.get(&t), pi1.position(b)) {
                top_neighbors[ti].push(pos);
            }
        }
        for nbrs in &mut top_neighbors {
            nbrs.sort_unstable();
        }

        BipartiteInstance {
            bottom,
            top,
            edges,
            pi1,
            top_index,
            top_neighbors,
        }
    }

    /// Lists every violated invariant; an empty list means the instance is valid.
    pub fn validate(&self) -> Vec<Violation> {
        let mut violations = Vec::new();

        let mut seen = HashSet::new();
        for n in self.bottom.iter().chain(&self.top) {
            if !seen.insert(n.id) {
                violations.push(Violation::DuplicateId(n.id));
            }
        }

        let bottom_ids: HashSet<NodeId> = self.bottom.iter().map(|n| n.id).collect();
        let mut degree: HashMap<NodeId, usize> = HashMap::new();
        let mut edge_set = HashSet::new();
        for &(from, to) in &self.edges {
            if !bottom_ids.contains(&from) || !self.top_index.contains_key(&to) {
                violations.push(Violation::EdgeNotBipartite { from, to });
            }
            if !edge_set.insert((from, to)) {
                violations.push(Violation::ParallelEdge { from, to });
            }
            *degree.entry(from).or_default() += 1;
            *degree.entry(to).or_default() += 1;
        }

        for n in self.bottom.iter().chain(&self.top) {
            if n.kind == NodeKind::Dummy {
                let d = degree.get(&n.id).copied().unwrap_or(0);
                if d != 1 {
                    violations.push(Violation::DummyDegree { id: n.id, degree: d });
                }
            }
        }

        if let Err(e) = self.pi1.ensure_covers(self.bottom.iter().map(|n| n.id)) {
            violations.push(Violation::Pi1Mismatch(e.to_string()));
        }

        violations
    }

    pub fn ensure_valid(&self) -> Result<()> {
        let v = self.validate();
        if v.is_empty() {
            Ok(())
        } else {
            Err(Error::InvalidInstance(v))
        }
    }

    pub fn bottom(&self) -> &[Node] {
        &self.bottom
    }

    pub fn top(&self) -> &[Node] {
        &self.top
    }

    pub fn edges(&self) -> &[(NodeId, NodeId)] {
        &self.edges
    }

    pub fn pi1(&self) -> &Permutation {
        &self.pi1
    }

    pub fn top_ids(&self) -> impl Iterator<Item = NodeId> + '_ {
        self.top.iter().map(|n| n.id)
    }

    pub fn real_top_ids(&self) -> impl Iterator<Item = NodeId> + '_ {
        self.top
            .iter()
            .filter(|n| n.kind == NodeKind::Real)
            .map(|n| n.id)
    }

    pub fn dummy_top_ids(&self) -> impl Iterator<Item = NodeId> + '_ {
        self.top
            .iter()
            .filter(|n| n.kind == NodeKind::Dummy)
            .map(|n| n.id)
    }

    /// Index of a top node in [`Self::top`].
    pub fn top_index(&self, id: NodeId) -> Option<usize> {
        self.top_index.get(&id).copied()
    }

    pub fn top_kind(&self, id: NodeId) -> Option<NodeKind> {
        self.top_index(id).map(|i| self.top[i].kind)
    }

    pub fn is_top_dummy(&self, id: NodeId) -> bool {
        self.top_kind(id) == Some(NodeKind::Dummy)
    }

    /// Sorted π1 positions of the bottom neighbors of the top node at `index`.
    pub fn neighbor_positions(&self, index: usize) -> &[usize] {
        &self.top_neighbors[index]
    }

    /// Sorted π1 positions of the bottom neighbors of top node `id`.
    pub fn neighbors_of(&self, id: NodeId) -> Result<&[usize]> {
        self.top_index(id)
            .map(|i| self.neighbor_positions(i))
            .ok_or(Error::UnknownNode(id))
    }

    /// Number of edges incident to bottom position `p` whose top endpoint is real,
    /// for every π1 position.
    pub fn real_degree_by_position(&self) -> Vec<u64> {
        let mut deg = vec![0u64; self.pi1.len()];
        for (node, nbrs) in self.top.iter().zip(&self.top_neighbors) {
            if node.kind == NodeKind::Real {
                for &p in nbrs {
                    deg[p] += 1;
                }
            }
        }
        deg
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&InstanceFile::from(self)).expect("instance serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let file: InstanceFile = serde_json::from_str(text)?;
        file.try_into()
    }
}

#[derive(Serialize, Deserialize)]
struct NodeEntry {
    id: NodeId,
    kind: NodeKind,
}

/// On-disk layout. Field order is the key order writers emit.
#[derive(Serialize, Deserialize)]
struct InstanceFile {
    bottom: Vec<NodeEntry>,
    top: Vec<NodeEntry>,
    edges: Vec<[NodeId; 2]>,
    pi1: Vec<NodeId>,
}

impl From<&BipartiteInstance> for InstanceFile {
    fn from(inst: &BipartiteInstance) -> Self {
        let entries = |nodes: &[Node]| {
            nodes
                .iter()
                .map(|n| NodeEntry { id: n.id, kind: n.kind })
                .collect()
        };
        InstanceFile {
            bottom: entries(&inst.bottom),
            top: entries(&inst.top),
            edges: inst.edges.iter().map(|&(b, t)| [b, t]).collect(),
            pi1: inst.pi1.order().to_vec(),
        }
    }
}

impl TryFrom<InstanceFile> for BipartiteInstance {
    type Error = Error;

    fn try_from(file: InstanceFile) -> Result<Self> {
        let nodes = |v: Vec<NodeEntry>| v.into_iter().map(|e| (e.id, e.kind)).collect();
        Ok(BipartiteInstance::new(
            nodes(file.bottom),
            nodes(file.top),
            file.edges.into_iter().map(|[b, t]| (b, t)).collect(),
            Permutation::new(file.pi1)?,
        ))
    }
}

impl Serialize for BipartiteInstance {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        InstanceFile::from(self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for BipartiteInstance {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        InstanceFile::deserialize(d)?
            .try_into()
            .map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;

    pub(crate) fn real(id: u32) -> (NodeId, NodeKind) {
        (NodeId(id), NodeKind::Real)
    }

    pub(crate) fn dummy(id: u32) -> (NodeId, NodeKind) {
        (NodeId(id), NodeKind::Dummy)
    }

    pub(crate) fn perm(ids: &[u32]) -> Permutation {
        Permutation::new(ids.iter().map(|&i| NodeId(i)).collect()).unwrap()
    }

    pub(crate) fn edges(pairs: &[(u32, u32)]) -> Vec<(NodeId, NodeId)> {
        pairs.iter().map(|&(b, t)| (NodeId(b), NodeId(t))).collect()
    }

    fn two_by_two() -> BipartiteInstance {
        BipartiteInstance::new(
            vec![real(0), real(1)],
            vec![real(10), real(11)],
            edges(&[(0, 11), (1, 10)]),
            perm(&[0, 1]),
        )
    }

    #[test]
    fn valid_two_by_two() {
        assert!(two_by_two().validate().is_empty());
        assert!(two_by_two().ensure_valid().is_ok());
    }

    #[test]
    fn dummy_with_degree_two() {
        let inst = BipartiteInstance::new(
            vec![real(0), real(1)],
            vec![dummy(10)],
            edges(&[(0, 10), (1, 10)]),
            perm(&[0, 1]),
        );
        let v = inst.validate();
        assert_eq!(v, vec![Violation::DummyDegree { id: NodeId(10), degree: 2 }]);
        assert!(v[0].to_string().starts_with("dummy degree ≠ 1"));
    }

    #[test]
    fn edge_between_bottom_nodes() {
        let inst = BipartiteInstance::new(
            vec![real(0), real(1)],
            vec![real(10)],
            edges(&[(0, 1), (0, 10)]),
            perm(&[0, 1]),
        );
        let v = inst.validate();
        assert_eq!(
            v,
            vec![Violation::EdgeNotBipartite { from: NodeId(0), to: NodeId(1) }]
        );
        assert!(v[0].to_string().starts_with("edge not bipartite"));
    }

    #[test]
    fn parallel_edges_and_duplicate_ids() {
        let inst = BipartiteInstance::new(
            vec![real(0)],
            vec![real(0), real(2)],
            edges(&[(0, 2), (0, 2)]),
            perm(&[0]),
        );
        let v = inst.validate();
        assert!(v.contains(&Violation::DuplicateId(NodeId(0))));
        assert!(v.contains(&Violation::ParallelEdge { from: NodeId(0), to: NodeId(2) }));
    }

    #[test]
    fn pi1_must_cover_bottom() {
        let inst = BipartiteInstance::new(
            vec![real(0), real(1)],
            vec![real(10)],
            edges(&[(0, 10)]),
            perm(&[0]),
        );
        assert!(matches!(inst.validate()[..], [Violation::Pi1Mismatch(_)]));
    }

    #[test]
    fn json_round_trip_and_key_order() {
        let inst = BipartiteInstance::new(
            vec![real(0), dummy(1)],
            vec![real(10), dummy(11)],
            edges(&[(0, 10), (1, 10), (0, 11)]),
            perm(&[1, 0]),
        );
        let text = inst.to_json();
        let keys: Vec<usize> = ["\"bottom\"", "\"top\"", "\"edges\"", "\"pi1\""]
            .iter()
            .map(|k| text.find(k).unwrap())
            .collect();
        assert!(keys.windows(2).all(|w| w[0] < w[1]));
        assert_eq!(BipartiteInstance::from_json(&text).unwrap(), inst);

        let reordered = r#"{"pi1":[0],"edges":[[0,5]],"top":[{"kind":"real","id":5}],"bottom":[{"id":0,"kind":"real"}]}"#;
        let parsed = BipartiteInstance::from_json(reordered).unwrap();
        assert!(parsed.validate().is_empty());
        assert_eq!(parsed.neighbors_of(NodeId(5)).unwrap(), &[0]);
    }
}
