//! Crossing and gap counting primitives.

use std::collections::{HashMap, HashSet};

use crate::error::{Error, Result};
use crate::instance::{BipartiteInstance, NodeId};
use crate::permutation::Permutation;

/// Total number of edge crossings when the top layer is ordered by `pi2`.
///
/// Edges are sorted by (top position, bottom position) and the strict inversions among
/// bottom positions are counted with a Fenwick tree, `O(m log m)`.
pub fn count_crossings(inst: &BipartiteInstance, pi2: &Permutation) -> Result<u64> {
    pi2.ensure_covers(inst.top_ids())?;
    let mut keyed: Vec<(usize, usize)> = Vec::with_capacity(inst.edges().len());
    for id in pi2.iter() {
        let top_pos = pi2.position(id).expect("id taken from pi2");
        let idx = inst.top_index(id).ok_or(Error::UnknownNode(id))?;
        keyed.extend(inst.neighbor_positions(idx).iter().map(|&b| (top_pos, b)));
    }
    keyed.sort_unstable();
    Ok(count_strict_inversions(
        keyed.iter().map(|&(_, b)| b),
        inst.pi1().len(),
    ))
}

/// Number of pairs `i < j` with `values[i] > values[j]`, all values `< bound`.
fn count_strict_inversions(values: impl Iterator<Item = usize>, bound: usize) -> u64 {
    let mut tree = vec![0u64; bound + 1];
    let mut inversions = 0u64;
    for (seen, v) in (0u64..).zip(values) {
        // how many seen values are <= v
        let mut le = 0u64;
        let mut i = v + 1;
        while i > 0 {
            le += tree[i];
            i &= i - 1;
        }
        inversions += seen - le;
        let mut i = v + 1;
        while i <= bound {
            tree[i] += 1;
            i += i & i.wrapping_neg();
        }
    }
    inversions
}

/// Pairwise crossing counts between top nodes: `get(u, v)` is the number of crossings
/// between edges of `u` and edges of `v` when `u` is placed left of `v`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CrossingMatrix {
    ids: Vec<NodeId>,
    index: HashMap<NodeId, usize>,
    c: Vec<u64>,
}

impl CrossingMatrix {
    pub fn ids(&self) -> &[NodeId] {
        &self.ids
    }

    pub fn len(&self) -> usize {
        self.ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ids.is_empty()
    }

    pub fn index_of(&self, id: NodeId) -> Option<usize> {
        self.index.get(&id).copied()
    }

    /// Entry by matrix index.
    pub fn at(&self, i: usize, j: usize) -> u64 {
        self.c[i * self.ids.len() + j]
    }

    /// Entry by node id. Panics on ids outside the matrix.
    pub fn get(&self, u: NodeId, v: NodeId) -> u64 {
        self.at(self.index[&u], self.index[&v])
    }

    /// Crossings of a full order: sum of `c[u][v]` over all `u` before `v`.
    pub fn order_cost(&self, order: &[NodeId]) -> u64 {
        let idx: Vec<usize> = order.iter().map(|id| self.index[id]).collect();
        let mut total = 0;
        for (a, &i) in idx.iter().enumerate() {
            for &j in &idx[a + 1..] {
                total += self.at(i, j);
            }
        }
        total
    }
}

/// `|{(a, b) in nu x nv : b < a}|` for sorted position lists.
pub(crate) fn pair_crossings(nu: &[usize], nv: &[usize]) -> u64 {
    let mut below = 0usize;
    let mut total = 0u64;
    for &a in nu {
        while below < nv.len() && nv[below] < a {
            below += 1;
        }
        total += below as u64;
    }
    total
}

/// Crossing matrix over all top nodes, in the order of [`BipartiteInstance::top`].
pub fn pairwise_crossings(inst: &BipartiteInstance) -> CrossingMatrix {
    crossing_matrix_for(inst, &inst.top_ids().collect::<Vec<_>>())
        .expect("top ids are known")
}

/// Crossing matrix restricted to the given top nodes, in the given order.
pub fn crossing_matrix_for(inst: &BipartiteInstance, ids: &[NodeId]) -> Result<CrossingMatrix> {
    let nbrs = ids
        .iter()
        .map(|&id| inst.neighbors_of(id))
        .collect::<Result<Vec<_>>>()?;
    let p = ids.len();
    let mut c = vec![0u64; p * p];
    for i in 0..p {
        for j in 0..p {
            if i != j {
                c[i * p + j] = pair_crossings(nbrs[i], nbrs[j]);
            }
        }
    }
    let mut index = HashMap::with_capacity(p);
    for (i, &id) in ids.iter().enumerate() {
        if index.insert(id, i).is_some() {
            return Err(Error::DuplicateNode(id));
        }
    }
    Ok(CrossingMatrix {
        ids: ids.to_vec(),
        index,
        c,
    })
}

/// Crossings between an edge incident to `s` and an edge incident to `sp` when every node
/// of `s` is placed before every node of `sp`. Crossings inside either block are not counted.
pub fn block_crossings(inst: &BipartiteInstance, s: &[NodeId], sp: &[NodeId]) -> Result<u64> {
    let left: HashSet<NodeId> = s.iter().copied().collect();
    if let Some(&overlap) = sp.iter().find(|id| left.contains(id)) {
        return Err(Error::OverlappingSets(overlap));
    }
    let mut total = 0;
    for &u in s {
        let nu = inst.neighbors_of(u)?;
        for &v in sp {
            total += pair_crossings(nu, inst.neighbors_of(v)?);
        }
    }
    Ok(total)
}

/// Maximal runs of consecutive dummy nodes in a top-layer order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GapReport {
    pub count: usize,
    /// Inclusive `(start, end)` positions of each run, left to right.
    pub runs: Vec<(usize, usize)>,
    /// Whether each run touches the first or the last position.
    pub side_flags: Vec<bool>,
}

impl GapReport {
    pub fn is_side_gap_permutation(&self) -> bool {
        self.side_flags.iter().all(|&f| f)
    }
}

pub fn count_gaps(inst: &BipartiteInstance, pi2: &Permutation) -> GapReport {
    gap_report(pi2.iter().map(|id| inst.is_top_dummy(id)))
}

/// Gap report over a sequence of dummy flags.
pub fn gap_report(is_dummy: impl IntoIterator<Item = bool>) -> GapReport {
    let mut runs = Vec::new();
    let mut start = None;
    let mut len = 0;
    for (i, d) in is_dummy.into_iter().enumerate() {
        match (d, start) {
            (true, None) => start = Some(i),
            (false, Some(s)) => {
                runs.push((s, i - 1));
                start = None;
            }
            _ => {}
        }
        len = i + 1;
    }
    if let Some(s) = start {
        runs.push((s, len - 1));
    }
    let side_flags = runs
        .iter()
        .map(|&(s, e)| s == 0 || e + 1 == len)
        .collect();
    GapReport {
        count: runs.len(),
        runs,
        side_flags,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instance::tests::{dummy, edges, perm, real};

    #[test]
    fn single_pair_crossing() {
        // a=0, b=1, u=10, v=11
        let inst = BipartiteInstance::new(
            vec![real(0), real(1)],
            vec![real(10), real(11)],
            edges(&[(0, 11), (1, 10)]),
            perm(&[0, 1]),
        );
        assert_eq!(count_crossings(&inst, &perm(&[10, 11])).unwrap(), 1);
        assert_eq!(count_crossings(&inst, &perm(&[11, 10])).unwrap(), 0);
    }

    #[test]
    fn complete_k22_always_one() {
        let inst = BipartiteInstance::new(
            vec![real(0), real(1)],
            vec![real(10), real(11)],
            edges(&[(0, 10), (0, 11), (1, 10), (1, 11)]),
            perm(&[0, 1]),
        );
        assert_eq!(count_crossings(&inst, &perm(&[10, 11])).unwrap(), 1);
        assert_eq!(count_crossings(&inst, &perm(&[11, 10])).unwrap(), 1);
    }

    #[test]
    fn unknown_or_missing_ids_rejected() {
        let inst = BipartiteInstance::new(
            vec![real(0)],
            vec![real(10), real(11)],
            edges(&[(0, 10), (0, 11)]),
            perm(&[0]),
        );
        assert!(count_crossings(&inst, &perm(&[10, 12])).is_err());
        assert!(count_crossings(&inst, &perm(&[10])).is_err());
    }

    #[test]
    fn matrix_single_edges() {
        // N(u)={a}, N(v)={b}, pi1=(a,b)
        let inst = BipartiteInstance::new(
            vec![real(0), real(1)],
            vec![real(10), real(11)],
            edges(&[(0, 10), (1, 11)]),
            perm(&[0, 1]),
        );
        let c = pairwise_crossings(&inst);
        assert_eq!(c.get(NodeId(10), NodeId(11)), 0);
        assert_eq!(c.get(NodeId(11), NodeId(10)), 1);
    }

    #[test]
    fn matrix_shared_endpoint() {
        let inst = BipartiteInstance::new(
            vec![real(0)],
            vec![real(10), real(11)],
            edges(&[(0, 10), (0, 11)]),
            perm(&[0]),
        );
        let c = pairwise_crossings(&inst);
        assert_eq!(c.get(NodeId(10), NodeId(11)), 0);
        assert_eq!(c.get(NodeId(11), NodeId(10)), 0);
    }

    #[test]
    fn block_examples() {
        let inst = BipartiteInstance::new(
            vec![real(0), real(1)],
            vec![real(10), real(11)],
            edges(&[(0, 10), (1, 11)]),
            perm(&[0, 1]),
        );
        let c = pairwise_crossings(&inst);
        let (u, v) = (NodeId(10), NodeId(11));
        assert_eq!(block_crossings(&inst, &[v], &[u]).unwrap(), c.get(v, u));
        assert_eq!(block_crossings(&inst, &[], &[u, v]).unwrap(), 0);
        assert!(matches!(
            block_crossings(&inst, &[u], &[u]),
            Err(Error::OverlappingSets(_))
        ));
    }

    #[test]
    fn gap_examples() {
        let inst = BipartiteInstance::new(
            vec![real(0)],
            vec![dummy(1), real(2), real(3), dummy(4)],
            edges(&[(0, 1), (0, 2), (0, 3), (0, 4)]),
            perm(&[0]),
        );
        let r = count_gaps(&inst, &perm(&[1, 2, 3, 4]));
        assert_eq!(r.count, 2);
        assert_eq!(r.runs, vec![(0, 0), (3, 3)]);
        assert!(r.is_side_gap_permutation());

        let r = count_gaps(&inst, &perm(&[2, 1, 4, 3]));
        assert_eq!(r.count, 1);
        assert_eq!(r.runs, vec![(1, 2)]);
        assert!(!r.is_side_gap_permutation());

        let all = gap_report([true, true, true]);
        assert_eq!(all.count, 1);
        assert!(all.is_side_gap_permutation());
        assert_eq!(gap_report([]).count, 0);
    }

    #[test]
    fn inversion_counter_matches_quadratic() {
        let v = [3usize, 1, 4, 1, 5, 0, 2, 6, 5, 3];
        let mut slow = 0;
        for i in 0..v.len() {
            for j in i + 1..v.len() {
                if v[i] > v[j] {
                    slow += 1;
                }
            }
        }
        assert_eq!(count_strict_inversions(v.iter().copied(), 7), slow);
    }
}
