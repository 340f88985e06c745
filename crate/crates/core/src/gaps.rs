//! Placing dummy nodes around a fixed order of real nodes.
//!
//! Dummy nodes always follow the canonical order (ascending π1 position of their unique
//! neighbor), under which no two dummy edges cross. What remains is deciding where the dummy
//! blocks go relative to the real nodes: only at the two ends (side gaps), or in at most `k`
//! blocks anywhere (k gaps).

use std::collections::HashMap;
use std::time::Duration;

use crate::error::{Error, Result};
use crate::exact;
use crate::heuristics::{heuristic_order, HeuristicKind};
use crate::instance::{BipartiteInstance, NodeId};
use crate::permutation::Permutation;

/// Dummy top nodes sorted by the π1 position of their neighbor, ties by id.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CanonicalDummyOrder {
    pub order: Permutation,
    pub neighbor_pos: HashMap<NodeId, usize>,
}

pub fn canonical_dummy_order(inst: &BipartiteInstance) -> Result<CanonicalDummyOrder> {
    inst.ensure_valid()?;
    let mut keyed: Vec<(usize, NodeId)> = inst
        .dummy_top_ids()
        .map(|id| (inst.neighbors_of(id).expect("known id")[0], id))
        .collect();
    keyed.sort_unstable();
    Ok(CanonicalDummyOrder {
        order: Permutation::new(keyed.iter().map(|&(_, id)| id).collect())?,
        neighbor_pos: keyed.into_iter().map(|(p, id)| (id, p)).collect(),
    })
}

fn ensure_real_order(inst: &BipartiteInstance, real_order: &Permutation) -> Result<()> {
    real_order.ensure_covers(inst.real_top_ids())
}

/// Crossings of dummy `d` (neighbor at π1 position `q`) with all real edges when `d` sits left
/// of every real node, and when it sits right of every real node.
fn side_costs(prefix_deg: &[u64], q: usize) -> (u64, u64) {
    let total = *prefix_deg.last().unwrap();
    let left = prefix_deg[q];
    let right = total - prefix_deg[q + 1];
    (left, right)
}

/// Places the canonical dummy order around `real_order` using only side gaps.
///
/// The dummies preceding the split go left of all real nodes and the rest go right; a dummy goes
/// left iff its crossings with real edges are strictly smaller there. Along the canonical order
/// the left cost is nondecreasing and the right cost nonincreasing, so the split is found by
/// binary search.
pub fn side_gap_merge(inst: &BipartiteInstance, real_order: &Permutation) -> Result<Permutation> {
    let canon = canonical_dummy_order(inst)?;
    ensure_real_order(inst, real_order)?;

    let deg = inst.real_degree_by_position();
    let mut prefix_deg = Vec::with_capacity(deg.len() + 1);
    prefix_deg.push(0u64);
    for d in &deg {
        prefix_deg.push(prefix_deg.last().unwrap() + d);
    }

    let dummies = canon.order.order();
    let split = dummies.partition_point(|id| {
        let (left, right) = side_costs(&prefix_deg, canon.neighbor_pos[id]);
        left < right
    });

    let mut order = Vec::with_capacity(inst.top().len());
    order.extend_from_slice(&dummies[..split]);
    order.extend(real_order.iter());
    order.extend_from_slice(&dummies[split..]);
    Permutation::new(order)
}

/// Prefix sums of dummy placement costs: `prefix[i][j]` is the total mixed crossing count of
/// dummies `0..j` (canonical order) when all of them sit at real boundary `i`, i.e. right after
/// the first `i` real nodes.
#[derive(Debug, Clone)]
pub struct BlockCostTables {
    reals: usize,
    dummies: usize,
    prefix: Vec<u64>,
}

impl BlockCostTables {
    pub fn new(inst: &BipartiteInstance, real_order: &[NodeId], dummy_order: &[NodeId]) -> Result<Self> {
        let (r, d) = (real_order.len(), dummy_order.len());
        let real_nbrs = real_order
            .iter()
            .map(|&id| inst.neighbors_of(id))
            .collect::<Result<Vec<_>>>()?;
        let mut prefix = vec![0u64; (r + 1) * (d + 1)];
        for (t, &dummy) in dummy_order.iter().enumerate() {
            let nd = inst.neighbors_of(dummy)?;
            // boundary 0: the dummy precedes every real node
            let mut cost: u64 = real_nbrs
                .iter()
                .map(|nr| crate::crossings::pair_crossings(nd, nr))
                .sum();
            for i in 0..=r {
                if i > 0 {
                    let nr = real_nbrs[i - 1];
                    cost = cost + crate::crossings::pair_crossings(nr, nd)
                        - crate::crossings::pair_crossings(nd, nr);
                }
                prefix[i * (d + 1) + t + 1] = prefix[i * (d + 1) + t] + cost;
            }
        }
        Ok(BlockCostTables { reals: r, dummies: d, prefix })
    }

    pub fn prefix(&self, i: usize, j: usize) -> u64 {
        self.prefix[i * (self.dummies + 1) + j]
    }

    /// Mixed crossings of dummies `from..to` placed as one block at boundary `i`.
    pub fn block(&self, i: usize, from: usize, to: usize) -> u64 {
        self.prefix(i, to) - self.prefix(i, from)
    }

    pub fn reals(&self) -> usize {
        self.reals
    }

    pub fn dummies(&self) -> usize {
        self.dummies
    }
}

/// Unreachable DP state. Larger than any crossing count an instance can have.
pub const INFINITE: u64 = u64::MAX;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Step {
    Base,
    /// Same value as boundary `i - 1`.
    Advance,
    /// Last block holds dummies `from..j` at boundary `i`.
    Block { from: usize },
}

/// `value(g, i, j)`: least mixed crossing count over placements of the first `j` canonical
/// dummies into at most `g` blocks at real boundaries `0..=i`.
#[derive(Debug, Clone)]
pub struct MergeTable {
    k: usize,
    reals: usize,
    dummies: usize,
    dp: Vec<u64>,
    step: Vec<Step>,
}

impl MergeTable {
    fn idx(&self, g: usize, i: usize, j: usize) -> usize {
        (g * (self.reals + 1) + i) * (self.dummies + 1) + j
    }

    pub fn value(&self, g: usize, i: usize, j: usize) -> u64 {
        self.dp[self.idx(g, i, j)]
    }

    pub fn max_gaps(&self) -> usize {
        self.k
    }

    pub fn build(costs: &BlockCostTables, k: usize) -> Self {
        let (r, d) = (costs.reals(), costs.dummies());
        let cells = (k + 1) * (r + 1) * (d + 1);
        let mut table = MergeTable {
            k,
            reals: r,
            dummies: d,
            dp: vec![INFINITE; cells],
            step: vec![Step::Base; cells],
        };
        for i in 0..=r {
            let at = table.idx(0, i, 0);
            table.dp[at] = 0;
        }
        for g in 1..=k {
            for i in 0..=r {
                for j in 0..=d {
                    let (mut best, mut step) = (INFINITE, Step::Base);
                    if i > 0 {
                        best = table.value(g, i - 1, j);
                        step = Step::Advance;
                    }
                    for from in 0..=j {
                        let prev = table.value(g - 1, i, from);
                        let cand = prev.saturating_add(costs.block(i, from, j));
                        if cand < best {
                            best = cand;
                            step = Step::Block { from };
                        }
                    }
                    let at = table.idx(g, i, j);
                    table.dp[at] = best;
                    table.step[at] = step;
                }
            }
        }
        table
    }

    /// Boundary assigned to each dummy in the optimal placement for `k` gaps.
    pub fn boundaries(&self) -> Vec<usize> {
        let mut boundary = vec![0; self.dummies];
        let (mut g, mut i, mut j) = (self.k, self.reals, self.dummies);
        while j > 0 {
            match self.step[self.idx(g, i, j)] {
                Step::Advance => i -= 1,
                Step::Block { from } => {
                    boundary[from..j].fill(i);
                    j = from;
                    g -= 1;
                }
                Step::Base => unreachable!("backtracking reached an infeasible cell"),
            }
        }
        boundary
    }
}

/// Merges `real_order` with the canonical dummy order using at most `k` gaps so that the
/// crossings between real and dummy edges are minimal. Returns the merged order and that
/// mixed crossing count.
pub fn k_gap_merge(
    inst: &BipartiteInstance,
    real_order: &Permutation,
    k: usize,
) -> Result<(Permutation, u64)> {
    if k < 1 {
        return Err(Error::InvalidGapBudget(k));
    }
    let canon = canonical_dummy_order(inst)?;
    ensure_real_order(inst, real_order)?;
    let dummies = canon.order.order();
    if dummies.is_empty() {
        return Ok((real_order.clone(), 0));
    }

    let costs = BlockCostTables::new(inst, real_order.order(), dummies)?;
    let table = MergeTable::build(&costs, k);
    let mixed = table.value(k, costs.reals(), costs.dummies());
    let boundary = table.boundaries();

    Ok((interleave(real_order.order(), dummies, &boundary)?, mixed))
}

/// Dummy `t` goes right after the first `boundary[t]` reals. `boundary` must be nondecreasing.
pub(crate) fn interleave(reals: &[NodeId], dummies: &[NodeId], boundary: &[usize]) -> Result<Permutation> {
    let mut order = Vec::with_capacity(reals.len() + dummies.len());
    let mut t = 0;
    for i in 0..=reals.len() {
        while t < dummies.len() && boundary[t] == i {
            order.push(dummies[t]);
            t += 1;
        }
        if i < reals.len() {
            order.push(reals[i]);
        }
    }
    Permutation::new(order)
}

/// How the order of the real top nodes is obtained before placing dummies.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BaseAlgorithm {
    Heuristic(HeuristicKind),
    /// Optimal real order by branch and bound, within the given time budget.
    Exact(Duration),
}

fn real_order(inst: &BipartiteInstance, base: BaseAlgorithm) -> Result<Permutation> {
    match base {
        BaseAlgorithm::Heuristic(kind) => heuristic_order(inst, inst.real_top_ids(), kind),
        BaseAlgorithm::Exact(budget) => {
            let result = exact::solve_real_order(inst, budget)?;
            result.permutation.ok_or(Error::NoSolution(budget))
        }
    }
}

/// Side-gap solution: base order of the real nodes, then [`side_gap_merge`].
pub fn solve_sidegaps(inst: &BipartiteInstance, base: BaseAlgorithm) -> Result<Permutation> {
    inst.ensure_valid()?;
    side_gap_merge(inst, &real_order(inst, base)?)
}

/// k-gap solution: heuristic order of the real nodes, then [`k_gap_merge`].
pub fn solve_kgaps(inst: &BipartiteInstance, kind: HeuristicKind, k: usize) -> Result<Permutation> {
    if k < 1 {
        return Err(Error::InvalidGapBudget(k));
    }
    inst.ensure_valid()?;
    let reals = heuristic_order(inst, inst.real_top_ids(), kind)?;
    Ok(k_gap_merge(inst, &reals, k)?.0)
}
