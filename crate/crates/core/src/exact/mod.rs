//! Exact solvers: the ordering model with gap constraints, branch and bound over it, and a
//! brute-force enumeration oracle for small instances.

mod bnb;
mod export;
mod model;
mod oracle;

use std::time::Duration;

pub use bnb::{solve_branch_and_bound, BranchAndBound, SolveResult, SolveStatus};
pub use export::{export_model, import_model};
pub use model::{Assignment, Constraint, Op, OrderingModel, Var};
pub use oracle::{brute_force_oracle, OracleMode, ORACLE_LIMIT};

use crate::crossings::{count_crossings, crossing_matrix_for, pairwise_crossings};
use crate::error::{Error, Result};
use crate::gaps::{canonical_dummy_order, side_gap_merge, solve_kgaps};
use crate::heuristics::{heuristic_order, HeuristicKind};
use crate::instance::{BipartiteInstance, NodeId};

/// Ordering model over all top nodes with the canonical dummy order fixed and at most `k` gaps.
pub fn build_kgap_model(inst: &BipartiteInstance, k: usize) -> Result<OrderingModel> {
    if k < 1 {
        return Err(Error::InvalidGapBudget(k));
    }
    let canon = canonical_dummy_order(inst)?;
    OrderingModel::unconstrained(&pairwise_crossings(inst)).with_gap_budget(canon.order.into_order(), k)
}

/// Plain ordering model over the real top nodes only.
pub fn build_base_oscm_model(inst: &BipartiteInstance) -> Result<OrderingModel> {
    let reals: Vec<NodeId> = inst.real_top_ids().collect();
    Ok(OrderingModel::unconstrained(&crossing_matrix_for(inst, &reals)?))
}

/// Plain ordering model over every top node, dummies included, with no gap restriction.
pub fn build_unrestricted_model(inst: &BipartiteInstance) -> OrderingModel {
    OrderingModel::unconstrained(&pairwise_crossings(inst))
}

/// Optimal order of the real top nodes, seeded with the median order.
pub fn solve_real_order(inst: &BipartiteInstance, time_budget: Duration) -> Result<SolveResult> {
    let model = build_base_oscm_model(inst)?;
    let seed = heuristic_order(inst, inst.real_top_ids(), HeuristicKind::Median)?;
    Ok(BranchAndBound::new(&model, time_budget).with_incumbent(&seed)?.solve())
}

/// Exact k-gap solution, seeded with the median k-gap solution.
pub fn solve_exact_kgaps(inst: &BipartiteInstance, k: usize, time_budget: Duration) -> Result<SolveResult> {
    let model = build_kgap_model(inst, k)?;
    let seed = solve_kgaps(inst, HeuristicKind::Median, k)?;
    Ok(BranchAndBound::new(&model, time_budget).with_incumbent(&seed)?.solve())
}

/// Exact side-gap solution: optimal real order, then optimal side placement of the dummies.
/// The status is that of the real-order search.
pub fn solve_exact_sidegaps(inst: &BipartiteInstance, time_budget: Duration) -> Result<SolveResult> {
    inst.ensure_valid()?;
    let base = solve_real_order(inst, time_budget)?;
    let reals = base.permutation.ok_or(Error::NoSolution(time_budget))?;
    let merged = side_gap_merge(inst, &reals)?;
    let objective = count_crossings(inst, &merged)?;
    Ok(SolveResult {
        status: base.status,
        permutation: Some(merged),
        objective: Some(objective),
        wall_time: base.wall_time,
        nodes_explored: base.nodes_explored,
    })
}

/// Exact solution of plain one-sided crossing minimization over the whole top layer.
pub fn solve_exact_unrestricted(inst: &BipartiteInstance, time_budget: Duration) -> Result<SolveResult> {
    inst.ensure_valid()?;
    let model = build_unrestricted_model(inst);
    let seed = heuristic_order(inst, inst.top_ids(), HeuristicKind::Median)?;
    Ok(BranchAndBound::new(&model, time_budget).with_incumbent(&seed)?.solve())
}
