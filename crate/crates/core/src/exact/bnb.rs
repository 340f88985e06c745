//! Depth-first branch and bound over top-layer prefixes.
//!
//! A search state is a prefix of the final order. Appending node `v` fixes `v` before every
//! node not yet placed, which adds `sum_w c[v][w]`; the bound adds `min(c[v][w], c[w][v])` for
//! every pair of unplaced nodes. Chain dummies are only appended in chain order, and a new gap
//! opens whenever a chain dummy follows a non-chain node. Every state is a total order, so
//! transitivity never has to be enforced explicitly.
//!
//! The cost of completing a prefix depends only on which nodes are placed (plus, with a gap
//! budget, the gaps used and whether the prefix ends on a dummy), so states reached again with
//! no smaller accumulated cost are pruned.

use std::collections::HashMap;
use std::time::{Duration, Instant};

use super::model::OrderingModel;
use crate::error::{Error, Result};
use crate::instance::NodeId;
use crate::permutation::Permutation;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SolveStatus {
    Optimal,
    TimeoutIncumbent,
    Infeasible,
}

impl SolveStatus {
    pub fn as_str(&self) -> &'static str {
        match self {
            SolveStatus::Optimal => "optimal",
            SolveStatus::TimeoutIncumbent => "timeout_incumbent",
            SolveStatus::Infeasible => "infeasible",
        }
    }
}

#[derive(Debug, Clone)]
pub struct SolveResult {
    pub status: SolveStatus,
    pub permutation: Option<Permutation>,
    /// Objective of `permutation`, when present.
    pub objective: Option<u64>,
    pub wall_time: Duration,
    pub nodes_explored: u64,
}

const MAX_MEMO_ENTRIES: usize = 1 << 23;
const CLOCK_INTERVAL: u64 = 1 << 12;

pub struct BranchAndBound<'a> {
    model: &'a OrderingModel,
    time_budget: Duration,
    incumbent: Option<(Vec<usize>, u64)>,
}

impl<'a> BranchAndBound<'a> {
    pub fn new(model: &'a OrderingModel, time_budget: Duration) -> Self {
        BranchAndBound {
            model,
            time_budget,
            incumbent: None,
        }
    }

    /// Starts from a known feasible order. Infeasible orders are rejected.
    pub fn with_incumbent(mut self, order: &Permutation) -> Result<Self> {
        let encoded = self.model.encode(order)?;
        if !self.model.is_feasible(&encoded) {
            return Err(Error::MalformedModel("incumbent violates the model".into()));
        }
        let index: HashMap<NodeId, usize> = self
            .model
            .nodes()
            .iter()
            .enumerate()
            .map(|(i, &v)| (v, i))
            .collect();
        let idx: Vec<usize> = order.iter().map(|v| index[&v]).collect();
        let cost = self.model.objective_value(&encoded);
        self.incumbent = Some((idx, cost));
        Ok(self)
    }

    pub fn solve(self) -> SolveResult {
        let start = Instant::now();
        let model = self.model;
        let p = model.len();

        let mut search = Search::new(model, start, self.time_budget);
        if let Some((order, cost)) = self.incumbent {
            search.best = Some((order, cost));
        }

        if !self.time_budget.is_zero() {
            let mut root_bound = 0;
            for i in 0..p {
                for j in i + 1..p {
                    root_bound += model.cost(i, j).min(model.cost(j, i));
                }
            }
            search.run(root_bound);
        } else {
            search.timed_out = true;
        }

        let status = match (&search.best, search.timed_out) {
            (_, true) => SolveStatus::TimeoutIncumbent,
            (Some(_), false) => SolveStatus::Optimal,
            (None, false) => SolveStatus::Infeasible,
        };
        let (permutation, objective) = match search.best {
            Some((order, cost)) => {
                let ids = order.iter().map(|&i| model.nodes()[i]).collect();
                (Some(Permutation::new(ids).expect("search yields permutations")), Some(cost))
            }
            None => (None, None),
        };
        SolveResult {
            status,
            permutation,
            objective,
            wall_time: start.elapsed(),
            nodes_explored: search.explored,
        }
    }
}

pub fn solve_branch_and_bound(model: &OrderingModel, time_budget: Duration) -> SolveResult {
    BranchAndBound::new(model, time_budget).solve()
}

#[derive(Clone, Copy, PartialEq, Eq, Hash)]
struct StateKey {
    placed: u128,
    gaps: u32,
    after_dummy: bool,
}

struct Search<'a> {
    model: &'a OrderingModel,
    start: Instant,
    budget: Duration,
    p: usize,
    /// Chain rank of each node, if on the chain.
    chain_rank: Vec<Option<usize>>,
    chain: Vec<usize>,
    budget_gaps: Option<usize>,
    // state
    placed: Vec<bool>,
    prefix: Vec<usize>,
    next_chain: usize,
    gaps: usize,
    after_dummy: bool,
    acc: u64,
    memo: HashMap<StateKey, u64>,
    best: Option<(Vec<usize>, u64)>,
    explored: u64,
    timed_out: bool,
}

impl<'a> Search<'a> {
    fn new(model: &'a OrderingModel, start: Instant, budget: Duration) -> Self {
        let p = model.len();
        let index: HashMap<NodeId, usize> =
            model.nodes().iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let chain: Vec<usize> = model.chain().iter().map(|v| index[v]).collect();
        let mut chain_rank = vec![None; p];
        for (r, &i) in chain.iter().enumerate() {
            chain_rank[i] = Some(r);
        }
        Search {
            model,
            start,
            budget,
            p,
            chain_rank,
            chain,
            budget_gaps: model.gap_budget(),
            placed: vec![false; p],
            prefix: Vec::with_capacity(p),
            next_chain: 0,
            gaps: 0,
            after_dummy: false,
            acc: 0,
            memo: HashMap::new(),
            best: None,
            explored: 0,
            timed_out: false,
        }
    }

    fn best_cost(&self) -> u64 {
        self.best.as_ref().map_or(u64::MAX, |b| b.1)
    }

    fn state_key(&self) -> Option<StateKey> {
        if self.p > 128 {
            return None;
        }
        let mut placed = 0u128;
        for &i in &self.prefix {
            placed |= 1 << i;
        }
        Some(StateKey {
            placed,
            gaps: self.gaps as u32,
            after_dummy: self.after_dummy,
        })
    }

    fn chain_left(&self) -> usize {
        self.chain.len() - self.next_chain
    }

    /// Whether appending `v` keeps the gap budget satisfiable.
    fn admissible(&self, v: usize) -> bool {
        let Some(k) = self.budget_gaps else {
            return true;
        };
        match self.chain_rank[v] {
            Some(_) => self.after_dummy || self.gaps < k,
            // the remaining chain dummies would need a fresh gap
            None => self.chain_left() == 0 || self.gaps < k,
        }
    }

    fn run(&mut self, bound: u64) {
        self.explored += 1;
        if self.explored.is_multiple_of(CLOCK_INTERVAL) && self.start.elapsed() >= self.budget {
            self.timed_out = true;
        }
        if self.timed_out {
            return;
        }
        if self.prefix.len() == self.p {
            if self.acc < self.best_cost() {
                self.best = Some((self.prefix.clone(), self.acc));
            }
            return;
        }
        if let Some(key) = self.state_key() {
            match self.memo.get(&key) {
                Some(&seen) if seen <= self.acc => return,
                _ if self.memo.len() < MAX_MEMO_ENTRIES || self.memo.contains_key(&key) => {
                    self.memo.insert(key, self.acc);
                }
                _ => {}
            }
        }

        let mut children: Vec<(u64, u64, usize)> = Vec::new();
        for v in 0..self.p {
            if self.placed[v] {
                continue;
            }
            if let Some(r) = self.chain_rank[v] {
                if r != self.next_chain {
                    continue;
                }
            }
            if !self.admissible(v) {
                continue;
            }
            let (mut step, mut slack) = (0u64, 0u64);
            for w in 0..self.p {
                if w != v && !self.placed[w] {
                    let (vw, wv) = (self.model.cost(v, w), self.model.cost(w, v));
                    step += vw;
                    slack += vw - vw.min(wv);
                }
            }
            children.push((slack, step, v));
        }
        children.sort_unstable_by_key(|&(slack, _, v)| (slack, self.model.nodes()[v]));

        for (slack, step, v) in children {
            let child_bound = bound + slack;
            if child_bound >= self.best_cost() {
                // children are sorted by slack, so the rest are no better
                break;
            }
            let saved = (self.gaps, self.after_dummy, self.next_chain);
            let on_chain = self.chain_rank[v].is_some();
            if on_chain {
                if !self.after_dummy {
                    self.gaps += 1;
                }
                self.next_chain += 1;
            }
            self.after_dummy = on_chain;
            self.placed[v] = true;
            self.prefix.push(v);
            self.acc += step;

            self.run(child_bound);

            self.acc -= step;
            self.prefix.pop();
            self.placed[v] = false;
            (self.gaps, self.after_dummy, self.next_chain) = saved;
            if self.timed_out {
                return;
            }
        }
    }
}
