use std::collections::{HashMap, HashSet};
use std::fmt;

use crate::crossings::CrossingMatrix;
use crate::error::{Error, Result};
use crate::instance::NodeId;
use crate::permutation::Permutation;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Var {
    /// `X(u, v) = 1` iff `u` precedes `v`.
    X(NodeId, NodeId),
    /// `G(u, v) = 1` if a real node lies between consecutive chain dummies `u` and `v`.
    G(NodeId, NodeId),
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Var::X(u, v) => write!(f, "x_{u}_{v}"),
            Var::G(u, v) => write!(f, "g_{u}_{v}"),
        }
    }
}

impl std::str::FromStr for Var {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::MalformedModel(format!("bad variable name '{s}'"));
        let mut parts = s.split('_');
        let (tag, u, v) = (parts.next(), parts.next(), parts.next());
        if parts.next().is_some() {
            return Err(bad());
        }
        let id = |p: Option<&str>| -> Result<NodeId> {
            p.and_then(|t| t.parse().ok()).map(NodeId).ok_or_else(bad)
        };
        let (u, v) = (id(u)?, id(v)?);
        match tag {
            Some("x") => Ok(Var::X(u, v)),
            Some("g") => Ok(Var::G(u, v)),
            _ => Err(bad()),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Op {
    Le,
    Eq,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Constraint {
    pub terms: Vec<(Var, i64)>,
    pub op: Op,
    pub rhs: i64,
}

impl Constraint {
    fn le(terms: Vec<(Var, i64)>, rhs: i64) -> Self {
        Constraint { terms, op: Op::Le, rhs }
    }

    fn eq(terms: Vec<(Var, i64)>, rhs: i64) -> Self {
        Constraint { terms, op: Op::Eq, rhs }
    }

    pub fn is_satisfied(&self, value: impl Fn(Var) -> i64) -> bool {
        let lhs: i64 = self.terms.iter().map(|&(v, c)| c * value(v)).sum();
        match self.op {
            Op::Le => lhs <= self.rhs,
            Op::Eq => lhs == self.rhs,
        }
    }
}

/// 0/1 linear ordering model over top nodes, optionally with a gap budget on a chain of
/// dummies whose relative order is fixed.
///
/// Nodes not on the chain are treated as real by the gap constraints. A single dummy puts no
/// constraint on the order, so chains always hold at least two nodes or none.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrderingModel {
    nodes: Vec<NodeId>,
    costs: Vec<u64>,
    chain: Vec<NodeId>,
    gap_budget: Option<usize>,
}

impl OrderingModel {
    /// Unconstrained ordering model (antisymmetry and transitivity only).
    pub fn unconstrained(matrix: &CrossingMatrix) -> Self {
        let p = matrix.len();
        let mut costs = vec![0; p * p];
        for i in 0..p {
            for j in 0..p {
                costs[i * p + j] = matrix.at(i, j);
            }
        }
        OrderingModel {
            nodes: matrix.ids().to_vec(),
            costs,
            chain: Vec::new(),
            gap_budget: None,
        }
    }

    /// Adds the fixed dummy order and the `k`-gap budget. `chain` lists the dummies in
    /// their fixed order.
    pub fn with_gap_budget(mut self, chain: Vec<NodeId>, k: usize) -> Result<Self> {
        if k < 1 {
            return Err(Error::InvalidGapBudget(k));
        }
        let known: HashSet<NodeId> = self.nodes.iter().copied().collect();
        if let Some(&id) = chain.iter().find(|id| !known.contains(id)) {
            return Err(Error::UnknownNode(id));
        }
        if chain.len() >= 2 {
            self.chain = chain;
            self.gap_budget = Some(k);
        }
        Ok(self)
    }

    pub fn nodes(&self) -> &[NodeId] {
        &self.nodes
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Objective coefficient of `x_ij` by node index.
    pub fn cost(&self, i: usize, j: usize) -> u64 {
        self.costs[i * self.nodes.len() + j]
    }

    /// Dummies with fixed relative order; empty when there is no gap constraint.
    pub fn chain(&self) -> &[NodeId] {
        &self.chain
    }

    pub fn gap_budget(&self) -> Option<usize> {
        self.gap_budget
    }

    /// The predecessor pairs of the chain.
    pub fn chain_pairs(&self) -> impl Iterator<Item = (NodeId, NodeId)> + '_ {
        self.chain.windows(2).map(|w| (w[0], w[1]))
    }

    pub fn x_vars(&self) -> Vec<Var> {
        let mut vars = Vec::new();
        for &u in &self.nodes {
            for &v in &self.nodes {
                if u != v {
                    vars.push(Var::X(u, v));
                }
            }
        }
        vars
    }

    pub fn g_vars(&self) -> Vec<Var> {
        self.chain_pairs().map(|(u, v)| Var::G(u, v)).collect()
    }

    /// Objective terms with nonzero coefficients.
    pub fn objective(&self) -> Vec<(Var, u64)> {
        let p = self.nodes.len();
        let mut terms = Vec::new();
        for i in 0..p {
            for j in 0..p {
                if i != j && self.cost(i, j) > 0 {
                    terms.push((Var::X(self.nodes[i], self.nodes[j]), self.cost(i, j)));
                }
            }
        }
        terms
    }

    /// Antisymmetry, dummy order fixing, gap linking and gap budget. Transitivity is kept
    /// separate, see [`Self::transitivity_constraints`].
    pub fn constraints(&self) -> Vec<Constraint> {
        let mut out = Vec::new();
        for (a, &u) in self.nodes.iter().enumerate() {
            for &v in &self.nodes[a + 1..] {
                out.push(Constraint::eq(vec![(Var::X(u, v), 1), (Var::X(v, u), 1)], 1));
            }
        }
        for (u, v) in self.chain_pairs() {
            out.push(Constraint::eq(vec![(Var::X(u, v), 1)], 1));
        }
        let on_chain: HashSet<NodeId> = self.chain.iter().copied().collect();
        for (u, v) in self.chain_pairs() {
            for &w in self.nodes.iter().filter(|w| !on_chain.contains(w)) {
                out.push(Constraint::le(
                    vec![(Var::X(u, w), 1), (Var::X(w, v), 1), (Var::G(u, v), -1)],
                    1,
                ));
            }
        }
        if let Some(k) = self.gap_budget {
            let terms = self.g_vars().into_iter().map(|g| (g, 1)).collect();
            out.push(Constraint::le(terms, k as i64 - 1));
        }
        out
    }

    /// `x_ij + x_jk - x_ik <= 1` for pairwise distinct `i, j, k`: with antisymmetry this
    /// forbids directed 3-cycles. A solver may add these lazily.
    pub fn transitivity_constraints(&self) -> Vec<Constraint> {
        let mut out = Vec::new();
        for &i in &self.nodes {
            for &j in &self.nodes {
                if j == i {
                    continue;
                }
                for &k in &self.nodes {
                    if k == i || k == j {
                        continue;
                    }
                    out.push(Constraint::le(
                        vec![(Var::X(i, j), 1), (Var::X(j, k), 1), (Var::X(i, k), -1)],
                        1,
                    ));
                }
            }
        }
        out
    }

    /// 0/1 assignment of a permutation of the model's nodes. Gap variables take their least
    /// feasible value.
    pub fn encode(&self, order: &Permutation) -> Result<Assignment> {
        order.ensure_covers(self.nodes.iter().copied())?;
        let mut values = HashMap::new();
        for x in self.x_vars() {
            if let Var::X(u, v) = x {
                values.insert(x, order.precedes(u, v) as i64);
            }
        }
        let on_chain: HashSet<NodeId> = self.chain.iter().copied().collect();
        for (u, v) in self.chain_pairs() {
            let (pu, pv) = (order.position(u).unwrap(), order.position(v).unwrap());
            let (lo, hi) = (pu.min(pv), pu.max(pv));
            let between = order.order()[lo + 1..hi]
                .iter()
                .any(|w| !on_chain.contains(w));
            values.insert(Var::G(u, v), between as i64);
        }
        Ok(Assignment(values))
    }

    pub fn is_feasible(&self, a: &Assignment) -> bool {
        let value = |v: Var| a.get(v);
        self.constraints()
            .iter()
            .chain(self.transitivity_constraints().iter())
            .all(|c| c.is_satisfied(value))
    }

    pub fn objective_value(&self, a: &Assignment) -> u64 {
        self.objective()
            .iter()
            .map(|&(v, c)| c * a.get(v) as u64)
            .sum()
    }

    /// Reads the order off the `x` variables: a node's position is the number of nodes
    /// preceding it. Requires a feasible assignment.
    pub fn decode(&self, a: &Assignment) -> Result<Permutation> {
        let mut keyed: Vec<(usize, NodeId)> = self
            .nodes
            .iter()
            .map(|&v| {
                let before = self
                    .nodes
                    .iter()
                    .filter(|&&u| u != v && a.get(Var::X(u, v)) == 1)
                    .count();
                (before, v)
            })
            .collect();
        keyed.sort_unstable();
        if keyed.iter().enumerate().any(|(i, &(b, _))| b != i) {
            return Err(Error::MalformedModel("assignment is not a total order".into()));
        }
        Permutation::new(keyed.into_iter().map(|(_, v)| v).collect())
    }

    /// Rebuilds a model from its linear form.
    pub(crate) fn from_parts(
        nodes: Vec<NodeId>,
        objective: &[(Var, u64)],
        chain: Vec<NodeId>,
        gap_budget: Option<usize>,
    ) -> Result<Self> {
        let p = nodes.len();
        let index: HashMap<NodeId, usize> = nodes.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let mut costs = vec![0; p * p];
        for &(var, c) in objective {
            match var {
                Var::X(u, v) => {
                    let (i, j) = match (index.get(&u), index.get(&v)) {
                        (Some(&i), Some(&j)) => (i, j),
                        _ => return Err(Error::MalformedModel(format!("objective term {var} has no variable"))),
                    };
                    costs[i * p + j] = c;
                }
                Var::G(..) => {
                    return Err(Error::MalformedModel(format!("gap variable {var} in objective")))
                }
            }
        }
        Ok(OrderingModel { nodes, costs, chain, gap_budget })
    }
}

/// Variable values of a 0/1 solution. Missing variables read as 0.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Assignment(pub HashMap<Var, i64>);

impl Assignment {
    pub fn get(&self, v: Var) -> i64 {
        self.0.get(&v).copied().unwrap_or(0)
    }
}
