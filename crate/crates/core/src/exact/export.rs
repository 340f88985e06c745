//! JSON form of an [`OrderingModel`] for external integer-programming tools.
//!
//! ```text
//! {"vars":        [{"name": "x_3_7"}, ..., {"name": "g_8_9"}, ...],
//!  "objective":   [{"var": "x_3_7", "coef": 2}, ...],
//!  "constraints": [{"terms": [{"var": "x_3_7", "coef": 1}, ...], "op": "<=" | "=", "rhs": 1}, ...]}
//! ```
//!
//! `x_u_v = 1` iff node `u` precedes node `v`; `g_u_v` links consecutive dummies `u, v` of the
//! fixed dummy order. The objective is minimized and lists nonzero coefficients only.
//! Transitivity constraints are written out in full after the other constraints.

use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use super::model::{Op, OrderingModel, Var};
use crate::error::{Error, Result};
use crate::instance::NodeId;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
struct VarEntry {
    name: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
struct Term {
    var: String,
    coef: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
struct ConstraintEntry {
    terms: Vec<Term>,
    op: String,
    rhs: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
struct ModelFile {
    vars: Vec<VarEntry>,
    objective: Vec<Term>,
    constraints: Vec<ConstraintEntry>,
}

fn to_file(model: &OrderingModel) -> ModelFile {
    let vars = model
        .x_vars()
        .into_iter()
        .chain(model.g_vars())
        .map(|v| VarEntry { name: v.to_string() })
        .collect();
    let objective = model
        .objective()
        .into_iter()
        .map(|(v, c)| Term { var: v.to_string(), coef: c as i64 })
        .collect();
    let constraints = model
        .constraints()
        .into_iter()
        .chain(model.transitivity_constraints())
        .map(|c| ConstraintEntry {
            terms: c
                .terms
                .iter()
                .map(|&(v, coef)| Term { var: v.to_string(), coef })
                .collect(),
            op: match c.op {
                Op::Le => "<=".into(),
                Op::Eq => "=".into(),
            },
            rhs: c.rhs,
        })
        .collect();
    ModelFile { vars, objective, constraints }
}

pub fn export_model(model: &OrderingModel) -> String {
    serde_json::to_string(&to_file(model)).expect("model serializes")
}

/// Reads a model written by [`export_model`]. Input that is not exactly the linear form of
/// some ordering model is rejected.
///
/// A model over a single node has no variables, so it reads back as the empty model.
pub fn import_model(text: &str) -> Result<OrderingModel> {
    let file: ModelFile = serde_json::from_str(text)?;

    let vars = file
        .vars
        .iter()
        .map(|v| v.name.parse::<Var>())
        .collect::<Result<Vec<_>>>()?;

    let mut nodes = Vec::new();
    let mut seen = HashSet::new();
    let mut gap_pairs = Vec::new();
    for v in &vars {
        match *v {
            Var::X(a, b) => {
                for id in [a, b] {
                    if seen.insert(id) {
                        nodes.push(id);
                    }
                }
            }
            Var::G(a, b) => gap_pairs.push((a, b)),
        }
    }

    let chain = chain_from_pairs(&gap_pairs)?;

    let objective = file
        .objective
        .iter()
        .map(|t| {
            let coef = u64::try_from(t.coef)
                .map_err(|_| Error::MalformedModel(format!("negative cost on {}", t.var)))?;
            Ok((t.var.parse::<Var>()?, coef))
        })
        .collect::<Result<Vec<_>>>()?;

    let gap_budget = if chain.is_empty() {
        None
    } else {
        let budget = file
            .constraints
            .iter()
            .find(|c| c.op == "<=" && !c.terms.is_empty() && c.terms.iter().all(|t| t.var.starts_with("g_")))
            .ok_or_else(|| Error::MalformedModel("gap budget constraint missing".into()))?;
        Some(usize::try_from(budget.rhs + 1).map_err(|_| Error::MalformedModel("negative gap budget".into()))?)
    };

    let model = OrderingModel::from_parts(nodes, &objective, chain, gap_budget)?;
    if to_file(&model) != file {
        return Err(Error::MalformedModel(
            "constraints do not match the ordering model they describe".into(),
        ));
    }
    Ok(model)
}

/// Orders the `g` pairs into the dummy chain they describe.
fn chain_from_pairs(pairs: &[(NodeId, NodeId)]) -> Result<Vec<NodeId>> {
    let mut chain = Vec::new();
    for (i, &(a, b)) in pairs.iter().enumerate() {
        if i == 0 {
            chain.push(a);
        } else if chain.last() != Some(&a) {
            return Err(Error::MalformedModel("gap variables do not form a chain".into()));
        }
        chain.push(b);
    }
    Ok(chain)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::crossings::pairwise_crossings;
    use crate::instance::tests::{dummy, edges, perm, real};
    use crate::instance::BipartiteInstance;

    #[test]
    fn empty_model() {
        let inst = BipartiteInstance::new(vec![real(0)], vec![], vec![], perm(&[0]));
        let model = OrderingModel::unconstrained(&pairwise_crossings(&inst));
        assert_eq!(export_model(&model), r#"{"vars":[],"objective":[],"constraints":[]}"#);
        assert_eq!(import_model(&export_model(&model)).unwrap(), model);
    }

    #[test]
    fn two_node_model() {
        let inst = BipartiteInstance::new(
            vec![real(0), real(1)],
            vec![real(10), real(11)],
            edges(&[(0, 11), (1, 10)]),
            perm(&[0, 1]),
        );
        let model = OrderingModel::unconstrained(&pairwise_crossings(&inst));
        let text = export_model(&model);
        assert_eq!(
            text,
            r#"{"vars":[{"name":"x_10_11"},{"name":"x_11_10"}],"objective":[{"var":"x_10_11","coef":1}],"constraints":[{"terms":[{"var":"x_10_11","coef":1},{"var":"x_11_10","coef":1}],"op":"=","rhs":1}]}"#
        );
        assert_eq!(import_model(&text).unwrap(), model);
    }

    #[test]
    fn gap_model_round_trip_and_tamper_detection() {
        let inst = BipartiteInstance::new(
            vec![real(0), real(1)],
            vec![real(10), real(11), dummy(20), dummy(21), dummy(22)],
            edges(&[(0, 10), (1, 10), (1, 11), (0, 20), (1, 21), (1, 22)]),
            perm(&[0, 1]),
        );
        let model = OrderingModel::unconstrained(&pairwise_crossings(&inst))
            .with_gap_budget(vec![NodeId(20), NodeId(21), NodeId(22)], 2)
            .unwrap();
        let text = export_model(&model);
        assert_eq!(import_model(&text).unwrap(), model);

        let tampered = text.replacen(r#""rhs":1}"#, r#""rhs":2}"#, 1);
        assert!(import_model(&tampered).is_err());
        assert!(import_model(r#"{"vars":[{"name":"y_1_2"}],"objective":[],"constraints":[]}"#).is_err());
    }
}
