use std::fmt;
use std::str::FromStr;

use crate::crossings::{gap_report, pairwise_crossings};
use crate::error::{Error, Result};
use crate::instance::{BipartiteInstance, NodeId};
use crate::permutation::Permutation;

/// Largest top layer the enumeration accepts.
pub const ORACLE_LIMIT: usize = 9;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OracleMode {
    Unrestricted,
    SideGap,
    KGap(usize),
}

impl fmt::Display for OracleMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OracleMode::Unrestricted => f.write_str("unrestricted"),
            OracleMode::SideGap => f.write_str("sidegap"),
            OracleMode::KGap(k) => write!(f, "kgap({k})"),
        }
    }
}

impl FromStr for OracleMode {
    type Err = String;

    /// `unrestricted`, `sidegap`, or `kgap:<k>`.
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "unrestricted" => Ok(OracleMode::Unrestricted),
            "sidegap" => Ok(OracleMode::SideGap),
            _ => s
                .strip_prefix("kgap:")
                .and_then(|k| k.parse().ok())
                .map(OracleMode::KGap)
                .ok_or_else(|| format!("unknown oracle mode '{s}'")),
        }
    }
}

/// Advances `a` to the next permutation in lexicographic order; false after the last one.
fn next_permutation(a: &mut [usize]) -> bool {
    if a.len() < 2 {
        return false;
    }
    let mut i = a.len() - 1;
    while i > 0 && a[i - 1] >= a[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = a.len() - 1;
    while a[j] <= a[i - 1] {
        j -= 1;
    }
    a.swap(i - 1, j);
    a[i..].reverse();
    true
}

/// Minimum-crossing top order among all permutations allowed by `mode`, found by enumerating
/// every permutation of the top layer. Ties go to the lexicographically smallest id sequence.
pub fn brute_force_oracle(inst: &BipartiteInstance, mode: OracleMode) -> Result<(Permutation, u64)> {
    let p = inst.top().len();
    if p > ORACLE_LIMIT {
        return Err(Error::OracleTooLarge { size: p, limit: ORACLE_LIMIT });
    }
    if let OracleMode::KGap(0) = mode {
        return Err(Error::InvalidGapBudget(0));
    }

    let mut ids: Vec<NodeId> = inst.top_ids().collect();
    ids.sort_unstable();
    let c = pairwise_crossings(inst);
    let mat: Vec<Vec<u64>> = ids
        .iter()
        .map(|&u| ids.iter().map(|&v| if u == v { 0 } else { c.get(u, v) }).collect())
        .collect();
    let dummy: Vec<bool> = ids.iter().map(|&id| inst.is_top_dummy(id)).collect();

    let allowed = |order: &[usize]| -> bool {
        if mode == OracleMode::Unrestricted {
            return true;
        }
        let report = gap_report(order.iter().map(|&i| dummy[i]));
        match mode {
            OracleMode::SideGap => report.is_side_gap_permutation(),
            OracleMode::KGap(k) => report.count <= k,
            OracleMode::Unrestricted => true,
        }
    };

    let mut order: Vec<usize> = (0..p).collect();
    let mut best: Option<(Vec<usize>, u64)> = None;
    loop {
        if allowed(&order) {
            let mut cost = 0;
            for (a, &i) in order.iter().enumerate() {
                for &j in &order[a + 1..] {
                    cost += mat[i][j];
                }
            }
            if best.as_ref().is_none_or(|b| cost < b.1) {
                best = Some((order.clone(), cost));
            }
        }
        if !next_permutation(&mut order) {
            break;
        }
    }

    // all dummies in one leading block satisfies every mode
    let (order, cost) = best.expect("some permutation satisfies every mode");
    Ok((Permutation::new(order.into_iter().map(|i| ids[i]).collect())?, cost))
}
