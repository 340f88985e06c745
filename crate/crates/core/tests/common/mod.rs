//! Brute-force reference computations, independent of the library's counting paths.
#![allow(dead_code)]

use oscm_gaps::{generate, BipartiteInstance, GenParams, NodeId, Permutation};

pub fn instance(n: usize, f_dm: f64, deg_avg: f64, seed: u64) -> BipartiteInstance {
    generate(&GenParams { n, f_dm, deg_avg, seed }).unwrap()
}

/// Small instances covering the dummy fraction / degree grid.
pub fn small_corpus(sizes: &[usize], seeds_per_cell: u64) -> Vec<BipartiteInstance> {
    let mut out = Vec::new();
    for &n in sizes {
        for f_dm in [0.0, 0.25, 0.5] {
            for deg in [1.0, 2.0, 3.0] {
                for s in 0..seeds_per_cell {
                    let seed = 1000 * n as u64 + 100 * (f_dm * 4.0) as u64 + 10 * deg as u64 + s;
                    out.push(instance(n, f_dm, deg, seed));
                }
            }
        }
    }
    out
}

/// Crossings by checking every pair of edges against the definition.
pub fn crossings_by_edge_pairs(inst: &BipartiteInstance, pi2: &Permutation) -> u64 {
    let pi1 = inst.pi1();
    let e = inst.edges();
    let mut total = 0;
    for a in 0..e.len() {
        for b in a + 1..e.len() {
            let ((u1, u2), (v1, v2)) = (e[a], e[b]);
            let (p1u, p1v) = (pi1.position(u1).unwrap(), pi1.position(v1).unwrap());
            let (p2u, p2v) = (pi2.position(u2).unwrap(), pi2.position(v2).unwrap());
            if (p1u < p1v && p2u > p2v) || (p1u > p1v && p2u < p2v) {
                total += 1;
            }
        }
    }
    total
}

/// Crossings between an edge of `s` and an edge of `sp` with all of `s` placed left of `sp`.
pub fn block_by_edge_pairs(inst: &BipartiteInstance, s: &[NodeId], sp: &[NodeId]) -> u64 {
    let pi1 = inst.pi1();
    let mut total = 0;
    for &(a, u) in inst.edges() {
        if !s.contains(&u) {
            continue;
        }
        for &(b, v) in inst.edges() {
            if sp.contains(&v) && pi1.position(b).unwrap() < pi1.position(a).unwrap() {
                total += 1;
            }
        }
    }
    total
}

/// `c[u][v]` straight from neighbor pairs.
pub fn pair_by_neighbors(inst: &BipartiteInstance, u: NodeId, v: NodeId) -> u64 {
    let nu = inst.neighbors_of(u).unwrap();
    let nv = inst.neighbors_of(v).unwrap();
    let mut total = 0;
    for &a in nu {
        for &b in nv {
            if b < a {
                total += 1;
            }
        }
    }
    total
}

pub fn all_permutations(ids: &[NodeId]) -> Vec<Vec<NodeId>> {
    if ids.is_empty() {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for i in 0..ids.len() {
        let mut rest = ids.to_vec();
        let head = rest.remove(i);
        for mut tail in all_permutations(&rest) {
            tail.insert(0, head);
            out.push(tail);
        }
    }
    out
}

/// Every interleaving of `a` and `b` that keeps both relative orders.
pub fn all_merges(a: &[NodeId], b: &[NodeId]) -> Vec<Vec<NodeId>> {
    if a.is_empty() {
        return vec![b.to_vec()];
    }
    if b.is_empty() {
        return vec![a.to_vec()];
    }
    let mut out = Vec::new();
    for mut m in all_merges(&a[1..], b) {
        m.insert(0, a[0]);
        out.push(m);
    }
    for mut m in all_merges(a, &b[1..]) {
        m.insert(0, b[0]);
        out.push(m);
    }
    out
}

/// Number of maximal dummy runs.
pub fn gaps_of(inst: &BipartiteInstance, order: &[NodeId]) -> usize {
    let mut gaps = 0;
    let mut prev = false;
    for &id in order {
        let d = inst.is_top_dummy(id);
        if d && !prev {
            gaps += 1;
        }
        prev = d;
    }
    gaps
}

/// Every dummy run touches the first or last position.
pub fn is_side_gap(inst: &BipartiteInstance, order: &[NodeId]) -> bool {
    let first_real = order.iter().position(|&id| !inst.is_top_dummy(id));
    let last_real = order.iter().rposition(|&id| !inst.is_top_dummy(id));
    match (first_real, last_real) {
        (Some(f), Some(l)) => order[f..=l].iter().all(|&id| !inst.is_top_dummy(id)),
        _ => true,
    }
}

pub fn perm(order: Vec<NodeId>) -> Permutation {
    Permutation::new(order).unwrap()
}

/// Number of crossing pairs among edges incident to top dummies.
pub fn dummy_dummy_crossings(inst: &BipartiteInstance, pi2: &Permutation) -> u64 {
    let pi1 = inst.pi1();
    let e: Vec<_> = inst
        .edges()
        .iter()
        .filter(|(_, t)| inst.is_top_dummy(*t))
        .collect();
    let mut total = 0;
    for a in 0..e.len() {
        for b in a + 1..e.len() {
            let (&(u1, u2), &(v1, v2)) = (e[a], e[b]);
            let d1 = pi1.position(u1).unwrap() as i64 - pi1.position(v1).unwrap() as i64;
            let d2 = pi2.position(u2).unwrap() as i64 - pi2.position(v2).unwrap() as i64;
            if d1 * d2 < 0 {
                total += 1;
            }
        }
    }
    total
}
