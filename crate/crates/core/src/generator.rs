//! Seeded random two-layer instances.
//!
//! The random stream is xoshiro256++ seeded through SplitMix64 (`seed_from_u64`), and bounded
//! integers are drawn by rejection sampling on raw 64-bit outputs, so a seed produces the same
//! instance on every platform.

use rand_core::{RngCore, SeedableRng};
use rand_xoshiro::Xoshiro256PlusPlus;

use crate::error::{Error, Result};
use crate::instance::{BipartiteInstance, NodeId, NodeKind};
use crate::permutation::Permutation;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GenParams {
    /// Nodes per layer.
    pub n: usize,
    /// Fraction of nodes per layer that are dummies.
    pub f_dm: f64,
    /// Target average degree of real nodes.
    pub deg_avg: f64,
    pub seed: u64,
}

// absorbs representation error in products like 40 * 0.2
const FLOOR_EPS: f64 = 1e-9;

impl GenParams {
    pub fn validate(&self) -> Result<()> {
        if self.n == 0 {
            return Err(Error::InvalidParams("n must be at least 1".into()));
        }
        if !(0.0..=1.0).contains(&self.f_dm) {
            return Err(Error::InvalidParams(format!("f_dm must lie in [0, 1], got {}", self.f_dm)));
        }
        if !(self.deg_avg.is_finite() && self.deg_avg > 0.0) {
            return Err(Error::InvalidParams(format!("deg_avg must be positive, got {}", self.deg_avg)));
        }
        Ok(())
    }

    pub fn dummy_count(&self) -> usize {
        ((self.n as f64 * self.f_dm) + FLOOR_EPS).floor() as usize
    }

    pub fn real_count(&self) -> usize {
        self.n - self.dummy_count()
    }

    pub fn real_edge_count(&self) -> usize {
        let n_r = self.real_count();
        let e = (n_r as f64 * (n_r as f64).min(self.deg_avg) + FLOOR_EPS).floor() as usize;
        e.min(n_r * n_r)
    }
}

struct Stream(Xoshiro256PlusPlus);

impl Stream {
    /// Uniform integer in `0..bound`.
    fn below(&mut self, bound: usize) -> usize {
        let bound = bound as u64;
        assert!(bound > 0);
        let threshold = bound.wrapping_neg() % bound;
        loop {
            let r = self.0.next_u64();
            if r >= threshold {
                return (r % bound) as usize;
            }
        }
    }

    fn shuffle<T>(&mut self, items: &mut [T]) {
        for i in (1..items.len()).rev() {
            let j = self.below(i + 1);
            items.swap(i, j);
        }
    }
}

/// Generates a random instance.
///
/// Ids: bottom reals `0..n_r`, bottom dummies `n_r..n`, top reals `n..n+n_r`, top dummies
/// `n+n_r..2n`. Real edges are a uniform sample without replacement from the real×real pairs;
/// each dummy is attached to a uniformly random real node of the other layer (or, when that
/// layer has no real nodes, to a distinct dummy of the other layer). π1 is a uniform shuffle
/// of the bottom layer.
pub fn generate(params: &GenParams) -> Result<BipartiteInstance> {
    params.validate()?;
    let mut rng = Stream(Xoshiro256PlusPlus::seed_from_u64(params.seed));
    let n = params.n;
    let n_dm = params.dummy_count();
    let n_r = n - n_dm;

    let id = |x: usize| NodeId(x as u32);
    let bottom_real = |i: usize| id(i);
    let bottom_dummy = |i: usize| id(n_r + i);
    let top_real = |i: usize| id(n + i);
    let top_dummy = |i: usize| id(n + n_r + i);

    let mut edges = Vec::new();

    let pairs = n_r * n_r;
    let wanted = params.real_edge_count();
    let mut pool: Vec<usize> = (0..pairs).collect();
    for i in 0..wanted {
        let j = i + rng.below(pairs - i);
        pool.swap(i, j);
    }
    let mut chosen = pool[..wanted].to_vec();
    chosen.sort_unstable();
    edges.extend(chosen.iter().map(|&p| (bottom_real(p / n_r), top_real(p % n_r))));

    if n_r > 0 {
        for i in 0..n_dm {
            edges.push((bottom_dummy(i), top_real(rng.below(n_r))));
        }
        for i in 0..n_dm {
            edges.push((bottom_real(rng.below(n_r)), top_dummy(i)));
        }
    } else {
        let mut partner: Vec<usize> = (0..n_dm).collect();
        rng.shuffle(&mut partner);
        for (i, &t) in partner.iter().enumerate() {
            edges.push((bottom_dummy(i), top_dummy(t)));
        }
    }

    let mut pi1: Vec<NodeId> = (0..n).map(id).collect();
    rng.shuffle(&mut pi1);

    let layer = |real: &dyn Fn(usize) -> NodeId, dummy: &dyn Fn(usize) -> NodeId| {
        (0..n_r)
            .map(|i| (real(i), NodeKind::Real))
            .chain((0..n_dm).map(|i| (dummy(i), NodeKind::Dummy)))
            .collect::<Vec<_>>()
    };

    Ok(BipartiteInstance::new(
        layer(&bottom_real, &bottom_dummy),
        layer(&top_real, &top_dummy),
        edges,
        Permutation::new(pi1)?,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params(n: usize, f_dm: f64, deg_avg: f64, seed: u64) -> GenParams {
        GenParams { n, f_dm, deg_avg, seed }
    }

    #[test]
    fn counts_follow_parameters() {
        let p = params(10, 0.2, 3.0, 5);
        assert_eq!((p.dummy_count(), p.real_count(), p.real_edge_count()), (2, 8, 24));
        let inst = generate(&p).unwrap();
        assert!(inst.validate().is_empty());
        assert_eq!(inst.edges().len(), 24 + 2 + 2);
        assert_eq!(inst.dummy_top_ids().count(), 2);
        assert_eq!(params(40, 0.2, 3.0, 0).dummy_count(), 8);
    }

    #[test]
    fn all_dummy_layer() {
        let inst = generate(&params(6, 1.0, 3.0, 1)).unwrap();
        assert!(inst.validate().is_empty());
        assert_eq!(inst.real_top_ids().count(), 0);
        assert_eq!(inst.dummy_top_ids().count(), 6);
        assert_eq!(inst.edges().len(), 6);
    }

    #[test]
    fn degree_clamped_by_layer_size() {
        let p = params(4, 0.0, 10.0, 1);
        assert_eq!(p.real_edge_count(), 16);
        assert_eq!(generate(&p).unwrap().edges().len(), 16);
    }

    #[test]
    fn invalid_parameters() {
        assert!(generate(&params(0, 0.2, 3.0, 1)).is_err());
        assert!(generate(&params(5, 1.5, 3.0, 1)).is_err());
        assert!(generate(&params(5, 0.2, 0.0, 1)).is_err());
    }

    #[test]
    fn deterministic_per_seed() {
        let a = generate(&params(12, 0.25, 2.0, 99)).unwrap();
        let b = generate(&params(12, 0.25, 2.0, 99)).unwrap();
        let c = generate(&params(12, 0.25, 2.0, 100)).unwrap();
        assert_eq!(a.to_json(), b.to_json());
        assert_ne!(a.to_json(), c.to_json());
    }
}
