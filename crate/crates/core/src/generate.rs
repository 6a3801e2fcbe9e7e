//! Seeded test-graph families.

use std::collections::HashSet;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::Graph;

/// Inclusive weight range. Integer endpoints give integer weights drawn
/// uniformly from `lo..=hi`; otherwise weights are uniform reals.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WeightRange {
    pub lo: f64,
    pub hi: f64,
}

impl WeightRange {
    pub const UNIT: WeightRange = WeightRange { lo: 1.0, hi: 1.0 };

    pub fn new(lo: f64, hi: f64) -> Result<Self> {
        if !(lo.is_finite() && hi.is_finite() && lo > 0.0 && lo <= hi) {
            return Err(Error::InvalidParameter(format!("weight range {lo}:{hi} must satisfy 0 < lo <= hi")));
        }
        Ok(WeightRange { lo, hi })
    }

    pub fn is_integral(&self) -> bool {
        self.lo.fract() == 0.0 && self.hi.fract() == 0.0
    }

    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> f64 {
        if self.lo == self.hi {
            self.lo
        } else if self.is_integral() {
            rng.gen_range(self.lo as u64..=self.hi as u64) as f64
        } else {
            rng.gen_range(self.lo..=self.hi)
        }
    }
}

#[derive(Debug, Clone)]
pub struct Generated {
    pub graph: Graph,
    /// Known minimum cut value, when the construction fixes it.
    pub planted: Option<f64>,
}

impl Generated {
    /// Comment lines for the graph file.
    pub fn comments(&self) -> Vec<String> {
        self.planted.map(|c| format!("planted {c}")).into_iter().collect()
    }
}

/// Edge count of a random graph: each extra pair with probability `p`, or
/// exactly `m` edges.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Density {
    Probability(f64),
    Edges(usize),
}

/// A uniformly random spanning tree backbone (random attachment over a
/// shuffled vertex order) plus random extra pairs.
pub fn random_graph(n: usize, density: Density, weights: WeightRange, seed: u64) -> Result<Generated> {
    if n < 2 {
        return Err(Error::TooFewVertices(n));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(&mut rng);
    let mut pairs: Vec<(usize, usize)> = Vec::new();
    let mut seen = HashSet::new();
    for i in 1..n {
        let (u, v) = (order[rng.gen_range(0..i)], order[i]);
        let key = (u.min(v), u.max(v));
        seen.insert(key);
        pairs.push(key);
    }
    let max_pairs = n * (n - 1) / 2;
    match density {
        Density::Probability(p) => {
            if !(0.0..=1.0).contains(&p) {
                return Err(Error::InvalidParameter(format!("edge probability {p} must lie in [0, 1]")));
            }
            for u in 0..n {
                for v in u + 1..n {
                    if rng.gen_bool(p) && seen.insert((u, v)) {
                        pairs.push((u, v));
                    }
                }
            }
        }
        Density::Edges(m) => {
            if m < n - 1 || m > max_pairs {
                return Err(Error::InvalidParameter(format!("{m} edges impossible for a connected simple graph on {n} vertices")));
            }
            while pairs.len() < m {
                let (u, v) = (rng.gen_range(0..n), rng.gen_range(0..n));
                if u != v && seen.insert((u.min(v), u.max(v))) {
                    pairs.push((u.min(v), u.max(v)));
                }
            }
        }
    }
    pairs.sort_unstable();
    let edges: Vec<_> = pairs.into_iter().map(|(u, v)| (u, v, weights.sample(&mut rng))).collect();
    Ok(Generated { graph: Graph::new(n, edges)?, planted: None })
}

/// Two unit-weight `k`-cliques joined by `bridges` disjoint edges of weight
/// `bridge_weight`. The bridges are the unique minimum cut.
pub fn two_cliques(k: usize, bridges: usize, bridge_weight: f64) -> Result<Generated> {
    let planted = bridges as f64 * bridge_weight;
    if k < 2 || bridges == 0 || bridges > k || !(bridge_weight > 0.0 && bridge_weight.is_finite()) {
        return Err(Error::InvalidParameter(format!(
            "two-cliques needs k >= 2, 1 <= bridges <= k and positive bridge weight (k = {k}, bridges = {bridges})"
        )));
    }
    // a cut inside one clique costs at least k - 1
    if planted >= (k - 1) as f64 {
        return Err(Error::InvalidParameter(format!("planted cut {planted} is not below the clique cut {}", k - 1)));
    }
    let mut edges = Vec::new();
    for side in [0, k] {
        for u in 0..k {
            for v in u + 1..k {
                edges.push((side + u, side + v, 1.0));
            }
        }
    }
    for i in 0..bridges {
        edges.push((i, k + i, bridge_weight));
    }
    Ok(Generated { graph: Graph::new(2 * k, edges)?, planted: Some(planted) })
}

pub fn cycle(n: usize, weights: WeightRange, seed: u64) -> Result<Generated> {
    if n < 3 {
        return Err(Error::InvalidParameter(format!("a cycle needs at least 3 vertices, got {n}")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n, weights.sample(&mut rng))).collect();
    let planted = (weights.lo == weights.hi).then_some(2.0 * weights.lo);
    Ok(Generated { graph: Graph::new(n, edges)?, planted })
}

/// `rows x cols` grid.
pub fn grid(rows: usize, cols: usize, weights: WeightRange, seed: u64) -> Result<Generated> {
    if rows * cols < 2 || rows == 0 || cols == 0 {
        return Err(Error::InvalidParameter(format!("grid {rows}x{cols} has fewer than 2 vertices")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let id = |r: usize, c: usize| r * cols + c;
    let mut edges = Vec::new();
    for r in 0..rows {
        for c in 0..cols {
            if c + 1 < cols {
                edges.push((id(r, c), id(r, c + 1), weights.sample(&mut rng)));
            }
            if r + 1 < rows {
                edges.push((id(r, c), id(r + 1, c), weights.sample(&mut rng)));
            }
        }
    }
    Ok(Generated { graph: Graph::new(rows * cols, edges)?, planted: None })
}
