//! Greedy weighted spanning-tree packing.
//!
//! Every edge of weight `w` stands for `w` parallel unit-capacity copies.
//! Each round takes a minimum spanning tree under the current copy loads,
//! adds `delta` to the least-loaded copy of every chosen edge and credits
//! the tree with weight `delta`. The first time a copy's load would exceed
//! one, the packing built so far is returned.
//!
//! Loads are kept as integer multiples of `delta = 1/K`, which makes the
//! stopping test and all capacity accounting exact.

use std::collections::{BTreeMap, HashMap};

use crate::dsu::DisjointSets;
use crate::error::{Error, Result};
use crate::graph::{Graph, IntGraph};
use crate::spanning_tree::RootedTree;

/// Load state of the parallel copies of one edge.
///
/// Loads only ever grow on a least-loaded copy, so at any time every copy
/// carries either `min_load` or `min_load + 1` units.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ParallelClass {
    pub capacity: u64,
    pub min_load: u64,
    /// Copies currently at `min_load`, in `1..=capacity`.
    pub at_min: u64,
}

impl ParallelClass {
    pub fn new(capacity: u64) -> Self {
        assert!(capacity > 0);
        ParallelClass { capacity, min_load: 0, at_min: capacity }
    }

    /// Adds one unit to a least-loaded copy and returns that copy's new load.
    pub fn increment(&mut self) -> u64 {
        self.increment_by(1);
        if self.at_min == self.capacity {
            self.min_load
        } else {
            self.min_load + 1
        }
    }

    /// Performs `r <= at_min` increments at once.
    fn increment_by(&mut self, r: u64) {
        debug_assert!(r >= 1 && r <= self.at_min);
        self.at_min -= r;
        if self.at_min == 0 {
            self.min_load += 1;
            self.at_min = self.capacity;
        }
    }

    pub fn max_load(&self) -> u64 {
        if self.at_min == self.capacity {
            self.min_load
        } else {
            self.min_load + 1
        }
    }

    /// Load value to number of copies at that load.
    pub fn histogram(&self) -> BTreeMap<u64, u64> {
        let mut h = BTreeMap::new();
        h.insert(self.min_load, self.at_min);
        if self.at_min < self.capacity {
            h.insert(self.min_load + 1, self.capacity - self.at_min);
        }
        h
    }
}

/// A distinct tree of a packing and its accumulated weight in units of
/// `delta`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PackedTree {
    /// Edge indices into the packed graph, ascending.
    pub edges: Vec<usize>,
    pub units: u64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Packing {
    pub n: usize,
    /// Number of units in one: `delta = 1 / steps_per_unit`.
    pub steps_per_unit: u64,
    /// Distinct trees in order of first appearance.
    pub trees: Vec<PackedTree>,
    pub total_units: u64,
    /// Loop iterations, each one minimum spanning tree invocation,
    /// including the final one that overflows a load.
    pub iterations: u64,
    /// Spanning trees actually recomputed. Runs of iterations whose edge
    /// keys cannot change reuse the previous tree.
    pub mst_computations: u64,
    /// Total number of unit-capacity copies.
    pub m_prime: u64,
    pub classes: Vec<ParallelClass>,
}

impl Packing {
    /// Total weight `W`.
    pub fn weight(&self) -> f64 {
        self.total_units as f64 / self.steps_per_unit as f64
    }

    pub fn delta(&self) -> f64 {
        1.0 / self.steps_per_unit as f64
    }

    pub fn tree_weight(&self, i: usize) -> f64 {
        self.trees[i].units as f64 / self.steps_per_unit as f64
    }

    pub fn is_empty(&self) -> bool {
        self.trees.is_empty()
    }

    /// Minimum spanning tree invocations of the unbatched procedure.
    pub fn mst_call_count(&self) -> u64 {
        self.iterations
    }

    /// Checks that for every edge the trees using it weigh at most its
    /// capacity, exactly. Returns the first violating edge index.
    pub fn check_feasible(&self, h: &IntGraph) -> std::result::Result<(), usize> {
        let mut used = vec![0u64; h.edges.len()];
        for t in &self.trees {
            for &e in &t.edges {
                used[e] += t.units;
            }
        }
        match used.iter().enumerate().find(|&(e, &u)| u > h.edges[e].w * self.steps_per_unit) {
            Some((e, _)) => Err(e),
            None => Ok(()),
        }
    }

    /// Tree `i` as a rooted spanning tree of `g`, the graph `h` was derived
    /// from.
    pub fn rooted_tree(&self, i: usize, h: &IntGraph, g: &Graph) -> Result<RootedTree> {
        let ids: Vec<usize> = self.trees[i].edges.iter().map(|&e| h.edges[e].origin).collect();
        RootedTree::from_graph(g, &ids)
    }
}

/// `K = max(1, floor(3 ln m' / eps^2))`.
pub fn steps_per_unit(m_prime: u64, eps: f64) -> u64 {
    ((3.0 * (m_prime as f64).ln() / (eps * eps)).floor() as u64).max(1)
}

/// Packs spanning trees into `h`, read as a multigraph of unit copies.
pub fn pack(h: &IntGraph, eps: f64) -> Result<Packing> {
    if !(eps > 0.0 && eps < 1.0) {
        return Err(Error::InvalidParameter(format!("packing epsilon {eps} must lie in (0, 1)")));
    }
    let n = h.n;
    if n < 2 {
        return Err(Error::TooFewVertices(n));
    }
    let live: Vec<usize> = (0..h.edges.len()).filter(|&e| h.edges[e].w > 0).collect();
    let m_prime: u64 = h.total_weight();
    let k = steps_per_unit(m_prime, eps);
    let mut classes: Vec<ParallelClass> =
        h.edges.iter().map(|e| ParallelClass { capacity: e.w, min_load: 0, at_min: e.w }).collect();

    // live edges sorted by (min load, edge index)
    let mut order: Vec<usize> = live;
    let mut sets = DisjointSets::new(n);
    let mut tree: Vec<usize> = Vec::with_capacity(n - 1);
    let mut changed: Vec<usize> = Vec::new();
    let mut is_changed = vec![false; h.edges.len()];
    let mut index: HashMap<Vec<usize>, usize> = HashMap::new();
    let mut packing = Packing {
        n,
        steps_per_unit: k,
        trees: Vec::new(),
        total_units: 0,
        iterations: 0,
        mst_computations: 0,
        m_prime,
        classes: Vec::new(),
    };

    loop {
        sets.reset();
        tree.clear();
        for &e in &order {
            let edge = &h.edges[e];
            if sets.union(edge.u, edge.v) {
                tree.push(e);
                if tree.len() + 1 == n {
                    break;
                }
            }
        }
        if tree.len() + 1 != n {
            return Err(Error::Disconnected);
        }
        packing.mst_computations += 1;

        if tree.iter().any(|&e| classes[e].min_load + 1 > k) {
            packing.iterations += 1;
            break;
        }
        // Keys stay fixed until some class exhausts its least-loaded copies,
        // so the same tree is the minimum for `run` consecutive iterations.
        let run = tree.iter().map(|&e| classes[e].at_min).min().expect("n >= 2");
        packing.iterations += run;
        packing.total_units += run;
        for &e in &tree {
            let before = classes[e].min_load;
            classes[e].increment_by(run);
            if classes[e].min_load != before {
                changed.push(e);
                is_changed[e] = true;
            }
        }
        tree.sort_unstable();
        match index.get(&tree) {
            Some(&i) => packing.trees[i].units += run,
            None => {
                index.insert(tree.clone(), packing.trees.len());
                packing.trees.push(PackedTree { edges: tree.clone(), units: run });
            }
        }

        // changed keys grew by one unit: pull them out and merge back in
        changed.sort_unstable_by_key(|&e| (classes[e].min_load, e));
        let kept: Vec<usize> = order.iter().copied().filter(|&e| !is_changed[e]).collect();
        order.clear();
        let (mut a, mut b) = (kept.iter().peekable(), changed.iter().peekable());
        loop {
            let take_kept = match (a.peek(), b.peek()) {
                (Some(&&x), Some(&&y)) => (classes[x].min_load, x) < (classes[y].min_load, y),
                (Some(_), None) => true,
                (None, Some(_)) => false,
                (None, None) => break,
            };
            if take_kept {
                order.push(*a.next().unwrap());
            } else {
                order.push(*b.next().unwrap());
            }
        }
        for &e in &changed {
            is_changed[e] = false;
        }
        changed.clear();
    }
    packing.classes = classes;
    Ok(packing)
}
