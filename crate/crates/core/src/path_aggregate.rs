//! Path-add / non-path-add / global-minimum over the edges of a tree.
//!
//! Edges live at their heavy-light positions in a segment tree with lazy
//! range-add and range-argmin. A path update becomes one range-add per
//! interval of the path, so it costs `O(log^2 n)`. Adding to every edge
//! off a path is a whole-tree counter plus a negated path update.

use std::fmt::Debug;
use std::ops::{Add, Neg, Sub};

use crate::error::{Error, Result};
use crate::spanning_tree::HldIndex;

/// Scalar carried by the aggregator. Implemented for `i64` (exact) and
/// `f64`.
pub trait Weight:
    Copy + Debug + PartialOrd + Add<Output = Self> + Sub<Output = Self> + Neg<Output = Self> + Send + Sync
{
    const ZERO: Self;
    fn from_f64(x: f64) -> Self;
    fn to_f64(self) -> f64;
}

impl Weight for i64 {
    const ZERO: Self = 0;
    #[inline]
    fn from_f64(x: f64) -> Self {
        x as i64
    }
    #[inline]
    fn to_f64(self) -> f64 {
        self as f64
    }
}

impl Weight for f64 {
    const ZERO: Self = 0.0;
    #[inline]
    fn from_f64(x: f64) -> Self {
        x
    }
    #[inline]
    fn to_f64(self) -> f64 {
        self
    }
}

#[derive(Debug, Clone, Copy)]
struct Node<W> {
    /// Minimum over the node's range, including `pending`.
    min: W,
    /// Leftmost index attaining `min`.
    arg: u32,
    /// Addend applied to the whole range and not yet seen by the children.
    pending: W,
}

/// Lazy range-add, range-argmin over `len` slots. Ties resolve to the
/// smallest index.
#[derive(Debug, Clone)]
pub struct MinAddTree<W> {
    len: usize,
    nodes: Vec<Node<W>>,
}

impl<W: Weight> MinAddTree<W> {
    pub fn new(values: &[W]) -> Self {
        let len = values.len();
        let blank = Node { min: W::ZERO, arg: 0, pending: W::ZERO };
        let mut t = MinAddTree { len, nodes: vec![blank; 4 * len.max(1)] };
        if len > 0 {
            t.build(1, 0, len, values);
        }
        t
    }

    fn build(&mut self, node: usize, lo: usize, hi: usize, values: &[W]) {
        if hi - lo == 1 {
            self.nodes[node] = Node { min: values[lo], arg: lo as u32, pending: W::ZERO };
            return;
        }
        let mid = (lo + hi) / 2;
        self.build(2 * node, lo, mid, values);
        self.build(2 * node + 1, mid, hi, values);
        self.pull(node);
    }

    #[inline]
    fn pull(&mut self, node: usize) {
        let (l, r) = (self.nodes[2 * node], self.nodes[2 * node + 1]);
        let (min, arg) = if l.min <= r.min { (l.min, l.arg) } else { (r.min, r.arg) };
        let pending = self.nodes[node].pending;
        self.nodes[node].min = min + pending;
        self.nodes[node].arg = arg;
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// Adds `x` to slots `lo..=hi`.
    pub fn add(&mut self, lo: usize, hi: usize, x: W) {
        debug_assert!(lo <= hi && hi < self.len);
        self.add_rec(1, 0, self.len, lo, hi + 1, x);
    }

    fn add_rec(&mut self, node: usize, lo: usize, hi: usize, qlo: usize, qhi: usize, x: W) {
        if qlo <= lo && hi <= qhi {
            let nd = &mut self.nodes[node];
            nd.min = nd.min + x;
            nd.pending = nd.pending + x;
            return;
        }
        let mid = (lo + hi) / 2;
        if qlo < mid {
            self.add_rec(2 * node, lo, mid, qlo, qhi, x);
        }
        if mid < qhi {
            self.add_rec(2 * node + 1, mid, hi, qlo, qhi, x);
        }
        self.pull(node);
    }

    /// Minimum value and its leftmost slot. Panics when empty.
    pub fn min(&self) -> (W, usize) {
        assert!(self.len > 0, "empty tree has no minimum");
        (self.nodes[1].min, self.nodes[1].arg as usize)
    }

    /// Current value of slot `i`.
    pub fn get(&self, i: usize) -> W {
        let (mut node, mut lo, mut hi) = (1, 0, self.len);
        let mut acc = W::ZERO;
        while hi - lo > 1 {
            acc = acc + self.nodes[node].pending;
            let mid = (lo + hi) / 2;
            if i < mid {
                node *= 2;
                hi = mid;
            } else {
                node = 2 * node + 1;
                lo = mid;
            }
        }
        acc + self.nodes[node].min
    }
}

/// Per-tree-edge values supporting path updates and a global argmin.
///
/// Positions are the heavy-light positions `1..=n-1` of [`HldIndex`].
#[derive(Debug, Clone)]
pub struct PathAggregator<'a, W> {
    hld: &'a HldIndex,
    values: MinAddTree<W>,
    global_offset: W,
    range_ops: u64,
}

impl<'a, W: Weight> PathAggregator<'a, W> {
    /// `init[p - 1]` is the starting value of the edge at position `p`.
    pub fn build(hld: &'a HldIndex, init: &[W]) -> Result<Self> {
        if init.len() != hld.len() {
            return Err(Error::LengthMismatch { expected: hld.len(), got: init.len() });
        }
        Ok(PathAggregator { hld, values: MinAddTree::new(init), global_offset: W::ZERO, range_ops: 0 })
    }

    /// Builds from per-tree-edge values indexed by tree-edge id.
    pub fn from_edge_values(hld: &'a HldIndex, by_edge: &[W]) -> Result<Self> {
        if by_edge.len() != hld.len() {
            return Err(Error::LengthMismatch { expected: hld.len(), got: by_edge.len() });
        }
        let init: Vec<W> = (1..=hld.len()).map(|p| by_edge[hld.edge_at[p]]).collect();
        Self::build(hld, &init)
    }

    /// Adds `x` to every edge on the `u`-`v` path.
    pub fn path_add(&mut self, u: usize, v: usize, x: W) {
        let values = &mut self.values;
        let ops = &mut self.range_ops;
        self.hld.for_each_interval(u, v, |lo, hi| {
            values.add(lo - 1, hi - 1, x);
            *ops += 1;
        });
    }

    /// Adds `x` to every edge off the `u`-`v` path.
    pub fn nonpath_add(&mut self, u: usize, v: usize, x: W) {
        self.global_offset = self.global_offset + x;
        self.path_add(u, v, -x);
    }

    /// Adds `x` to every edge.
    pub fn add_global(&mut self, x: W) {
        self.global_offset = self.global_offset + x;
    }

    /// Adds `x` to the single edge at `position`.
    pub fn add_at(&mut self, position: usize, x: W) {
        self.values.add(position - 1, position - 1, x);
        self.range_ops += 1;
    }

    /// Minimum edge value and the smallest position attaining it.
    pub fn query_min(&mut self) -> (W, usize) {
        self.range_ops += 1;
        let (v, i) = self.values.min();
        (v + self.global_offset, i + 1)
    }

    /// Logical value of the edge at `position`.
    pub fn value_at(&self, position: usize) -> W {
        self.values.get(position - 1) + self.global_offset
    }

    pub fn global_offset(&self) -> W {
        self.global_offset
    }

    /// Number of range operations (range-adds and minimum queries) issued.
    pub fn range_ops(&self) -> u64 {
        self.range_ops
    }

    pub fn hld(&self) -> &HldIndex {
        self.hld
    }
}
