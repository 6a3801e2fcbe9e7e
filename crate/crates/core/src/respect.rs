//! Minimum cuts that cut one or two edges of a given spanning tree, and the
//! minimum-cut driver built on them.
//!
//! Tree edges are visited in heavy-light order `e_1, ..., e_{n-1}`. Each
//! non-tree edge `uv` is "on" at the positions of its tree path, which form
//! a few intervals of that order; the sweep only touches a non-tree edge
//! where it switches on or off.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graph::{CutResult, Graph};
use crate::path_aggregate::{PathAggregator, Weight};
use crate::sampler::{respecting_trees, RoundTrace, SamplerConfig};
use crate::spanning_tree::{HldIndex, RootedTree};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Transition {
    /// Graph id of the non-tree edge.
    pub edge: usize,
    /// True when the tree edge at this position is the first of an on-path
    /// interval, false when the previous position was the last.
    pub enters: bool,
}

/// Where each non-tree edge's tree path starts and stops, in heavy-light
/// position order.
#[derive(Debug, Clone, PartialEq)]
pub struct TransitionSchedule {
    /// Graph ids of the non-tree edges, ascending.
    pub non_tree: Vec<usize>,
    /// Maximal on-path position intervals of each non-tree edge, ascending.
    pub intervals: Vec<Vec<(usize, usize)>>,
    offsets: Vec<usize>,
    events: Vec<Transition>,
}

impl TransitionSchedule {
    /// Transitions taking effect at `position` (1-based).
    pub fn events_at(&self, position: usize) -> &[Transition] {
        &self.events[self.offsets[position - 1]..self.offsets[position]]
    }

    pub fn event_count(&self) -> usize {
        self.events.len()
    }

    /// Whether the `k`-th non-tree edge has `e_1` on its path.
    pub fn starts_on(&self, k: usize) -> bool {
        self.intervals[k].first().is_some_and(|&(lo, _)| lo == 1)
    }

    /// Whether the tree edge at `position` is on the path of the `k`-th
    /// non-tree edge.
    pub fn on_path(&self, k: usize, position: usize) -> bool {
        let iv = &self.intervals[k];
        let i = iv.partition_point(|&(lo, _)| lo <= position);
        i > 0 && iv[i - 1].1 >= position
    }
}

fn check_spans(g: &Graph, t: &RootedTree) -> Result<()> {
    if g.n() < 2 {
        return Err(Error::TooFewVertices(g.n()));
    }
    if t.n() != g.n() {
        return Err(Error::NotSpanningTree(format!("tree has {} vertices, graph has {}", t.n(), g.n())));
    }
    for e in &t.edges {
        let ok = e.graph_edge < g.m() && {
            let ge = g.edge(e.graph_edge);
            (ge.u, ge.v) == (e.upper.min(e.lower), e.upper.max(e.lower))
        };
        if !ok {
            return Err(Error::NotSpanningTree(format!("tree edge ({}, {}) is not graph edge {}", e.upper, e.lower, e.graph_edge)));
        }
    }
    Ok(())
}

pub fn build_schedule(g: &Graph, t: &RootedTree, h: &HldIndex) -> Result<TransitionSchedule> {
    check_spans(g, t)?;
    let n = g.n();
    let in_tree = t.membership(g.m());
    let non_tree: Vec<usize> = (0..g.m()).filter(|&id| !in_tree[id]).collect();
    let mut intervals = Vec::with_capacity(non_tree.len());
    let mut counts = vec![0usize; n];
    for &id in &non_tree {
        let e = g.edge(id);
        let mut raw = h.path_intervals(e.u, e.v);
        // merge intervals that abut in position order
        let mut merged: Vec<(usize, usize)> = Vec::with_capacity(raw.len());
        for (lo, hi) in raw.drain(..) {
            match merged.last_mut() {
                Some(last) if last.1 + 1 == lo => last.1 = hi,
                _ => merged.push((lo, hi)),
            }
        }
        for &(lo, hi) in &merged {
            counts[lo] += 1;
            if hi + 1 < n {
                counts[hi + 1] += 1;
            }
        }
        intervals.push(merged);
    }
    // offsets[p - 1]..offsets[p] holds the events of position p
    let mut offsets = vec![0usize; n];
    for p in 1..n {
        offsets[p] = offsets[p - 1] + counts[p];
    }
    let mut fill = offsets.clone();
    let mut events = vec![Transition { edge: 0, enters: false }; offsets[n - 1]];
    for (k, iv) in intervals.iter().enumerate() {
        let edge = non_tree[k];
        for &(lo, hi) in iv {
            events[fill[lo - 1]] = Transition { edge, enters: true };
            fill[lo - 1] += 1;
            if hi + 1 < n {
                events[fill[hi]] = Transition { edge, enters: false };
                fill[hi] += 1;
            }
        }
    }
    Ok(TransitionSchedule { non_tree, intervals, offsets, events })
}

/// Cut whose side is the symmetric difference of the subtrees below the
/// given tree edges.
pub fn recover_cut(g: &Graph, t: &RootedTree, cut_edges: &[usize]) -> Result<CutResult> {
    check_spans(g, t)?;
    if cut_edges.is_empty() || cut_edges.len() > 2 {
        return Err(Error::InvalidParameter(format!("expected 1 or 2 tree edges, got {}", cut_edges.len())));
    }
    if let Some(&bad) = cut_edges.iter().find(|&&e| e >= t.edges.len()) {
        return Err(Error::InvalidParameter(format!("tree edge {bad} out of range")));
    }
    if cut_edges.len() == 2 && cut_edges[0] == cut_edges[1] {
        return Err(Error::DuplicateTreeEdge(cut_edges[0]));
    }
    let mut order = vec![0usize; t.n()];
    for (i, &x) in t.preorder.iter().enumerate() {
        order[x] = i;
    }
    let mut side = vec![false; t.n()];
    for &e in cut_edges {
        let top = t.edges[e].lower;
        let (lo, hi) = (order[top], order[top] + t.subtree_size[top]);
        for &x in &t.preorder[lo..hi] {
            side[x] ^= true;
        }
    }
    let mut tree_edges: Vec<usize> = cut_edges.iter().map(|&e| t.edges[e].graph_edge).collect();
    tree_edges.sort_unstable();
    CutResult::from_side(g, side, tree_edges)
}

/// Operation counts from one respect computation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct RespectStats {
    /// Aggregator range operations (0 for the one-edge scan).
    pub agg_ops: u64,
    pub transitions: usize,
    /// Exact integer arithmetic was used.
    pub integer_mode: bool,
}

fn tree_weights<W: Weight>(g: &Graph, t: &RootedTree, h: &HldIndex) -> Vec<W> {
    // by position; index 0 unused
    let mut w = vec![W::ZERO; h.len() + 1];
    for p in 1..=h.len() {
        w[p] = W::from_f64(g.edge(t.edges[h.edge_at[p]].graph_edge).w);
    }
    w
}

fn sweep_1respect<W: Weight>(g: &Graph, t: &RootedTree, h: &HldIndex, sched: &TransitionSchedule) -> usize {
    let tw = tree_weights::<W>(g, t, h);
    let mut running = W::ZERO;
    let mut best: Option<(W, usize)> = None;
    for p in 1..=h.len() {
        for ev in sched.events_at(p) {
            let w = W::from_f64(g.edge(ev.edge).w);
            running = if ev.enters { running + w } else { running - w };
        }
        let cand = running + tw[p];
        if best.is_none_or(|(b, _)| cand < b) {
            best = Some((cand, p));
        }
    }
    h.edge_at[best.expect("a spanning tree of >= 2 vertices has an edge").1]
}

/// Minimum cut of `g` that cuts exactly one edge of `t`.
pub fn min_1respect(g: &Graph, t: &RootedTree) -> Result<CutResult> {
    check_spans(g, t)?;
    let h = HldIndex::new(t);
    let sched = build_schedule(g, t, &h)?;
    let e = if g.has_integral_weights() {
        sweep_1respect::<i64>(g, t, &h, &sched)
    } else {
        sweep_1respect::<f64>(g, t, &h, &sched)
    };
    recover_cut(g, t, &[e])
}

/// Called at every sweep position after that position's transitions.
pub type SweepObserver<'o, W> = &'o mut dyn FnMut(usize, &PathAggregator<'_, W>);

/// The two-edge sweep in arithmetic `W`. Returns the chosen tree edges,
/// their sweep value and the aggregator operation count.
///
/// The value at position `j` while visiting `e_i` is `w(e_j)` plus the
/// weight of non-tree edges whose path holds exactly one of `e_i`, `e_j`.
pub fn sweep_2respect<W: Weight>(
    g: &Graph,
    t: &RootedTree,
    h: &HldIndex,
    sched: &TransitionSchedule,
    mut observer: Option<SweepObserver<'_, W>>,
) -> Result<(Vec<usize>, W, u64)> {
    let len = h.len();
    let tw = tree_weights::<W>(g, t, h);
    let mut agg = PathAggregator::build(h, &tw[1..])?;
    // every e_i off every path: each non-tree edge counts on its own path
    for &id in &sched.non_tree {
        let e = g.edge(id);
        agg.path_add(e.u, e.v, W::from_f64(e.w));
    }
    let (v0, p0) = agg.query_min();
    let mut best = (v0, vec![h.edge_at[p0]]);

    let sentinel = W::from_f64(g.total_weight() + 1.0);
    for p in 1..=len {
        for ev in sched.events_at(p) {
            let e = g.edge(ev.edge);
            let w = W::from_f64(e.w);
            if ev.enters {
                agg.path_add(e.u, e.v, -(w + w));
                agg.add_global(w);
            } else {
                agg.path_add(e.u, e.v, w + w);
                agg.add_global(-w);
            }
        }
        if let Some(obs) = observer.as_mut() {
            obs(p, &agg);
        }
        if len < 2 {
            continue;
        }
        agg.add_at(p, sentinel);
        let (v, j) = agg.query_min();
        agg.add_at(p, -sentinel);
        let cand = v + tw[p];
        if cand < best.0 {
            best = (cand, vec![h.edge_at[p], h.edge_at[j]]);
        }
    }
    Ok((best.1, best.0, agg.range_ops()))
}

/// Minimum cut of `g` that cuts one or two edges of `t`, with statistics.
pub fn min_2respect_stats(g: &Graph, t: &RootedTree) -> Result<(CutResult, RespectStats)> {
    check_spans(g, t)?;
    let h = HldIndex::new(t);
    let sched = build_schedule(g, t, &h)?;
    let integer_mode = g.has_integral_weights();
    let (edges, agg_ops) = if integer_mode {
        let (e, _, ops) = sweep_2respect::<i64>(g, t, &h, &sched, None)?;
        (e, ops)
    } else {
        let (e, _, ops) = sweep_2respect::<f64>(g, t, &h, &sched, None)?;
        (e, ops)
    };
    let cut = recover_cut(g, t, &edges)?;
    Ok((cut, RespectStats { agg_ops, transitions: sched.event_count(), integer_mode }))
}

/// Minimum cut of `g` that cuts one or two edges of `t`.
pub fn min_2respect(g: &Graph, t: &RootedTree) -> Result<CutResult> {
    Ok(min_2respect_stats(g, t)?.0)
}

#[derive(Debug, Clone)]
pub struct MinCutReport {
    pub cut: CutResult,
    pub rounds: Vec<RoundTrace>,
    pub trees_drawn: usize,
    /// Distinct trees actually scanned.
    pub trees_scanned: usize,
    /// Aggregator operations summed over the scanned trees.
    pub agg_ops: u64,
}

/// Minimum cut of `g`, correct with probability at least `1 - n^-d`.
pub fn min_cut(g: &Graph, cfg: &SamplerConfig) -> Result<CutResult> {
    Ok(min_cut_report(g, cfg, false)?.cut)
}

/// [`min_cut`] with sampling and scan statistics. With `parallel`, trees
/// are scanned on the rayon pool; the result does not depend on it.
pub fn min_cut_report(g: &Graph, cfg: &SamplerConfig, parallel: bool) -> Result<MinCutReport> {
    if g.n() < 2 {
        return Err(Error::TooFewVertices(g.n()));
    }
    cfg.validate()?;
    if let Some(side) = g.zero_weight_cut() {
        let cut = CutResult::from_side(g, side, Vec::new())?;
        return Ok(MinCutReport { cut, rounds: Vec::new(), trees_drawn: 0, trees_scanned: 0, agg_ops: 0 });
    }
    let sampled = respecting_trees(g, cfg)?;
    let trees_drawn = sampled.trees.len();
    let mut trees = sampled.trees;
    trees.sort_by_cached_key(|t| t.graph_edge_ids());
    trees.dedup_by(|a, b| a.graph_edge_ids() == b.graph_edge_ids());
    if trees.is_empty() {
        return Err(Error::EmptyPacking);
    }
    let results: Vec<(CutResult, RespectStats)> = if parallel {
        trees.par_iter().map(|t| min_2respect_stats(g, t)).collect::<Result<_>>()?
    } else {
        trees.iter().map(|t| min_2respect_stats(g, t)).collect::<Result<_>>()?
    };
    let agg_ops = results.iter().map(|(_, s)| s.agg_ops).sum();
    let cut = results
        .into_iter()
        .map(|(c, _)| c)
        .min_by(|a, b| a.tie_order(b))
        .expect("at least one tree");
    Ok(MinCutReport { cut, rounds: sampled.rounds, trees_drawn, trees_scanned: trees.len(), agg_ops })
}
