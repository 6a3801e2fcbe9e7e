//! Undirected weighted graphs, the text file format, weight rounding and
//! cut evaluation.
//!
//! A [`Graph`] is always simple and connected: parallel edges are merged by
//! summing their weights, self-loops are dropped, and disconnected input is
//! rejected. Vertices are `0..n` internally and `1..=n` in files.

use std::collections::HashMap;
use std::fmt::Write as _;

use crate::dsu::DisjointSets;
use crate::error::{Error, Result};

/// Largest accepted ratio between the heaviest and the lightest positive weight.
pub const MAX_WEIGHT_RATIO: f64 = (1u64 << 40) as f64;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Edge {
    pub u: usize,
    pub v: usize,
    pub w: f64,
}

impl Edge {
    /// The endpoint that is not `x`.
    #[inline]
    pub fn other(&self, x: usize) -> usize {
        if self.u == x {
            self.v
        } else {
            self.u
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Graph {
    n: usize,
    edges: Vec<Edge>,
    /// `adj[x]` lists `(neighbour, edge id)`.
    adj: Vec<Vec<(usize, usize)>>,
}

impl Graph {
    /// Builds a graph from raw edges, merging parallel edges and dropping
    /// self-loops. Edge ids follow first appearance of each vertex pair.
    pub fn new(n: usize, raw: impl IntoIterator<Item = (usize, usize, f64)>) -> Result<Self> {
        let mut index: HashMap<(usize, usize), usize> = HashMap::new();
        let mut edges: Vec<Edge> = Vec::new();
        for (line, (u, v, w)) in raw.into_iter().enumerate() {
            if u >= n || v >= n {
                return Err(Error::VertexOutOfRange {
                    line: line + 1,
                    vertex: u.max(v) as i64 + 1,
                    n,
                });
            }
            if !w.is_finite() || w < 0.0 {
                return Err(Error::NegativeWeight { line: line + 1, weight: w });
            }
            if u == v {
                continue;
            }
            let key = (u.min(v), u.max(v));
            match index.get(&key) {
                Some(&id) => edges[id].w += w,
                None => {
                    index.insert(key, edges.len());
                    edges.push(Edge { u: key.0, v: key.1, w });
                }
            }
        }
        let g = Self::assemble(n, edges);
        if !g.is_connected() {
            return Err(Error::Disconnected);
        }
        Ok(g)
    }

    fn assemble(n: usize, edges: Vec<Edge>) -> Self {
        let mut adj = vec![Vec::new(); n];
        for (id, e) in edges.iter().enumerate() {
            adj[e.u].push((e.v, id));
            adj[e.v].push((e.u, id));
        }
        Graph { n, edges, adj }
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn m(&self) -> usize {
        self.edges.len()
    }

    #[inline]
    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    #[inline]
    pub fn edge(&self, id: usize) -> Edge {
        self.edges[id]
    }

    #[inline]
    pub fn neighbors(&self, x: usize) -> &[(usize, usize)] {
        &self.adj[x]
    }

    pub fn total_weight(&self) -> f64 {
        self.edges.iter().map(|e| e.w).sum()
    }

    /// True when every weight is an integer and the total fits exactly in
    /// both `i64` and `f64`.
    pub fn has_integral_weights(&self) -> bool {
        self.edges.iter().all(|e| e.w.fract() == 0.0) && self.total_weight() < (1u64 << 52) as f64
    }

    fn is_connected(&self) -> bool {
        if self.n <= 1 {
            return true;
        }
        let mut sets = DisjointSets::new(self.n);
        let mut parts = self.n;
        for e in &self.edges {
            if sets.union(e.u, e.v) {
                parts -= 1;
            }
        }
        parts == 1
    }

    /// Splits off the component of vertex 0 in the subgraph of positive
    /// weight edges, if that subgraph is disconnected.
    pub fn zero_weight_cut(&self) -> Option<Vec<bool>> {
        let mut sets = DisjointSets::new(self.n);
        for e in self.edges.iter().filter(|e| e.w > 0.0) {
            sets.union(e.u, e.v);
        }
        let root = sets.find(0);
        let side: Vec<bool> = (0..self.n).map(|x| sets.find(x) != root).collect();
        side.iter().any(|&s| s).then_some(side)
    }
}

/// A graph with positive integer weights, derived from a [`Graph`].
#[derive(Debug, Clone, PartialEq)]
pub struct IntGraph {
    pub n: usize,
    pub edges: Vec<IntEdge>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct IntEdge {
    pub u: usize,
    pub v: usize,
    pub w: u64,
    /// Id of the originating edge in the source [`Graph`].
    pub origin: usize,
}

impl IntGraph {
    pub fn total_weight(&self) -> u64 {
        self.edges.iter().map(|e| e.w).sum()
    }

    pub fn is_connected(&self) -> bool {
        if self.n <= 1 {
            return true;
        }
        let mut sets = DisjointSets::new(self.n);
        let mut parts = self.n;
        for e in self.edges.iter().filter(|e| e.w > 0) {
            if sets.union(e.u, e.v) {
                parts -= 1;
            }
        }
        parts == 1
    }
}

/// Minimum cut of a graph (or a candidate for it).
#[derive(Debug, Clone, PartialEq)]
pub struct CutResult {
    pub value: f64,
    /// Graph edge ids of the cut tree edges (empty for the oracle algorithms).
    pub tree_edges: Vec<usize>,
    /// Vertex membership of one side. Vertex 0 is never on this side.
    pub side: Vec<bool>,
    /// Graph edge ids crossing the cut, ascending.
    pub crossing: Vec<usize>,
}

impl CutResult {
    /// Builds the result for `side`, computing crossing edges and value.
    pub fn from_side(g: &Graph, side: Vec<bool>, tree_edges: Vec<usize>) -> Result<Self> {
        check_side(g, &side)?;
        let side = canonical_side(side);
        let crossing: Vec<usize> = (0..g.m())
            .filter(|&id| {
                let e = g.edge(id);
                side[e.u] != side[e.v]
            })
            .collect();
        let value = crossing.iter().map(|&id| g.edge(id).w).sum();
        Ok(CutResult { value, tree_edges, side, crossing })
    }

    /// 0-based vertices on the reported side, ascending.
    pub fn side_vertices(&self) -> Vec<usize> {
        self.side.iter().enumerate().filter_map(|(x, &s)| s.then_some(x)).collect()
    }

    /// Order used to pick between equal-valued cuts.
    pub fn tie_order(&self, other: &CutResult) -> std::cmp::Ordering {
        self.value
            .total_cmp(&other.value)
            .then_with(|| self.side.cmp(&other.side))
    }
}

/// Flips `side` so that vertex 0 is on the complement.
pub fn canonical_side(mut side: Vec<bool>) -> Vec<bool> {
    if side.first() == Some(&true) {
        side.iter_mut().for_each(|s| *s = !*s);
    }
    side
}

fn check_side(g: &Graph, side: &[bool]) -> Result<()> {
    if side.len() != g.n() {
        return Err(Error::LengthMismatch { expected: g.n(), got: side.len() });
    }
    let count = side.iter().filter(|&&s| s).count();
    if count == 0 || count == g.n() {
        return Err(Error::InvalidSide { count, n: g.n() });
    }
    Ok(())
}

/// Total weight of edges with endpoints on different sides.
pub fn cut_weight(g: &Graph, side: &[bool]) -> Result<f64> {
    check_side(g, side)?;
    Ok(g.edges().iter().filter(|e| side[e.u] != side[e.v]).map(|e| e.w).sum())
}

/// Rescales weights so the lightest positive weight becomes `multiplier`
/// and rounds to the nearest integer. Zero-weight edges are dropped.
pub fn normalize_and_round(g: &Graph, multiplier: f64) -> Result<IntGraph> {
    if !(multiplier >= 1.0 && multiplier.is_finite()) {
        return Err(Error::InvalidParameter(format!("rounding multiplier {multiplier} must be >= 1")));
    }
    let positive = g.edges().iter().filter(|e| e.w > 0.0);
    let w_min = positive.clone().map(|e| e.w).fold(f64::INFINITY, f64::min);
    let w_max = positive.map(|e| e.w).fold(0.0, f64::max);
    if w_max == 0.0 {
        return Err(Error::AllZeroWeights);
    }
    let ratio = w_max / w_min;
    if ratio > MAX_WEIGHT_RATIO {
        return Err(Error::WeightRatioTooLarge { ratio });
    }
    let edges = g
        .edges()
        .iter()
        .enumerate()
        .filter(|(_, e)| e.w > 0.0)
        .map(|(origin, e)| IntEdge {
            u: e.u,
            v: e.v,
            w: (multiplier * e.w / w_min).round() as u64,
            origin,
        })
        .collect();
    Ok(IntGraph { n: g.n(), edges })
}

/// Which upper bound on the minimum cut seeds the sampling search.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub enum UpperBoundRule {
    /// Smallest weighted degree over all vertices.
    #[default]
    MinDegree,
    /// `n^2 * w`, where `w` is the lightest edge of a maximum spanning tree.
    /// Valid regardless of how skewed the weights are.
    SpanningTree,
}

pub fn upper_bound(g: &IntGraph, rule: UpperBoundRule) -> u64 {
    match rule {
        UpperBoundRule::MinDegree => {
            let mut degree = vec![0u64; g.n];
            for e in &g.edges {
                degree[e.u] += e.w;
                degree[e.v] += e.w;
            }
            degree.into_iter().min().unwrap_or(0)
        }
        UpperBoundRule::SpanningTree => {
            let mut order: Vec<&IntEdge> = g.edges.iter().filter(|e| e.w > 0).collect();
            order.sort_by_key(|e| std::cmp::Reverse(e.w));
            let mut sets = DisjointSets::new(g.n);
            let mut lightest = 0;
            for e in order {
                if sets.union(e.u, e.v) {
                    lightest = e.w;
                }
            }
            let n = g.n as u64;
            lightest.saturating_mul(n.saturating_mul(n))
        }
    }
}

/// Parses the `p <n> <m>` edge-list format.
pub fn parse_graph(text: &str) -> Result<Graph> {
    let mut header: Option<(usize, usize)> = None;
    let mut raw = Vec::new();
    for (idx, line) in text.lines().enumerate() {
        let line_no = idx + 1;
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = trimmed.split_whitespace().collect();
        let malformed = |message: &str| Error::Malformed { line: line_no, message: message.to_string() };
        match header {
            None => {
                if fields.len() != 3 || fields[0] != "p" {
                    return Err(malformed("expected header `p <n> <m>`"));
                }
                let n = fields[1].parse().map_err(|_| malformed("bad vertex count"))?;
                let m = fields[2].parse().map_err(|_| malformed("bad edge count"))?;
                header = Some((n, m));
            }
            Some((n, m)) => {
                if raw.len() == m {
                    return Err(malformed("more edge lines than declared"));
                }
                if fields.len() != 3 {
                    return Err(malformed("expected `<u> <v> <w>`"));
                }
                let endpoint = |s: &str| -> Result<usize> {
                    let x: i64 = s.parse().map_err(|_| malformed("bad vertex id"))?;
                    if x < 1 || x as u64 > n as u64 {
                        return Err(Error::VertexOutOfRange { line: line_no, vertex: x, n });
                    }
                    Ok(x as usize - 1)
                };
                let u = endpoint(fields[0])?;
                let v = endpoint(fields[1])?;
                let w: f64 = fields[2].parse().map_err(|_| malformed("bad weight"))?;
                if !w.is_finite() {
                    return Err(malformed("weight must be finite"));
                }
                if w < 0.0 {
                    return Err(Error::NegativeWeight { line: line_no, weight: w });
                }
                raw.push((u, v, w));
            }
        }
    }
    let (n, m) = header.ok_or(Error::Malformed { line: 0, message: "missing header".into() })?;
    if raw.len() != m {
        return Err(Error::Malformed {
            line: text.lines().count(),
            message: format!("declared {m} edges, found {}", raw.len()),
        });
    }
    Graph::new(n, raw)
}

/// Serializes `g` in the file format, preceded by `# ` comment lines.
pub fn write_graph(g: &Graph, comments: &[String]) -> String {
    let mut out = String::new();
    for c in comments {
        let _ = writeln!(out, "# {c}");
    }
    let _ = writeln!(out, "p {} {}", g.n(), g.m());
    for e in g.edges() {
        let _ = writeln!(out, "{} {} {}", e.u + 1, e.v + 1, e.w);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn triangle() -> Graph {
        parse_graph("p 3 3\n1 2 1\n2 3 1\n1 3 1\n").unwrap()
    }

    #[test]
    fn parses_triangle() {
        let g = triangle();
        assert_eq!((g.n(), g.m()), (3, 3));
        assert_eq!(g.edge(0), Edge { u: 0, v: 1, w: 1.0 });
    }

    #[test]
    fn merges_parallel_edges() {
        let g = parse_graph("# twice\np 2 2\n1 2 1\n2 1 1\n").unwrap();
        assert_eq!(g.m(), 1);
        assert_eq!(g.edge(0), Edge { u: 0, v: 1, w: 2.0 });
    }

    #[test]
    fn drops_self_loops() {
        let g = parse_graph("p 2 2\n1 1 5\n1 2 1\n").unwrap();
        assert_eq!(g.m(), 1);
        assert_eq!(parse_graph("p 2 1\n1 1 5\n"), Err(Error::Disconnected));
    }

    #[test]
    fn parse_errors_are_distinct() {
        assert!(matches!(parse_graph("p 2 1\n1 2\n"), Err(Error::Malformed { line: 2, .. })));
        assert!(matches!(parse_graph("q 2 1\n1 2 1\n"), Err(Error::Malformed { line: 1, .. })));
        assert!(matches!(parse_graph("p 2 1\n1 3 1\n"), Err(Error::VertexOutOfRange { vertex: 3, .. })));
        assert!(matches!(parse_graph("p 2 1\n0 2 1\n"), Err(Error::VertexOutOfRange { vertex: 0, .. })));
        assert!(matches!(parse_graph("p 2 1\n1 2 -1\n"), Err(Error::NegativeWeight { .. })));
        assert_eq!(parse_graph("p 3 1\n1 2 1\n"), Err(Error::Disconnected));
        assert!(matches!(parse_graph("p 2 2\n1 2 1\n"), Err(Error::Malformed { .. })));
        assert!(matches!(parse_graph("p 2 1\n1 2 1\n1 2 1\n"), Err(Error::Malformed { line: 3, .. })));
        assert!(matches!(parse_graph("p 2 1\n1 2 nan\n"), Err(Error::Malformed { .. })));
    }

    #[test]
    fn write_then_parse_is_identity() {
        let g = Graph::new(4, [(0, 1, 0.5), (1, 2, 3.0), (2, 3, 1.25), (3, 0, 7.0)]).unwrap();
        let text = write_graph(&g, &["hello".to_string()]);
        assert!(text.starts_with("# hello\np 4 4\n"));
        assert_eq!(parse_graph(&text).unwrap(), g);
    }

    #[test]
    fn rounding_examples() {
        let weights = |ws: &[f64]| {
            let n = ws.len() + 1;
            let g = Graph::new(n, ws.iter().enumerate().map(|(i, &w)| (i, i + 1, w))).unwrap();
            normalize_and_round(&g, 100.0).unwrap().edges.iter().map(|e| e.w).collect::<Vec<_>>()
        };
        assert_eq!(weights(&[0.5, 1.0, 1.25]), vec![100, 200, 250]);
        assert_eq!(weights(&[3.0, 3.0, 3.0]), vec![100, 100, 100]);
        assert_eq!(weights(&[1.0, 1.004]), vec![100, 100]);
    }

    #[test]
    fn rounding_rejects_degenerate_weights() {
        let zero = Graph::new(2, [(0, 1, 0.0)]).unwrap();
        assert_eq!(normalize_and_round(&zero, 100.0), Err(Error::AllZeroWeights));
        let skewed = Graph::new(3, [(0, 1, 1.0), (1, 2, 2f64.powi(41))]).unwrap();
        assert!(matches!(normalize_and_round(&skewed, 100.0), Err(Error::WeightRatioTooLarge { .. })));
    }

    #[test]
    fn rounding_drops_zero_edges() {
        let g = Graph::new(3, [(0, 1, 0.0), (1, 2, 2.0), (0, 2, 4.0)]).unwrap();
        let ig = normalize_and_round(&g, 100.0).unwrap();
        assert_eq!(ig.edges.len(), 2);
        assert_eq!((ig.edges[0].w, ig.edges[0].origin), (100, 1));
        assert_eq!((ig.edges[1].w, ig.edges[1].origin), (200, 2));
    }

    #[test]
    fn cut_weight_examples() {
        let g = triangle();
        assert_eq!(cut_weight(&g, &[true, false, false]).unwrap(), 2.0);

        let mut raw = vec![(0, 1, 1.0), (1, 2, 1.0), (0, 2, 1.0), (3, 4, 1.0), (4, 5, 1.0), (3, 5, 1.0)];
        raw.push((2, 3, 0.5));
        let g = Graph::new(6, raw).unwrap();
        assert_eq!(cut_weight(&g, &[true, true, true, false, false, false]).unwrap(), 0.5);

        let k4 = Graph::new(4, [(0, 1, 1.0), (0, 2, 1.0), (0, 3, 1.0), (1, 2, 1.0), (1, 3, 1.0), (2, 3, 1.0)]).unwrap();
        for side in [[true, true, false, false], [true, false, true, false], [true, false, false, true]] {
            assert_eq!(cut_weight(&k4, &side).unwrap(), 4.0);
        }
        assert_eq!(cut_weight(&k4, &[false; 4]), Err(Error::InvalidSide { count: 0, n: 4 }));
        assert_eq!(cut_weight(&k4, &[true; 4]), Err(Error::InvalidSide { count: 4, n: 4 }));
    }

    #[test]
    fn upper_bound_examples() {
        let int = |n: usize, ws: &[(usize, usize, f64)]| normalize_and_round(&Graph::new(n, ws.iter().copied()).unwrap(), 100.0).unwrap();
        let tri = int(3, &[(0, 1, 1.0), (1, 2, 1.0), (0, 2, 1.0)]);
        assert_eq!(upper_bound(&tri, UpperBoundRule::MinDegree), 200);
        let star = int(5, &[(0, 1, 1.0), (0, 2, 1.0), (0, 3, 1.0), (0, 4, 1.0)]);
        assert_eq!(upper_bound(&star, UpperBoundRule::MinDegree), 100);
        let path = int(3, &[(0, 1, 1.0), (1, 2, 3.0)]);
        assert_eq!(upper_bound(&path, UpperBoundRule::MinDegree), 100);
        // lightest max-spanning-tree edge of the triangle is 100, times n^2
        assert_eq!(upper_bound(&tri, UpperBoundRule::SpanningTree), 900);
    }

    #[test]
    fn cut_result_is_canonical() {
        let g = triangle();
        let c = CutResult::from_side(&g, vec![true, true, false], vec![]).unwrap();
        assert_eq!(c.side, vec![false, false, true]);
        assert_eq!(c.value, 2.0);
        assert_eq!(c.crossing, vec![1, 2]);
    }

    #[test]
    fn zero_weight_cut_detects_split() {
        let g = Graph::new(3, [(0, 1, 1.0), (1, 2, 0.0)]).unwrap();
        assert_eq!(g.zero_weight_cut(), Some(vec![false, false, true]));
        assert_eq!(triangle().zero_weight_cut(), None);
    }
}
