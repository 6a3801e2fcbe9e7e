//! Spanning trees: Kruskal's algorithm, rooted trees and the heavy-light
//! edge ordering.
//!
//! [`HldIndex`] numbers the tree edges `1..=n-1` so that every heavy path is
//! one contiguous run of positions. The edge above a path's head is the
//! first position of that path, so the edge set of any tree path is the
//! union of at most `2 * ceil(log2 n)` position intervals.

use crate::dsu::DisjointSets;
use crate::error::{Error, Result};
use crate::graph::Graph;

pub const NO_VERTEX: usize = usize::MAX;

/// Minimum spanning forest by Kruskal's algorithm. Ties in `key` are broken
/// by smaller edge index. Returns the chosen edge indices, ascending.
pub fn kruskal<K: Ord + Copy>(n: usize, edges: &[(usize, usize, K)]) -> Result<Vec<usize>> {
    let mut order: Vec<usize> = (0..edges.len()).collect();
    order.sort_by_key(|&i| (edges[i].2, i));
    let mut sets = DisjointSets::new(n);
    let mut chosen = Vec::with_capacity(n.saturating_sub(1));
    for i in order {
        let (u, v, _) = edges[i];
        if sets.union(u, v) {
            chosen.push(i);
            if chosen.len() + 1 == n {
                break;
            }
        }
    }
    if chosen.len() + 1 != n.max(1) {
        return Err(Error::Disconnected);
    }
    chosen.sort_unstable();
    Ok(chosen)
}

/// Minimum spanning tree of `g` under per-edge `loads`, rooted at vertex 0.
pub fn minimum_spanning_tree<K: Ord + Copy>(g: &Graph, loads: &[K]) -> Result<RootedTree> {
    if loads.len() != g.m() {
        return Err(Error::LengthMismatch { expected: g.m(), got: loads.len() });
    }
    let keyed: Vec<(usize, usize, K)> = g.edges().iter().zip(loads).map(|(e, &k)| (e.u, e.v, k)).collect();
    let ids = kruskal(g.n(), &keyed)?;
    RootedTree::from_graph(g, &ids)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TreeEdge {
    /// Endpoint closer to the root.
    pub upper: usize,
    /// Endpoint farther from the root; each non-root vertex is the lower
    /// endpoint of exactly one tree edge.
    pub lower: usize,
    pub weight: f64,
    /// Id of this edge in the graph the tree spans.
    pub graph_edge: usize,
}

/// A spanning tree rooted at vertex 0.
#[derive(Debug, Clone, PartialEq)]
pub struct RootedTree {
    pub root: usize,
    /// `NO_VERTEX` for the root.
    pub parent: Vec<usize>,
    /// Tree-edge id above each vertex, `NO_VERTEX` for the root.
    pub parent_edge: Vec<usize>,
    pub subtree_size: Vec<usize>,
    pub depth: Vec<usize>,
    pub edges: Vec<TreeEdge>,
    /// Vertices in a preorder (root first), children ascending.
    pub preorder: Vec<usize>,
    children: Vec<Vec<usize>>,
}

impl RootedTree {
    /// Roots the tree formed by the graph edges `ids` at vertex 0.
    pub fn from_graph(g: &Graph, ids: &[usize]) -> Result<Self> {
        let raw: Vec<(usize, usize, f64, usize)> = ids
            .iter()
            .map(|&id| {
                let e = g.edge(id);
                (e.u, e.v, e.w, id)
            })
            .collect();
        Self::new(g.n(), &raw)
    }

    /// Builds a rooted tree from `(u, v, weight, graph edge id)` tuples.
    /// Tree-edge ids follow the order of `raw`.
    pub fn new(n: usize, raw: &[(usize, usize, f64, usize)]) -> Result<Self> {
        if n == 0 {
            return Err(Error::TooFewVertices(0));
        }
        if raw.len() + 1 != n {
            return Err(Error::NotSpanningTree(format!("{} edges for {} vertices", raw.len(), n)));
        }
        let mut adj: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n];
        for (id, &(u, v, _, _)) in raw.iter().enumerate() {
            if u >= n || v >= n || u == v {
                return Err(Error::NotSpanningTree(format!("bad edge ({u}, {v})")));
            }
            adj[u].push((v, id));
            adj[v].push((u, id));
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        let root = 0;
        let mut parent = vec![NO_VERTEX; n];
        let mut parent_edge = vec![NO_VERTEX; n];
        let mut depth = vec![0; n];
        let mut children = vec![Vec::new(); n];
        let mut edges = vec![
            TreeEdge { upper: NO_VERTEX, lower: NO_VERTEX, weight: 0.0, graph_edge: NO_VERTEX };
            raw.len()
        ];
        let mut seen = vec![false; n];
        let mut preorder = Vec::with_capacity(n);
        let mut stack = vec![root];
        seen[root] = true;
        while let Some(x) = stack.pop() {
            preorder.push(x);
            for &(y, id) in adj[x].iter().rev() {
                if seen[y] {
                    continue;
                }
                seen[y] = true;
                parent[y] = x;
                parent_edge[y] = id;
                depth[y] = depth[x] + 1;
                let (_, _, w, g_id) = raw[id];
                edges[id] = TreeEdge { upper: x, lower: y, weight: w, graph_edge: g_id };
                stack.push(y);
            }
            // children ascending, matching the adjacency order
            children[x] = adj[x].iter().map(|&(y, _)| y).filter(|&y| parent[y] == x && y != root).collect();
        }
        if preorder.len() != n {
            return Err(Error::NotSpanningTree("edges do not connect all vertices".into()));
        }
        let mut subtree_size = vec![1; n];
        for &x in preorder.iter().rev() {
            if parent[x] != NO_VERTEX {
                subtree_size[parent[x]] += subtree_size[x];
            }
        }
        Ok(RootedTree { root, parent, parent_edge, subtree_size, depth, edges, preorder, children })
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.parent.len()
    }

    #[inline]
    pub fn children(&self, x: usize) -> &[usize] {
        &self.children[x]
    }

    /// Graph edge ids of the tree, ascending.
    pub fn graph_edge_ids(&self) -> Vec<usize> {
        let mut ids: Vec<usize> = self.edges.iter().map(|e| e.graph_edge).collect();
        ids.sort_unstable();
        ids
    }

    /// Marks the graph edges that belong to this tree.
    pub fn membership(&self, m: usize) -> Vec<bool> {
        let mut in_tree = vec![false; m];
        for e in &self.edges {
            in_tree[e.graph_edge] = true;
        }
        in_tree
    }
}

/// Heavy-light edge ordering of a [`RootedTree`].
#[derive(Debug, Clone, PartialEq)]
pub struct HldIndex {
    /// `edge_at[p]` is the tree edge at position `p`; index 0 is unused.
    pub edge_at: Vec<usize>,
    /// Position of each tree edge, in `1..=n-1`.
    pub position: Vec<usize>,
    /// Heavy path of each tree edge.
    pub heavy_path_id: Vec<usize>,
    /// Inclusive `(start, end)` positions of each heavy path.
    pub path_span: Vec<(usize, usize)>,
    /// Topmost vertex of each heavy path.
    pub head: Vec<usize>,
    vertex_pos: Vec<usize>,
    chain_head: Vec<usize>,
    parent: Vec<usize>,
    depth: Vec<usize>,
}

impl HldIndex {
    pub fn new(t: &RootedTree) -> Self {
        let n = t.n();
        // heavy child: largest subtree, smallest id on ties
        let mut heavy = vec![NO_VERTEX; n];
        for x in 0..n {
            let mut best = NO_VERTEX;
            for &c in t.children(x) {
                if best == NO_VERTEX || t.subtree_size[c] > t.subtree_size[best] {
                    best = c;
                }
            }
            heavy[x] = best;
        }

        let mut vertex_pos = vec![0; n];
        let mut chain_head = vec![NO_VERTEX; n];
        let mut head = Vec::new();
        let mut path_of_vertex = vec![0; n];
        let mut next = 0;
        let mut stack = vec![t.root];
        chain_head[t.root] = t.root;
        while let Some(x) = stack.pop() {
            vertex_pos[x] = next;
            next += 1;
            if chain_head[x] == x {
                path_of_vertex[x] = head.len();
                head.push(x);
            } else {
                path_of_vertex[x] = path_of_vertex[t.parent[x]];
            }
            for &c in t.children(x).iter().rev() {
                if c != heavy[x] {
                    chain_head[c] = c;
                    stack.push(c);
                }
            }
            if heavy[x] != NO_VERTEX {
                chain_head[heavy[x]] = chain_head[x];
                stack.push(heavy[x]);
            }
        }

        let mut edge_at = vec![NO_VERTEX; n];
        let mut position = vec![0; n - 1];
        let mut heavy_path_id = vec![0; n - 1];
        let mut path_span = vec![(usize::MAX, 0); head.len()];
        for (id, e) in t.edges.iter().enumerate() {
            let p = vertex_pos[e.lower];
            edge_at[p] = id;
            position[id] = p;
            let path = path_of_vertex[e.lower];
            heavy_path_id[id] = path;
            let span = &mut path_span[path];
            span.0 = span.0.min(p);
            span.1 = span.1.max(p);
        }
        // an edgeless root path only occurs for n == 1
        for span in &mut path_span {
            if span.0 == usize::MAX {
                *span = (1, 0);
            }
        }

        HldIndex {
            edge_at,
            position,
            heavy_path_id,
            path_span,
            head,
            vertex_pos,
            chain_head,
            parent: t.parent.clone(),
            depth: t.depth.clone(),
        }
    }

    /// Number of tree edges.
    #[inline]
    pub fn len(&self) -> usize {
        self.position.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.position.is_empty()
    }

    /// Disjoint inclusive position intervals covering the `u`-`v` tree path,
    /// ascending. Empty when `u == v`.
    pub fn path_intervals(&self, u: usize, v: usize) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        self.for_each_interval(u, v, |lo, hi| out.push((lo, hi)));
        out.sort_unstable();
        out
    }

    /// Calls `f(lo, hi)` once per interval of the `u`-`v` path, unordered.
    pub fn for_each_interval(&self, mut u: usize, mut v: usize, mut f: impl FnMut(usize, usize)) {
        loop {
            let (hu, hv) = (self.chain_head[u], self.chain_head[v]);
            if hu == hv {
                break;
            }
            // climb from the endpoint whose chain head is deeper
            if self.depth[hu] < self.depth[hv] {
                std::mem::swap(&mut u, &mut v);
            }
            let h = self.chain_head[u];
            f(self.vertex_pos[h], self.vertex_pos[u]);
            u = self.parent[h];
        }
        let (a, b) = (self.vertex_pos[u], self.vertex_pos[v]);
        if a != b {
            f(a.min(b) + 1, a.max(b));
        }
    }
}

/// `2 * ceil(log2 n)`, the bound on intervals per path.
pub fn interval_bound(n: usize) -> usize {
    2 * (usize::BITS - (n.max(1) - 1).leading_zeros()) as usize
}
