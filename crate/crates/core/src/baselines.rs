//! Reference minimum-cut algorithms used as oracles and benchmark baselines.

use rand::Rng;

use crate::dsu::DisjointSets;
use crate::error::{Error, Result};
use crate::graph::{cut_weight, CutResult, Graph};
use crate::respect::recover_cut;
use crate::spanning_tree::RootedTree;

/// Largest graph accepted by [`brute_force_min_cut`].
pub const BRUTE_FORCE_MAX_N: usize = 20;

fn require_two(g: &Graph) -> Result<()> {
    if g.n() < 2 {
        return Err(Error::TooFewVertices(g.n()));
    }
    Ok(())
}

/// Stoer-Wagner with dense arrays, `O(n^3)`.
pub fn stoer_wagner(g: &Graph) -> Result<CutResult> {
    require_two(g)?;
    let n = g.n();
    let mut w = vec![vec![0.0f64; n]; n];
    for e in g.edges() {
        w[e.u][e.v] += e.w;
        w[e.v][e.u] += e.w;
    }
    // members[x]: original vertices merged into x
    let mut members: Vec<Vec<usize>> = (0..n).map(|x| vec![x]).collect();
    let mut alive: Vec<usize> = (0..n).collect();
    let mut best: Option<(f64, Vec<usize>)> = None;
    let mut key = vec![0.0f64; n];
    let mut added = vec![false; n];
    while alive.len() > 1 {
        for &x in &alive {
            key[x] = 0.0;
            added[x] = false;
        }
        let (mut prev, mut last) = (alive[0], alive[0]);
        for _ in 0..alive.len() {
            let mut pick = usize::MAX;
            for &x in &alive {
                if !added[x] && (pick == usize::MAX || key[x] > key[pick]) {
                    pick = x;
                }
            }
            added[pick] = true;
            prev = last;
            last = pick;
            for &x in &alive {
                if !added[x] {
                    key[x] += w[pick][x];
                }
            }
        }
        let phase = key[last];
        if best.as_ref().is_none_or(|(b, _)| phase < *b) {
            best = Some((phase, members[last].clone()));
        }
        // merge last into prev
        let moved = std::mem::take(&mut members[last]);
        members[prev].extend(moved);
        for &x in &alive {
            let add = w[last][x];
            w[prev][x] += add;
            w[x][prev] += add;
        }
        w[prev][prev] = 0.0;
        alive.retain(|&x| x != last);
    }
    let (_, part) = best.expect("n >= 2 runs at least one phase");
    let mut side = vec![false; n];
    for x in part {
        side[x] = true;
    }
    CutResult::from_side(g, side, Vec::new())
}

/// Best of `trials` independent weighted contraction runs. Monte Carlo.
pub fn contraction_min_cut<R: Rng + ?Sized>(g: &Graph, trials: usize, rng: &mut R) -> Result<CutResult> {
    require_two(g)?;
    if trials == 0 {
        return Err(Error::InvalidParameter("contraction needs at least one trial".into()));
    }
    let n = g.n();
    let edges: Vec<_> = g.edges().iter().filter(|e| e.w > 0.0).collect();
    if let Some(side) = g.zero_weight_cut() {
        return CutResult::from_side(g, side, Vec::new());
    }
    let prefix: Vec<f64> = edges
        .iter()
        .scan(0.0, |acc, e| {
            *acc += e.w;
            Some(*acc)
        })
        .collect();
    let total = *prefix.last().expect("connected graph with n >= 2 has an edge");
    let mut sets = DisjointSets::new(n);
    let mut best: Option<CutResult> = None;
    for _ in 0..trials {
        sets.reset();
        let mut parts = n;
        while parts > 2 {
            // rejection: a self-loop of the contracted graph is redrawn
            let r = rng.gen_range(0.0..total);
            let i = prefix.partition_point(|&s| s <= r).min(edges.len() - 1);
            if sets.union(edges[i].u, edges[i].v) {
                parts -= 1;
            }
        }
        let root = sets.find(0);
        let side: Vec<bool> = (0..n).map(|x| sets.find(x) != root).collect();
        let cut = CutResult::from_side(g, side, Vec::new())?;
        if best.as_ref().is_none_or(|b| cut.tie_order(b).is_lt()) {
            best = Some(cut);
        }
    }
    Ok(best.unwrap())
}

/// Exact minimum over all bipartitions; `n <= 20`.
pub fn brute_force_min_cut(g: &Graph) -> Result<CutResult> {
    require_two(g)?;
    let n = g.n();
    if n > BRUTE_FORCE_MAX_N {
        return Err(Error::TooManyVertices { n, max: BRUTE_FORCE_MAX_N });
    }
    let mut best: Option<(f64, u32)> = None;
    // vertex 0 stays off the side, so the masks cover each bipartition once
    for mask in 1u32..(1 << (n - 1)) {
        let side: Vec<bool> = (0..n).map(|x| x > 0 && mask >> (x - 1) & 1 == 1).collect();
        let v = cut_weight(g, &side)?;
        if best.is_none_or(|(b, _)| v < b) {
            best = Some((v, mask));
        }
    }
    let mask = best.unwrap().1;
    let side = (0..n).map(|x| x > 0 && mask >> (x - 1) & 1 == 1).collect();
    CutResult::from_side(g, side, Vec::new())
}

/// Exact minimum over every cut of one tree edge and every pair of tree
/// edges of `t`.
pub fn brute_force_2respect(g: &Graph, t: &RootedTree) -> Result<CutResult> {
    let k = t.edges.len();
    let mut best: Option<CutResult> = None;
    let mut consider = |c: CutResult| {
        if best.as_ref().is_none_or(|b| c.value < b.value) {
            best = Some(c);
        }
    };
    for a in 0..k {
        consider(recover_cut(g, t, &[a])?);
        for b in a + 1..k {
            consider(recover_cut(g, t, &[a, b])?);
        }
    }
    best.ok_or(Error::TooFewVertices(g.n()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn graph(n: usize, edges: &[(usize, usize, f64)]) -> Graph {
        Graph::new(n, edges.iter().copied()).unwrap()
    }

    fn clique_edges(offset: usize, k: usize) -> Vec<(usize, usize, f64)> {
        (0..k).flat_map(|u| (u + 1..k).map(move |v| (offset + u, offset + v, 1.0))).collect()
    }

    #[test]
    fn oracle_examples() {
        let tri = graph(3, &[(0, 1, 1.0), (1, 2, 1.0), (0, 2, 1.0)]);
        assert_eq!(stoer_wagner(&tri).unwrap().value, 2.0);
        assert_eq!(brute_force_min_cut(&tri).unwrap().value, 2.0);

        let k4 = graph(4, &clique_edges(0, 4));
        assert_eq!(brute_force_min_cut(&k4).unwrap().value, 3.0);

        let star: Vec<_> = (1..6).map(|v| (0, v, 1.0)).collect();
        assert_eq!(brute_force_min_cut(&graph(6, &star)).unwrap().value, 1.0);

        let mut two = clique_edges(0, 6);
        two.extend(clique_edges(6, 6));
        two.push((2, 9, 3.0));
        let two = graph(12, &two);
        let c = stoer_wagner(&two).unwrap();
        assert_eq!(c.value, 3.0);
        assert_eq!(c.side_vertices(), (6..12).collect::<Vec<_>>());

        let big = Graph::new(21, (1..21).map(|v| (v - 1, v, 1.0))).unwrap();
        assert_eq!(brute_force_min_cut(&big), Err(Error::TooManyVertices { n: 21, max: 20 }));
    }

    #[test]
    fn contraction_examples() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let pair = graph(2, &[(0, 1, 2.5)]);
        assert_eq!(contraction_min_cut(&pair, 3, &mut rng).unwrap().value, 2.5);
        let tri = graph(3, &[(0, 1, 1.0), (1, 2, 1.0), (0, 2, 1.0)]);
        assert_eq!(contraction_min_cut(&tri, 50, &mut rng).unwrap().value, 2.0);
        assert!(contraction_min_cut(&tri, 0, &mut rng).is_err());
    }

    #[test]
    fn contraction_single_trial_meets_classical_bound() {
        let c5 = graph(5, &[(0, 1, 1.0), (1, 2, 1.0), (2, 3, 1.0), (3, 4, 1.0), (0, 4, 1.0)]);
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let trials = 10_000;
        let hits = (0..trials).filter(|_| contraction_min_cut(&c5, 1, &mut rng).unwrap().value == 2.0).count();
        assert!(hits as f64 / trials as f64 >= 0.1, "{hits} successes");
    }

    #[test]
    fn stoer_wagner_matches_brute_force() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..300 {
            let n = rng.gen_range(2..=12);
            let mut edges: Vec<_> = (1..n).map(|v| (rng.gen_range(0..v), v, 0.0)).collect();
            for _ in 0..rng.gen_range(0..=2 * n) {
                edges.push((rng.gen_range(0..n), rng.gen_range(0..n), 0.0));
            }
            for e in &mut edges {
                e.2 = rng.gen_range(1..=9) as f64;
            }
            let g = Graph::new(n, edges).unwrap();
            assert_eq!(stoer_wagner(&g).unwrap().value, brute_force_min_cut(&g).unwrap().value);
        }
    }

    #[test]
    fn brute_force_2respect_examples() {
        let p4 = graph(4, &[(0, 1, 3.0), (1, 2, 1.0), (2, 3, 2.0)]);
        let t = RootedTree::from_graph(&p4, &[0, 1, 2]).unwrap();
        assert_eq!(brute_force_2respect(&p4, &t).unwrap().value, 1.0);
        let c4 = graph(4, &[(0, 1, 1.0), (1, 2, 1.0), (2, 3, 1.0), (0, 3, 1.0)]);
        let ids: Vec<usize> = (0..c4.m()).filter(|&id| c4.edge(id).u + 1 == c4.edge(id).v).collect();
        let t = RootedTree::from_graph(&c4, &ids).unwrap();
        let c = brute_force_2respect(&c4, &t).unwrap();
        assert_eq!(c.value, 2.0);
        assert!(c.value >= brute_force_min_cut(&c4).unwrap().value);
    }
}
