//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any criterion fails.

use std::collections::BTreeSet;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use treecut::baselines::{brute_force_2respect, brute_force_min_cut, stoer_wagner};
use treecut::generate::{cycle, grid, random_graph, two_cliques, Density, WeightRange};
use treecut::graph::{normalize_and_round, Graph};
use treecut::packing::pack;
use treecut::path_aggregate::PathAggregator;
use treecut::respect::{min_1respect, min_2respect, min_2respect_stats, min_cut, recover_cut};
use treecut::sampler::{binomial_sample, respecting_trees, SamplerConfig, SamplerConstants};
use treecut::spanning_tree::{interval_bound, minimum_spanning_tree, HldIndex, RootedTree};

struct Outcome {
    pass: bool,
    detail: String,
}

type Check<'a> = Box<dyn Fn() -> Outcome + 'a>;

fn outcome(pass: bool, detail: String) -> Outcome {
    Outcome { pass, detail }
}

fn random_tree_of(g: &Graph, rng: &mut ChaCha8Rng) -> RootedTree {
    let loads: Vec<u64> = (0..g.m()).map(|_| rng.gen()).collect();
    minimum_spanning_tree(g, &loads).unwrap()
}

/// Random connected graphs for the respect criteria, with a random
/// spanning tree each.
fn respect_corpus() -> Vec<(Graph, RootedTree)> {
    let mut rng = ChaCha8Rng::seed_from_u64(0x2e5);
    (0..500u64)
        .map(|seed| {
            let n = rng.gen_range(4..=64);
            let max_m = (6 * n).min(n * (n - 1) / 2);
            let m = rng.gen_range(n - 1..=max_m);
            let g = random_graph(n, Density::Edges(m), WeightRange::new(1.0, 100.0).unwrap(), seed).unwrap().graph;
            let t = random_tree_of(&g, &mut rng);
            (g, t)
        })
        .collect()
}

fn criterion_1(corpus: &[(Graph, RootedTree)]) -> Outcome {
    let mismatches = corpus
        .iter()
        .filter(|(g, t)| min_2respect(g, t).unwrap().value != brute_force_2respect(g, t).unwrap().value)
        .count();
    outcome(mismatches == 0, format!("{mismatches} mismatches over {} instances", corpus.len()))
}

fn criterion_2(corpus: &[(Graph, RootedTree)]) -> Outcome {
    let mismatches = corpus
        .iter()
        .filter(|(g, t)| {
            let brute = (0..t.edges.len()).map(|e| recover_cut(g, t, &[e]).unwrap().value).fold(f64::INFINITY, f64::min);
            min_1respect(g, t).unwrap().value != brute
        })
        .count();
    outcome(mismatches == 0, format!("{mismatches} mismatches over {} instances", corpus.len()))
}

fn close(a: f64, b: f64) -> bool {
    (a - b).abs() <= 1e-9 * a.abs().max(b.abs())
}

fn criterion_3() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x3e2e);
    let mut small_ok = 0;
    for seed in 0..1000u64 {
        let n = rng.gen_range(2..=12);
        let m = rng.gen_range(n - 1..=n * (n - 1) / 2);
        let w = if seed % 2 == 0 { WeightRange::new(1.0, 100.0) } else { WeightRange::new(0.1, 10.0) }.unwrap();
        let g = random_graph(n, Density::Edges(m), w, seed).unwrap().graph;
        let cfg = SamplerConfig { seed, ..Default::default() };
        if close(min_cut(&g, &cfg).unwrap().value, brute_force_min_cut(&g).unwrap().value) {
            small_ok += 1;
        }
    }
    let mut large_ok = 0;
    for seed in 0..200u64 {
        let n = rng.gen_range(16..=128);
        let m = rng.gen_range(2 * n..=4 * n);
        let hi = [1.0, 1.0, 2.0, 3.0][seed as usize % 4];
        let g = random_graph(n, Density::Edges(m), WeightRange::new(1.0, hi).unwrap(), 10_000 + seed).unwrap().graph;
        let cfg = SamplerConfig { seed, ..Default::default() };
        if close(min_cut(&g, &cfg).unwrap().value, stoer_wagner(&g).unwrap().value) {
            large_ok += 1;
        }
    }
    let pass = small_ok >= 990 && large_ok >= 198;
    outcome(pass, format!("n <= 12: {small_ok}/1000 agree with brute force; n in [16, 128]: {large_ok}/200 agree with Stoer-Wagner"))
}

/// Unweighted two-clique graphs with planted cuts 2, 3 and 4.
fn packing_corpus() -> Vec<(Graph, f64)> {
    let mut out = Vec::new();
    for k in [6, 8, 10] {
        for c in [2, 3, 4] {
            let g = two_cliques(k, c, 1.0).unwrap();
            out.push((g.graph, g.planted.unwrap()));
        }
    }
    out
}

const PACK_EPS: f64 = 0.2;

fn criterion_4(corpus: &[(Graph, f64)]) -> Outcome {
    let mut violations = 0;
    let mut worst = f64::INFINITY;
    for (g, c) in corpus {
        let h = normalize_and_round(g, 1.0).unwrap();
        let p = pack(&h, PACK_EPS).unwrap();
        worst = worst.min(p.weight() / c);
        if p.weight() < 0.4 * c || p.check_feasible(&h).is_err() {
            violations += 1;
        }
    }
    outcome(violations == 0, format!("{violations} violations over {} graphs; min W/c = {worst:.3}", corpus.len()))
}

fn criterion_5(corpus: &[(Graph, f64)]) -> Outcome {
    let mut violations = 0;
    let mut worst = 0.0f64;
    for (g, _) in corpus {
        let c = brute_force_min_cut(g).unwrap().value;
        let h = normalize_and_round(g, 1.0).unwrap();
        let p = pack(&h, PACK_EPS).unwrap();
        let calls = p.mst_call_count() as f64;
        let bound = 3.0 * c * (p.m_prime as f64).ln() / (PACK_EPS * PACK_EPS) + 1.0;
        worst = worst.max(calls / bound);
        if calls > bound {
            violations += 1;
        }
    }
    outcome(violations == 0, format!("{violations} violations; max iterations / bound = {worst:.3}"))
}

fn naive_path(t: &RootedTree, mut u: usize, mut v: usize) -> BTreeSet<usize> {
    let mut out = BTreeSet::new();
    while u != v {
        if t.depth[u] < t.depth[v] {
            std::mem::swap(&mut u, &mut v);
        }
        out.insert(t.parent_edge[u]);
        u = t.parent[u];
    }
    out
}

/// Random attachment trees, from bushy (`spread` = all earlier vertices)
/// to nearly a path (`spread` = 1).
fn random_tree(n: usize, spread: usize, rng: &mut ChaCha8Rng) -> RootedTree {
    let raw: Vec<_> = (1..n)
        .map(|v| {
            let lo = v.saturating_sub(spread);
            (rng.gen_range(lo..v), v, 1.0, v - 1)
        })
        .collect();
    RootedTree::new(n, &raw).unwrap()
}

fn criterion_6() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut violations = 0;
    let mut queries = 0;
    for n in [16, 64, 256, 1024] {
        for spread in [n, 8, 2, 1] {
            let t = random_tree(n, spread, &mut rng);
            let h = HldIndex::new(&t);
            for _ in 0..625 {
                let (u, v) = (rng.gen_range(0..n), rng.gen_range(0..n));
                let iv = h.path_intervals(u, v);
                let union: BTreeSet<usize> = iv.iter().flat_map(|&(lo, hi)| (lo..=hi).map(|p| h.edge_at[p])).collect();
                let covered: usize = iv.iter().map(|&(lo, hi)| hi - lo + 1).sum();
                if iv.len() > interval_bound(n) || union != naive_path(&t, u, v) || covered != union.len() {
                    violations += 1;
                }
                queries += 1;
            }
        }
    }
    outcome(violations == 0, format!("{violations} violations over {queries} queries"))
}

fn criterion_7() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut ops = 0;
    let mut mismatches = 0;
    while ops < 100_000 {
        let n = rng.gen_range(2..=512);
        let spread = [n, 4, 1][rng.gen_range(0..3)];
        let t = random_tree(n, spread, &mut rng);
        let h = HldIndex::new(&t);
        let mut model: Vec<i64> = (0..n - 1).map(|_| rng.gen_range(-50..=50)).collect();
        let init: Vec<i64> = (1..n).map(|p| model[h.edge_at[p]]).collect();
        let mut agg = PathAggregator::build(&h, &init).unwrap();
        for _ in 0..2_000 {
            let x = rng.gen_range(-20..=20);
            match rng.gen_range(0..5) {
                0 | 1 => {
                    let (u, v) = (rng.gen_range(0..n), rng.gen_range(0..n));
                    let on = naive_path(&t, u, v);
                    let nonpath = rng.gen_bool(0.5);
                    for (e, val) in model.iter_mut().enumerate() {
                        if on.contains(&e) != nonpath {
                            *val += x;
                        }
                    }
                    if nonpath {
                        agg.nonpath_add(u, v, x);
                    } else {
                        agg.path_add(u, v, x);
                    }
                }
                2 => {
                    let p = rng.gen_range(1..n);
                    model[h.edge_at[p]] += x;
                    agg.add_at(p, x);
                }
                3 => {
                    model.iter_mut().for_each(|val| *val += x);
                    agg.add_global(x);
                }
                _ => {}
            }
            // smallest position among the minimal values
            let expected = (1..n).map(|p| (model[h.edge_at[p]], p)).min().unwrap();
            if agg.query_min() != expected {
                mismatches += 1;
            }
            ops += 1;
        }
    }
    outcome(mismatches == 0, format!("{mismatches} mismatches over {ops} operations"))
}

fn criterion_8() -> Outcome {
    let cap = SamplerConstants::new(&SamplerConfig::default(), 1024).unwrap().cap;
    let settings: [(u64, f64); 10] = [
        (1, 0.5),
        (10, 0.1),
        (20, 0.3),
        (50, 0.9),
        (100, 0.01),
        (300, 0.5),
        (1_000, 0.25),
        (5_000, 0.05),
        (100_000, 0.001),
        (1_000_000, 0.002),
    ];
    let draws = 100_000;
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut failures = Vec::new();
    let mut over_cap = 0;
    for (trials, p) in settings {
        let mut sum = 0u64;
        for _ in 0..draws {
            let x = binomial_sample(trials, p, cap, &mut rng).unwrap();
            over_cap += (x > cap) as usize;
            sum += x;
        }
        let mean = sum as f64 / draws as f64;
        let expected = trials as f64 * p;
        let se = (expected * (1.0 - p) / draws as f64).sqrt();
        if (mean - expected).abs() > 3.0 * se {
            failures.push(format!("({trials}, {p}): mean {mean:.4} vs {expected}"));
        }
    }
    let pass = failures.is_empty() && over_cap == 0;
    outcome(pass, format!("{} of 10 settings outside 3 SE {:?}; {over_cap} draws above cap {cap}", failures.len(), failures))
}

fn criterion_9() -> Outcome {
    let mut means = Vec::new();
    for n in [256usize, 512, 1024, 2048] {
        let mut total = 0u64;
        for seed in 0..5u64 {
            let g = random_graph(n, Density::Edges(4 * n), WeightRange::new(1.0, 100.0).unwrap(), seed).unwrap().graph;
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let t = random_tree_of(&g, &mut rng);
            total += min_2respect_stats(&g, &t).unwrap().1.agg_ops;
        }
        means.push((n, total as f64 / 5.0));
    }
    let ratios: Vec<f64> = means.windows(2).map(|w| w[1].1 / w[0].1).collect();
    let pass = ratios.iter().all(|&r| r <= 2.8);
    let shown: Vec<String> = ratios.iter().map(|r| format!("{r:.3}")).collect();
    outcome(pass, format!("mean ops {:?}; ratios per doubling [{}]", means.iter().map(|m| m.1 as u64).collect::<Vec<_>>(), shown.join(", ")))
}

fn criterion_10() -> Outcome {
    let unit = WeightRange::UNIT;
    let graphs = [
        ("cycle", cycle(256, unit, 0).unwrap().graph),
        ("grid 16x16", grid(16, 16, unit, 0).unwrap().graph),
        ("two-cliques k=128", two_cliques(128, 3, 1.0).unwrap().graph),
        ("random m=2n", random_graph(256, Density::Edges(512), unit, 1).unwrap().graph),
        ("random m=4n", random_graph(256, Density::Edges(1024), unit, 2).unwrap().graph),
        ("weighted random m=4n", random_graph(256, Density::Edges(1024), WeightRange::new(1.0, 100.0).unwrap(), 1).unwrap().graph),
    ];
    let mut worst = 0.0f64;
    let mut details = Vec::new();
    for (name, g) in &graphs {
        let s = respecting_trees(g, &SamplerConfig::default()).unwrap();
        let m_prime = s.accepted().m_prime as f64;
        let bound = 8100.0 * (g.n() as f64).ln() * m_prime.ln();
        let ratio = s.total_iterations() as f64 / bound;
        worst = worst.max(ratio);
        details.push(format!("{name} {:.3}", ratio));
    }
    outcome(worst <= 1.0, format!("iterations / bound: {}", details.join(", ")))
}

fn main() {
    let started = Instant::now();
    let respect = respect_corpus();
    let packing = packing_corpus();
    let criteria: Vec<(&str, Check)> = vec![
        ("2-respect sweep equals brute force", Box::new(|| criterion_1(&respect))),
        ("1-respect sweep equals brute force", Box::new(|| criterion_2(&respect))),
        ("end-to-end minimum cut", Box::new(criterion_3)),
        ("packing weight and feasibility", Box::new(|| criterion_4(&packing))),
        ("packing iteration bound", Box::new(|| criterion_5(&packing))),
        ("heavy-light interval bound", Box::new(criterion_6)),
        ("aggregator matches naive model", Box::new(criterion_7)),
        ("binomial sampler statistics", Box::new(criterion_8)),
        ("aggregator operation growth", Box::new(criterion_9)),
        ("MST invocation constant", Box::new(criterion_10)),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let o = run();
        failed += !o.pass as usize;
        println!(
            "criterion {:>2} {}: {} ({}; {:.1}s)",
            i + 1,
            name,
            if o.pass { "PASS" } else { "FAIL" },
            o.detail,
            t.elapsed().as_secs_f64()
        );
    }
    println!("{} of {} criteria passed in {:.1}s", criteria.len() - failed, criteria.len(), started.elapsed().as_secs_f64());
    if failed > 0 {
        std::process::exit(1);
    }
}
