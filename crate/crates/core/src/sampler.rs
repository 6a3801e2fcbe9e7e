//! Sampling a sparse skeleton of the graph and drawing spanning trees
//! from a packing of it.
//!
//! Weights are rounded to integers, then each edge is resampled from a
//! binomial distribution with success probability `p = min(b / c', 1)`.
//! The estimate `c'` starts at an upper bound on the minimum cut and is
//! halved until the skeleton's packing is heavy enough; one more round at
//! `c' / 6` then yields the packing the trees are drawn from.

use log::warn;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::{normalize_and_round, upper_bound, Graph, IntEdge, IntGraph, UpperBoundRule};
use crate::packing::{pack, Packing};
use crate::spanning_tree::RootedTree;

/// Stream reserved for drawing trees from the final packing.
const DRAW_STREAM: u64 = u64::MAX;

#[derive(Debug, Clone, PartialEq)]
pub struct SamplerConfig {
    /// Success probability is at least `1 - n^-d`.
    pub d: u32,
    /// Rounding precision; weights are scaled to `1 / eps1` times the
    /// lightest positive weight.
    pub eps1: f64,
    /// Sampling precision.
    pub eps2: f64,
    /// Packing precision.
    pub eps3: f64,
    pub seed: u64,
    /// Overrides the number of returned trees. Smaller values void the
    /// high-probability guarantee.
    pub tree_count: Option<usize>,
    pub upper_bound: UpperBoundRule,
}

impl Default for SamplerConfig {
    fn default() -> Self {
        SamplerConfig {
            d: 2,
            eps1: 0.01,
            eps2: 1.0 / 6.0,
            eps3: 0.2,
            seed: 0,
            tree_count: None,
            upper_bound: UpperBoundRule::MinDegree,
        }
    }
}

impl SamplerConfig {
    /// Fraction (by weight) of packed trees guaranteed to 2-respect the
    /// minimum cut.
    pub fn respecting_fraction(&self) -> f64 {
        1.5 - ((2.0 + self.eps1) / (2.0 - self.eps1)) * (1.0 + self.eps2) / (1.0 - self.eps3)
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidParameter(msg));
        if self.d == 0 {
            return bad("d must be positive".into());
        }
        for (name, eps) in [("eps1", self.eps1), ("eps2", self.eps2), ("eps3", self.eps3)] {
            if !(eps > 0.0 && eps < 1.0) {
                return bad(format!("{name} = {eps} must lie in (0, 1)"));
            }
        }
        if self.respecting_fraction() <= 0.0 {
            return bad(format!("epsilons give non-positive respecting fraction {}", self.respecting_fraction()));
        }
        if (1.0 - self.eps3) / (1.0 + self.eps2) <= 2.0 / 3.0 {
            return bad("(1 - eps3) / (1 + eps2) must exceed 2/3".into());
        }
        Ok(())
    }
}

/// Quantities derived from a [`SamplerConfig`] for an `n`-vertex graph.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SamplerConstants {
    /// Target minimum cut of the skeleton, `3 (d + 2) ln n / eps2^2`.
    pub b: f64,
    /// Per-edge weight ceiling in the skeleton.
    pub cap: u64,
    /// Packing weight at which an estimate is accepted.
    pub accept_threshold: f64,
    pub respecting_fraction: f64,
    pub tree_count: usize,
    pub multiplier: f64,
}

impl SamplerConstants {
    pub fn new(cfg: &SamplerConfig, n: usize) -> Result<Self> {
        cfg.validate()?;
        if n < 2 {
            return Err(Error::TooFewVertices(n));
        }
        let ln_n = (n as f64).ln();
        let d = cfg.d as f64;
        let b = 3.0 * (d + 2.0) * ln_n / (cfg.eps2 * cfg.eps2);
        let cap = ((1.0 + cfg.eps2) * 12.0 * b).ceil() as u64;
        let accept_threshold = 0.5 * (1.0 - cfg.eps3) / (1.0 + cfg.eps2) * b;
        let f = cfg.respecting_fraction();
        let tree_count = cfg.tree_count.unwrap_or_else(|| (-d * ln_n / (1.0 - f).ln()).ceil() as usize);
        Ok(SamplerConstants { b, cap, accept_threshold, respecting_fraction: f, tree_count, multiplier: 1.0 / cfg.eps1 })
    }

    /// `min(b / c', 1)`.
    pub fn probability(&self, c_prime: f64) -> f64 {
        (self.b / c_prime).min(1.0)
    }
}

/// Draws `min(Binomial(trials, p), cap)` by inverse transform sampling.
///
/// The distribution function is accumulated in log space and only up to
/// `cap` terms. When the mean sits more than ten standard deviations above
/// `cap` the draw saturates without consuming randomness.
pub fn binomial_sample<R: Rng + ?Sized>(trials: u64, p: f64, cap: u64, rng: &mut R) -> Result<u64> {
    if !(p > 0.0 && p <= 1.0) {
        return Err(Error::InvalidParameter(format!("binomial probability {p} must lie in (0, 1]")));
    }
    if trials == 0 || cap == 0 {
        return Ok(0);
    }
    if p == 1.0 {
        return Ok(trials.min(cap));
    }
    let nf = trials as f64;
    let mean = nf * p;
    if mean - 10.0 * (mean * (1.0 - p)).sqrt() > cap as f64 {
        return Ok(cap);
    }
    let log_u = rng.gen::<f64>().ln();
    let log_q = (-p).ln_1p();
    let log_ratio = p.ln() - log_q;
    let mut log_pmf = nf * log_q;
    let mut log_cdf = log_pmf;
    let limit = trials.min(cap);
    let mut k = 0;
    while k < limit {
        if log_u < log_cdf {
            return Ok(k);
        }
        log_pmf += ((trials - k) as f64).ln() - ((k + 1) as f64).ln() + log_ratio;
        log_cdf = log_add_exp(log_cdf, log_pmf);
        k += 1;
    }
    Ok(limit)
}

#[inline]
fn log_add_exp(a: f64, b: f64) -> f64 {
    let (hi, lo) = if a >= b { (a, b) } else { (b, a) };
    if lo == f64::NEG_INFINITY {
        return hi;
    }
    hi + (lo - hi).exp().ln_1p()
}

/// A binomially resampled copy of a rounded graph.
#[derive(Debug, Clone, PartialEq)]
pub struct SampledGraph {
    /// Edges keep the origin ids of the source graph; zero-weight draws are
    /// omitted.
    pub graph: IntGraph,
    pub p: f64,
    pub c_prime: f64,
}

/// Generator for one sampling round. Edge `i` always reads the same words
/// of the round's stream, whatever order edges are visited in.
pub fn round_rng(seed: u64, round: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(round);
    rng
}

pub fn build_sample(gp: &IntGraph, c_prime: f64, consts: &SamplerConstants, seed: u64, round: u64) -> Result<SampledGraph> {
    if c_prime.is_nan() || c_prime < 1.0 {
        return Err(Error::InvalidParameter(format!("cut estimate {c_prime} must be at least 1")));
    }
    let p = consts.probability(c_prime);
    let mut rng = round_rng(seed, round);
    let mut edges = Vec::with_capacity(gp.edges.len());
    for (i, e) in gp.edges.iter().enumerate() {
        rng.set_word_pos(2 * i as u128);
        let w = binomial_sample(e.w, p, consts.cap, &mut rng)?;
        if w > 0 {
            edges.push(IntEdge { w, ..*e });
        }
    }
    Ok(SampledGraph { graph: IntGraph { n: gp.n, edges }, p, c_prime })
}

/// Draws `t` tree indices with probability proportional to tree weight,
/// with replacement.
pub fn draw_tree_indices<R: Rng + ?Sized>(packing: &Packing, t: usize, rng: &mut R) -> Result<Vec<usize>> {
    if packing.is_empty() || packing.total_units == 0 {
        return Err(Error::EmptyPacking);
    }
    let prefix: Vec<u64> = packing
        .trees
        .iter()
        .scan(0u64, |acc, tr| {
            *acc += tr.units;
            Some(*acc)
        })
        .collect();
    let total = *prefix.last().unwrap();
    Ok((0..t)
        .map(|_| {
            let r = rng.gen_range(0..total);
            prefix.partition_point(|&s| s <= r)
        })
        .collect())
}

/// Draws `t` trees of `packing` (a packing of `h`) as spanning trees of `g`.
pub fn draw_trees<R: Rng + ?Sized>(packing: &Packing, h: &IntGraph, g: &Graph, t: usize, rng: &mut R) -> Result<Vec<RootedTree>> {
    draw_tree_indices(packing, t, rng)?.into_iter().map(|i| packing.rooted_tree(i, h, g)).collect()
}

/// One iteration of the estimate search.
#[derive(Debug, Clone, PartialEq)]
pub struct RoundTrace {
    pub c_prime: f64,
    pub p: f64,
    pub m_prime: u64,
    /// Packing weight, 0 when the skeleton was disconnected.
    pub weight: f64,
    pub iterations: u64,
    pub mst_computations: u64,
    /// This round's packing is the one trees are drawn from.
    pub accepted: bool,
}

#[derive(Debug, Clone)]
pub struct SampledTrees {
    pub trees: Vec<RootedTree>,
    pub rounds: Vec<RoundTrace>,
    pub constants: SamplerConstants,
}

impl SampledTrees {
    /// Minimum spanning tree invocations over all rounds.
    pub fn total_iterations(&self) -> u64 {
        self.rounds.iter().map(|r| r.iterations).sum()
    }

    pub fn accepted(&self) -> &RoundTrace {
        self.rounds.iter().find(|r| r.accepted).expect("a round is always accepted")
    }
}

fn run_round(gp: &IntGraph, c_prime: f64, consts: &SamplerConstants, cfg: &SamplerConfig, round: u64) -> Result<(SampledGraph, Option<Packing>, RoundTrace)> {
    let h = build_sample(gp, c_prime, consts, cfg.seed, round)?;
    let packing = match pack(&h.graph, cfg.eps3) {
        Ok(p) => Some(p),
        Err(Error::Disconnected) => None,
        Err(e) => return Err(e),
    };
    let trace = RoundTrace {
        c_prime,
        p: h.p,
        m_prime: h.graph.total_weight(),
        weight: packing.as_ref().map_or(0.0, |p| p.weight()),
        iterations: packing.as_ref().map_or(0, |p| p.iterations),
        mst_computations: packing.as_ref().map_or(0, |p| p.mst_computations),
        accepted: false,
    };
    Ok((h, packing, trace))
}

/// Returns spanning trees of `g` such that, with probability at least
/// `1 - n^-d`, one of them crosses a minimum cut of `g` at most twice.
///
/// `g`'s positive-weight edges must connect all vertices.
pub fn respecting_trees(g: &Graph, cfg: &SamplerConfig) -> Result<SampledTrees> {
    let consts = SamplerConstants::new(cfg, g.n())?;
    let gp = normalize_and_round(g, consts.multiplier)?;
    if !gp.is_connected() {
        return Err(Error::Disconnected);
    }
    let mut c_prime = upper_bound(&gp, cfg.upper_bound) as f64;
    let mut rounds = Vec::new();
    let mut round = 0u64;
    let (h, packing) = loop {
        if c_prime < 1.0 {
            return Err(Error::Internal(format!("cut estimate fell below 1 after {round} rounds without acceptance")));
        }
        let (h, packing, mut trace) = run_round(&gp, c_prime, &consts, cfg, round)?;
        round += 1;
        if let Some(packing) = packing {
            if trace.p >= 1.0 {
                trace.accepted = true;
                rounds.push(trace);
                break (h, packing);
            }
            if trace.weight >= consts.accept_threshold {
                rounds.push(trace);
                c_prime /= 6.0;
                let (h, packing, mut trace) = run_round(&gp, c_prime, &consts, cfg, round)?;
                round += 1;
                match packing {
                    Some(packing) => {
                        if trace.weight < consts.accept_threshold {
                            warn!(
                                "final packing weight {} is below the acceptance threshold {}",
                                trace.weight, consts.accept_threshold
                            );
                        }
                        trace.accepted = true;
                        rounds.push(trace);
                        break (h, packing);
                    }
                    None => {
                        warn!("skeleton at c' = {c_prime} is disconnected; continuing the search");
                        rounds.push(trace);
                        c_prime /= 2.0;
                        continue;
                    }
                }
            }
        }
        rounds.push(trace);
        c_prime /= 2.0;
    };
    let mut rng = round_rng(cfg.seed, DRAW_STREAM);
    let trees = draw_trees(&packing, &h.graph, g, consts.tree_count, &mut rng)?;
    Ok(SampledTrees { trees, rounds, constants: consts })
}
