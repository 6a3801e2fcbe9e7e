use std::fmt::Write as _;
use std::io::Read;
use std::path::PathBuf;
use std::time::Instant;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use treecut::baselines::{brute_force_min_cut, contraction_min_cut, stoer_wagner, BRUTE_FORCE_MAX_N};
use treecut::generate::{cycle, grid, random_graph, two_cliques, Density, Generated, WeightRange};
use treecut::graph::{parse_graph, write_graph, CutResult, Graph};
use treecut::respect::min_cut_report;
use treecut::sampler::SamplerConfig;

#[derive(Parser)]
#[command(name = "treecut", version, about = "Exact global minimum cuts of weighted graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute the minimum cut of a graph file.
    Mincut(MincutArgs),
    /// Time algorithms on generated graphs and print CSV.
    Bench(BenchArgs),
    /// Print a generated graph.
    Generate(GenerateArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Algorithm {
    Respect,
    StoerWagner,
    Contraction,
    Brute,
}

impl Algorithm {
    fn name(self) -> &'static str {
        match self {
            Algorithm::Respect => "respect",
            Algorithm::StoerWagner => "stoer-wagner",
            Algorithm::Contraction => "contraction",
            Algorithm::Brute => "brute",
        }
    }
}

#[derive(Args, Clone)]
struct SolveArgs {
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Failure probability exponent: the respect algorithm errs with
    /// probability at most n^-d.
    #[arg(long, default_value_t = 2)]
    d: u32,
    /// Number of sampled trees (overrides the default for --d).
    #[arg(long)]
    trees: Option<usize>,
    /// Contraction trials (default n(n-1)/2 * ln n).
    #[arg(long)]
    trials: Option<usize>,
    /// Scan trees in parallel.
    #[arg(long)]
    parallel: bool,
}

#[derive(Args)]
struct MincutArgs {
    /// Graph file, or `-` for stdin.
    file: PathBuf,
    #[arg(long, value_enum, default_value = "respect")]
    algorithm: Algorithm,
    /// Also print one side of the cut and the crossing edges.
    #[arg(long)]
    emit_partition: bool,
    #[command(flatten)]
    solve: SolveArgs,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Family {
    Random,
    TwoCliques,
    Cycle,
    Grid,
}

#[derive(Args, Clone)]
struct FamilyArgs {
    #[arg(long, value_enum, default_value = "random")]
    family: Family,
    /// Vertex count (clique size for two-cliques; rounded to a square for grid).
    #[arg(long, default_value_t = 64)]
    n: usize,
    /// Edge probability for the random family.
    #[arg(long)]
    p: Option<f64>,
    /// Edge count for the random family (default 4n when --p is absent).
    #[arg(long)]
    m: Option<usize>,
    /// Weight range `lo:hi`; integer endpoints give integer weights.
    #[arg(long, default_value = "1:1", value_parser = parse_weights)]
    weights: WeightRange,
    /// Bridges between the cliques.
    #[arg(long, default_value_t = 1)]
    bridges: usize,
    #[arg(long, default_value_t = 1.0)]
    bridge_weight: f64,
}

#[derive(Args)]
struct GenerateArgs {
    #[command(flatten)]
    family: FamilyArgs,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Args)]
struct BenchArgs {
    #[command(flatten)]
    family: FamilyArgs,
    /// Largest n; sizes double from --n up to this.
    #[arg(long)]
    n_max: Option<usize>,
    /// Seeds per size, starting at --seed.
    #[arg(long, default_value_t = 1)]
    seeds: u64,
    /// Edges per vertex for the random family when neither --p nor --m is given.
    #[arg(long, default_value_t = 4)]
    m_factor: usize,
    /// Algorithms to run (repeatable).
    #[arg(long, value_enum, default_values = ["respect", "stoer-wagner", "contraction"])]
    algorithm: Vec<Algorithm>,
    #[command(flatten)]
    solve: SolveArgs,
}

fn parse_weights(s: &str) -> Result<WeightRange, String> {
    let (lo, hi) = s.split_once(':').ok_or_else(|| format!("expected lo:hi, got `{s}`"))?;
    let lo: f64 = lo.trim().parse().map_err(|_| format!("bad weight `{lo}`"))?;
    let hi: f64 = hi.trim().parse().map_err(|_| format!("bad weight `{hi}`"))?;
    WeightRange::new(lo, hi).map_err(|e| e.to_string())
}

fn generate(f: &FamilyArgs, m_factor: usize, seed: u64) -> Result<Generated> {
    let g = match f.family {
        Family::Random => {
            let density = match (f.p, f.m) {
                (Some(_), Some(_)) => bail!("give at most one of --p and --m"),
                (Some(p), None) => Density::Probability(p),
                (None, Some(m)) => Density::Edges(m),
                (None, None) => Density::Edges((m_factor * f.n).clamp(f.n.saturating_sub(1), f.n * f.n.saturating_sub(1) / 2)),
            };
            random_graph(f.n, density, f.weights, seed)?
        }
        Family::TwoCliques => two_cliques(f.n, f.bridges, f.bridge_weight)?,
        Family::Cycle => cycle(f.n, f.weights, seed)?,
        Family::Grid => {
            let side = (f.n as f64).sqrt().round().max(1.0) as usize;
            grid(side, f.n.div_ceil(side), f.weights, seed)?
        }
    };
    Ok(g)
}

struct Solved {
    cut: CutResult,
    agg_ops: u64,
}

fn solve(g: &Graph, algorithm: Algorithm, args: &SolveArgs) -> Result<Solved> {
    let solved = match algorithm {
        Algorithm::Respect => {
            let cfg = SamplerConfig { d: args.d, seed: args.seed, tree_count: args.trees, ..Default::default() };
            let report = min_cut_report(g, &cfg, args.parallel)?;
            let agg_ops = report.agg_ops.checked_div(report.trees_scanned as u64).unwrap_or(0);
            Solved { cut: report.cut, agg_ops }
        }
        Algorithm::StoerWagner => Solved { cut: stoer_wagner(g)?, agg_ops: 0 },
        Algorithm::Contraction => {
            let n = g.n() as f64;
            let trials = args.trials.unwrap_or_else(|| (n * (n - 1.0) / 2.0 * n.ln()).ceil().max(1.0) as usize);
            let mut rng = ChaCha8Rng::seed_from_u64(args.seed);
            Solved { cut: contraction_min_cut(g, trials, &mut rng)?, agg_ops: 0 }
        }
        Algorithm::Brute => {
            if g.n() > BRUTE_FORCE_MAX_N {
                bail!("brute force handles at most {BRUTE_FORCE_MAX_N} vertices, graph has {}", g.n());
            }
            Solved { cut: brute_force_min_cut(g)?, agg_ops: 0 }
        }
    };
    Ok(solved)
}

fn read_input(path: &PathBuf) -> Result<String> {
    if path.as_os_str() == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).context("reading stdin")?;
        return Ok(s);
    }
    std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn cmd_mincut(args: &MincutArgs) -> Result<String> {
    let text = read_input(&args.file)?;
    let g = parse_graph(&text).with_context(|| format!("parsing {}", args.file.display()))?;
    let cut = solve(&g, args.algorithm, &args.solve)?.cut;
    let mut out = format!("value {}\n", cut.value);
    if args.emit_partition {
        let side: Vec<String> = cut.side_vertices().iter().map(|x| (x + 1).to_string()).collect();
        writeln!(out, "side {}", side.join(" "))?;
        for &id in &cut.crossing {
            let e = g.edge(id);
            writeln!(out, "edge {} {} {}", e.u + 1, e.v + 1, e.w)?;
        }
    }
    Ok(out)
}

fn cmd_bench(args: &BenchArgs) -> Result<String> {
    let n_max = args.n_max.unwrap_or(args.family.n);
    if n_max < args.family.n {
        bail!("--n-max {n_max} is below --n {}", args.family.n);
    }
    let mut out = String::from("n,m,algorithm,seed,value,millis,agg_ops\n");
    let mut n = args.family.n;
    while n <= n_max {
        let family = FamilyArgs { n, ..args.family.clone() };
        for seed in args.solve.seed..args.solve.seed + args.seeds {
            let g = generate(&family, args.m_factor, seed)?.graph;
            for &algorithm in &args.algorithm {
                let solve_args = SolveArgs { seed, ..args.solve.clone() };
                let started = Instant::now();
                let solved = solve(&g, algorithm, &solve_args)?;
                let millis = started.elapsed().as_secs_f64() * 1e3;
                writeln!(
                    out,
                    "{},{},{},{},{},{:.3},{}",
                    g.n(),
                    g.m(),
                    algorithm.name(),
                    seed,
                    solved.cut.value,
                    millis,
                    solved.agg_ops
                )?;
            }
        }
        n *= 2;
    }
    Ok(out)
}

fn cmd_generate(args: &GenerateArgs) -> Result<String> {
    let g = generate(&args.family, 4, args.seed)?;
    Ok(write_graph(&g.graph, &g.comments()))
}

fn main() -> Result<()> {
    env_logger::init();
    let cli = Cli::parse();
    let out = match &cli.command {
        Command::Mincut(a) => cmd_mincut(a)?,
        Command::Bench(a) => cmd_bench(a)?,
        Command::Generate(a) => cmd_generate(a)?,
    };
    print!("{out}");
    Ok(())
}
