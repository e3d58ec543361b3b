use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use diverse_core::bruteforce::{
    exact_diverse_optimum, exact_optimum, exact_optimum_by_size, fixture_cyclic_uniform,
    fixture_modular_decreasing, fixture_seed_blocking_matroid, max_feasible_size,
    smallest_dependent_size, OracleLimits, DIVERSE_MAX_GROUND,
};
use diverse_core::common_greedy::{
    verify_matroid_ss_bound, verify_phase1_objective, verify_structure as common_structure,
    verify_uniform_exact_ss, Phase1Regime,
};
use diverse_core::harness::{
    emit_plot, load_graph, run_sweep, write_csv, Algo, Constraint, ConstraintSpec,
    ExperimentConfig, GraphFormat, GraphSource, ParamRange, PlotKind,
};
use diverse_core::replimit_greedy::{
    verify_intersection_guarantee, verify_matroid_guarantees, verify_structure as replimit_structure,
    verify_uniform_guarantees,
};
use diverse_core::{
    g, has_loops, run_common_greedy, run_replimit_greedy, CommonGreedyConfig, Graph, Matroid, RepLimitConfig,
    RunOutput, SolutionMultiset, UniformMatroid, Verdict, VertexCoverage,
};
use num_rational::BigRational;

/// Diverse near-optimal solutions for vertex coverage under matroid constraints.
#[derive(Parser)]
#[command(name = "diverse", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run one algorithm at one parameter value and print the solutions.
    Run(RunArgs),
    /// Run algorithms over a parameter range and write CSV and plots.
    Sweep(SweepArgs),
    /// Print g(a, b, c) or the diversity bound of a constraint.
    Bound(BoundArgs),
    /// Exact optimum and exact diverse optimum of a small instance.
    Oracle(OracleArgs),
    /// Run one algorithm and check every applicable guarantee.
    Check(RunArgs),
    /// Print a tightness fixture and its diversity.
    Fixtures(FixtureArgs),
}

#[derive(Args)]
struct GraphArgs {
    /// Graph file, 1-based vertex ids.
    #[arg(long)]
    graph: PathBuf,
    /// edge-list or matrix-market; guessed from the extension if omitted.
    #[arg(long)]
    format: Option<GraphFormat>,
    /// Use the complement graph.
    #[arg(long)]
    complement: bool,
}

impl GraphArgs {
    fn source(&self) -> GraphSource {
        GraphSource {
            path: self.graph.clone(),
            format: self.format.unwrap_or_else(|| GraphFormat::from_path(&self.graph)),
            complement: self.complement,
        }
    }

    fn load(&self) -> Result<Graph> {
        let src = self.source();
        let loaded = load_graph(&src.path, src.format, src.complement)
            .with_context(|| format!("loading {}", src.path.display()))?;
        Ok(loaded.graph)
    }
}

#[derive(Args)]
struct ConstraintArgs {
    /// Uniform matroid of rank K.
    #[arg(long, value_name = "K")]
    uniform: Option<usize>,
    /// Partition matroid file, one `cap: id id ...` block per line.
    #[arg(long, value_name = "FILE")]
    partition: Option<PathBuf>,
    /// Partition into k blocks of consecutive vertices by degree.
    #[arg(long, value_name = "k", requires = "caps")]
    degree_partition: Option<usize>,
    /// Comma-separated block caps for --degree-partition.
    #[arg(long, value_name = "LIST", value_delimiter = ',')]
    caps: Vec<usize>,
    /// Sort by descending degree for --degree-partition.
    #[arg(long, requires = "degree_partition")]
    reverse: bool,
    /// Intersection of matroids: uniform:K, partition:FILE, degree:k:CAPS or
    /// degree-rev:k:CAPS, with CAPS comma-separated.
    #[arg(long, value_name = "SPEC", num_args = 1..)]
    intersect: Vec<String>,
}

impl ConstraintArgs {
    fn spec(&self) -> Result<ConstraintSpec> {
        let mut specs = Vec::new();
        if let Some(k) = self.uniform {
            specs.push(ConstraintSpec::Uniform { k });
        }
        if let Some(path) = &self.partition {
            specs.push(ConstraintSpec::PartitionFile { path: path.clone() });
        }
        if let Some(k) = self.degree_partition {
            specs.push(ConstraintSpec::DegreePartition {
                k,
                caps: self.caps.clone(),
                reverse: self.reverse,
            });
        }
        if !self.intersect.is_empty() {
            let members = self
                .intersect
                .iter()
                .map(|s| parse_member(s))
                .collect::<Result<Vec<_>>>()?;
            specs.push(ConstraintSpec::Intersection(members));
        }
        match specs.len() {
            1 => Ok(specs.pop().expect("one spec")),
            0 => bail!("give one of --uniform, --partition, --degree-partition or --intersect"),
            _ => bail!("give only one of --uniform, --partition, --degree-partition or --intersect"),
        }
    }
}

fn parse_member(text: &str) -> Result<ConstraintSpec> {
    let parts: Vec<&str> = text.splitn(3, ':').collect();
    let number = |s: &str| -> Result<usize> {
        s.trim().parse().with_context(|| format!("bad number {s:?} in {text:?}"))
    };
    Ok(match parts.as_slice() {
        ["uniform", k] => ConstraintSpec::Uniform { k: number(k)? },
        ["partition", path] => ConstraintSpec::PartitionFile { path: PathBuf::from(path) },
        [kind @ ("degree" | "degree-rev"), k, caps] => ConstraintSpec::DegreePartition {
            k: number(k)?,
            caps: caps.split(',').map(number).collect::<Result<_>>()?,
            reverse: *kind == "degree-rev",
        },
        _ => bail!("bad intersection member {text:?}"),
    })
}

#[derive(Args)]
struct RunArgs {
    #[command(flatten)]
    graph: GraphArgs,
    #[command(flatten)]
    constraint: ConstraintArgs,
    #[arg(long)]
    algo: Algo,
    /// Number of solutions.
    #[arg(long)]
    r: usize,
    /// Common elements, for the common algorithm.
    #[arg(long, conflicts_with = "l")]
    b: Option<usize>,
    /// Representation limit, for the replimit algorithm.
    #[arg(long)]
    l: Option<usize>,
}

#[derive(Args)]
struct SweepArgs {
    #[command(flatten)]
    graph: GraphArgs,
    #[command(flatten)]
    constraint: ConstraintArgs,
    /// Algorithms to run; both if omitted.
    #[arg(long)]
    algo: Vec<Algo>,
    #[arg(long)]
    r: usize,
    /// Only this b (common algorithm).
    #[arg(long, conflicts_with_all = ["l", "all"])]
    b: Vec<usize>,
    /// Only this l (replimit algorithm).
    #[arg(long, conflicts_with = "all")]
    l: Vec<usize>,
    /// Every parameter value (the default).
    #[arg(long)]
    all: bool,
    #[arg(long, value_name = "PATH")]
    csv: Option<PathBuf>,
    /// SVG output.
    #[arg(long, value_name = "PATH")]
    plot: Option<PathBuf>,
    #[arg(long, default_value = "diversity")]
    plot_kind: PlotKind,
    /// Record wall time per row; output is then not reproducible.
    #[arg(long)]
    timing: bool,
    /// Known optimum to normalize objective values against.
    #[arg(long, value_name = "VALUE")]
    best_known: Option<i64>,
    #[arg(long)]
    graph_id: Option<String>,
    #[arg(long)]
    constraint_id: Option<String>,
}

#[derive(Args)]
struct BoundArgs {
    /// Print g(a, b, c).
    #[arg(long, num_args = 3, value_names = ["A", "B", "C"], conflicts_with = "graph")]
    abc: Option<Vec<u64>>,
    #[arg(long, requires = "r")]
    graph: Option<PathBuf>,
    #[arg(long)]
    format: Option<GraphFormat>,
    #[arg(long)]
    complement: bool,
    #[command(flatten)]
    constraint: ConstraintArgs,
    #[arg(long)]
    r: Option<usize>,
}

#[derive(Args)]
struct OracleArgs {
    #[command(flatten)]
    graph: GraphArgs,
    #[command(flatten)]
    constraint: ConstraintArgs,
    /// Also find r solutions of maximum diversity.
    #[arg(long)]
    r: Option<usize>,
    /// Each diverse solution must reach alpha times the optimum, as p/q.
    #[arg(long, default_value = "0")]
    alpha: BigRational,
}

#[derive(Args)]
struct FixtureArgs {
    #[command(subcommand)]
    kind: Fixture,
}

#[derive(Subcommand)]
enum Fixture {
    /// Cyclic windows of size s over n elements.
    Cyclic {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        s: usize,
        #[arg(long)]
        r: usize,
    },
    /// Replimit run on weights n..1 under a uniform matroid.
    Decreasing {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        r: usize,
        #[arg(long)]
        l: usize,
    },
    /// Replimit run on weights n..1 under a matroid that blocks the seed.
    SeedBlocking {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        s: usize,
        #[arg(long)]
        r: usize,
        #[arg(long)]
        l: usize,
    },
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    match dispatch(Cli::parse().command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn dispatch(cmd: Command) -> Result<ExitCode> {
    match cmd {
        Command::Run(args) => {
            let (graph, constraint, out) = execute(&args)?;
            print_run(&graph, &constraint, &out);
            Ok(ExitCode::SUCCESS)
        }
        Command::Check(args) => check(&args),
        Command::Sweep(args) => sweep(&args),
        Command::Bound(args) => bound(&args),
        Command::Oracle(args) => oracle(&args),
        Command::Fixtures(args) => fixtures(&args.kind),
    }
}

fn execute(args: &RunArgs) -> Result<(Graph, Constraint, RunOutput)> {
    let graph = args.graph.load()?;
    let constraint = args.constraint.spec()?.build(&graph)?;
    let f = VertexCoverage::new(&graph);
    let out = match args.algo {
        Algo::Common => {
            let b = args.b.context("the common algorithm needs --b")?;
            let m = constraint
                .as_matroid()
                .context("the common algorithm needs a single matroid, not an intersection")?;
            run_common_greedy(&f, m, CommonGreedyConfig { b, r: args.r })?
        }
        Algo::RepLimit => {
            let l = args.l.context("the replimit algorithm needs --l")?;
            run_replimit_greedy(&f, &constraint, RepLimitConfig { r: args.r, l })?
        }
    };
    Ok((graph, constraint, out))
}

fn one_based(p: &SolutionMultiset) -> Vec<String> {
    p.solutions()
        .iter()
        .map(|x| x.iter().map(|v| (v + 1).to_string()).collect::<Vec<_>>().join(" "))
        .collect()
}

fn print_run(graph: &Graph, constraint: &Constraint, out: &RunOutput) {
    let r = out.multiset.len();
    println!("graph: {} vertices, {} edges", graph.vertex_count(), graph.edge_count());
    println!("constraint: {}", constraint.label());
    for (i, (ids, value)) in one_based(&out.multiset).iter().zip(&out.values).enumerate() {
        println!("solution {}: f = {value}: {ids}", i + 1);
    }
    println!("min f: {}", out.min_value());
    println!("mean f: {:.6}", out.mean_value());
    println!("ss: {} (bound {})", out.ss(), constraint.ss_bound(r));
}

fn check(args: &RunArgs) -> Result<ExitCode> {
    let (graph, constraint, out) = execute(args)?;
    print_run(&graph, &constraint, &out);
    let n = graph.vertex_count();
    let f = VertexCoverage::new(&graph);
    let lim = OracleLimits::default();
    let exact = n <= lim.max_ground;
    let mut verdict = Verdict::default();
    match args.algo {
        Algo::Common => {
            let b = args.b.expect("checked by execute");
            let m = constraint.as_matroid().expect("checked by execute");
            verdict.merge(common_structure(&out, m));
            match &constraint {
                Constraint::Uniform(u) => verdict.merge(verify_uniform_exact_ss(&out, n, u.rank(), b, args.r)),
                _ if b < m.rank() && !has_loops(m) => {
                    verdict.merge(verify_matroid_ss_bound(&out, m, b, args.r)?)
                }
                _ => {}
            }
            if exact {
                let opt = exact_optimum(&f, &constraint, lim)?.0;
                let regime = match &constraint {
                    Constraint::Uniform(u) => Phase1Regime::Uniform { cap: u.rank() },
                    _ => Phase1Regime::Matroid {
                        rank: m.rank(),
                        k: smallest_dependent_size(&constraint, lim)?.map(|s| s - 1),
                    },
                };
                verdict.merge(verify_phase1_objective(out.trace.start_value, b, regime, opt));
            }
        }
        Algo::RepLimit => {
            let l = args.l.expect("checked by execute");
            verdict.merge(replimit_structure(&out, &constraint, l));
            if exact {
                let opt = exact_optimum(&f, &constraint, lim)?.0;
                match &constraint {
                    Constraint::Uniform(u) => {
                        let best = exact_optimum_by_size(&f, &constraint, lim)?;
                        verdict.merge(verify_uniform_guarantees(&out, n, u.rank(), l, &best));
                    }
                    Constraint::Partition(p) => {
                        verdict.merge(verify_matroid_guarantees(&out, p.rank(), l, opt))
                    }
                    Constraint::Intersection(members) => {
                        let size = max_feasible_size(&constraint, lim)?;
                        verdict.merge(verify_intersection_guarantee(&out, members.len(), size, l, opt));
                    }
                }
            } else if let Constraint::Uniform(u) = &constraint {
                verdict.merge(verify_uniform_guarantees(&out, n, u.rank(), l, &[]));
            }
        }
    }
    if !exact {
        println!("note: more than {} vertices, objective checks skipped", lim.max_ground);
    }
    print!("{verdict}");
    Ok(if verdict.holds() {
        println!("all checks hold");
        ExitCode::SUCCESS
    } else {
        println!("{} checks violated", verdict.failures().count());
        ExitCode::from(1)
    })
}

fn sweep(args: &SweepArgs) -> Result<ExitCode> {
    let algos = if args.algo.is_empty() {
        vec![Algo::Common, Algo::RepLimit]
    } else {
        args.algo.clone()
    };
    let explicit = if !args.b.is_empty() { &args.b } else { &args.l };
    if !args.b.is_empty() && algos != [Algo::Common] {
        bail!("--b applies to --algo common only");
    }
    if !args.l.is_empty() && algos != [Algo::RepLimit] {
        bail!("--l applies to --algo replimit only");
    }
    let params = if explicit.is_empty() {
        ParamRange::All
    } else {
        ParamRange::Values(explicit.clone())
    };
    let cfg = ExperimentConfig {
        graph: args.graph.source(),
        graph_id: args.graph_id.clone(),
        constraint: args.constraint.spec()?,
        constraint_id: args.constraint_id.clone(),
        r: args.r,
        algos,
        params,
        best_known: args.best_known,
        timing: args.timing,
    };
    let outcome = run_sweep(&cfg)?;
    for fail in &outcome.failures {
        eprintln!("warning: {} at {}: {}", fail.algo.as_str(), fail.param, fail.message);
    }
    match &args.csv {
        Some(path) => write_file(path, |buf| Ok(write_csv(&outcome.rows, buf)?))?,
        None => write_csv(&outcome.rows, std::io::stdout().lock())?,
    }
    if let Some(path) = &args.plot {
        let svg = emit_plot(&outcome.rows, args.plot_kind)?;
        fs::write(path, svg).with_context(|| format!("writing {}", path.display()))?;
    }
    Ok(if outcome.failures.is_empty() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

fn write_file(path: &Path, body: impl FnOnce(&mut Vec<u8>) -> Result<()>) -> Result<()> {
    let mut buf = Vec::new();
    body(&mut buf)?;
    fs::write(path, buf).with_context(|| format!("writing {}", path.display()))
}

fn bound(args: &BoundArgs) -> Result<ExitCode> {
    if let Some(abc) = &args.abc {
        println!("{}", g(abc[0], abc[1], abc[2]));
        return Ok(ExitCode::SUCCESS);
    }
    let path = args.graph.as_ref().context("give --abc A B C or --graph with a constraint")?;
    let graph = GraphArgs {
        graph: path.clone(),
        format: args.format,
        complement: args.complement,
    }
    .load()?;
    let constraint = args.constraint.spec()?.build(&graph)?;
    let r = args.r.expect("required by clap");
    println!("{}", constraint.ss_bound(r));
    Ok(ExitCode::SUCCESS)
}

fn oracle(args: &OracleArgs) -> Result<ExitCode> {
    let graph = args.graph.load()?;
    let constraint = args.constraint.spec()?.build(&graph)?;
    let f = VertexCoverage::new(&graph);
    let lim = OracleLimits::default();
    let (opt, witness) = exact_optimum(&f, &constraint, lim)?;
    let ids: Vec<String> = witness.iter().map(|v| (v + 1).to_string()).collect();
    println!("optimum: {opt}: {}", ids.join(" "));
    if let Some(r) = args.r {
        let lim = OracleLimits {
            max_ground: DIVERSE_MAX_GROUND,
            ..lim
        };
        let (ss, p) = exact_diverse_optimum(&f, &constraint, r, &args.alpha, lim)?;
        println!("diverse optimum: ss = {ss} (bound {})", constraint.ss_bound(r));
        for (i, ids) in one_based(&p).iter().enumerate() {
            println!("solution {}: {ids}", i + 1);
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn fixtures(kind: &Fixture) -> Result<ExitCode> {
    let (p, expected) = match *kind {
        Fixture::Cyclic { n, s, r } => (fixture_cyclic_uniform(n, s, r)?, g(n as u64, s as u64, r as u64)),
        Fixture::Decreasing { n, k, r, l } => {
            let f = fixture_modular_decreasing(n)?;
            let out = run_replimit_greedy(&f, &UniformMatroid::new(n, k), RepLimitConfig { r, l })?;
            let steps = (r * k.saturating_sub(1)).min(l * (n - 1)) as u64;
            let (full, rest) = (steps / l as u64, steps % l as u64);
            let (r64, l64) = (r as u64, l as u64);
            (out.multiset, full * l64 * (r64 - l64) + rest * (r64 - rest))
        }
        Fixture::SeedBlocking { n, s, r, l } => {
            let f = fixture_modular_decreasing(n)?;
            let m = fixture_seed_blocking_matroid(n, s)?;
            let out = run_replimit_greedy(&f, &m, RepLimitConfig { r, l })?;
            (out.multiset, (l * r.saturating_sub(l) * (s - 1)) as u64)
        }
    };
    for (i, ids) in one_based(&p).iter().enumerate() {
        println!("solution {}: {ids}", i + 1);
    }
    println!("ss: {} (expected {expected})", p.ss());
    Ok(if p.ss() == expected {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}
