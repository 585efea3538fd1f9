//! `simplexct`: generate hypergraph instances, compute the exact simplex
//! census, run any of the streaming estimators, check the identity suite, and
//! sweep algorithms over parameter grids.
//!
//! Machine-readable output (one JSON record per line) goes to stdout; human
//! notes go to stderr. Every command is deterministic given `--seed`, except
//! for the wall-time field of run records.

use std::fmt;
use std::fs::{self, File};
use std::io::{BufWriter, Write as _};
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use estimators::{
    abundant_estimate, easy_estimate, meager_coloring, meager_shadow, meager_simplest, one_pass,
    Algorithm, Estimate, EstimatorConfig, EstimatorError, F0Mode, RunContext, RunRecord,
};
use generators::{gen_lb_disj, gen_lb_index, gen_lb_nk, ArrivalOrder, Family, GeneratorSpec};
use hypergraph_core::util::binomial;
use hypergraph_core::verify::{verify_instance, CheckStatus, VerifyOptions};
use hypergraph_core::{count_simplices_exact, Hyperedge};
use rand::seq::SliceRandom;
use rand::Rng;
use sampling_primitives::SeededRng;
use serde::{Deserialize, Serialize};
use stream_engine::{read_edge_list_file, write_edge_list, DedupPolicy, EdgeStream};

#[derive(Parser)]
#[command(name = "simplexct", version, about = "Simplex counting in streamed hypergraphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write a generated instance to an edge-list file.
    Generate(GenerateArgs),
    /// Exact simplex census of an edge-list file.
    Exact(ExactArgs),
    /// Run one estimator on an edge-list file and print its run record.
    Estimate(EstimateArgs),
    /// Check the counting identities and bounds on an instance or a suite.
    Verify(VerifyArgs),
    /// Sweep algorithms over generated instances, one record per run.
    Bench(BenchArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FamilyArg {
    Complete,
    Random,
    Planted,
    LbNk,
    LbIndex,
    LbDisj,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OrderArg {
    Sorted,
    Shuffled,
}

impl From<OrderArg> for ArrivalOrder {
    fn from(order: OrderArg) -> Self {
        match order {
            OrderArg::Sorted => ArrivalOrder::Sorted,
            OrderArg::Shuffled => ArrivalOrder::Shuffled,
        }
    }
}

#[derive(Args)]
struct GenerateArgs {
    #[arg(long, value_enum)]
    family: FamilyArg,
    /// Edge arity.
    #[arg(long)]
    k: usize,
    /// Vertex count (per group for the lb families).
    #[arg(long)]
    n: u32,
    /// Edge count (random, planted).
    #[arg(long)]
    m: Option<usize>,
    /// Number of planted simplices.
    #[arg(long)]
    t_target: Option<u64>,
    /// One-bit density of the data vectors (lb-nk, lb-disj).
    #[arg(long, default_value_t = 0.5)]
    density: f64,
    /// Index tuple for lb-index, comma separated, 1-based.
    #[arg(long, value_delimiter = ',')]
    y_index: Option<Vec<u32>>,
    /// Seed for Alice's data vector; defaults to a value derived from --seed.
    #[arg(long)]
    x_seed: Option<u64>,
    /// Seed for Bob's data vector; defaults to a value derived from --seed.
    #[arg(long)]
    y_seed: Option<u64>,
    #[arg(long, value_enum, default_value_t = OrderArg::Shuffled)]
    order: OrderArg,
    #[arg(long, env = "SIMPLEXCT_SEED", default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct ExactArgs {
    #[arg(long = "in")]
    input: PathBuf,
}

#[derive(Args)]
struct EstimateArgs {
    #[arg(long = "in")]
    input: PathBuf,
    /// abundant | easy | simplest | coloring | shadow | onepass
    #[arg(long)]
    algo: String,
    #[arg(long, env = "SIMPLEXCT_SEED", default_value_t = 0)]
    seed: u64,
    #[command(flatten)]
    accuracy: AccuracyArgs,
}

/// Estimator configuration shared by `estimate` and `bench`.
#[derive(Args)]
struct AccuracyArgs {
    /// Promised lower bound on the simplex count.
    #[arg(long = "T")]
    t_promise: u64,
    /// Relative error target.
    #[arg(long, default_value_t = 0.5)]
    eps: f64,
    /// Failure probability target.
    #[arg(long, default_value_t = 0.25)]
    delta: f64,
    /// Promised max simplices sharing an edge (onepass).
    #[arg(long)]
    delta_e: Option<u64>,
    /// Promised max simplices sharing a vertex (onepass).
    #[arg(long)]
    delta_v: Option<u64>,
    /// Lower the oracle's vertex-sampling coefficient below its default.
    #[arg(long)]
    xi: Option<f64>,
    /// Neighborhood size counting in the degree-ordered estimator.
    #[arg(long, value_enum, default_value_t = F0ModeArg::Exact)]
    f0_mode: F0ModeArg,
    /// Clamp every sampling rate to 1: deterministic and exact, but the
    /// sample is the whole stream.
    #[arg(long)]
    full_sampling: bool,
    /// Batch-sizing multiplier for the four-pass estimators.
    #[arg(long)]
    variance_const: Option<f64>,
    /// Space-abort multiplier for the four-pass estimators.
    #[arg(long)]
    abort_factor: Option<f64>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum F0ModeArg {
    Exact,
    Kmv,
}

impl AccuracyArgs {
    fn make_config(&self, k: usize, seed: u64) -> EstimatorConfig {
        let mut cfg = EstimatorConfig::new(k, self.t_promise, self.eps, self.delta, seed);
        cfg.delta_e = self.delta_e;
        cfg.delta_v = self.delta_v;
        cfg.xi = self.xi;
        cfg.f0_mode = match self.f0_mode {
            F0ModeArg::Exact => F0Mode::Exact,
            // The sketch inherits the run's accuracy target.
            F0ModeArg::Kmv => F0Mode::Kmv { epsilon: self.eps },
        };
        cfg.full_sampling = self.full_sampling;
        if let Some(c) = self.variance_const {
            cfg.variance_const = c;
        }
        if let Some(f) = self.abort_factor {
            cfg.abort_factor = f;
        }
        cfg
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SuiteArg {
    /// Seeded random k=3 instances with n <= 12.
    Random,
}

#[derive(Args)]
struct VerifyArgs {
    /// Edge-list file to check.
    #[arg(long = "in", conflicts_with = "suite")]
    input: Option<PathBuf>,
    /// Named bulk suite instead of a single file.
    #[arg(long, value_enum)]
    suite: Option<SuiteArg>,
    /// Instances to draw when running a suite.
    #[arg(long, default_value_t = 500)]
    cases: usize,
    #[arg(long, env = "SIMPLEXCT_SEED", default_value_t = 0)]
    seed: u64,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum BenchFamilyArg {
    Complete,
    Random,
    Planted,
}

#[derive(Args)]
struct BenchArgs {
    /// Comma-separated algorithm names.
    #[arg(long, value_delimiter = ',', required = true)]
    algos: Vec<String>,
    #[arg(long, value_enum, default_value_t = BenchFamilyArg::Random)]
    family: BenchFamilyArg,
    #[arg(long)]
    k: usize,
    #[arg(long)]
    n: u32,
    /// Edge counts to sweep (random, planted).
    #[arg(long, value_delimiter = ',')]
    m_grid: Vec<usize>,
    /// Number of planted simplices (planted).
    #[arg(long)]
    t_target: Option<u64>,
    /// Runs per algorithm and instance, each with its own derived seed.
    #[arg(long, default_value_t = 1)]
    runs: u64,
    /// Attach the exact census to every record (one oracle run per instance).
    #[arg(long)]
    exact: bool,
    #[arg(long, env = "SIMPLEXCT_SEED", default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    out: PathBuf,
    #[command(flatten)]
    accuracy: AccuracyArgs,
}

/// Census record printed by `exact`, one JSON line.
#[derive(Serialize, Deserialize)]
struct ExactRecord {
    schema_version: u32,
    k: usize,
    n: u32,
    m: u64,
    t_k: u64,
    delta_e: u64,
    delta_v: u64,
}

const EXACT_RECORD_SCHEMA_VERSION: u32 = 1;

enum CliError {
    /// Flag misuse beyond what clap checks; exits with the usage code.
    Usage(String),
    /// I/O, parse, or estimation failure on otherwise valid flags.
    Runtime(String),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Runtime(_) => 1,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(msg) | CliError::Runtime(msg) => f.write_str(msg),
        }
    }
}

impl From<EstimatorError> for CliError {
    fn from(err: EstimatorError) -> Self {
        match err {
            EstimatorError::Config(_) => CliError::Usage(err.to_string()),
            _ => CliError::Runtime(err.to_string()),
        }
    }
}

impl From<generators::GenError> for CliError {
    fn from(err: generators::GenError) -> Self {
        CliError::Usage(err.to_string())
    }
}

impl From<stream_engine::StreamError> for CliError {
    fn from(err: stream_engine::StreamError) -> Self {
        CliError::Runtime(err.to_string())
    }
}

impl From<hypergraph_core::HypergraphError> for CliError {
    fn from(err: hypergraph_core::HypergraphError) -> Self {
        CliError::Runtime(err.to_string())
    }
}

impl From<std::io::Error> for CliError {
    fn from(err: std::io::Error) -> Self {
        CliError::Runtime(err.to_string())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Generate(args) => cmd_generate(args),
        Command::Exact(args) => cmd_exact(args),
        Command::Estimate(args) => cmd_estimate(args),
        Command::Verify(args) => cmd_verify(args),
        Command::Bench(args) => cmd_bench(args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("simplexct: {err}");
            ExitCode::from(err.exit_code())
        }
    }
}

fn cmd_generate(args: GenerateArgs) -> Result<(), CliError> {
    let (k, n) = (args.k, args.n);
    let (k, n, edges) = match args.family {
        FamilyArg::Complete => build_from_spec(Family::Complete { k, n }, &args)?,
        FamilyArg::Random => {
            let m = require(args.m, "random needs --m")?;
            build_from_spec(Family::Random { k, n, m }, &args)?
        }
        FamilyArg::Planted => {
            let m = require(args.m, "planted needs --m")?;
            let t_target = require(args.t_target, "planted needs --t-target")?;
            build_from_spec(Family::Planted { k, n, m, t_target }, &args)?
        }
        FamilyArg::LbNk | FamilyArg::LbIndex | FamilyArg::LbDisj => build_gadget(&args)?,
    };
    fs::write(&args.out, write_edge_list(k, n, &edges))?;
    eprintln!("wrote k={k} n={n} m={} to {}", edges.len(), args.out.display());
    Ok(())
}

fn require<T>(value: Option<T>, message: &str) -> Result<T, CliError> {
    value.ok_or_else(|| CliError::Usage(message.into()))
}

fn build_from_spec(
    family: Family,
    args: &GenerateArgs,
) -> Result<(usize, u32, Vec<Hyperedge>), CliError> {
    let spec = GeneratorSpec {
        family,
        order: args.order.into(),
        seed: args.seed,
    };
    let h = spec.build()?.hypergraph;
    Ok((h.k(), h.n(), h.edges().to_vec()))
}

/// Gadget families take their data-vector seeds directly, so explicit
/// --x-seed/--y-seed pin the vectors while --seed still controls arrival
/// order. The derivation labels match the generator library's, so omitting
/// both gives the same instance as the plain spec path.
fn build_gadget(args: &GenerateArgs) -> Result<(usize, u32, Vec<Hyperedge>), CliError> {
    let seeds = SeededRng::new(args.seed);
    let x_seed = args.x_seed.unwrap_or_else(|| seeds.derive(1).key());
    let y_seed = args.y_seed.unwrap_or_else(|| seeds.derive(2).key());
    let inst = match args.family {
        FamilyArg::LbNk => gen_lb_nk(args.k, args.n, x_seed, y_seed, args.density)?,
        FamilyArg::LbDisj => gen_lb_disj(args.k, args.n, x_seed, y_seed, args.density)?,
        FamilyArg::LbIndex => {
            let y = args
                .y_index
                .as_deref()
                .ok_or_else(|| CliError::Usage("lb-index needs --y-index".into()))?;
            gen_lb_index(args.k, args.n, x_seed, y)?
        }
        _ => unreachable!("gadget families only"),
    };
    let arrival = seeds.derive(u64::MAX);
    let mut alice = inst.alice;
    let mut bob = inst.bob;
    match args.order {
        OrderArg::Sorted => {
            alice.sort_unstable_by(|a, b| a.vertices().cmp(b.vertices()));
            bob.sort_unstable_by(|a, b| a.vertices().cmp(b.vertices()));
        }
        OrderArg::Shuffled => {
            alice.shuffle(&mut arrival.derive(1).rng());
            bob.shuffle(&mut arrival.derive(2).rng());
        }
    }
    // Alice's segment precedes Bob's, as in the one-way constructions.
    alice.extend(bob);
    Ok((inst.k, inst.n_vertices, alice))
}

fn cmd_exact(args: ExactArgs) -> Result<(), CliError> {
    let parsed = read_edge_list_file(&args.input, DedupPolicy::Strict)?;
    let (k, n, m) = (parsed.k, parsed.n, parsed.edges.len() as u64);
    let stats = count_simplices_exact(&parsed.into_hypergraph()?);
    let record = ExactRecord {
        schema_version: EXACT_RECORD_SCHEMA_VERSION,
        k,
        n,
        m,
        t_k: stats.t_k,
        delta_e: stats.delta_e,
        delta_v: stats.delta_v,
    };
    println!("{}", serde_json::to_string(&record).expect("census record serializes"));
    Ok(())
}

fn parse_algorithm(name: &str) -> Result<Algorithm, CliError> {
    name.parse().map_err(CliError::Usage)
}

/// The one-pass estimator cannot size its sampling rates without both
/// overlap promises, so reject the combination before opening the input.
fn check_promises(algorithm: Algorithm, acc: &AccuracyArgs) -> Result<(), CliError> {
    if algorithm == Algorithm::Onepass
        && !acc.full_sampling
        && (acc.delta_e.is_none() || acc.delta_v.is_none())
    {
        return Err(CliError::Usage(
            "onepass needs both --delta-e and --delta-v (or --full-sampling)".into(),
        ));
    }
    Ok(())
}

fn run_algorithm(
    algorithm: Algorithm,
    stream: &EdgeStream,
    cfg: &EstimatorConfig,
) -> Result<Estimate, EstimatorError> {
    match algorithm {
        Algorithm::Abundant => abundant_estimate(stream, cfg),
        Algorithm::Easy => easy_estimate(stream, cfg),
        Algorithm::Simplest => meager_simplest(stream, cfg),
        Algorithm::Coloring => meager_coloring(stream, cfg),
        Algorithm::Shadow => meager_shadow(stream, cfg),
        Algorithm::Onepass => one_pass(stream, cfg),
    }
}

fn cmd_estimate(args: EstimateArgs) -> Result<(), CliError> {
    let algorithm = parse_algorithm(&args.algo)?;
    check_promises(algorithm, &args.accuracy)?;
    let stream = EdgeStream::from_file(&args.input, DedupPolicy::Strict)?;
    let cfg = args.accuracy.make_config(stream.k(), args.seed);
    cfg.validate().map_err(CliError::from)?;
    let started = Instant::now();
    let estimate = run_algorithm(algorithm, &stream, &cfg)?;
    let ctx = RunContext {
        k: stream.k(),
        n: stream.n(),
        m: stream.m() as u64,
        seed: args.seed,
        wall_time_ms: started.elapsed().as_secs_f64() * 1e3,
        exact: None,
    };
    let record = RunRecord::success(&cfg, &ctx, &estimate);
    println!("{}", serde_json::to_string(&record).expect("run record serializes"));
    Ok(())
}

fn cmd_verify(args: VerifyArgs) -> Result<(), CliError> {
    match (&args.input, args.suite) {
        (Some(path), None) => verify_file(path),
        (None, Some(SuiteArg::Random)) => verify_random_suite(args.cases, args.seed),
        _ => Err(CliError::Usage("verify needs exactly one of --in or --suite".into())),
    }
}

fn verify_file(path: &PathBuf) -> Result<(), CliError> {
    let h = read_edge_list_file(path, DedupPolicy::Strict)?.into_hypergraph()?;
    let outcomes = verify_instance(&h, &VerifyOptions::default())?;
    let mut failures = 0usize;
    for check in &outcomes {
        let tag = match check.status {
            CheckStatus::Pass => "PASS",
            CheckStatus::Skipped => "SKIP",
            CheckStatus::Fail => {
                failures += 1;
                "FAIL"
            }
        };
        println!("{tag} {}: {}", check.name, check.details);
    }
    if failures > 0 {
        return Err(CliError::Runtime(format!("{failures} checks failed")));
    }
    Ok(())
}

fn verify_random_suite(cases: usize, seed: u64) -> Result<(), CliError> {
    let root = SeededRng::new(seed);
    let opts = VerifyOptions::default();
    let mut failures = 0usize;
    for case in 0..cases {
        let node = root.derive(case as u64);
        let mut rng = node.rng();
        let n: u32 = rng.gen_range(4..=12);
        let m = rng.gen_range(1..=binomial(n as u64, 3)) as usize;
        let spec = GeneratorSpec {
            family: Family::Random { k: 3, n, m },
            order: ArrivalOrder::Sorted,
            seed: node.derive(1).key(),
        };
        let h = spec.build()?.hypergraph;
        for check in verify_instance(&h, &opts)? {
            if check.status == CheckStatus::Fail {
                failures += 1;
                println!("FAIL case={case} n={n} m={m} {}: {}", check.name, check.details);
            }
        }
    }
    println!("suite random: {cases} cases, {failures} failures");
    if failures > 0 {
        return Err(CliError::Runtime(format!("{failures} checks failed")));
    }
    Ok(())
}

fn cmd_bench(args: BenchArgs) -> Result<(), CliError> {
    let algorithms = args
        .algos
        .iter()
        .map(|name| parse_algorithm(name))
        .collect::<Result<Vec<_>, _>>()?;
    for &algorithm in &algorithms {
        check_promises(algorithm, &args.accuracy)?;
    }
    args.accuracy
        .make_config(args.k, args.seed)
        .validate()
        .map_err(CliError::from)?;
    let cells: Vec<Option<usize>> = match args.family {
        BenchFamilyArg::Complete => {
            if !args.m_grid.is_empty() {
                return Err(CliError::Usage(
                    "complete instances have a fixed edge count; drop --m-grid".into(),
                ));
            }
            vec![None]
        }
        BenchFamilyArg::Random | BenchFamilyArg::Planted => {
            if args.m_grid.is_empty() {
                return Err(CliError::Usage("this family sweeps --m-grid; give at least one value".into()));
            }
            args.m_grid.iter().copied().map(Some).collect()
        }
    };
    if args.family == BenchFamilyArg::Planted && args.t_target.is_none() {
        return Err(CliError::Usage("planted needs --t-target".into()));
    }

    let mut out = BufWriter::new(File::create(&args.out)?);
    let root = SeededRng::new(args.seed);
    let mut written = 0u64;
    for (index, cell) in cells.iter().enumerate() {
        let family = match (args.family, cell) {
            (BenchFamilyArg::Complete, _) => Family::Complete { k: args.k, n: args.n },
            (BenchFamilyArg::Random, Some(m)) => Family::Random { k: args.k, n: args.n, m: *m },
            (BenchFamilyArg::Planted, Some(m)) => Family::Planted {
                k: args.k,
                n: args.n,
                m: *m,
                t_target: args.t_target.unwrap(),
            },
            _ => unreachable!("cells carry m for the swept families"),
        };
        let node = root.derive(index as u64);
        let built = GeneratorSpec {
            family,
            order: ArrivalOrder::Shuffled,
            seed: node.derive(0).key(),
        }
        .build()?;
        let stream = built.stream();
        let exact = args.exact.then(|| count_simplices_exact(&built.hypergraph).t_k);
        for run in 0..args.runs {
            let run_seed = node.derive(1 + run).key();
            for &algorithm in &algorithms {
                let cfg = args.accuracy.make_config(stream.k(), run_seed);
                let started = Instant::now();
                let outcome = run_algorithm(algorithm, &stream, &cfg);
                let ctx = RunContext {
                    k: stream.k(),
                    n: stream.n(),
                    m: stream.m() as u64,
                    seed: run_seed,
                    wall_time_ms: started.elapsed().as_secs_f64() * 1e3,
                    exact,
                };
                let record = match &outcome {
                    Ok(estimate) => RunRecord::success(&cfg, &ctx, estimate),
                    // Failed runs stay in the log; a sweep never dies mid-grid.
                    Err(error) => RunRecord::failure(&cfg, &ctx, algorithm, error),
                };
                serde_json::to_writer(&mut out, &record).expect("run record serializes");
                writeln!(out)?;
                written += 1;
            }
        }
    }
    out.flush()?;
    eprintln!("wrote {written} records to {}", args.out.display());
    Ok(())
}
