mod selftest;

use std::fmt;
use std::fs;
use std::io::{ErrorKind, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use mmp_core::bench::{bench, format_table, Algorithm, BenchConfig};
use mmp_core::bounded::{bounded_minplus, BoundedKernelConfig, Strategy};
use mmp_core::gen::{generate, GeneratorSpec, Kind};
use mmp_core::io::{format_matrix, parse_array, parse_matrix, parse_ops, parse_queries, parse_ranges};
use mmp_core::matrix::{bd_to_monotone, minplus_naive, minplus_sweep, validate_monotone};
use mmp_core::monotone::{monotone_minplus_report, shape, MmpConfig};
use mmp_core::mpqw::{MpqwBounded, MpqwMonotone, MpqwParams, Witness};
use mmp_core::params::{batch_default_params, default_params, OmegaPreset};
use mmp_core::rangemode::{batch_range_mode_with, BatchConfig, DrmConfig, DynamicRangeModeEngine, ModeArray};
use mmp_core::ssrp::{
    bdmp_via_ssrp, format_graph, parse_graph, reduce_bdmp_to_hamapsp, reduce_hamapsp_to_ssrp, ssrp_baseline,
    subpath_solve, HopLongMode, SubpathConfig, SubpathInstance,
};
use mmp_core::IntMatrix;
use serde_json::json;

#[derive(Parser)]
#[command(name = "mmp", version, about = "Monotone min-plus products and their applications")]
struct Cli {
    /// Seed for every randomized step.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// classical, strassen, current, tuned-rectangular, or a number in [2, 3].
    #[arg(long, global = true, default_value = "current")]
    omega_preset: String,
    /// Emit JSON instead of the text formats.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Min-plus product of two matrix files.
    Multiply(MultiplyArgs),
    /// Answer min-plus queries with excluded inner indices.
    Mpqw(MpqwArgs),
    /// Range mode queries.
    #[command(subcommand)]
    Rangemode(RangeCmd),
    /// Replacement paths and reductions.
    #[command(subcommand)]
    Ssrp(SsrpCmd),
    /// Generate a seeded instance.
    Gen(GenArgs),
    /// Time algorithms over a size sweep (bench.v1 JSON).
    Bench(BenchArgs),
    /// Run the oracle-equivalence suites at small sizes.
    Selftest,
}

#[derive(Clone, Copy, ValueEnum)]
enum Algo {
    Naive,
    Sweep,
    Monotone,
    Bounded,
    Bd,
}

#[derive(Args)]
struct MultiplyArgs {
    #[arg(long)]
    a: PathBuf,
    #[arg(long)]
    b: PathBuf,
    #[arg(long, value_enum, default_value = "monotone")]
    algo: Algo,
    #[arg(long)]
    theta: Option<f64>,
    #[arg(long)]
    rho: Option<f64>,
    /// Scaling factor override.
    #[arg(long)]
    w: Option<i64>,
    /// Randomized Phase 2 (seeded).
    #[arg(long)]
    randomized: bool,
    /// Bucketed bounded kernel instead of the window scan.
    #[arg(long)]
    bucketed: bool,
    /// Entry bound for `--algo bounded`, slope bound for `--algo bd`.
    #[arg(long, default_value_t = 1)]
    bound: i64,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Structure {
    Monotone,
    Bounded,
}

#[derive(Args)]
struct MpqwArgs {
    #[arg(long)]
    a: PathBuf,
    #[arg(long)]
    b: PathBuf,
    /// Lines `i j s k1 .. ks`, 1-based.
    #[arg(long)]
    queries: PathBuf,
    #[arg(long, value_enum, default_value = "monotone")]
    structure: Structure,
    #[arg(long)]
    theta: Option<f64>,
    #[arg(long)]
    rho: Option<f64>,
    #[arg(long, default_value_t = 0.5)]
    sigma: f64,
    #[arg(long, default_value_t = 0.5)]
    lambda: f64,
    /// Exclusion budget; defaults to the largest excluded set in the file.
    #[arg(long)]
    budget: Option<usize>,
    /// Entry bound of A for the bounded structure.
    #[arg(long)]
    w: Option<i64>,
}

#[derive(Subcommand)]
enum RangeCmd {
    /// Offline queries on a static array.
    Batch {
        #[arg(long)]
        array: PathBuf,
        /// Lines `l r`, 1-based inclusive.
        #[arg(long)]
        queries: PathBuf,
        #[arg(long)]
        tau: Option<f64>,
    },
    /// Replay an insert/delete/query trace.
    Dynamic {
        #[arg(long)]
        ops: PathBuf,
        /// Initial contents; empty when omitted.
        #[arg(long)]
        array: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum SsrpCmd {
    /// Full replacement-path table by the baseline.
    Solve {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long, default_value_t = 1)]
        source: usize,
    },
    /// Subtree-of-pivot replacement distances.
    Subpath {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long, default_value_t = 1)]
        source: usize,
        #[arg(long)]
        pivot: usize,
        #[arg(long, default_value_t = 0.5)]
        zeta: f64,
        /// Use every vertex as a midpoint (exact).
        #[arg(long)]
        verify: bool,
        /// Sampling constant.
        #[arg(long, default_value_t = 10.0)]
        c: f64,
    },
    /// Emit the Hamiltonian gadget graph for a bounded-difference pair.
    ReduceBdmp {
        #[arg(long)]
        a: PathBuf,
        #[arg(long)]
        b: PathBuf,
    },
    /// Emit the replacement-path graph for a graph whose vertices 1..n form a Hamiltonian path.
    ReduceHam {
        #[arg(long)]
        graph: PathBuf,
    },
    /// Bounded-difference product computed only through replacement-path calls.
    Pipeline {
        #[arg(long)]
        a: PathBuf,
        #[arg(long)]
        b: PathBuf,
    },
}

#[derive(Args)]
struct GenArgs {
    /// monotone-matrix, bd-matrix, bounded-matrix, graph, mode-array, ops-trace
    #[arg(long)]
    kind: String,
    #[arg(long, default_value_t = 16)]
    n: usize,
    #[arg(long, default_value_t = 1.0)]
    beta: f64,
    #[arg(long, default_value_t = 1.0)]
    eta: f64,
    /// Weight or entry bound.
    #[arg(long, default_value_t = 2)]
    m: i64,
    #[arg(long, default_value_t = 0.2)]
    density: f64,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct BenchArgs {
    /// Comma-separated: naive, sweep, monotone, monotone-randomized, bounded.
    #[arg(long, default_value = "naive,monotone")]
    algos: String,
    #[arg(long, default_value = "64,128,256,512")]
    sizes: String,
    #[arg(long, default_value_t = 3)]
    reps: usize,
    /// Prepare instances in parallel (timing stays sequential).
    #[arg(long)]
    parallel_prep: bool,
    /// Print a text table instead of JSON.
    #[arg(long)]
    table: bool,
}

/// Write to stdout; a closed pipe ends the process quietly.
fn write_out(args: fmt::Arguments) {
    let mut out = std::io::stdout().lock();
    if let Err(e) = out.write_fmt(args) {
        if e.kind() == ErrorKind::BrokenPipe {
            std::process::exit(0);
        }
        panic!("writing to stdout: {e}");
    }
}

macro_rules! say {
    ($($t:tt)*) => { write_out(format_args!("{}\n", format_args!($($t)*))) };
}

macro_rules! say_raw {
    ($($t:tt)*) => { write_out(format_args!($($t)*)) };
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn matrix(path: &Path) -> Result<IntMatrix> {
    parse_matrix(&read(path)?).with_context(|| format!("parsing {}", path.display()))
}

fn emit(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            say_raw!("{text}");
            Ok(())
        }
    }
}

fn json_line(v: serde_json::Value) {
    say!("{}", serde_json::to_string(&v).expect("serializable"));
}

fn witness_line(w: Option<Witness>) -> String {
    match w {
        Some((k, v)) => format!("{} {v}", k + 1),
        None => "NONE".into(),
    }
}

fn multiply(cli: &Cli, omega: OmegaPreset, args: &MultiplyArgs) -> Result<()> {
    let a = matrix(&args.a)?;
    let b = matrix(&args.b)?;
    let mut report = None;
    let c = match args.algo {
        Algo::Naive => minplus_naive(&a, &b)?.0,
        Algo::Sweep => minplus_sweep(&a, &validate_monotone(&b)?)?,
        Algo::Bounded => {
            let cfg = if args.bucketed {
                BoundedKernelConfig::bucketed(args.bound, 0.5)
            } else {
                BoundedKernelConfig::window(args.bound)
            };
            bounded_minplus(&a, &b, &cfg)?
        }
        Algo::Monotone | Algo::Bd => {
            let (bm, offsets) = match args.algo {
                Algo::Bd => {
                    let (m, off) = bd_to_monotone(&b, args.bound)?;
                    (m, Some(off))
                }
                _ => (validate_monotone(&b)?, None),
            };
            let sh = shape(&a, &bm);
            let sched = default_params(sh.beta, sh.eta, omega);
            let mut cfg = MmpConfig::new(args.theta.unwrap_or(sched.theta), args.rho.unwrap_or(sched.rho));
            if args.bucketed {
                cfg = cfg.with_strategy(Strategy::Bucketed, sched.delta);
            }
            if let Some(w) = args.w {
                cfg = cfg.with_w(w);
            }
            if args.randomized {
                cfg = cfg.randomized(cli.seed);
            }
            let (c, rep) = monotone_minplus_report(&a, &bm, &cfg)?;
            report = Some(rep);
            match offsets {
                Some(off) => off.undo(&c),
                None => c,
            }
        }
    };
    let text = format_matrix(&c);
    if cli.json {
        if let Some(p) = &args.out {
            emit(Some(p), &text)?;
        }
        json_line(json!({ "rows": c.rows(), "cols": c.cols(), "matrix": text, "report": report }));
        Ok(())
    } else {
        emit(args.out.as_deref(), &text)
    }
}

fn mpqw(cli: &Cli, omega: OmegaPreset, args: &MpqwArgs) -> Result<()> {
    let a = matrix(&args.a)?;
    let b = matrix(&args.b)?;
    let queries = parse_queries(&read(&args.queries)?)?;
    let largest = queries.iter().map(|q| q.excluded.len()).max().unwrap_or(0);
    let answers: Vec<Option<Witness>> = match args.structure {
        Structure::Bounded => {
            let w = args.w.unwrap_or_else(|| a.max_abs_finite());
            let s = MpqwBounded::build(&a, &b, w, args.sigma, args.budget.unwrap_or(largest))?;
            queries.iter().map(|q| s.query(q.i, q.j, &sorted(&q.excluded))).collect::<mmp_core::Result<_>>()?
        }
        Structure::Monotone => {
            let bm = validate_monotone(&b)?;
            let sh = shape(&a, &bm);
            let sched = default_params(sh.beta, sh.eta, omega);
            let params = MpqwParams {
                theta: args.theta.unwrap_or(sched.theta),
                rho: args.rho.unwrap_or(sched.rho),
                sigma: args.sigma,
                lambda: args.lambda,
                budget: Some(args.budget.unwrap_or(largest)),
                w: None,
            };
            let s = MpqwMonotone::build(&a, &bm, &params)?;
            queries.iter().map(|q| s.query(q.i, q.j, &sorted(&q.excluded))).collect::<mmp_core::Result<_>>()?
        }
    };
    for w in answers {
        if cli.json {
            json_line(match w {
                Some((k, v)) => json!({ "k": k + 1, "value": v }),
                None => json!(null),
            });
        } else {
            say!("{}", witness_line(w));
        }
    }
    Ok(())
}

fn sorted(v: &[usize]) -> Vec<usize> {
    let mut v = v.to_vec();
    v.sort_unstable();
    v.dedup();
    v
}

fn rangemode(cli: &Cli, omega: OmegaPreset, cmd: &RangeCmd) -> Result<()> {
    match cmd {
        RangeCmd::Batch { array, queries, tau } => {
            let arr = ModeArray::new(parse_array(&read(array)?)?)?;
            let qs = parse_ranges(&read(queries)?)?;
            let cfg = BatchConfig::new(tau.unwrap_or(batch_default_params(omega).tau), omega);
            let (answers, report) = batch_range_mode_with(&arr, &qs, &cfg)?;
            if cli.json {
                json_line(json!({ "answers": answers, "report": report }));
            } else {
                for a in answers {
                    say!("{} {}", a.frequency, a.witness);
                }
            }
        }
        RangeCmd::Dynamic { ops, array } => {
            let initial = match array {
                Some(p) => parse_array(&read(p)?)?,
                None => Vec::new(),
            };
            let ops = parse_ops(&read(ops)?)?;
            let mut eng = DynamicRangeModeEngine::new(initial, DrmConfig::new(omega))?;
            let mut answers = Vec::new();
            for (idx, op) in ops.iter().enumerate() {
                let ans = eng.apply(op).with_context(|| format!("operation {}", idx + 1))?;
                if let Some(a) = ans {
                    if cli.json {
                        answers.push(a);
                    } else {
                        say!("{} {}", a.frequency, a.witness);
                    }
                }
            }
            if cli.json {
                json_line(json!({ "answers": answers, "stats": eng.stats() }));
            }
        }
    }
    Ok(())
}

fn vertex(v: usize, n: usize) -> Result<usize> {
    if v == 0 || v > n {
        bail!("vertex {v} outside 1..={n}");
    }
    Ok(v - 1)
}

fn ssrp(cli: &Cli, cmd: &SsrpCmd) -> Result<()> {
    match cmd {
        SsrpCmd::Solve { graph, source } => {
            let g = parse_graph(&read(graph)?)?;
            let table = ssrp_baseline(&g, vertex(*source, g.n())?)?;
            if cli.json {
                let rows: Vec<_> = table
                    .edges
                    .iter()
                    .zip(&table.dist)
                    .map(|(e, d)| json!({ "edge": [e.0 + 1, e.1 + 1], "dist": d.iter().map(|x| x.get()).collect::<Vec<_>>() }))
                    .collect();
                json_line(json!({ "source": source, "rows": rows }));
            } else {
                say_raw!("{}", table.format());
            }
        }
        SsrpCmd::Subpath { graph, source, pivot, zeta, verify, c } => {
            let g = parse_graph(&read(graph)?)?;
            let n = g.n();
            let inst = SubpathInstance::new(g, vertex(*source, n)?, vertex(*pivot, n)?, *zeta)?;
            let mut cfg = if *verify { SubpathConfig::verify() } else { SubpathConfig::sampled(cli.seed) };
            if !*verify {
                cfg.mode = HopLongMode::Sampled { c: *c, seed: cli.seed };
            }
            let res = subpath_solve(&inst, &cfg)?;
            if cli.json {
                json_line(json!({
                    "edges": res.edges.iter().map(|e| [e.0 + 1, e.1 + 1]).collect::<Vec<_>>(),
                    "targets": res.targets.iter().map(|v| v + 1).collect::<Vec<_>>(),
                    "dist": res.dist.iter().map(|r| r.iter().map(|x| x.get()).collect::<Vec<_>>()).collect::<Vec<_>>(),
                    "report": res.report,
                }));
            } else {
                for (i, e) in res.edges.iter().enumerate() {
                    for (c, v) in res.targets.iter().enumerate() {
                        say!("{} {} {} {}", e.0 + 1, e.1 + 1, v + 1, res.dist[i][c]);
                    }
                }
            }
        }
        SsrpCmd::ReduceBdmp { a, b } => {
            let gd = reduce_bdmp_to_hamapsp(&matrix(a)?, &matrix(b)?)?;
            if cli.json {
                json_line(json!({
                    "graph": format_graph(&gd.graph),
                    "a_nodes": gd.a_nodes.iter().map(|v| v + 1).collect::<Vec<_>>(),
                    "b_nodes": gd.b_nodes.iter().map(|v| v + 1).collect::<Vec<_>>(),
                    "row_min": gd.row_min,
                    "col_min": gd.col_min,
                }));
            } else {
                say_raw!("{}", format_graph(&gd.graph));
            }
        }
        SsrpCmd::ReduceHam { graph } => {
            let g = parse_graph(&read(graph)?)?;
            let order: Vec<usize> = (0..g.n()).collect();
            let h = reduce_hamapsp_to_ssrp(&g, &order)?;
            if cli.json {
                json_line(json!({
                    "graph": format_graph(&h.graph),
                    "source": h.source + 1,
                    "copy": h.copy.iter().map(|v| v + 1).collect::<Vec<_>>(),
                }));
            } else {
                say_raw!("{}", format_graph(&h.graph));
            }
        }
        SsrpCmd::Pipeline { a, b } => {
            let (c, stats) = bdmp_via_ssrp(&matrix(a)?, &matrix(b)?, ssrp_baseline)?;
            if cli.json {
                json_line(json!({
                    "matrix": format_matrix(&c),
                    "pieces": stats.pieces,
                    "padded": stats.padded,
                    "gadget_vertices": stats.gadget_vertices,
                    "ssrp_vertices": stats.ssrp_vertices,
                }));
            } else {
                say_raw!("{}", format_matrix(&c));
            }
        }
    }
    Ok(())
}

fn run(cli: &Cli) -> Result<ExitCode> {
    let omega = OmegaPreset::parse(&cli.omega_preset)?;
    match &cli.cmd {
        Cmd::Multiply(args) => multiply(cli, omega, args)?,
        Cmd::Mpqw(args) => mpqw(cli, omega, args)?,
        Cmd::Rangemode(cmd) => rangemode(cli, omega, cmd)?,
        Cmd::Ssrp(cmd) => ssrp(cli, cmd)?,
        Cmd::Gen(g) => {
            let spec = GeneratorSpec {
                kind: Kind::parse(&g.kind)?,
                n: g.n,
                beta: g.beta,
                eta: g.eta,
                m: g.m,
                density: g.density,
                seed: cli.seed,
            };
            emit(g.out.as_deref(), &generate(&spec)?.render())?;
        }
        Cmd::Bench(b) => {
            let algorithms = b.algos.split(',').map(|s| Algorithm::parse(s.trim())).collect::<mmp_core::Result<_>>()?;
            let sizes = b
                .sizes
                .split(',')
                .map(|s| s.trim().parse::<usize>().with_context(|| format!("bad size {s:?}")))
                .collect::<Result<_>>()?;
            let cfg = BenchConfig { algorithms, sizes, reps: b.reps, seed: cli.seed, omega, parallel_prep: b.parallel_prep };
            let report = bench(&cfg)?;
            if b.table {
                say_raw!("{}", format_table(&report));
            } else {
                say!("{}", serde_json::to_string_pretty(&report)?);
            }
        }
        Cmd::Selftest => {
            let summary = selftest::run(cli.seed, omega);
            if cli.json {
                json_line(serde_json::to_value(&summary)?);
            } else {
                say_raw!("{}", summary.render());
            }
            return Ok(if summary.failed() == 0 { ExitCode::SUCCESS } else { ExitCode::FAILURE });
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
