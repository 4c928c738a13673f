//! PACE-style command-line frontend.
//!
//! `tdf [solve] [input.gr]` reads a graph (stdin when no path is given),
//! runs the chosen heuristic under the time budget, and writes a `.tree`
//! decomposition to stdout or `--output`. On SIGTERM or SIGINT the best
//! decomposition found so far is written and the process exits 0.
//! `tdf verify --graph g.gr --tree t.tree` checks a claimed decomposition.

use std::fs::File;
use std::io::{self, BufReader, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::atomic::{AtomicBool, Ordering as AtomicOrdering};
use std::sync::Arc;
use std::time::{Duration, Instant};

use anyhow::{anyhow, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

use tdf::decomposition::{verify_decomposition, Decomposition, Ordering};
use tdf::graph::Graph;
use tdf::greedy::{
    greedy_build, greedy_build_lookahead, greedy_eliminate, greedy_superfast, ScoreParams,
};
use tdf::solver::{solve_with, Budget, SharedIncumbent, SolveConfig};
use tdf::tree_io;
use tdf::{build_from_ordering, VertexId};

#[derive(Parser)]
#[command(
    name = "tdf",
    about = "Heuristic treedepth decomposition solver",
    args_conflicts_with_subcommands = true
)]
struct Cli {
    #[command(subcommand)]
    command: Option<Command>,
    #[command(flatten)]
    solve: SolveArgs,
}

#[derive(Subcommand)]
enum Command {
    /// Compute a treedepth decomposition (the default subcommand).
    Solve(SolveArgs),
    /// Check a .tree decomposition against a .gr graph.
    Verify(VerifyArgs),
}

#[derive(Args)]
struct SolveArgs {
    /// Input .gr file; standard input when omitted.
    input: Option<PathBuf>,
    /// Wall-clock limit in seconds; 0 runs until interrupted.
    #[arg(long, default_value_t = 0.0)]
    time_limit: f64,
    /// Random seed. The TDF_SEED environment variable overrides this.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Heuristic to run.
    #[arg(long, value_enum, default_value_t = Mode::Full)]
    mode: Mode,
    /// Balance goal for the divide & conquer phase, e.g. 1/5 or 0.2.
    #[arg(long, default_value = "1/5")]
    balance: String,
    /// Lookahead width; defaults to 64 for superfast and 1024 for
    /// build-lookahead.
    #[arg(long)]
    ell: Option<usize>,
    /// Write the .tree output here instead of standard output.
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    /// The .gr graph file.
    #[arg(long)]
    graph: PathBuf,
    /// The .tree decomposition file.
    #[arg(long)]
    tree: PathBuf,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Mode {
    /// Greedy passes plus balanced-cut divide & conquer.
    Full,
    /// Building process with a small lookahead window, no heap.
    Superfast,
    /// Greedy by building.
    Build,
    /// Greedy by building with exact top-of-heap re-evaluation.
    BuildLookahead,
    /// Greedy by elimination.
    Eliminate,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Some(Command::Verify(args)) => run_verify(&args),
        Some(Command::Solve(args)) => run_solve(args),
        None => run_solve(cli.solve),
    }
}

fn read_graph(path: Option<&Path>) -> Result<Graph> {
    let g = match path {
        Some(p) => {
            let f = File::open(p).with_context(|| format!("opening {}", p.display()))?;
            Graph::parse_gr(BufReader::new(f))?
        }
        None => {
            let stdin = io::stdin();
            Graph::parse_gr(stdin.lock())?
        }
    };
    Ok(g)
}

fn parse_balance(text: &str) -> Result<(u32, u32)> {
    if let Some((num, den)) = text.split_once('/') {
        let num: u32 = num.trim().parse().context("balance numerator")?;
        let den: u32 = den.trim().parse().context("balance denominator")?;
        if num == 0 || den == 0 || 2 * num > den {
            return Err(anyhow!("balance must lie in (0, 1/2]"));
        }
        return Ok((num, den));
    }
    let f: f64 = text.parse().context("balance fraction")?;
    if !(f > 0.0 && f <= 0.5) {
        return Err(anyhow!("balance must lie in (0, 1/2]"));
    }
    Ok(((f * 1000.0).round() as u32, 1000))
}

fn seed_from_env(flag: u64) -> Result<u64> {
    match std::env::var("TDF_SEED") {
        Ok(text) => text
            .trim()
            .parse()
            .map_err(|_| anyhow!("TDF_SEED must be an unsigned integer, got {text:?}")),
        Err(_) => Ok(flag),
    }
}

fn run_solve(args: SolveArgs) -> ExitCode {
    match try_solve(args) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("c error: {err:#}");
            ExitCode::from(2)
        }
    }
}

fn try_solve(args: SolveArgs) -> Result<ExitCode> {
    let started = Instant::now();
    let seed = seed_from_env(args.seed)?;
    let g = read_graph(args.input.as_deref())?;
    eprintln!(
        "c graph: {} vertices, {} edges",
        g.vertex_count(),
        g.edge_count()
    );

    let stop = Arc::new(AtomicBool::new(false));
    for sig in [signal_hook::consts::SIGTERM, signal_hook::consts::SIGINT] {
        signal_hook::flag::register(sig, Arc::clone(&stop)).context("installing signal handler")?;
    }

    let mut budget = Budget::unlimited(seed).with_stop_flag(Arc::clone(&stop));
    if args.time_limit > 0.0 {
        budget = budget.with_deadline(Duration::from_secs_f64(args.time_limit));
    }

    let decomposition = match args.mode {
        Mode::Full => {
            let mut config = SolveConfig::default();
            let goal = parse_balance(&args.balance)?;
            config.balance_goals = dedup_goals(goal, &config.balance_goals);
            let shared = SharedIncumbent::new();
            let progress = spawn_progress_reporter(&shared, &stop);
            let d = solve_with(&g, &budget, &config, &shared);
            stop.store(true, AtomicOrdering::Relaxed);
            let _ = progress.join();
            // an interrupt may have landed before any pass finished
            match shared.snapshot() {
                Some(best) if best.depth() <= d.depth() => best,
                _ => d,
            }
        }
        Mode::Superfast => {
            let order = descending_degree(&g);
            greedy_superfast(&g, args.ell.unwrap_or(64), &order).decomposition
        }
        Mode::Build => run_or_identity(&g, greedy_build(&g, ScoreParams::DEFAULT, &zeros(&g), None)),
        Mode::BuildLookahead => run_or_identity(
            &g,
            greedy_build_lookahead(&g, ScoreParams::DEFAULT, &zeros(&g), args.ell.unwrap_or(1024), None),
        ),
        Mode::Eliminate => {
            run_or_identity(&g, greedy_eliminate(&g, ScoreParams::DEFAULT, &zeros(&g), None))
        }
    };

    if let Err(violation) = verify_decomposition(&g, &decomposition) {
        eprintln!("c internal error: produced an invalid decomposition: {violation}");
        return Ok(ExitCode::from(3));
    }

    let text = tree_io::tree_to_string(&decomposition);
    match &args.output {
        Some(path) => {
            let mut f = File::create(path).with_context(|| format!("creating {}", path.display()))?;
            f.write_all(text.as_bytes())?;
            f.flush()?;
        }
        None => {
            let stdout = io::stdout();
            let mut lock = stdout.lock();
            lock.write_all(text.as_bytes())?;
            lock.flush()?;
        }
    }
    eprintln!(
        "c depth {} in {:.2}s",
        decomposition.depth(),
        started.elapsed().as_secs_f64()
    );
    Ok(ExitCode::SUCCESS)
}

fn zeros(g: &Graph) -> Vec<u32> {
    vec![0; g.vertex_count()]
}

fn descending_degree(g: &Graph) -> Ordering {
    let mut seq: Vec<VertexId> = g.vertices().collect();
    seq.sort_unstable_by_key(|&v| (std::cmp::Reverse(g.degree(v)), v));
    Ordering::new(seq)
}

fn run_or_identity(
    g: &Graph,
    run: Result<tdf::greedy::GreedyResult, tdf::greedy::Abandoned>,
) -> Decomposition {
    match run {
        Ok(r) => r.decomposition,
        // only possible under a bad cutoff, which single modes do not set
        Err(_) => build_from_ordering(g, &Ordering::identity(g.vertex_count())),
    }
}

fn dedup_goals(first: (u32, u32), defaults: &[(u32, u32)]) -> Vec<(u32, u32)> {
    let mut goals = vec![first];
    for &(n, d) in defaults {
        if n as u64 * first.1 as u64 != first.0 as u64 * d as u64 {
            goals.push((n, d));
        }
    }
    goals
}

/// Prints incumbent depth changes to the diagnostic stream until the stop
/// flag is raised.
fn spawn_progress_reporter(
    shared: &SharedIncumbent,
    stop: &Arc<AtomicBool>,
) -> std::thread::JoinHandle<()> {
    let shared = shared.clone();
    let stop = Arc::clone(stop);
    std::thread::spawn(move || {
        let mut last: Option<u32> = None;
        while !stop.load(AtomicOrdering::Relaxed) {
            if let Some(d) = shared.snapshot() {
                if last != Some(d.depth()) {
                    eprintln!("c best depth so far: {}", d.depth());
                    last = Some(d.depth());
                }
            }
            std::thread::sleep(Duration::from_millis(100));
        }
    })
}

fn run_verify(args: &VerifyArgs) -> ExitCode {
    match try_verify(args) {
        Ok(None) => {
            eprintln!("c ok");
            ExitCode::SUCCESS
        }
        Ok(Some(violation)) => {
            eprintln!("c invalid: {violation}");
            ExitCode::from(1)
        }
        Err(err) => {
            eprintln!("c error: {err:#}");
            ExitCode::from(2)
        }
    }
}

fn try_verify(args: &VerifyArgs) -> Result<Option<tdf::Violation>> {
    let g = read_graph(Some(&args.graph))?;
    let f = File::open(&args.tree).with_context(|| format!("opening {}", args.tree.display()))?;
    let claimed = tree_io::parse_tree(BufReader::new(f))?;
    if claimed.len() != g.vertex_count() {
        return Err(anyhow!(
            "tree has {} vertices, graph has {}",
            claimed.len(),
            g.vertex_count()
        ));
    }
    Ok(verify_decomposition(&g, &claimed).err())
}
