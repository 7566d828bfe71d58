mod commands;
mod report;
mod solver_arg;

use clap::{Args, Parser, Subcommand};
use fa_core::FaError;

/// Search and analysis over composition-sequence spaces: solve approximation
/// tasks with exhaustive, builder-driven, fixed-skeleton, or hypothesis-select
/// strategies, and analyze spaces with capacity, potential, growth, and VC
/// measures.
#[derive(Parser)]
#[command(name = "fa", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Worker threads for parallel scoring (0 = all cores)
    #[arg(long, global = true, default_value_t = 0)]
    workers: usize,

    /// Write the CSV report here instead of standard output
    #[arg(long, global = true)]
    output: Option<std::path::PathBuf>,

    /// Zero the wall_ms column so reports are byte-reproducible
    #[arg(long, global = true)]
    stable_output: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Run one solver on one (space, target) pair
    Solve(SolveArgs),
    /// Run several solvers on the same inputs and tabulate them
    Compare(CompareArgs),
    /// Sweep every total target on Z_K with the generator catalog, then ablate
    /// each generator; exits 0 only if the full catalog reaches zero error
    /// everywhere and every ablation misses at least one target
    Theorem2(Theorem2Args),
    /// Average two fixed sequences' zero-one error over all K^K targets and
    /// check the means agree exactly
    Nfl(NflArgs),
    /// Capacity, potential, growth, and VC analyzers
    Capacity(CapacityArgs),
}

#[derive(Args)]
struct SolveArgs {
    /// Space file, or a built-in catalog name
    #[arg(long)]
    space: String,
    /// Target file
    #[arg(long)]
    target: String,
    /// Solver: ml:SKELETON | asp | a-asp:STRAT[:ARG..] | pac
    #[arg(long)]
    solver: String,
    /// Length bound for the expanded space
    #[arg(short = 'n', default_value_t = 1)]
    n: usize,
    /// Metric: abs | sq | 01
    #[arg(long, default_value = "abs")]
    metric: String,
    /// Seed for randomized builders
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Ceiling on scored sequences (overrides FA_BUDGET_CEILING)
    #[arg(long)]
    budget: Option<u128>,
    /// Score builder steps on a half-sigma subsample
    #[arg(long)]
    history_aware: bool,
    /// Apply the signed literal fallback for undefined points
    #[arg(long)]
    literal_fallback: bool,
}

#[derive(Args)]
struct CompareArgs {
    #[arg(long)]
    space: String,
    #[arg(long)]
    target: String,
    /// Solver spec, repeat at least twice
    #[arg(long = "solver", required = true)]
    solvers: Vec<String>,
    #[arg(short = 'n', default_value_t = 1)]
    n: usize,
    #[arg(long, default_value = "abs")]
    metric: String,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    budget: Option<u128>,
    #[arg(long)]
    history_aware: bool,
    #[arg(long)]
    literal_fallback: bool,
}

#[derive(Args)]
struct Theorem2Args {
    /// Carrier size, 2 or 3
    #[arg(long)]
    k: u64,
    /// Length bound; defaults to the closure fixpoint depth, cached in
    /// .fa_fixpoint_cache.json next to the working directory
    #[arg(short = 'n')]
    n: Option<usize>,
    #[arg(long)]
    budget: Option<u128>,
}

#[derive(Args)]
struct NflArgs {
    /// Carrier size, 2 or 3
    #[arg(long)]
    k: u64,
    /// First sequence, e.g. cycle[0]·swap01[0] (defaults per catalog)
    #[arg(long)]
    seq_a: Option<String>,
    /// Second sequence
    #[arg(long)]
    seq_b: Option<String>,
    /// Space file or catalog name; defaults to the tK generator catalog
    #[arg(long)]
    space: Option<String>,
}

#[derive(Args)]
struct CapacityArgs {
    #[arg(long)]
    space: String,
    /// Capacity of this skeleton, e.g. inc·inc
    #[arg(long)]
    skeleton: Option<String>,
    /// Potential of the expanded space at the length bound
    #[arg(long)]
    potential: bool,
    /// Realized-table growth for length bounds 1..=n
    #[arg(long)]
    growth: bool,
    /// Brute-force VC dimension at the length bound
    #[arg(long)]
    vc: bool,
    #[arg(short = 'n', default_value_t = 1)]
    n: usize,
    /// Use the collapsed capacity/potential form
    #[arg(long)]
    collapsed: bool,
    /// Domain points for --vc, comma-separated (default: the full carrier)
    #[arg(long)]
    points: Option<String>,
    /// Largest shattering size to try (default: all points)
    #[arg(long)]
    max_d: Option<usize>,
    #[arg(long)]
    budget: Option<u128>,
}

fn exit_code(err: &FaError) -> i32 {
    match err {
        FaError::BudgetExceeded { .. } => 3,
        FaError::UnsupportedOnReal(_) => 4,
        _ => 2,
    }
}

fn main() {
    let cli = Cli::parse();
    if cli.workers > 0 {
        rayon::ThreadPoolBuilder::new()
            .num_threads(cli.workers)
            .build_global()
            .expect("the global thread pool is built once");
    }
    let ctx = commands::Context {
        output: cli.output.clone(),
        stable_output: cli.stable_output,
    };
    let result = match &cli.command {
        Command::Solve(args) => commands::solve(args, &ctx),
        Command::Compare(args) => commands::compare(args, &ctx),
        Command::Theorem2(args) => commands::theorem2(args, &ctx),
        Command::Nfl(args) => commands::nfl(args, &ctx),
        Command::Capacity(args) => commands::capacity(args, &ctx),
    };
    match result {
        Ok(code) => std::process::exit(code),
        Err(err) => {
            eprintln!("error: {err}");
            std::process::exit(exit_code(&err));
        }
    }
}
