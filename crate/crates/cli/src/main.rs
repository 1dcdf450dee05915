//! cergen: exact sampling of connected Erdős–Rényi graphs.
//!
//! Exit codes: 0 on success, 1 when a verification suite fails its
//! tolerance, 2 on bad arguments.

use cergen_cli::commands::{self, CmdError};
use cergen_cli::format::OutputFormat;
use clap::{Args, Parser, Subcommand};
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "cergen",
    version,
    about = "Exact sampler for connected Erdős–Rényi graphs"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate one connected graph
    #[command(subcommand)]
    Gen(GenCommand),
    /// Run a statistical or analytic check; emits a CSV report
    #[command(subcommand)]
    Verify(VerifyCommand),
    /// Emit plot-ready summary statistics as CSV
    #[command(subcommand)]
    Stats(StatsCommand),
    /// Time graph generation across sizes; emits CSV
    Bench(BenchArgs),
}

#[derive(Subcommand)]
enum GenCommand {
    /// Sample G(n, p) conditioned on connectivity
    Gnp(GenGnpArgs),
    /// Sample uniformly among connected graphs with exactly m edges
    Gnm(GenGnmArgs),
}

#[derive(Args)]
struct GenGnpArgs {
    /// Number of vertices
    #[arg(long)]
    n: u32,
    /// Edge probability in (0, 1]
    #[arg(long, required_unless_present = "c", conflicts_with = "c")]
    p: Option<f64>,
    /// Density parameter; shorthand for p = c/n
    #[arg(long)]
    c: Option<f64>,
    /// RNG seed; drawn from OS entropy and printed to stderr if omitted
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long, value_enum, default_value_t = OutputFormat::Edgelist)]
    format: OutputFormat,
    /// Output path; stdout if omitted
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct GenGnmArgs {
    /// Number of vertices
    #[arg(long)]
    n: u32,
    /// Number of edges, between n-1 and n(n-1)/2
    #[arg(long)]
    m: u64,
    /// RNG seed; drawn from OS entropy and printed to stderr if omitted
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long, value_enum, default_value_t = OutputFormat::Edgelist)]
    format: OutputFormat,
    /// Output path; stdout if omitted
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum VerifyCommand {
    /// Total variation distance between sampled and exact G(n, p) laws
    GnpExact {
        #[arg(long, default_value_t = 4)]
        n: u32,
        #[arg(long, default_value_t = 0.5)]
        p: f64,
        #[arg(long, default_value_t = 1_000_000)]
        samples: u64,
        #[arg(long)]
        seed: Option<u64>,
        /// Worker threads; sample collection shards deterministically
        #[arg(long, default_value_t = 1)]
        jobs: u32,
    },
    /// Chi-square uniformity of G(n, m) over the enumerated support
    GnmUniform {
        #[arg(long, default_value_t = 4)]
        n: u32,
        #[arg(long, default_value_t = 4)]
        m: u64,
        #[arg(long, default_value_t = 1_000_000)]
        samples: u64,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, default_value_t = 1)]
        jobs: u32,
    },
    /// Walk-positivity factorization of the connectivity probability
    #[command(name = "lemma1")]
    Lemma1 {
        #[arg(long, default_value_t = 30)]
        n: u32,
        #[arg(long, default_value_t = 0.1)]
        p: f64,
    },
    /// Sampled degree frequencies against the size-biased Poisson law
    Degree {
        #[arg(long, default_value_t = 100)]
        n: u32,
        #[arg(long, default_value_t = 2.0)]
        c: f64,
        /// Number of vertex-degree observations
        #[arg(long, default_value_t = 100_000)]
        samples: u64,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, default_value_t = 1)]
        jobs: u32,
    },
    /// Trajectory acceptance rate against its sparse-regime limit
    Acceptance {
        #[arg(long, default_value_t = 10_000)]
        n: u32,
        #[arg(long, default_value_t = 3.0)]
        c: f64,
        #[arg(long, default_value_t = 10_000)]
        trials: u64,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, default_value_t = 1)]
        jobs: u32,
    },
}

#[derive(Subcommand)]
enum StatsCommand {
    /// Degree histogram with the theoretical curve
    Degree {
        #[arg(long, default_value_t = 100)]
        n: u32,
        #[arg(long, default_value_t = 2.0)]
        c: f64,
        /// Number of vertex-degree observations
        #[arg(long, default_value_t = 100_000)]
        samples: u64,
        /// Largest degree reported on its own row
        #[arg(long, default_value_t = 15)]
        kmax: usize,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, default_value_t = 1)]
        jobs: u32,
    },
    /// Exploration walk traces with the mean curve
    Walk {
        #[arg(long, default_value_t = 100)]
        n: u32,
        #[arg(long, default_value_t = 3.0)]
        c: f64,
        #[arg(long, default_value_t = 5)]
        traces: u32,
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Edge-count histograms: density solved for the target vs. plugged in naively
    Edges {
        #[arg(long, default_value_t = 300)]
        n: u32,
        /// Target edge count
        #[arg(long, default_value_t = 450)]
        m: u64,
        #[arg(long, default_value_t = 50_000)]
        samples: u64,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, default_value_t = 1)]
        jobs: u32,
    },
}

#[derive(Args)]
struct BenchArgs {
    /// Comma-separated vertex counts
    #[arg(long, value_delimiter = ',', default_value = "10000,100000")]
    sizes: Vec<u64>,
    /// Density parameter, p = c/n
    #[arg(long, default_value_t = 3.0)]
    c: f64,
    /// Graphs generated per size
    #[arg(long, default_value_t = 5)]
    reps: u64,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long, default_value_t = 1)]
    jobs: u32,
}

fn run(cli: Cli) -> commands::CmdResult {
    match cli.command {
        Command::Gen(GenCommand::Gnp(args)) => commands::gen_gnp(
            args.n,
            args.p,
            args.c,
            args.seed,
            args.format,
            args.out.as_deref(),
        ),
        Command::Gen(GenCommand::Gnm(args)) => {
            commands::gen_gnm(args.n, args.m, args.seed, args.format, args.out.as_deref())
        }
        Command::Verify(verify) => match verify {
            VerifyCommand::GnpExact {
                n,
                p,
                samples,
                seed,
                jobs,
            } => commands::verify_gnp_exact(n, p, samples, commands::resolve_seed(seed), jobs),
            VerifyCommand::GnmUniform {
                n,
                m,
                samples,
                seed,
                jobs,
            } => commands::verify_gnm_uniform(n, m, samples, commands::resolve_seed(seed), jobs),
            VerifyCommand::Lemma1 { n, p } => commands::verify_lemma1(n, p),
            VerifyCommand::Degree {
                n,
                c,
                samples,
                seed,
                jobs,
            } => commands::verify_degree(n, c, samples, commands::resolve_seed(seed), jobs),
            VerifyCommand::Acceptance {
                n,
                c,
                trials,
                seed,
                jobs,
            } => commands::verify_acceptance(n, c, trials, commands::resolve_seed(seed), jobs),
        },
        Command::Stats(stats) => match stats {
            StatsCommand::Degree {
                n,
                c,
                samples,
                kmax,
                seed,
                jobs,
            } => commands::stats_degree(n, c, samples, kmax, commands::resolve_seed(seed), jobs),
            StatsCommand::Walk { n, c, traces, seed } => {
                commands::stats_walk(n, c, traces, commands::resolve_seed(seed))
            }
            StatsCommand::Edges {
                n,
                m,
                samples,
                seed,
                jobs,
            } => commands::stats_edges(n, m, samples, commands::resolve_seed(seed), jobs),
        },
        Command::Bench(args) => commands::bench(
            &args.sizes,
            args.c,
            args.reps,
            commands::resolve_seed(args.seed),
            args.jobs,
        ),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(CmdError::Usage(message)) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
        Err(CmdError::Verification) => ExitCode::from(1),
    }
}
