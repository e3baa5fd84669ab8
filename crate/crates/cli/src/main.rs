mod commands;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use netinverse::evolve::{SolverConfig, DEFAULT_SEED};

/// Synthesize and check graphs against the (minimum degree, I') sufficiency
/// condition for fractional k-factors.
#[derive(Debug, Parser)]
#[command(name = "netinverse", version)]
pub struct Cli {
    /// Worker threads for parallel stages (default: all cores). Results do
    /// not depend on this value.
    #[arg(long, global = true)]
    pub threads: Option<usize>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run the evolutionary solver and write the run manifest and graphs.
    Solve(SolveArgs),
    /// Print exact I, I', δ and minimizers of a graph file.
    Exact(ExactArgs),
    /// Exhaustively compute per-δ optima at small orders.
    Enumerate(EnumerateArgs),
    /// Print a member of a named graph family.
    Family(FamilyArgs),
    /// Check the sufficiency condition and the fractional factor of a graph.
    Certify(CertifyArgs),
    /// Check minimizer sizes of I and I' on every small graph.
    Explore(ExploreArgs),
    /// Time the solver against exhaustive enumeration.
    Benchmark(BenchmarkArgs),
}

#[derive(Debug, Args)]
pub struct SolverArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub k: u32,
    /// Population size N.
    #[arg(long, default_value_t = 10)]
    pub population: usize,
    /// Generations T_max.
    #[arg(long, default_value_t = 100)]
    pub generations: usize,
    /// Per-bit mutation probability.
    #[arg(long, default_value_t = 0.3)]
    pub mutation_rate: f64,
    /// Share of the first population seeded from the counterexample family.
    #[arg(long, default_value_t = 0.5)]
    pub counterexample_fraction: f64,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    /// Re-check screened candidates exactly up to this order.
    #[arg(long, default_value_t = netinverse::evolve::DEFAULT_EXACT_VERIFY_LIMIT)]
    pub exact_limit: usize,
}

impl SolverArgs {
    pub fn config(&self) -> SolverConfig {
        SolverConfig {
            population: self.population,
            generations: self.generations,
            mutation_rate: self.mutation_rate,
            counterexample_fraction: self.counterexample_fraction,
            seed: self.seed,
            exact_verify_limit: self.exact_limit,
            ..SolverConfig::new(self.n, self.k)
        }
    }
}

#[derive(Debug, Args)]
pub struct SolveArgs {
    #[command(flatten)]
    pub solver: SolverArgs,
    /// Output directory.
    #[arg(long, default_value = "netinverse-out")]
    pub out: std::path::PathBuf,
    /// Record wall-clock timings in the manifest.
    #[arg(long)]
    pub timings: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
    Dot,
}

#[derive(Debug, Args)]
pub struct ExactArgs {
    /// Graph JSON file; `-` or absent reads stdin.
    pub file: Option<std::path::PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Largest order computed exactly.
    #[arg(long, default_value_t = netinverse::toughness::DEFAULT_EXACT_LIMIT)]
    pub limit: usize,
}

#[derive(Debug, Args)]
pub struct EnumerateArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub k: u32,
    /// Largest order allowed; scans 2^(n(n-1)/2) graphs, at most 8.
    #[arg(long, default_value_t = netinverse::oracle::DEFAULT_ENUMERATION_CAP)]
    pub cap: usize,
    /// Override the lower end of the δ range.
    #[arg(long, requires = "delta_hi")]
    pub delta_lo: Option<u32>,
    /// Override the upper end of the δ range.
    #[arg(long, requires = "delta_lo")]
    pub delta_hi: Option<u32>,
    /// Scan one graph per isomorphism class instead of every encoding.
    #[arg(long)]
    pub canonical: bool,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Also write the result to this file.
    #[arg(long)]
    pub out: Option<std::path::PathBuf>,
    #[arg(long)]
    pub timings: bool,
}

#[derive(Debug, Args)]
pub struct FamilyArgs {
    #[command(subcommand)]
    pub kind: FamilyKind,
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    pub format: Format,
}

#[derive(Debug, Clone, Copy, Subcommand)]
pub enum FamilyKind {
    Complete {
        #[arg(long)]
        n: usize,
    },
    Empty {
        #[arg(long)]
        n: usize,
    },
    /// K_{1,n-1}.
    Star {
        #[arg(long)]
        n: usize,
    },
    Cycle {
        #[arg(long)]
        n: usize,
    },
    DisjointCliques {
        #[arg(long)]
        copies: usize,
        #[arg(long)]
        size: usize,
    },
    /// K_c joined with d isolated vertices.
    CliqueJoinIndependent {
        #[arg(long)]
        c: usize,
        #[arg(long)]
        d: usize,
    },
    /// K_c joined with d+1 isolated vertices.
    CliqueJoinIndependentPlusOne {
        #[arg(long)]
        c: usize,
        #[arg(long)]
        d: usize,
    },
    /// K_{l-1} joined with l copies of K_k.
    Extremal {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        l: usize,
    },
    /// K_{t+1} joined with t+2 copies of K_k.
    Counterexample {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        t: usize,
    },
}

#[derive(Debug, Args)]
pub struct CertifyArgs {
    /// Graph JSON file; `-` or absent reads stdin.
    pub file: Option<std::path::PathBuf>,
    /// Check the sufficiency condition and a fractional k-factor.
    #[arg(long, conflicts_with_all = ["a", "b"], required_unless_present_all = ["a", "b"])]
    pub k: Option<u32>,
    /// Lower degree bound of a fractional [a,b]-factor.
    #[arg(long, requires = "b")]
    pub a: Option<u32>,
    /// Upper degree bound of a fractional [a,b]-factor.
    #[arg(long, requires = "a")]
    pub b: Option<u32>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct ExploreArgs {
    #[arg(long)]
    pub n_max: usize,
    /// Orders up to this one are covered by every isomorphism class.
    #[arg(long, default_value_t = 7)]
    pub exhaustive_up_to: usize,
    /// Random graphs per order above the exhaustive range.
    #[arg(long, default_value_t = 2000)]
    pub samples: usize,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    #[arg(long)]
    pub out: Option<std::path::PathBuf>,
}

#[derive(Debug, Args)]
pub struct BenchmarkArgs {
    #[command(flatten)]
    pub solver: SolverArgs,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Also write the comparison as JSON to this file.
    #[arg(long)]
    pub out: Option<std::path::PathBuf>,
    /// Include wall-clock figures in the file written by `--out`.
    #[arg(long)]
    pub timings: bool,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    if let Some(threads) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(threads).build_global() {
            eprintln!("error: cannot configure {threads} threads: {e}");
            return ExitCode::from(1);
        }
    }
    match commands::run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
