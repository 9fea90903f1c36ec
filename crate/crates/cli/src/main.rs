use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

mod commands;
mod mu;
mod store;
mod verify;

use store::STORE_ENV;

#[derive(Parser)]
#[command(
    name = "infbin",
    version,
    about = "Infinite-bin model: word classification, certified speed brackets and simulation"
)]
struct Cli {
    /// Seed of every random stream.
    #[arg(long, global = true, default_value_t = 1)]
    seed: u64,
    /// Worker threads (outputs do not depend on it).
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Directory receiving the output files; standard output otherwise.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Word store (JSON lines).
    #[arg(long, global = true, env = STORE_ENV)]
    store: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Classify a word such as 2,3,2,2.
    Classify {
        word: String,
        #[arg(long)]
        json: bool,
    },
    /// Certified bracket on the speed of IBM(μ).
    Speed {
        /// geom:p, unif:k, dirac:k or finite:p1,p2,...
        mu: String,
        #[arg(long = "len", default_value_t = 12)]
        len: usize,
        /// Largest letter explored [default: the support bound, at most 12].
        #[arg(long)]
        max_letter: Option<u32>,
        #[arg(long, default_value_t = infbin::series::DEFAULT_MIN_WEIGHT)]
        min_weight: f64,
        /// Append the minimal words found to the word store.
        #[arg(long)]
        store_leaves: bool,
        /// Forward steps used when the series does not apply.
        #[arg(long, default_value_t = 100_000)]
        mc_steps: u64,
    },
    /// Brackets on C(p) over a grid, as CSV.
    Curve {
        /// start:stop:step or a comma list.
        #[arg(long, default_value = "0.1:1.0:0.1")]
        grid: String,
        #[arg(long = "len", default_value_t = 10)]
        len: usize,
        #[arg(long, default_value_t = 10)]
        max_letter: u32,
        #[arg(long, default_value_t = 1e-8)]
        min_weight: f64,
    },
    /// Forward Monte Carlo of IBM(μ).
    Simulate {
        mu: String,
        #[arg(long, default_value_t = 1_000_000)]
        steps: u64,
        #[arg(long, default_value_t = 1)]
        replicas: u64,
        /// Start window, left to right, with the front at 0 [default: 1].
        #[arg(long)]
        start: Option<String>,
        /// Also follow the K-scenery against the stationary chain.
        #[arg(long, value_name = "K")]
        coupling: Option<usize>,
    },
    /// Perfect samples of the stationary front scenery.
    Perfect {
        mu: String,
        #[arg(short = 'K', default_value_t = 1)]
        k: usize,
        #[arg(long, default_value_t = 1000)]
        replicas: u64,
        #[arg(long, default_value_t = infbin::sim::DEFAULT_MAX_HORIZON)]
        max_horizon: u64,
    },
    /// Longest paths in Barak-Erdős graphs, as CSV.
    Begraph {
        /// Edge probabilities, comma separated.
        #[arg(long, default_value = "0.5")]
        p: String,
        #[arg(long, default_value_t = 100_000)]
        n: u64,
        #[arg(long, default_value_t = 50)]
        replicas: u64,
    },
    /// Cross-check the estimators on a fixed panel of laws.
    Verify {
        #[arg(long, default_value = "default")]
        panel: String,
        /// Scales the Monte Carlo sizes; 60s is the reference.
        #[arg(long, default_value = "60s")]
        budget: String,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    if let Some(n) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
        {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
    }
    match commands::run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(commands::exit_code(&e))
        }
    }
}
