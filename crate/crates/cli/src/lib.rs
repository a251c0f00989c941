//! `hsp-lab`: reproducible hidden subgroup experiments with JSON/CSV reports.

pub mod accept;
pub mod commands;
pub mod report;

use std::path::PathBuf;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use group_core::HspError;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub use report::{Format, Report, Table};

pub type Rng = ChaCha8Rng;

pub fn rng_for(seed: u64) -> Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

#[derive(Debug, Parser)]
#[command(name = "hsp-lab", version, about = "Hidden subgroup problem experiments")]
pub struct Cli {
    #[arg(long, global = true, default_value_t = 1)]
    pub seed: u64,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Record wall-clock time in the report (reports are then no longer byte-reproducible).
    #[arg(long, global = true)]
    pub timing: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Weak,
    Strong,
    Joint,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum BasisChoice {
    Identity,
    Hadamard,
    Random,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Experiment {
    Parity,
    Window,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Solver {
    Exhaustive,
    External,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum KernelChoice {
    Snf,
    Hsp,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Weak, strong or joint Fourier sampling distribution of a coset state.
    Fs {
        #[arg(long)]
        group: String,
        /// Generators in natural coordinates, e.g. "[(1,1)]".
        #[arg(long)]
        subgroup: String,
        #[arg(long, value_enum, default_value_t = Mode::Weak)]
        mode: Mode,
        /// Basis for the 2-dimensional dihedral irreps.
        #[arg(long, value_enum, default_value_t = BasisChoice::Identity)]
        basis: BasisChoice,
        /// Empirical draws to compare against the exact law.
        #[arg(long, default_value_t = 0)]
        samples: usize,
    },
    /// Abelian hidden subgroup by character sampling.
    SolveAbelian {
        #[arg(long)]
        group: String,
        #[arg(long)]
        subgroup: String,
        #[arg(long)]
        trials: Option<usize>,
        #[arg(long, default_value_t = 1)]
        runs: usize,
    },
    /// Simon's problem on n bits.
    Simon {
        #[arg(long)]
        n: u32,
        /// Hidden string; drawn from the seed when absent.
        #[arg(long)]
        s: Option<u64>,
        #[arg(long, default_value_t = 1)]
        runs: usize,
    },
    /// Factoring through period finding.
    Shor {
        #[arg(long = "N")]
        n: u64,
        #[arg(long, default_value_t = 1)]
        runs: usize,
    },
    /// Discrete logarithm in Z_p^*.
    Dlog {
        #[arg(long)]
        p: u64,
        /// Generator; the smallest one when absent.
        #[arg(long)]
        g: Option<u64>,
        /// Target; a random power of g when absent.
        #[arg(long)]
        x: Option<u64>,
        #[arg(long, default_value_t = 1)]
        runs: usize,
    },
    /// Normal hidden subgroup by intersecting kernels of weakly sampled irreps.
    NormalHsp {
        #[arg(long)]
        group: String,
        #[arg(long)]
        subgroup: String,
        #[arg(long, default_value_t = 4.0)]
        c: f64,
        #[arg(long, default_value_t = 1)]
        runs: usize,
    },
    /// Ettinger-Hoyer slope recovery over D_N.
    EhSolve {
        #[arg(long = "N")]
        n: usize,
        /// Slope; drawn from the seed when absent.
        #[arg(long)]
        d: Option<usize>,
        /// Samples; 16 ceil(log2 N) when absent.
        #[arg(long)]
        m: Option<usize>,
        #[arg(long, default_value_t = 1)]
        runs: usize,
    },
    /// Kuperberg sieve over D_{2^n}.
    Kuperberg {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        d: Option<usize>,
        #[arg(long, default_value_t = 10_000_000)]
        budget: u64,
        #[arg(long)]
        failure_p: Option<f64>,
        #[arg(long, default_value_t = 1)]
        runs: usize,
    },
    /// Draws from the dihedral coset problem black box over Z_{2^n}.
    Dcp {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        d: usize,
        #[arg(long)]
        failure_p: Option<f64>,
        #[arg(long, default_value_t = 16)]
        samples: usize,
    },
    /// Closed forms for D_N against the state-vector pipeline and the derived equivalences.
    AppendixB {
        #[arg(long = "N")]
        n: usize,
        #[arg(long, value_enum, default_value_t = BasisChoice::Identity)]
        basis: BasisChoice,
    },
    /// Superposition experiments over value sets of the slope oracle.
    AppendixG {
        #[arg(long, value_enum)]
        experiment: Experiment,
        /// log2 N for parity, M = N/4 for window.
        #[arg(long)]
        n: usize,
        #[arg(long)]
        d: usize,
        #[arg(long, default_value_t = 0)]
        a: usize,
        #[arg(long, default_value_t = 10_000)]
        trials: usize,
        #[arg(long)]
        p: Option<f64>,
    },
    /// Slopes eliminated with certainty per strong sample over D_{2^n}.
    Eliminations {
        #[arg(long)]
        n: u32,
    },
    /// Monotone 1-in-3 3SAT to GapCVP in the infinity norm.
    #[command(name = "reduce-3sat")]
    Reduce3sat {
        /// Instance file with lines `c v1 v2 v3`.
        #[arg(long = "in")]
        input: Option<PathBuf>,
        /// Run the built-in corpus instead.
        #[arg(long)]
        corpus: bool,
        #[arg(long)]
        verify: bool,
        #[arg(long, value_enum, default_value_t = KernelChoice::Snf)]
        method: KernelChoice,
    },
    /// Rigid graph isomorphism through S_n wr Z_2, or the automorphism group of one graph.
    GraphIso {
        #[arg(long)]
        g1: PathBuf,
        #[arg(long)]
        g2: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Solver::Exhaustive)]
        solver: Solver,
    },
    /// Acceptance check by number (1-12) or `all`.
    Accept { id: String },
}

/// Runs the command and returns the report. Errors are runtime failures (exit status 1).
pub fn run(cli: &Cli) -> Result<Report, HspError> {
    let start = Instant::now();
    let mut rng = rng_for(cli.seed);
    let mut report = commands::dispatch(&cli.command, cli.seed, &mut rng)?;
    if cli.timing {
        report.wall_clock_s = Some(start.elapsed().as_secs_f64());
    }
    Ok(report)
}

/// Parses `args`, runs, and returns `(exit status, stdout, stderr)`.
pub fn main_with_args<I, T>(args: I) -> (i32, String, String)
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 { (0, text, String::new()) } else { (2, String::new(), text) };
        }
    };
    let start = Instant::now();
    match run(&cli) {
        Ok(report) => {
            let body = report.emit(cli.format);
            let status = i32::from(report.failed);
            let timing = format!("wall-clock: {:.3} s\n", start.elapsed().as_secs_f64());
            match &cli.out {
                Some(path) => match std::fs::write(path, &body) {
                    Ok(()) => (status, String::new(), timing),
                    Err(e) => (1, String::new(), format!("error: cannot write {}: {e}\n", path.display())),
                },
                None => (status, body, timing),
            }
        }
        Err(HspError::Parse(msg)) => (2, String::new(), format!("error: {msg}\n")),
        Err(e) => (1, String::new(), format!("error: {e}\n")),
    }
}
