//! `vscif`: generate instances, run solvers, verify packings, compute exact
//! optima of tiny instances and run benchmark series.
//!
//! Exit codes:
//!
//! | code | meaning |
//! |------|---------|
//! | 0 | success |
//! | 1 | packing is invalid (`verify`) |
//! | 2 | usage error |
//! | 3 | exact search ran out of its node budget |
//! | 4 | invalid or infeasible instance, bad configuration, unmet precondition |
//! | 5 | I/O, JSON or CSV failure |
//! | 6 | instance exceeds the exact-search limits |
//! | 7 | internal failure (overflow, structural error, aborted series) |

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use vscif::bench::{self, SeriesSpec};
use vscif::exact::{solve_exact, ExactLimits, ExactOutcome};
use vscif::instgen::{generate, GenConfig, GenMode};
use vscif::{verify_packing, Algorithm, CostModel, Error, FillFactor, Instance, Packing, Verdict};

#[derive(Parser)]
#[command(name = "vscif", version, about = "Variable-sized bin packing with costs and item fragmentation")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum CostArg {
    Linear,
    Monotone,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Optimum,
    Free,
}

#[derive(Clone, Copy, ValueEnum)]
enum AlgoArg {
    Ciffd,
    Cfff,
    Cnfl,
    Cdnfl,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a seeded instance.
    Generate {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Number of bin classes.
        #[arg(long, default_value_t = 3)]
        m: usize,
        #[arg(long, default_value_t = 100)]
        bmax: u64,
        /// Number of initial items before gluing.
        #[arg(long, default_value_t = 200)]
        n: usize,
        /// Cut limit.
        #[arg(long, default_value_t = 1)]
        d: u32,
        #[arg(long, value_enum, default_value = "linear")]
        cost: CostArg,
        #[arg(long, value_enum, default_value = "optimum")]
        mode: ModeArg,
        #[arg(long)]
        out: PathBuf,
    },
    /// Solve an instance and write the packing.
    Solve {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long, value_enum)]
        algo: AlgoArg,
        /// Fill factor for cfff, a decimal or n/d in [0.5, 1].
        #[arg(long)]
        f: Option<String>,
        #[arg(long)]
        out: PathBuf,
    },
    /// Check a packing against an instance.
    Verify {
        #[arg(long)]
        instance: PathBuf,
        #[arg(long)]
        packing: PathBuf,
    },
    /// Optimal cost of a tiny instance by exhaustive search.
    Exact {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        max_items: Option<usize>,
        #[arg(long)]
        max_size: Option<u64>,
        #[arg(long)]
        max_classes: Option<usize>,
        #[arg(long)]
        max_cuts: Option<u32>,
        #[arg(long)]
        node_budget: Option<u64>,
        /// Also write the optimal packing.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run a benchmark series described by a JSON spec.
    Bench {
        #[arg(long)]
        spec: PathBuf,
        #[arg(long)]
        csv: PathBuf,
        #[arg(long)]
        chart: Option<PathBuf>,
    },
}

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Failure { code: 2, message: format!("usage: {}", message.into()) }
    }
}

fn code_for(err: &Error) -> u8 {
    match err {
        Error::InvalidInstance(_)
        | Error::Infeasible { .. }
        | Error::Precondition(_)
        | Error::FillFactor(_)
        | Error::Config(_) => 4,
        Error::Json(_) | Error::Csv(_) | Error::Io(_) => 5,
        Error::LimitsExceeded(_) => 6,
        Error::Structural(_) | Error::Overflow | Error::Series { .. } | Error::EmptyReport => 7,
    }
}

impl From<Error> for Failure {
    fn from(err: Error) -> Self {
        Failure { code: code_for(&err), message: format!("{}: {err}", err.category()) }
    }
}

fn io_failure(path: &Path, err: std::io::Error) -> Failure {
    Failure { code: 5, message: format!("io: {}: {err}", path.display()) }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| io_failure(path, e))
}

fn write(path: &Path, text: &str) -> Result<(), Failure> {
    fs::write(path, text).map_err(|e| io_failure(path, e))
}

fn run(cli: Cli) -> Result<u8, Failure> {
    match cli.command {
        Command::Generate { seed, m, bmax, n, d, cost, mode, out } => {
            let cfg = GenConfig {
                seed,
                m,
                b_max: bmax,
                n_initial: n,
                item_low: 1,
                item_high: bmax.saturating_sub(1),
                cut_limit: d,
                cost_model: match cost {
                    CostArg::Linear => CostModel::Linear,
                    CostArg::Monotone => CostModel::Monotone,
                },
                mode: match mode {
                    ModeArg::Optimum => GenMode::KnownOptimum,
                    ModeArg::Free => GenMode::Free,
                },
            };
            let instance = generate(&cfg, 0)?;
            write(&out, &format!("{}{}\n", cfg.header(0), instance.to_json()?))?;
        }
        Command::Solve { input, algo, f, out } => {
            let instance = Instance::from_json(&read(&input)?)?;
            let algorithm = match (algo, f) {
                (AlgoArg::Cfff, f) => {
                    let f = match f {
                        Some(s) => s.parse::<FillFactor>()?,
                        None => FillFactor::HALF,
                    };
                    Algorithm::Cfff(f)
                }
                (_, Some(_)) => return Err(Failure::usage("--f only applies to --algo cfff")),
                (AlgoArg::Ciffd, None) => Algorithm::Ciffd,
                (AlgoArg::Cnfl, None) => Algorithm::Cnfl,
                (AlgoArg::Cdnfl, None) => Algorithm::Cdnfl,
            };
            let res = algorithm.solve(&instance)?;
            write(&out, &format!("{}\n", res.packing.to_json()?))?;
            println!("cost {} bins {}", res.cost, res.bin_count());
        }
        Command::Verify { instance, packing } => {
            let inst = Instance::from_json(&read(&instance)?)?;
            let pack = Packing::from_json(&read(&packing)?)?;
            match verify_packing(&pack, &inst) {
                Verdict::Valid { cost } => println!("valid {cost}"),
                Verdict::Invalid(v) => {
                    println!("invalid {v}");
                    return Ok(1);
                }
            }
        }
        Command::Exact { input, max_items, max_size, max_classes, max_cuts, node_budget, out } => {
            let instance = Instance::from_json(&read(&input)?)?;
            let d = ExactLimits::default();
            let limits = ExactLimits {
                max_items: max_items.unwrap_or(d.max_items),
                max_size: max_size.unwrap_or(d.max_size),
                max_classes: max_classes.unwrap_or(d.max_classes),
                max_cuts: max_cuts.unwrap_or(d.max_cuts),
                node_budget: node_budget.unwrap_or(d.node_budget),
                ..d
            };
            match solve_exact(&instance, &limits)? {
                ExactOutcome::Optimal(res) => {
                    if let Some(out) = out {
                        write(&out, &format!("{}\n", res.packing.to_json()?))?;
                    }
                    println!("{}", res.cost);
                }
                ExactOutcome::BudgetExceeded { nodes } => {
                    println!("budget-exceeded after {nodes} nodes");
                    return Ok(3);
                }
            }
        }
        Command::Bench { spec, csv, chart } => {
            let spec = SeriesSpec::from_json(&read(&spec)?)?;
            let report = bench::run(&spec)?;
            write(&csv, &bench::to_csv(&report)?)?;
            if let Some(chart) = chart {
                write(&chart, &bench::to_svg(&report)?)?;
            }
        }
    }
    Ok(0)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
