//! `satake`: command-line verification harness.
//!
//! Subcommands expose the library's computations and Monte Carlo campaigns
//! with seeded determinism. Output is JSON by default, CSV on request.
//! Exit codes: 0 when every asserted inequality held, 1 when a verified
//! inequality failed (a counterexample is serialized in the report),
//! 2 for usage or input errors.

mod output;

use anyhow::{anyhow, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use satake_core::dirichlet::{CmSeries, DEFAULT_P_MAX};
use satake_core::verify;
use std::collections::{BTreeMap, HashMap};
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Debug, Parser)]
#[command(name = "satake", version, about = "verification harness for unitary local data")]
struct Cli {
    /// Output format for reports.
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,

    /// Optional key=value config file supplying defaults (seed, trials,
    /// max_modulus, eps, xmax, format). Flags win over the file; the
    /// SATAKE_SEED environment variable is the last fallback for seeds.
    #[arg(long, global = true)]
    config: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print the exact constant table {m, r_j, R_j, c_n} for a rank.
    Constants {
        #[arg(long)]
        n: usize,
    },
    /// Monte Carlo verification of the trace majorization bound.
    VerifyBound(VerifyBoundArgs),
    /// Evaluate both sides of the Cauchy identity at a sampled point.
    Cauchy {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        r: u32,
        #[arg(long)]
        seed: Option<u64>,
        /// Exact rational-coordinate evaluation instead of floating point.
        #[arg(long)]
        exact: bool,
    },
    /// Iterated square-root bootstrap on a completely multiplicative series.
    Bootstrap(BootstrapArgs),
    /// Local parameter bound arithmetic: delta, exponent, threshold.
    Lrs {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        prime_norm: u64,
        /// Check a serialized parameter record against the bound.
        #[arg(long)]
        record: Option<PathBuf>,
    },
    /// Sample a deterministic unitary class and print its record.
    Sample {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 10.0)]
        max_modulus: f64,
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Run the full acceptance matrix, one row per criterion.
    Report {
        /// Override sampled-trial counts; 0 marks sampled rows skipped.
        #[arg(long)]
        trials: Option<u64>,
        #[arg(long)]
        seed: Option<u64>,
    },
}

#[derive(Debug, Args)]
struct VerifyBoundArgs {
    #[arg(long, required_unless_present = "replay")]
    n: Option<usize>,
    #[arg(long)]
    trials: Option<u64>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    max_modulus: Option<f64>,
    /// First exterior power in the bound sum: 1 (the theorem) or 2 (the
    /// falsifiable reading).
    #[arg(long, default_value_t = 1)]
    start_j: u32,
    /// Re-check a serialized counterexample record instead of sampling.
    #[arg(long)]
    replay: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct BootstrapArgs {
    /// Series literal: comma-separated prime:value pairs, e.g. "2:2,3:1.5".
    #[arg(long, default_value = "")]
    series: String,
    /// Value at primes <= p_max that the literal leaves unspecified.
    #[arg(long, default_value_t = 1.0)]
    fill: f64,
    /// Value at primes beyond p_max (omit to make contact an error).
    #[arg(long)]
    tail: Option<f64>,
    #[arg(long, default_value_t = DEFAULT_P_MAX)]
    p_max: u64,
    #[arg(long)]
    xmax: Option<u64>,
    #[arg(long)]
    eps: Option<f64>,
    /// Premise exponent A for the injected constant e^A.
    #[arg(long, default_value_t = 10.0)]
    premise_a: f64,
    /// Iteration count; "auto" derives it from (A, eps).
    #[arg(long, default_value = "auto")]
    iters: String,
}

/// Defaults loaded from --config; simple `key = value` lines, '#' comments.
#[derive(Debug, Default)]
struct FileConfig {
    values: HashMap<String, String>,
}

impl FileConfig {
    fn load(path: Option<&PathBuf>) -> anyhow::Result<Self> {
        let mut values = HashMap::new();
        if let Some(path) = path {
            let text = std::fs::read_to_string(path)
                .with_context(|| format!("reading config {}", path.display()))?;
            for (lineno, line) in text.lines().enumerate() {
                let line = line.split('#').next().unwrap_or("").trim();
                if line.is_empty() {
                    continue;
                }
                let (k, v) = line
                    .split_once('=')
                    .ok_or_else(|| anyhow!("config line {} is not key=value", lineno + 1))?;
                values.insert(k.trim().to_string(), v.trim().to_string());
            }
        }
        Ok(Self { values })
    }

    fn get<T: std::str::FromStr>(&self, key: &str) -> anyhow::Result<Option<T>> {
        match self.values.get(key) {
            None => Ok(None),
            Some(raw) => raw
                .parse::<T>()
                .map(Some)
                .map_err(|_| anyhow!("config key '{key}' has invalid value '{raw}'")),
        }
    }
}

fn resolve_seed(flag: Option<u64>, cfg: &FileConfig) -> anyhow::Result<u64> {
    if let Some(s) = flag {
        return Ok(s);
    }
    if let Some(s) = cfg.get::<u64>("seed")? {
        return Ok(s);
    }
    if let Ok(env) = std::env::var("SATAKE_SEED") {
        return env
            .parse()
            .map_err(|_| anyhow!("SATAKE_SEED is not an integer: {env}"));
    }
    Ok(0)
}

fn parse_series_literal(text: &str) -> anyhow::Result<BTreeMap<u64, f64>> {
    let mut map = BTreeMap::new();
    for part in text.split(',').filter(|p| !p.trim().is_empty()) {
        let (p, v) = part
            .split_once(':')
            .ok_or_else(|| anyhow!("series entry '{part}' is not prime:value"))?;
        let p: u64 = p.trim().parse().context("series prime")?;
        let v: f64 = v.trim().parse().context("series value")?;
        map.insert(p, v);
    }
    Ok(map)
}

/// What the invoked command concluded, separate from how it is printed.
enum Outcome {
    AllHeld,
    InequalityFailed,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(Outcome::AllHeld) => ExitCode::SUCCESS,
        Ok(Outcome::InequalityFailed) => ExitCode::from(1),
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> anyhow::Result<Outcome> {
    let cfg = FileConfig::load(cli.config.as_ref())?;
    let format = match cli.format {
        Some(f) => f,
        None => match cfg.values.get("format").map(String::as_str) {
            Some("csv") => Format::Csv,
            Some("json") | None => Format::Json,
            Some(other) => return Err(anyhow!("config format '{other}' is not json or csv")),
        },
    };

    match cli.command {
        Command::Constants { n } => {
            let report = verify::constants_report(n)?;
            emit(format, &report, output::constants_csv(&report))?;
            Ok(Outcome::AllHeld)
        }
        Command::VerifyBound(args) => {
            if let Some(path) = &args.replay {
                let record = std::fs::read_to_string(path)
                    .with_context(|| format!("reading record {}", path.display()))?;
                let report = verify::replay_counterexample(&record, args.start_j)?;
                let violation = report.violation;
                emit(format, &report, output::replay_csv(&report))?;
                return Ok(if violation {
                    Outcome::InequalityFailed
                } else {
                    Outcome::AllHeld
                });
            }
            let n = args.n.expect("clap enforces n without replay");
            let seed = resolve_seed(args.seed, &cfg)?;
            let trials = match args.trials {
                Some(t) => t,
                None => cfg.get::<u64>("trials")?.unwrap_or(1000),
            };
            let max_modulus = match args.max_modulus {
                Some(m) => m,
                None => cfg.get::<f64>("max_modulus")?.unwrap_or(100.0),
            };
            let report = verify::bound_campaign(n, trials, seed, max_modulus, args.start_j)?;
            let passed = report.passed;
            emit(format, &report, output::bound_csv(&report))?;
            Ok(if passed {
                Outcome::AllHeld
            } else {
                Outcome::InequalityFailed
            })
        }
        Command::Cauchy { n, r, seed, exact } => {
            let seed = resolve_seed(seed, &cfg)?;
            let report = verify::cauchy_run(n, r, seed, exact)?;
            let equal = report.equal;
            emit(format, &report, output::cauchy_csv(&report))?;
            Ok(if equal {
                Outcome::AllHeld
            } else {
                Outcome::InequalityFailed
            })
        }
        Command::Bootstrap(args) => {
            let map = parse_series_literal(&args.series)?;
            let series = CmSeries::new(map, args.p_max, args.fill, args.tail.or(Some(1.0)))?;
            let xmax = match args.xmax {
                Some(x) => x,
                None => cfg.get::<u64>("xmax")?.unwrap_or(100_000),
            };
            let eps = match args.eps {
                Some(e) => e,
                None => cfg.get::<f64>("eps")?.unwrap_or(0.05),
            };
            let iters = match args.iters.as_str() {
                "auto" => None,
                other => Some(
                    other
                        .parse::<u32>()
                        .map_err(|_| anyhow!("--iters must be 'auto' or an integer"))?,
                ),
            };
            let report = verify::bootstrap_campaign(&series, xmax, eps, args.premise_a, iters)?;
            let converged = report.final_exponent < eps;
            emit(format, &report, output::bootstrap_csv(&report))?;
            Ok(if converged {
                Outcome::AllHeld
            } else {
                Outcome::InequalityFailed
            })
        }
        Command::Lrs {
            n,
            prime_norm,
            record,
        } => {
            let text = match &record {
                Some(path) => Some(
                    std::fs::read_to_string(path)
                        .with_context(|| format!("reading record {}", path.display()))?,
                ),
                None => None,
            };
            let report = verify::lrs_report(n, prime_norm, text.as_deref())?;
            let ok = report.params_within_bound.unwrap_or(true);
            emit(format, &report, output::lrs_csv(&report))?;
            Ok(if ok {
                Outcome::AllHeld
            } else {
                Outcome::InequalityFailed
            })
        }
        Command::Sample {
            n,
            max_modulus,
            seed,
        } => {
            let seed = resolve_seed(seed, &cfg)?;
            let report = verify::sample_report(n, max_modulus, seed)?;
            emit(format, &report, output::sample_csv(&report))?;
            Ok(Outcome::AllHeld)
        }
        Command::Report { trials, seed } => {
            let seed = resolve_seed(seed, &cfg)?;
            let trials = match trials {
                Some(t) => Some(t),
                None => cfg.get::<u64>("trials")?,
            };
            let rows = verify::acceptance_matrix(trials, seed);
            let all_passed = rows.iter().all(|r| r.passed());
            emit(format, &rows, output::report_csv(&rows))?;
            Ok(if all_passed {
                Outcome::AllHeld
            } else {
                Outcome::InequalityFailed
            })
        }
    }
}

fn emit<T: serde::Serialize>(format: Format, value: &T, csv: String) -> anyhow::Result<()> {
    match format {
        Format::Json => {
            println!("{}", serde_json::to_string_pretty(value)?);
        }
        Format::Csv => {
            print!("{csv}");
        }
    }
    Ok(())
}
