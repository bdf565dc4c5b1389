//! Command-line driver: each subcommand evaluates one piece of the
//! toolkit and writes a deterministic JSON or CSV report.

use std::fs::File;
use std::io::{self, Read, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use aluthge::bounds::{heinz_corpus, lower_bound_search, upper_bound_check};
use aluthge::family::{self, family_scan};
use aluthge::matcore::ComplexMatrix;
use aluthge::random::ginibre;
use aluthge::transform::{iterate, self_comm_norm, aluthge_transform, AluthgeParams};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Exact squared self-commutator norms of the integer counterexample.
pub const COUNTEREXAMPLE_IN_SQ: f64 = 5_796_100.0;
pub const COUNTEREXAMPLE_OUT_SQ: f64 = 5_971_968.0;

#[derive(Parser, Debug, Serialize)]
#[command(
    name = "aluthge",
    about = "Self-commutator norms under the λ-Aluthge transform",
    version
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug, Serialize)]
pub enum Command {
    /// Reproduce the integer counterexample to the contraction conjecture.
    Counterexample(CounterexampleArgs),
    /// Iterate the transform and report the trajectory.
    Iterate(IterateArgs),
    /// Scan the weighted cyclic-shift family over a (λ, s) grid.
    FamilyScan(FamilyScanArgs),
    /// Verify the Heinz-type deviation inequality on a random corpus.
    HeinzCheck(HeinzCheckArgs),
    /// Search for large contraction ratios at a fixed λ.
    BoundSearch(BoundSearchArgs),
    /// Evaluate the factor-2 chain on one matrix.
    UpperCheck(UpperCheckArgs),
}

#[derive(Args, Debug, Serialize)]
pub struct CounterexampleArgs {
    /// Transform parameter λ ∈ (0, 1).
    #[arg(long, default_value_t = 0.5)]
    pub lambda: f64,
    /// Write the report here instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug, Serialize)]
pub struct IterateArgs {
    /// Path to a matrix in JSON wire format ("-" for stdin).
    #[arg(long, conflicts_with = "random")]
    pub input: Option<PathBuf>,
    /// Dimension of a random complex Gaussian start instead of a file.
    #[arg(long)]
    pub random: Option<usize>,
    #[arg(long, default_value_t = 0.5)]
    pub lambda: f64,
    /// Maximum number of transform applications.
    #[arg(long, default_value_t = 2000)]
    pub steps: usize,
    /// Stop when consecutive iterates differ by less than this.
    #[arg(long, default_value_t = 1e-10)]
    pub tol: f64,
    /// Seed for the random start.
    #[arg(long, env = "ALUTHGE_SEED", default_value_t = 0)]
    pub seed: u64,
    /// Include all iterates in the report.
    #[arg(long, default_value_t = false)]
    pub verbose: bool,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug, Serialize)]
pub struct FamilyScanArgs {
    /// Small weight ε of the family.
    #[arg(long, default_value_t = 1e-6)]
    pub eps: f64,
    /// Comma-separated λ values.
    #[arg(long, value_delimiter = ',')]
    pub lambda_grid: Vec<f64>,
    /// Logarithmic s grid as "start:stop:count" in powers of ten.
    #[arg(long, default_value = "-1:1:401", allow_hyphen_values = true)]
    pub s_grid: String,
    /// "csv" for the full table, "json" for the summary.
    #[arg(long, default_value = "csv")]
    pub format: String,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug, Serialize)]
pub struct HeinzCheckArgs {
    /// Number of random PSD pairs.
    #[arg(long, default_value_t = 1000)]
    pub trials: usize,
    #[arg(long, env = "ALUTHGE_SEED", default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value = "csv")]
    pub format: String,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug, Serialize)]
pub struct BoundSearchArgs {
    /// Matrix dimension to search over.
    #[arg(long, default_value_t = 4)]
    pub n: usize,
    #[arg(long, default_value_t = 0.5)]
    pub lambda: f64,
    /// Number of search starts.
    #[arg(long, default_value_t = 40)]
    pub trials: usize,
    #[arg(long, env = "ALUTHGE_SEED", default_value_t = 0)]
    pub seed: u64,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug, Serialize)]
pub struct UpperCheckArgs {
    /// Path to a matrix in JSON wire format ("-" for stdin).
    #[arg(long, conflicts_with = "random")]
    pub input: Option<PathBuf>,
    /// Dimension of a random complex Gaussian matrix instead of a file.
    #[arg(long)]
    pub random: Option<usize>,
    #[arg(long, default_value_t = 0.5)]
    pub lambda: f64,
    #[arg(long, env = "ALUTHGE_SEED", default_value_t = 0)]
    pub seed: u64,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

/// Failures split by the exit code they should produce: 1 for bad input
/// or I/O, 2 for a violated mathematical invariant.
#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Invariant(String),
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "error: {m}"),
            CliError::Invariant(m) => write!(f, "invariant violation: {m}"),
        }
    }
}

impl From<aluthge::Error> for CliError {
    fn from(e: aluthge::Error) -> Self {
        match e {
            aluthge::Error::InvariantViolation(m) => CliError::Invariant(m),
            other => CliError::Usage(other.to_string()),
        }
    }
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        CliError::Usage(e.to_string())
    }
}

pub type CliResult<T> = Result<T, CliError>;

fn out_writer(path: &Option<PathBuf>) -> CliResult<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(File::create(p)?),
        None => Box::new(io::stdout().lock()),
    })
}

#[derive(Serialize)]
struct Report<'a, C: Serialize, R: Serialize> {
    config: &'a C,
    result: R,
}

fn write_json<C: Serialize, R: Serialize>(
    out: &Option<PathBuf>,
    config: &C,
    result: R,
) -> CliResult<()> {
    let mut w = out_writer(out)?;
    let report = Report { config, result };
    serde_json::to_writer_pretty(&mut w, &report)
        .map_err(|e| CliError::Usage(e.to_string()))?;
    writeln!(w)?;
    Ok(())
}

fn read_matrix(path: &PathBuf) -> CliResult<ComplexMatrix> {
    let mut text = String::new();
    if path.as_os_str() == "-" {
        io::stdin().read_to_string(&mut text)?;
    } else {
        text = std::fs::read_to_string(path)?;
    }
    serde_json::from_str(&text).map_err(|e| CliError::Usage(format!("bad matrix input: {e}")))
}

fn input_matrix(
    input: &Option<PathBuf>,
    random: Option<usize>,
    seed: u64,
) -> CliResult<ComplexMatrix> {
    match (input, random) {
        (Some(p), None) => read_matrix(p),
        (None, Some(n)) if n >= 1 => Ok(ginibre(n, &mut ChaCha8Rng::seed_from_u64(seed))),
        (None, Some(_)) => Err(CliError::Usage("--random needs a dimension >= 1".into())),
        _ => Err(CliError::Usage(
            "exactly one of --input and --random is required".into(),
        )),
    }
}

/// Parse "start:stop:count" into a logarithmic grid of powers of ten.
pub fn parse_log_grid(spec: &str) -> CliResult<Vec<f64>> {
    let parts: Vec<&str> = spec.split(':').collect();
    if parts.len() != 3 {
        return Err(CliError::Usage(format!(
            "grid spec must be start:stop:count, got {spec:?}"
        )));
    }
    let start: f64 = parts[0]
        .parse()
        .map_err(|_| CliError::Usage(format!("bad grid start {:?}", parts[0])))?;
    let stop: f64 = parts[1]
        .parse()
        .map_err(|_| CliError::Usage(format!("bad grid stop {:?}", parts[1])))?;
    let count: usize = parts[2]
        .parse()
        .map_err(|_| CliError::Usage(format!("bad grid count {:?}", parts[2])))?;
    if count < 2 {
        return Err(CliError::Usage("grid needs at least 2 points".into()));
    }
    Ok(family::logspace(start, stop, count))
}

#[derive(Serialize)]
struct CounterexampleReport {
    lambda: f64,
    comm_in_sq: f64,
    comm_out_sq: f64,
    ratio: f64,
    conjecture_holds: bool,
}

fn run_counterexample(args: &CounterexampleArgs) -> CliResult<()> {
    let a = ComplexMatrix::from_real_rows(&[
        vec![0.0, 0.0, 0.0, 36.0],
        vec![1.0, 0.0, 0.0, 0.0],
        vec![0.0, 36.0, 0.0, 0.0],
        vec![0.0, 0.0, 49.0, 0.0],
    ])
    .expect("static matrix");
    let p = AluthgeParams::new(args.lambda)?;
    let comm_in_sq = a.self_comm_norm_sq();
    let transformed = aluthge_transform(&a, p)?;
    let comm_out_sq = transformed.self_comm_norm_sq();
    let ratio = (comm_out_sq / comm_in_sq).sqrt();

    if args.lambda == 0.5 {
        let rel = |x: f64, y: f64| (x - y).abs() / y;
        if rel(comm_in_sq, COUNTEREXAMPLE_IN_SQ) > 1e-10
            || rel(comm_out_sq, COUNTEREXAMPLE_OUT_SQ) > 1e-10
        {
            return Err(CliError::Invariant(format!(
                "counterexample norms drifted: got {comm_in_sq} and {comm_out_sq}, \
                 expected {COUNTEREXAMPLE_IN_SQ} and {COUNTEREXAMPLE_OUT_SQ}"
            )));
        }
    }

    write_json(
        &args.out,
        args,
        CounterexampleReport {
            lambda: args.lambda,
            comm_in_sq,
            comm_out_sq,
            ratio,
            conjecture_holds: comm_out_sq <= comm_in_sq,
        },
    )
}

trait SelfCommNormSq {
    fn self_comm_norm_sq(&self) -> f64;
}

impl SelfCommNormSq for ComplexMatrix {
    fn self_comm_norm_sq(&self) -> f64 {
        let n = self_comm_norm(self);
        n * n
    }
}

fn run_iterate(args: &IterateArgs) -> CliResult<()> {
    let a = input_matrix(&args.input, args.random, args.seed)?;
    let p = AluthgeParams::new(args.lambda)?;
    let trajectory = iterate(&a, p, args.steps, args.tol)?;
    write_json(&args.out, args, trajectory.report(args.verbose))
}

fn run_family_scan(args: &FamilyScanArgs) -> CliResult<()> {
    let lambdas = if args.lambda_grid.is_empty() {
        family::default_lambda_grid()
    } else {
        args.lambda_grid.clone()
    };
    let s_grid = parse_log_grid(&args.s_grid)?;
    let scan = family_scan(args.eps, &lambdas, &s_grid)?;

    match args.format.as_str() {
        "json" => write_json(&args.out, args, &scan.summary),
        "csv" => {
            let w = out_writer(&args.out)?;
            let mut csv = csv::Writer::from_writer(w);
            csv.write_record([
                "eps",
                "s",
                "lambda",
                "den_sq",
                "num_sq",
                "ratio",
                "direct_ratio",
                "abs_discrepancy",
            ])
            .map_err(|e| CliError::Usage(e.to_string()))?;
            for ev in &scan.evaluations {
                let opt = |v: Option<f64>| v.map(|x| x.to_string()).unwrap_or_default();
                let disc = match (ev.ratio, ev.direct_ratio) {
                    (Some(a), Some(b)) => (a - b).abs().to_string(),
                    _ => String::new(),
                };
                csv.write_record([
                    ev.eps.to_string(),
                    ev.s.to_string(),
                    ev.lambda.to_string(),
                    ev.den_sq.to_string(),
                    ev.num_sq.to_string(),
                    opt(ev.ratio),
                    opt(ev.direct_ratio),
                    disc,
                ])
                .map_err(|e| CliError::Usage(e.to_string()))?;
            }
            csv.flush()?;
            Ok(())
        }
        other => Err(CliError::Usage(format!(
            "unknown format {other:?}; use csv or json"
        ))),
    }
}

fn run_heinz_check(args: &HeinzCheckArgs) -> CliResult<()> {
    let ts: Vec<f64> = (0..=10).map(|k| k as f64 / 10.0).collect();
    let rows = heinz_corpus(args.trials, &ts, args.seed)?;
    let held = rows.iter().filter(|r| r.holds).count();

    match args.format.as_str() {
        "json" => write_json(&args.out, args, &rows)?,
        "csv" => {
            let w = out_writer(&args.out)?;
            let mut csv = csv::Writer::from_writer(w);
            csv.write_record(["dim", "t", "lhs", "intermediate", "rhs", "holds"])
                .map_err(|e| CliError::Usage(e.to_string()))?;
            for r in &rows {
                csv.write_record([
                    r.dim.to_string(),
                    r.t.to_string(),
                    r.lhs.to_string(),
                    r.intermediate.to_string(),
                    r.rhs.to_string(),
                    r.holds.to_string(),
                ])
                .map_err(|e| CliError::Usage(e.to_string()))?;
            }
            csv.flush()?;
        }
        other => {
            return Err(CliError::Usage(format!(
                "unknown format {other:?}; use csv or json"
            )))
        }
    }

    eprintln!("{held}/{} hold", rows.len());
    if held != rows.len() {
        return Err(CliError::Invariant(format!(
            "{} of {} inequality checks failed",
            rows.len() - held,
            rows.len()
        )));
    }
    Ok(())
}

fn run_bound_search(args: &BoundSearchArgs) -> CliResult<()> {
    let report = lower_bound_search(args.n, args.lambda, args.trials, args.seed)?;
    write_json(&args.out, args, report)
}

fn run_upper_check(args: &UpperCheckArgs) -> CliResult<()> {
    let a = input_matrix(&args.input, args.random, args.seed)?;
    let report = upper_bound_check(&a, args.lambda)?;
    if !report.holds {
        return Err(CliError::Invariant(format!(
            "factor-2 chain failed: comm_out {} vs 2·comm_in {}",
            report.comm_out,
            2.0 * report.comm_in
        )));
    }
    write_json(&args.out, args, report)
}

/// Dispatch one parsed invocation.
pub fn run(cli: &Cli) -> CliResult<()> {
    match &cli.command {
        Command::Counterexample(a) => run_counterexample(a),
        Command::Iterate(a) => run_iterate(a),
        Command::FamilyScan(a) => run_family_scan(a),
        Command::HeinzCheck(a) => run_heinz_check(a),
        Command::BoundSearch(a) => run_bound_search(a),
        Command::UpperCheck(a) => run_upper_check(a),
    }
}
