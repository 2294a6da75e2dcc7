//! Command-line surface: `walk` evolves an initial state and reports the
//! distribution, `spectrum` runs the spectral checks, `symmetry` runs the
//! time-reversal checks. Exit codes: 0 success, 1 any check failed, 2 usage
//! error.

use std::ffi::OsString;
use std::fs::File;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::analysis::{
    check_operator_identity, check_parity_sector_symmetry, check_time_reversal, SymmetryReport,
};
use crate::error::{Error, Result};
use crate::evolution::{truncation_error_bound, Propagator};
use crate::operator::TruncatedOperator;
use crate::spectral::spectrum_fill_report;
use crate::state::{Sector, State};
use crate::vertex::Vertex;
use crate::weight::Weight;

#[derive(Parser)]
#[command(
    name = "qbn-walk",
    version,
    about = "Continuous-time quantum walk on the infinite-dimensional hypercube"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evolve an initial state and print the probability distribution
    Walk(WalkArgs),
    /// Spectral diagnostics: residual checks and the eigenvalue grid
    Spectrum(SpectrumArgs),
    /// Time-reversal symmetry checks
    Symmetry(SymmetryArgs),
}

#[derive(Args)]
struct CommonArgs {
    /// Weight spec: geometric:<r>[:<a>], explicit:v0,v1,..., powerlaw:<p>[:<a>]
    #[arg(long, default_value = "geometric:0.5:0.5")]
    weight: String,

    /// Number of modes kept (truncation level + 1)
    #[arg(long, default_value_t = 8, value_parser = clap::value_parser!(u32).range(1..=64))]
    modes: u32,

    /// Write output here instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct WalkArgs {
    #[command(flatten)]
    common: CommonArgs,

    /// Evolution time
    #[arg(long, default_value_t = 1.0, allow_hyphen_values = true)]
    time: f64,

    /// Comma-separated list of times (overrides --time)
    #[arg(long, allow_hyphen_values = true)]
    times: Option<String>,

    /// Initial state: `empty`, a vertex like `{0,2}`, or a state JSON file
    #[arg(long, default_value = "empty")]
    initial: String,

    /// Output format
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,

    /// Keep only the K most probable vertices
    #[arg(long)]
    top: Option<usize>,
}

#[derive(Args)]
struct SpectrumArgs {
    #[command(flatten)]
    common: CommonArgs,

    /// Extra subsets for the residual panel, e.g. `{0,2}` (repeatable)
    #[arg(long)]
    sigma: Vec<String>,

    /// Also write the dense adjacency matrix as CSV to this file
    #[arg(long)]
    dump_matrix: Option<PathBuf>,

    /// Output format
    #[arg(long, value_enum, default_value_t = SpectrumFormat::Json)]
    format: SpectrumFormat,
}

#[derive(Args)]
struct SymmetryArgs {
    #[command(flatten)]
    common: CommonArgs,

    /// Which check to run
    #[arg(long, value_enum, default_value_t = CheckKind::All)]
    check: CheckKind,

    /// Comma-separated time grid
    #[arg(long, default_value = "0.7,2.3", allow_hyphen_values = true)]
    times: String,

    /// Random trials for the operator-identity check
    #[arg(long, default_value_t = 10)]
    trials: usize,

    /// RNG seed for random initial states
    #[arg(long, default_value_t = 42)]
    seed: u64,
}

#[derive(Copy, Clone, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Copy, Clone, ValueEnum)]
enum SpectrumFormat {
    Json,
    Text,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum CheckKind {
    TimeReversal,
    ParityEven,
    ParityOdd,
    Operator,
    All,
}

/// Parse and run; returns the process exit code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(err) => {
            let code = if err.use_stderr() { 2 } else { 0 };
            let _ = err.print();
            return code;
        }
    };
    let outcome = match cli.command {
        Command::Walk(args) => run_walk(args),
        Command::Spectrum(args) => run_spectrum(args),
        Command::Symmetry(args) => run_symmetry(args),
    };
    match outcome {
        Ok(true) => 0,
        Ok(false) => 1,
        Err(err) => {
            eprintln!("error: {err}");
            2
        }
    }
}

fn parse_times(spec: &str) -> Result<Vec<f64>> {
    spec.split(',')
        .map(|p| {
            p.trim()
                .parse::<f64>()
                .map_err(|_| Error::Parse(format!("bad time value `{p}`")))
        })
        .collect()
}

fn parse_initial(spec: &str) -> Result<State> {
    if spec == "empty" {
        Ok(State::basis(Vertex::EMPTY))
    } else if spec.starts_with('{') {
        Ok(State::basis(spec.parse()?))
    } else {
        let text = std::fs::read_to_string(spec)
            .map_err(|e| Error::Parse(format!("cannot read state file `{spec}`: {e}")))?;
        State::from_json(&text)
    }
}

fn open_out(path: &Option<PathBuf>) -> Result<Box<dyn Write>> {
    match path {
        Some(p) => Ok(Box::new(File::create(p).map_err(|e| {
            Error::Parse(format!("cannot create `{}`: {e}", p.display()))
        })?)),
        None => Ok(Box::new(std::io::stdout())),
    }
}

#[derive(Serialize)]
struct WalkRow {
    vertex: String,
    probability: f64,
    re: f64,
    im: f64,
}

#[derive(Serialize)]
struct WalkOutput {
    weight: String,
    modes: usize,
    time: f64,
    row_order: &'static str,
    mass: f64,
    truncation_bound: f64,
    rows: Vec<WalkRow>,
}

fn run_walk(args: WalkArgs) -> Result<bool> {
    let weight = Weight::parse_cli(&args.common.weight)?;
    let level = args.common.modes as usize - 1;
    let initial = parse_initial(&args.initial)?;
    let norm = initial.norm();
    if (norm - 1.0).abs() > 1e-10 {
        return Err(Error::NonUnitNorm { norm });
    }
    let times = match &args.times {
        Some(spec) => parse_times(spec)?,
        None => vec![args.time],
    };

    let mut outputs = Vec::new();
    for &t in &times {
        let propagator = Propagator::new(&weight, level, t)?;
        let evolved = propagator.evolve(&initial)?.prune();
        let mass: f64 = evolved.iter().map(|(_, a)| a.norm_sqr()).sum();
        let mut rows: Vec<(Vertex, Complex64)> = evolved.iter().collect();
        rows.sort_by(|(va, aa), (vb, ab)| {
            ab.norm_sqr()
                .partial_cmp(&aa.norm_sqr())
                .unwrap()
                .then(va.cmp(vb))
        });
        if let Some(k) = args.top {
            rows.truncate(k);
        }
        outputs.push(WalkOutput {
            weight: weight.label().to_string(),
            modes: propagator.level() + 1,
            time: t,
            row_order: "probability desc, then vertex ascending",
            mass,
            truncation_bound: truncation_error_bound(&weight, propagator.level(), t),
            rows: rows
                .into_iter()
                .map(|(v, a)| WalkRow {
                    vertex: v.to_string(),
                    probability: a.norm_sqr(),
                    re: a.re,
                    im: a.im,
                })
                .collect(),
        });
    }

    let mut out = open_out(&args.common.out)?;
    match args.format {
        Format::Json => {
            let text = if outputs.len() == 1 {
                serde_json::to_string_pretty(&outputs[0])
            } else {
                serde_json::to_string_pretty(&outputs)
            }
            .expect("walk output serializes");
            writeln!(out, "{text}").map_err(io_err)?;
        }
        Format::Csv => {
            for o in &outputs {
                writeln!(
                    out,
                    "# time={} mass={} truncation_bound={}",
                    o.time, o.mass, o.truncation_bound
                )
                .map_err(io_err)?;
                writeln!(out, "vertex,probability,re,im").map_err(io_err)?;
                for row in &o.rows {
                    writeln!(
                        out,
                        "\"{}\",{},{},{}",
                        row.vertex, row.probability, row.re, row.im
                    )
                    .map_err(io_err)?;
                }
            }
        }
    }
    Ok(true)
}

fn run_spectrum(args: SpectrumArgs) -> Result<bool> {
    let weight = Weight::parse_cli(&args.common.weight)?;
    let level = weight.clamp_level(args.common.modes as usize - 1);
    let sigmas = args
        .sigma
        .iter()
        .map(|s| s.parse())
        .collect::<Result<Vec<Vertex>>>()?;
    let report = spectrum_fill_report(&weight, level, &sigmas)?;

    if let Some(path) = &args.dump_matrix {
        let matrix = TruncatedOperator::adjacency(weight.clone(), level).dense_matrix()?;
        let mut file = File::create(path)
            .map_err(|e| Error::Parse(format!("cannot create `{}`: {e}", path.display())))?;
        matrix.write_csv(&mut file).map_err(io_err)?;
    }

    let mut out = open_out(&args.common.out)?;
    match args.format {
        SpectrumFormat::Json => {
            writeln!(
                out,
                "{}",
                serde_json::to_string_pretty(&report).expect("report serializes")
            )
            .map_err(io_err)?;
        }
        SpectrumFormat::Text => {
            writeln!(out, "weight {} level {}", report.weight, report.level).map_err(io_err)?;
            for e in &report.entries {
                writeln!(
                    out,
                    "sigma {:<12} mu {:<10.6} residual {:.3e} bound {:.3e} {}",
                    e.sigma,
                    e.mu,
                    e.residual,
                    e.bound,
                    if e.pass { "pass" } else { "FAIL" }
                )
                .map_err(io_err)?;
            }
            writeln!(
                out,
                "grid [{:.6}, {:.6}] max interior gap {:.6} symmetric {} shifted-in-range {}",
                report.grid_min,
                report.grid_max,
                report.grid_max_interior_gap,
                report.grid_symmetric,
                report.shifted_grid_in_range
            )
            .map_err(io_err)?;
            writeln!(out, "{}", if report.pass { "pass" } else { "FAIL" }).map_err(io_err)?;
        }
    }
    Ok(report.pass)
}

fn run_symmetry(args: SymmetryArgs) -> Result<bool> {
    let weight = Weight::parse_cli(&args.common.weight)?;
    let level = weight.clamp_level(args.common.modes as usize - 1);
    let times = parse_times(&args.times)?;
    let mut rng = ChaCha8Rng::seed_from_u64(args.seed);

    let mut reports: Vec<SymmetryReport> = Vec::new();
    let wants = |kind: CheckKind| args.check == kind || args.check == CheckKind::All;

    if wants(CheckKind::TimeReversal) {
        let initial = State::random(level, &mut rng);
        reports.push(check_time_reversal(
            &weight, level, &initial, &times, args.seed,
        )?);
    }
    if wants(CheckKind::ParityEven) {
        let initial = State::random(level, &mut rng)
            .project_parity(Sector::Even)
            .normalized()?;
        reports.push(check_parity_sector_symmetry(
            &weight,
            level,
            &initial,
            Sector::Even,
            &times,
            args.seed,
        )?);
    }
    if wants(CheckKind::ParityOdd) {
        let initial = State::random(level, &mut rng)
            .project_parity(Sector::Odd)
            .normalized()?;
        reports.push(check_parity_sector_symmetry(
            &weight,
            level,
            &initial,
            Sector::Odd,
            &times,
            args.seed,
        )?);
    }
    if wants(CheckKind::Operator) {
        reports.push(check_operator_identity(
            &weight,
            level,
            &times,
            args.trials,
            args.seed,
        )?);
    }

    let mut out = open_out(&args.common.out)?;
    writeln!(
        out,
        "{}",
        serde_json::to_string_pretty(&reports).expect("reports serialize")
    )
    .map_err(io_err)?;
    Ok(reports.iter().all(|r| r.passed()))
}

fn io_err(e: std::io::Error) -> Error {
    Error::Parse(format!("write failed: {e}"))
}
