//! Command-line surface for the distinguishability toolkit: compute the
//! measures of a weighted state pair, run the inequality catalog against
//! seeded random pairs, tabulate the closed-form equality families and the
//! binary-divergence envelope, and generate random state files.
//!
//! Exit codes: 0 success, 1 verified failure (an inequality violation or a
//! closed-form deviation), 2 usage or input error. Results go to standard
//! output, diagnostics to standard error.

#![forbid(unsafe_code)]

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use qdist::catalog::{self, PriorMode, VerificationReport};
use qdist::hot;
use qdist::io;
use qdist::measures::MeasureReport;
use qdist::spectral::HermitianMatrix;
use qdist::state::{self, DensityOperator, Family};
use qdist::{fmt_sig12, ExtendedReal};

#[derive(Parser)]
#[command(
    name = "qdist",
    version,
    about = "Distinguishability measures for quantum states",
    propagate_version = true
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute every measure of a weighted pair of state files
    Compute(ComputeArgs),
    /// Check the inequality catalog on seeded random pairs
    Verify(VerifyArgs),
    /// Tabulate computed vs closed-form measures on an equality family
    Families(FamiliesArgs),
    /// Tabulate the envelope s(x) with its series and two-sided bounds
    Hot(HotArgs),
    /// Generate a random state file
    Gen(GenArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum PriorModeArg {
    /// Fixed prior p = 1/2 for every sample
    Uniform,
    /// Prior drawn uniformly from [0, 1) per sample
    Random,
}

impl From<PriorModeArg> for PriorMode {
    fn from(mode: PriorModeArg) -> PriorMode {
        match mode {
            PriorModeArg::Uniform => PriorMode::Uniform,
            PriorModeArg::Random => PriorMode::Random,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum StateKind {
    /// Rank-one projector onto a random unit vector
    Pure,
    /// Random density matrix of the requested rank
    Mixed,
}

#[derive(Args)]
struct ComputeArgs {
    /// Path of the first state file (rho)
    #[arg(long)]
    rho: PathBuf,
    /// Path of the second state file (sigma)
    #[arg(long)]
    sigma: PathBuf,
    /// Prior weight of rho; the pair is (p rho, (1-p) sigma)
    #[arg(long, default_value_t = 0.5)]
    prior: f64,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
    /// Write the report to this path instead of standard output
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    /// Dimensions to sweep, comma separated
    #[arg(long, value_delimiter = ',', default_value = "2,3,4")]
    dims: Vec<usize>,
    /// Random pairs per dimension
    #[arg(long, default_value_t = 1000)]
    samples: usize,
    #[arg(long, default_value_t = 42)]
    seed: u64,
    /// Slack tolerance: a record fails only below -tol (scaled for
    /// entropy-valued records)
    #[arg(long, default_value_t = 1e-9)]
    tol: f64,
    #[arg(long, value_enum, default_value_t = PriorModeArg::Uniform)]
    prior_mode: PriorModeArg,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
    /// Write the report to this path instead of standard output
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct FamiliesArgs {
    /// Equality family id: a, b, c or d
    #[arg(long)]
    family: char,
    /// Comma-separated parameter grid in [0, 1]
    #[arg(
        long = "t-grid",
        value_delimiter = ',',
        default_value = "0,0.1,0.2,0.3,0.4,0.5,0.6,0.7,0.8,0.9,1"
    )]
    t_grid: Vec<f64>,
    /// Largest allowed deviation from the closed forms
    #[arg(long, default_value_t = 1e-9)]
    tol: f64,
    /// Write the table to this path instead of standard output
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct HotArgs {
    /// Comma-separated grid in [0, 1)
    #[arg(
        long = "x-grid",
        value_delimiter = ',',
        default_value = "0,0.1,0.2,0.3,0.4,0.5,0.6,0.7,0.8,0.9"
    )]
    x_grid: Vec<f64>,
    /// Write the table to this path instead of standard output
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct GenArgs {
    #[arg(value_enum)]
    kind: StateKind,
    /// Hilbert-space dimension
    #[arg(long)]
    dims: usize,
    /// Rank of a mixed state; defaults to full rank
    #[arg(long)]
    rank: Option<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Path of the state file to write
    #[arg(long)]
    out: PathBuf,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Compute(args) => cmd_compute(&args),
        Command::Verify(args) => cmd_verify(&args),
        Command::Families(args) => cmd_families(&args),
        Command::Hot(args) => cmd_hot(&args),
        Command::Gen(args) => cmd_gen(&args),
    };
    match outcome {
        Ok(code) => code,
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}

/// Render a finite value with 12 significant digits.
fn sig12(v: f64) -> String {
    fmt_sig12(ExtendedReal::from_f64(v))
}

/// A 12-significant-digit JSON value; infinities become quoted literals.
fn json_number(v: ExtendedReal) -> String {
    match v {
        ExtendedReal::Finite(_) => fmt_sig12(v),
        other => format!("\"{other}\""),
    }
}

fn emit(out: Option<&Path>, text: &str) -> Result<(), String> {
    match out {
        None => {
            print!("{text}");
            Ok(())
        }
        Some(path) => std::fs::write(path, text).map_err(|e| format!("{}: {e}", path.display())),
    }
}

fn load_state(path: &Path) -> Result<DensityOperator, String> {
    io::read_matrix(path)
        .and_then(HermitianMatrix::from_matrix)
        .and_then(state::validate_density)
        .map_err(|e| match e {
            // I/O errors already carry the path; prefix it everywhere else so
            // the message always names the offending file.
            qdist::Error::Io { .. } => e.to_string(),
            _ => format!("{}: {e}", path.display()),
        })
}

const REPORT_FIELDS: [&str; 8] = ["L", "T", "F", "Q", "Q_min", "s_star", "C", "S"];

fn report_values(report: &MeasureReport) -> [ExtendedReal; 8] {
    [
        ExtendedReal::from_f64(report.l),
        ExtendedReal::from_f64(report.t),
        ExtendedReal::from_f64(report.f),
        ExtendedReal::from_f64(report.q),
        ExtendedReal::from_f64(report.q_min),
        ExtendedReal::from_f64(report.s_star),
        report.c,
        report.s,
    ]
}

fn render_report(report: &MeasureReport, format: Format) -> String {
    let values = report_values(report);
    match format {
        Format::Csv => {
            let rendered: Vec<String> = values.iter().map(|&v| fmt_sig12(v)).collect();
            format!("{}\n{}\n", REPORT_FIELDS.join(","), rendered.join(","))
        }
        Format::Json => {
            let mut text = String::from("{\n");
            for (i, (name, &value)) in REPORT_FIELDS.iter().zip(&values).enumerate() {
                let comma = if i + 1 < REPORT_FIELDS.len() { "," } else { "" };
                let _ = writeln!(text, "  \"{name}\": {}{comma}", json_number(value));
            }
            text.push_str("}\n");
            text
        }
    }
}

fn cmd_compute(args: &ComputeArgs) -> Result<ExitCode, String> {
    let rho = load_state(&args.rho)?;
    let sigma = load_state(&args.sigma)?;
    let pair = state::make_weighted_pair(rho, sigma, args.prior).map_err(|e| e.to_string())?;
    let report = qdist::measures::measure_report(&pair).map_err(|e| e.to_string())?;
    emit(args.out.as_deref(), &render_report(&report, args.format))?;
    Ok(ExitCode::SUCCESS)
}

fn render_verification_json(report: &VerificationReport) -> String {
    let mut text = String::from("{\n");
    let dims: Vec<String> = report.dims.iter().map(usize::to_string).collect();
    let _ = writeln!(text, "  \"dims\": [{}],", dims.join(", "));
    let _ = writeln!(text, "  \"samples_per_dim\": {},", report.samples_per_dim);
    let mode = match report.prior_mode {
        PriorMode::Uniform => "uniform",
        PriorMode::Random => "random",
    };
    let _ = writeln!(text, "  \"prior_mode\": \"{mode}\",");
    let _ = writeln!(text, "  \"seed\": {},", report.seed);
    let _ = writeln!(text, "  \"eta\": {},", sig12(report.eta));
    let _ = writeln!(text, "  \"pass\": {},", report.pass);
    text.push_str("  \"records\": [\n");
    for (i, stats) in report.records.iter().enumerate() {
        let comma = if i + 1 < report.records.len() {
            ","
        } else {
            ""
        };
        let _ = writeln!(
            text,
            "    {{\"record_id\": \"{}\", \"samples\": {}, \"violations\": {}, \
             \"min_slack\": {}, \"argmin_seed\": {}}}{comma}",
            stats.record_id,
            stats.samples,
            stats.violations,
            json_number(stats.min_slack),
            stats.argmin_seed
        );
    }
    text.push_str("  ]\n}\n");
    text
}

fn cmd_verify(args: &VerifyArgs) -> Result<ExitCode, String> {
    let report = catalog::sweep(
        &args.dims,
        args.samples,
        args.prior_mode.into(),
        args.seed,
        args.tol,
    )
    .map_err(|e| e.to_string())?;
    let rendered = match args.format {
        Format::Csv => catalog::render_csv(&report),
        Format::Json => render_verification_json(&report),
    };
    emit(args.out.as_deref(), &rendered)?;
    if report.pass {
        Ok(ExitCode::SUCCESS)
    } else {
        let total: u64 = report.records.iter().map(|r| r.violations).sum();
        eprintln!("{total} violation(s) found; see the report");
        Ok(ExitCode::from(1))
    }
}

fn cmd_families(args: &FamiliesArgs) -> Result<ExitCode, String> {
    if args.tol <= 0.0 || !args.tol.is_finite() {
        return Err(format!(
            "--tol must be positive and finite, got {}",
            args.tol
        ));
    }
    let family = Family::from_id(args.family)
        .ok_or_else(|| format!("unknown family '{}': expected a, b, c or d", args.family))?;
    let rows = catalog::family_report(family, &args.t_grid).map_err(|e| e.to_string())?;
    let mut text = String::from(
        "t,L,T,F,Q,Q_min,s_star,C,S,\
         expected_L,expected_T,expected_F,expected_Q,expected_Q_min,expected_C,expected_S,\
         max_deviation\n",
    );
    let mut worst: f64 = 0.0;
    for row in &rows {
        let computed: Vec<String> = report_values(&row.computed)
            .iter()
            .map(|&v| fmt_sig12(v))
            .collect();
        let e = &row.point.expected;
        let expected = [
            ExtendedReal::from_f64(e.l),
            ExtendedReal::from_f64(e.t),
            ExtendedReal::from_f64(e.f),
            ExtendedReal::from_f64(e.q),
            ExtendedReal::from_f64(e.q_min),
            e.c,
            e.s,
        ];
        let expected: Vec<String> = expected.iter().map(|&v| fmt_sig12(v)).collect();
        let _ = writeln!(
            text,
            "{},{},{},{}",
            sig12(row.t),
            computed.join(","),
            expected.join(","),
            sig12(row.max_deviation)
        );
        worst = worst.max(row.max_deviation);
    }
    emit(args.out.as_deref(), &text)?;
    if worst <= args.tol {
        Ok(ExitCode::SUCCESS)
    } else {
        eprintln!(
            "family ({}) deviates from its closed forms by {} (tolerance {})",
            args.family,
            sig12(worst),
            sig12(args.tol)
        );
        Ok(ExitCode::from(1))
    }
}

fn cmd_hot(args: &HotArgs) -> Result<ExitCode, String> {
    let mut text = String::from("x,s,series,lower,upper\n");
    for &x in &args.x_grid {
        let s = hot::hot_s(x).map_err(|e| e.to_string())?;
        let series = hot::hot_series(x).map_err(|e| e.to_string())?;
        let lower = hot::pinsker_lower(x).map_err(|e| e.to_string())?;
        let upper = hot::hot_upper(x).map_err(|e| e.to_string())?;
        let _ = writeln!(
            text,
            "{},{},{},{},{}",
            sig12(x),
            sig12(s),
            sig12(series),
            sig12(lower),
            sig12(upper)
        );
    }
    emit(args.out.as_deref(), &text)?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_gen(args: &GenArgs) -> Result<ExitCode, String> {
    let state = match args.kind {
        StateKind::Pure => {
            if let Some(rank) = args.rank {
                if rank != 1 {
                    return Err(format!("pure states have rank 1, got --rank {rank}"));
                }
            }
            state::random_pure(args.dims, args.seed).map_err(|e| e.to_string())?
        }
        StateKind::Mixed => {
            let rank = args.rank.unwrap_or(args.dims);
            state::random_mixed(args.dims, rank, args.seed).map_err(|e| e.to_string())?
        }
    };
    io::write_matrix(&args.out, state.matrix().matrix()).map_err(|e| e.to_string())?;
    // Read back and re-validate so a reported success implies a usable file.
    let reread =
        load_state(&args.out).map_err(|e| format!("generated file failed validation: {e}"))?;
    eprintln!(
        "wrote {} ({}x{}, rank {})",
        args.out.display(),
        reread.dim(),
        reread.dim(),
        reread.rank()
    );
    Ok(ExitCode::SUCCESS)
}
