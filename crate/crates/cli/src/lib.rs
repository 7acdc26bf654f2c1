//! Command-line front end for `qudit-cv`.
//!
//! Exit codes: `0` success, `1` invariant failure, `2` configuration error,
//! `3` I/O error.

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use qudit_cv::gates::{sum_fidelity_table, SUM_FIDELITY_FLOOR};
use qudit_cv::verify::{run_suite, Check, Suite};
use qudit_cv::{
    build_number_rep, build_phase_rep, build_weight_rep, calibrate_sum, fractional_sum_label,
    json, parse_dims, run_sweep, write_csv, ComplexMatrix, Error, Metric, QuditDim, RepKind,
    SumCalibration, SweepRecord, Tolerance,
};

/// Largest `d` for which `sum-demo` prints the `d²`-row truth table.
pub const SUM_DEMO_MAX_DIM: usize = 64;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Config(String),
    #[error("{0}")]
    Invariant(String),
    #[error("{0}")]
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Invariant(_) => 1,
            CliError::Config(_) => 2,
            CliError::Io(_) => 3,
        }
    }

    fn io(path: &Path, e: io::Error) -> Self {
        CliError::Io(format!("{}: {e}", path.display()))
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::RelationViolated { .. }
            | Error::BasisDegenerate { .. }
            | Error::CalibrationFailed { .. }
            | Error::ConventionMismatch { .. }
            | Error::EigenFailure(_)
            | Error::NotHermitian { .. }
            | Error::NotNormalized { .. } => CliError::Invariant(e.to_string()),
            _ => CliError::Config(e.to_string()),
        }
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Json,
    Csv,
    Pretty,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum RepArg {
    Number,
    Weight,
    Phase,
}

impl From<RepArg> for RepKind {
    fn from(r: RepArg) -> Self {
        match r {
            RepArg::Number => RepKind::Number,
            RepArg::Weight => RepKind::Weight,
            RepArg::Phase => RepKind::Phase,
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "qudit-cv", version, about = "Qudit Pauli operators in number and SU(2) representations")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalOpts,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct GlobalOpts {
    /// Replace every per-check tolerance.
    #[arg(long, global = true)]
    pub tol: Option<f64>,
    /// Output format (defaults depend on the command).
    #[arg(long, global = true, value_enum)]
    pub format: Option<OutputFormat>,
    /// Write the primary output here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Reserved; every command is deterministic.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Operator export.
    Ops {
        #[command(subcommand)]
        action: OpsAction,
    },
    /// Run invariant suites.
    Verify(VerifyArgs),
    /// Calibrate the Kerr SUM gate and print its truth table.
    SumDemo(SumDemoArgs),
    /// Evaluate metrics over a list of dimensions.
    Sweep(SweepArgs),
}

#[derive(Debug, Subcommand)]
pub enum OpsAction {
    /// Build one representation and write its matrices as JSON.
    Build(BuildArgs),
}

#[derive(Debug, Clone, Args)]
pub struct BuildArgs {
    #[arg(long, value_enum)]
    pub rep: RepArg,
    #[arg(long)]
    pub dim: usize,
}

#[derive(Debug, Clone, Args)]
pub struct VerifyArgs {
    /// pauli, number, su2, phase, gates or all.
    #[arg(default_value = "all")]
    pub suite: String,
    /// Dimension or dimension list (`3`, `2:8`, `2,5,9`).
    #[arg(long)]
    pub dim: String,
    /// Representations for the Pauli suite (default: all three).
    #[arg(long, value_enum, value_delimiter = ',')]
    pub rep: Vec<RepArg>,
}

#[derive(Debug, Clone, Args)]
pub struct SumDemoArgs {
    #[arg(long)]
    pub dim: usize,
    /// Kerr coupling χ.
    #[arg(long, default_value_t = 1.0)]
    pub chi: f64,
    /// Evaluate the table at this time instead of the calibrated one.
    #[arg(long)]
    pub time: Option<f64>,
    /// Write the calibration record here.
    #[arg(long)]
    pub json: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct SweepArgs {
    /// Comma-separated metric names, or `all`.
    #[arg(long)]
    pub metrics: String,
    /// Dimension list (`2,3,4`, `2:64`, `2:256:pow2`, `default`).
    #[arg(long)]
    pub dims: String,
}

/// Parses arguments and runs; clap's own usage errors exit with code 2.
pub fn main_entry() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

pub fn run(cli: &Cli) -> CliResult<()> {
    let tol = cli
        .global
        .tol
        .map(Tolerance::new)
        .transpose()
        .map_err(CliError::from)?;
    match &cli.command {
        Command::Ops {
            action: OpsAction::Build(args),
        } => cmd_build(args, &cli.global),
        Command::Verify(args) => cmd_verify(args, &cli.global, tol),
        Command::SumDemo(args) => cmd_sum_demo(args, &cli.global),
        Command::Sweep(args) => cmd_sweep(args, &cli.global),
    }
}

fn emit(text: &str, out: Option<&Path>) -> CliResult<()> {
    match out {
        Some(path) => fs::write(path, text).map_err(|e| CliError::io(path, e)),
        None => {
            let mut stdout = io::stdout().lock();
            stdout
                .write_all(text.as_bytes())
                .and_then(|_| stdout.flush())
                .map_err(|e| CliError::Io(format!("stdout: {e}")))
        }
    }
}

fn to_json<T: Serialize>(value: &T, pretty: bool) -> CliResult<String> {
    let mut s = json::to_string(value, pretty).map_err(|e| CliError::Io(e.to_string()))?;
    s.push('\n');
    Ok(s)
}

#[derive(Serialize)]
struct NumberExport<'a> {
    rep: &'static str,
    d: usize,
    #[serde(rename = "N")]
    n: &'a ComplexMatrix,
    #[serde(rename = "X")]
    x: &'a ComplexMatrix,
    #[serde(rename = "Z")]
    z: &'a ComplexMatrix,
    theta_z: &'a ComplexMatrix,
    dft_sign: i32,
}

#[derive(Serialize)]
struct WeightExport<'a> {
    rep: &'static str,
    d: usize,
    #[serde(rename = "X")]
    x: &'a ComplexMatrix,
    #[serde(rename = "Z")]
    z: &'a ComplexMatrix,
    theta_z: &'a ComplexMatrix,
    dft_sign: i32,
}

#[derive(Serialize)]
struct PhaseExport<'a> {
    rep: &'static str,
    d: usize,
    phase_states: ComplexMatrix,
    x_op: &'a ComplexMatrix,
    z_op: &'a ComplexMatrix,
    theta_x: &'a ComplexMatrix,
    sign: i32,
    half_offset: f64,
}

/// Builds the requested representation and returns its JSON export.
pub fn build_json(rep: RepArg, dim: usize, pretty: bool) -> CliResult<String> {
    let d = QuditDim::new(dim)?;
    match rep {
        RepArg::Number => {
            let r = build_number_rep(d)?;
            to_json(
                &NumberExport {
                    rep: "number",
                    d: dim,
                    n: r.n_op(),
                    x: r.x_op(),
                    z: r.z_op(),
                    theta_z: r.theta_z(),
                    dft_sign: r.phase_sign().value(),
                },
                pretty,
            )
        }
        RepArg::Weight => {
            let r = build_weight_rep(d)?;
            to_json(
                &WeightExport {
                    rep: "weight",
                    d: dim,
                    x: r.x_op(),
                    z: r.z_op(),
                    theta_z: r.theta_z(),
                    dft_sign: r.phase_sign().value(),
                },
                pretty,
            )
        }
        RepArg::Phase => {
            let r = build_phase_rep(d)?;
            to_json(
                &PhaseExport {
                    rep: "phase",
                    d: dim,
                    phase_states: r.phase_state_matrix(),
                    x_op: r.x_op(),
                    z_op: r.z_op(),
                    theta_x: r.theta_x(),
                    sign: r.sign().value(),
                    half_offset: r.half_offset(),
                },
                pretty,
            )
        }
    }
}

pub fn cmd_build(args: &BuildArgs, global: &GlobalOpts) -> CliResult<()> {
    let pretty = match global.format {
        None | Some(OutputFormat::Json) => false,
        Some(OutputFormat::Pretty) => true,
        Some(OutputFormat::Csv) => {
            return Err(CliError::Config("ops build writes JSON; use --format json or pretty".into()))
        }
    };
    emit(&build_json(args.rep, args.dim, pretty)?, global.out.as_deref())
}

/// Runs the requested suite for every dimension in `dims`.
pub fn verify_checks(
    suite: Suite,
    dims: &[usize],
    reps: &[RepKind],
    tol: Option<Tolerance>,
) -> CliResult<Vec<Check>> {
    let mut checks = Vec::new();
    for &n in dims {
        checks.extend(run_suite(suite, QuditDim::new(n)?, reps, tol));
    }
    Ok(checks)
}

fn fmt_opt(v: Option<f64>) -> String {
    v.map_or_else(|| "n/a".to_string(), json::fmt_f64)
}

pub fn render_checks(checks: &[Check], format: OutputFormat) -> CliResult<String> {
    match format {
        OutputFormat::Json => to_json(&checks, false),
        OutputFormat::Csv => {
            let mut s = String::from("suite,d,check,residual,tolerance,passed\n");
            for c in checks {
                s.push_str(&format!(
                    "{},{},\"{}\",{},{},{}\n",
                    c.suite,
                    c.d,
                    c.name.replace('"', "\"\""),
                    fmt_opt(c.residual),
                    json::fmt_f64(c.tolerance),
                    c.passed
                ));
            }
            Ok(s)
        }
        OutputFormat::Pretty => {
            let width = checks.iter().map(|c| c.name.chars().count()).max().unwrap_or(0);
            let mut s = String::new();
            for c in checks {
                let pad = width - c.name.chars().count();
                s.push_str(&format!(
                    "{:<4} {:<6} d={:<4} {}{}  residual {:>24}  tol {:.1e}",
                    if c.passed { "ok" } else { "FAIL" },
                    c.suite,
                    c.d,
                    c.name,
                    " ".repeat(pad),
                    fmt_opt(c.residual),
                    c.tolerance,
                ));
                if !c.detail.is_empty() {
                    s.push_str(&format!("  ({})", c.detail));
                }
                s.push('\n');
            }
            let failed = checks.iter().filter(|c| !c.passed).count();
            s.push_str(&format!("{} checks, {} failed\n", checks.len(), failed));
            Ok(s)
        }
    }
}

pub fn cmd_verify(args: &VerifyArgs, global: &GlobalOpts, tol: Option<Tolerance>) -> CliResult<()> {
    let suite: Suite = args.suite.parse()?;
    let dims = parse_dims(&args.dim)?;
    let reps: Vec<RepKind> = if args.rep.is_empty() {
        RepKind::ALL.to_vec()
    } else {
        args.rep.iter().copied().map(RepKind::from).collect()
    };
    let checks = verify_checks(suite, &dims, &reps, tol)?;
    let text = render_checks(&checks, global.format.unwrap_or(OutputFormat::Pretty))?;
    emit(&text, global.out.as_deref())?;
    let failed = checks.iter().filter(|c| !c.passed).count();
    if failed > 0 {
        return Err(CliError::Invariant(format!("{failed} of {} checks failed", checks.len())));
    }
    Ok(())
}

/// One row of the SUM truth table.
#[derive(Clone, Debug, Serialize)]
pub struct TruthRow {
    pub s1: usize,
    pub s2: usize,
    pub target: usize,
    pub decoded: usize,
    pub fidelity: f64,
}

#[derive(Serialize)]
struct SumDemoReport<'a> {
    calibration: &'a SumCalibration,
    chi_t: f64,
    time: f64,
    worst_fidelity: f64,
    table: &'a [TruthRow],
}

/// Calibrates at coupling `chi` and tabulates every basis input at `time`
/// (the calibrated time if `None`).
pub fn sum_truth_table(
    dim: usize,
    chi: f64,
    time: Option<f64>,
) -> CliResult<(SumCalibration, f64, Vec<TruthRow>)> {
    let d = QuditDim::new(dim)?;
    if dim > SUM_DEMO_MAX_DIM {
        return Err(CliError::Config(format!(
            "sum-demo tabulates d² inputs; d must be ≤ {SUM_DEMO_MAX_DIM} (got {dim})"
        )));
    }
    if let Some(t) = time {
        if !t.is_finite() {
            return Err(CliError::Config(format!("non-finite time {t}")));
        }
    }
    let cal = calibrate_sum(d, chi)?;
    let t = time.unwrap_or(cal.t_star);
    let fidelities = sum_fidelity_table(d, chi * t, cal.sign);
    let mut rows = Vec::with_capacity(dim * dim);
    for s1 in 0..dim {
        for s2 in 0..dim {
            let (decoded, _) = fractional_sum_label(&cal, s1, s2, t)?;
            rows.push(TruthRow {
                s1,
                s2,
                target: (s1 + s2) % dim,
                decoded,
                fidelity: fidelities[s1 * dim + s2],
            });
        }
    }
    Ok((cal, t, rows))
}

pub fn cmd_sum_demo(args: &SumDemoArgs, global: &GlobalOpts) -> CliResult<()> {
    let (cal, t, rows) = sum_truth_table(args.dim, args.chi, args.time)?;
    let worst = rows.iter().map(|r| r.fidelity).fold(f64::INFINITY, f64::min);
    if let Some(path) = &args.json {
        fs::write(path, to_json(&cal, false)?).map_err(|e| CliError::io(path, e))?;
    }
    let text = match global.format.unwrap_or(OutputFormat::Pretty) {
        OutputFormat::Json => to_json(
            &SumDemoReport {
                calibration: &cal,
                chi_t: cal.chi * t,
                time: t,
                worst_fidelity: worst,
                table: &rows,
            },
            false,
        )?,
        OutputFormat::Csv => {
            let mut s = String::from("s1,s2,target,decoded,fidelity\n");
            for r in &rows {
                s.push_str(&format!(
                    "{},{},{},{},{}\n",
                    r.s1,
                    r.s2,
                    r.target,
                    r.decoded,
                    json::fmt_f64(r.fidelity)
                ));
            }
            s
        }
        OutputFormat::Pretty => {
            let mut s = format!(
                "SUM calibration d={} chi={}: chi*t = {} (t* = {}), phase-state sign {:+}, worst fidelity {}\n",
                cal.d,
                json::fmt_f64(cal.chi),
                json::fmt_f64(cal.chi_t()),
                json::fmt_f64(cal.t_star),
                cal.sign.value(),
                json::fmt_f64(cal.fidelity),
            );
            if args.time.is_some() {
                s.push_str(&format!("table evaluated at t = {}\n", json::fmt_f64(t)));
            }
            s.push_str("|s1⟩|θ_s2⟩ → |s1⟩|θ_k⟩   target  decoded  fidelity\n");
            for r in &rows {
                s.push_str(&format!(
                    "  {:>3} {:>3}              {:>6}  {:>7}  {}{}\n",
                    r.s1,
                    r.s2,
                    r.target,
                    r.decoded,
                    json::fmt_f64(r.fidelity),
                    if r.decoded == r.target { "" } else { "  *" },
                ));
            }
            s.push_str(&format!("worst fidelity {}\n", json::fmt_f64(worst)));
            s
        }
    };
    emit(&text, global.out.as_deref())?;
    if args.time.is_none() && worst < SUM_FIDELITY_FLOOR {
        return Err(CliError::Invariant(format!("SUM fidelity {worst} below floor")));
    }
    Ok(())
}

/// Runs a sweep and renders it.
pub fn sweep_output(metrics: &str, dims: &str, format: OutputFormat) -> CliResult<String> {
    let metrics = Metric::parse_list(metrics)?;
    let dims = parse_dims(dims)?;
    let records = run_sweep(&metrics, &dims)?;
    render_records(&records, format)
}

fn render_records(records: &[SweepRecord], format: OutputFormat) -> CliResult<String> {
    match format {
        OutputFormat::Csv => {
            let mut buf = Vec::new();
            write_csv(records, &mut buf).map_err(|e| CliError::Io(e.to_string()))?;
            String::from_utf8(buf).map_err(|e| CliError::Io(e.to_string()))
        }
        OutputFormat::Json => to_json(&records, false),
        OutputFormat::Pretty => {
            let mut s = String::new();
            for r in records {
                s.push_str(&format!("{:<28} d={:<5} {}\n", r.metric, r.d, json::fmt_f64(r.value)));
            }
            Ok(s)
        }
    }
}

pub fn cmd_sweep(args: &SweepArgs, global: &GlobalOpts) -> CliResult<()> {
    let text = sweep_output(
        &args.metrics,
        &args.dims,
        global.format.unwrap_or(OutputFormat::Csv),
    )?;
    emit(&text, global.out.as_deref())
}
