//! Command-line front end.
//!
//! Exit codes: 0 success, 1 invalid input, 2 verification failure.

pub mod json;

use std::fs;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::channel::{
    classify_regime, etw_split, hk_params, make_channel, outer_params, useful_inequalities,
    ChannelInstance, PowerSplit, RegimeLabel,
};
use crate::error::{Error, Result};
use crate::fourier_motzkin::project_to_rates;
use crate::gdof::{alpha_grid, gdof_sweep};
use crate::polyhedra::{regions_equal, slice_2d};
use crate::regions::{
    achievable_region, gap_report, outer_region, strong_region, ts_region_3, InnerRegion,
};
use crate::sampling::{db_to_linear, rng, weak_instance};
use crate::system::InequalitySystem;

pub use json::{fmt_g17, parse_json, render_json};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID: i32 = 1;
pub const EXIT_VERIFY: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "cyclic-ic",
    version,
    about = "Rate regions of the K-user cyclic Gaussian interference channel"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Han-Kobayashi achievable region as JSON.
    Region(ScenarioArgs),
    /// Weak-regime outer bound as JSON.
    Outer(ScenarioArgs),
    /// Three-user time-sharing region as JSON.
    Ts3(ScenarioArgs),
    /// Strong-regime capacity region as JSON.
    Strong(ScenarioArgs),
    /// Matched-family deltas and certified gap as JSON.
    Gap(GapArgs),
    /// Fourier-Motzkin projection against the closed-form region on random weak channels.
    VerifyFm(VerifyArgs),
    /// Symmetric GDoF curve as CSV.
    Gdof(GdofArgs),
    /// 2-D cross-section of a region as CSV polygon vertices.
    Slice(SliceArgs),
    /// Per-user gap inequalities as JSON.
    CheckIneq(ScenarioArgs),
}

/// Channel scenario given in dB.
#[derive(Debug, Clone, Args)]
pub struct ScenarioArgs {
    #[arg(long)]
    k: usize,
    /// Comma-separated SNR values in dB.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    snr_db: Vec<f64>,
    /// Comma-separated INR values in dB.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    inr_db: Vec<f64>,
    /// `etw`, `private-only`, or a comma-separated list of private INRs in dB.
    #[arg(long, default_value = "etw", allow_hyphen_values = true)]
    split: String,
    /// Output file; stdout when absent.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct GapArgs {
    #[command(flatten)]
    scenario: ScenarioArgs,
    /// Certify the three-user time-sharing region instead (K = 3).
    #[arg(long)]
    ts3: bool,
}

#[derive(Debug, Args)]
struct VerifyArgs {
    #[arg(long)]
    k: usize,
    #[arg(long)]
    trials: usize,
    #[arg(long)]
    seed: u64,
}

#[derive(Debug, Args)]
struct GdofArgs {
    #[arg(long)]
    k: usize,
    #[arg(long, allow_hyphen_values = true)]
    alpha_min: f64,
    #[arg(long, allow_hyphen_values = true)]
    alpha_max: f64,
    #[arg(long)]
    steps: usize,
    #[arg(long, allow_hyphen_values = true)]
    snr_db: f64,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum RegionKind {
    Achievable,
    Outer,
    Ts3,
    Strong,
}

#[derive(Debug, Args)]
struct SliceArgs {
    #[command(flatten)]
    scenario: ScenarioArgs,
    #[arg(long, value_enum, default_value = "achievable")]
    region: RegionKind,
    /// First axis, 1-based user index.
    #[arg(long)]
    i: usize,
    /// Second axis, 1-based user index.
    #[arg(long)]
    j: usize,
    /// Rates of the remaining users in increasing index order.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    fix: Vec<f64>,
}

/// A validated scenario.
#[derive(Debug, Clone, PartialEq)]
pub struct Scenario {
    pub channel: ChannelInstance,
    pub split: PowerSplit,
}

impl ScenarioArgs {
    pub fn scenario(&self) -> Result<Scenario> {
        let snr: Vec<f64> = self.snr_db.iter().map(|&v| db_to_linear(v)).collect();
        let inr: Vec<f64> = self.inr_db.iter().map(|&v| db_to_linear(v)).collect();
        let channel = make_channel(self.k, &snr, &inr)?;
        let split = parse_split(&self.split, &channel)?;
        Ok(Scenario { channel, split })
    }
}

fn parse_split(text: &str, ch: &ChannelInstance) -> Result<PowerSplit> {
    match text {
        "etw" => Ok(etw_split(ch)),
        "private-only" => Ok(PowerSplit::private_only(ch)),
        list => {
            let vals = list
                .split(',')
                .map(|s| s.trim().parse::<f64>().map(db_to_linear))
                .collect::<std::result::Result<Vec<f64>, _>>()
                .map_err(|e| Error::InvalidParameter(format!("split `{list}`: {e}")))?;
            PowerSplit::new(ch, vals)
        }
    }
}

enum Failure {
    Invalid(String),
    Verify(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Invalid(e.to_string())
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Invalid(e.to_string())
    }
}

fn emit(
    out: &Option<PathBuf>,
    text: &str,
    stdout: &mut dyn Write,
) -> std::result::Result<(), Failure> {
    match out {
        Some(path) => fs::write(path, text)?,
        None => stdout.write_all(text.as_bytes())?,
    }
    Ok(())
}

fn emit_system(
    args: &ScenarioArgs,
    sys: &InequalitySystem,
    stdout: &mut dyn Write,
) -> std::result::Result<(), Failure> {
    let mut text = render_json(sys);
    text.push('\n');
    emit(&args.out, &text, stdout)
}

fn emit_json<T: Serialize>(
    out: &Option<PathBuf>,
    value: &T,
    stdout: &mut dyn Write,
) -> std::result::Result<(), Failure> {
    let mut text = serde_json::to_string(value).map_err(|e| Failure::Invalid(e.to_string()))?;
    text.push('\n');
    emit(out, &text, stdout)
}

/// Builds the requested region for a scenario.
fn region_for(kind: RegionKind, sc: &Scenario) -> Result<InequalitySystem> {
    let k = sc.channel.k();
    match kind {
        RegionKind::Achievable => achievable_region(&hk_params(&sc.channel, &sc.split)?, k),
        RegionKind::Outer => outer_region(&outer_params(&sc.channel), k),
        RegionKind::Ts3 => ts_region_3(&hk_params(&sc.channel, &sc.split)?),
        RegionKind::Strong => strong_region(&sc.channel),
    }
}

/// Certified-gap ceilings for the two weak-regime pipelines.
pub const TWO_BIT_GAP: f64 = 2.0;
pub const TS3_GAP: f64 = 1.5;

fn dispatch(
    cmd: Command,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> std::result::Result<(), Failure> {
    match cmd {
        Command::Region(a) => emit_system(
            &a,
            &region_for(RegionKind::Achievable, &a.scenario()?)?,
            stdout,
        ),
        Command::Outer(a) => {
            emit_system(&a, &region_for(RegionKind::Outer, &a.scenario()?)?, stdout)
        }
        Command::Ts3(a) => emit_system(&a, &region_for(RegionKind::Ts3, &a.scenario()?)?, stdout),
        Command::Strong(a) => {
            emit_system(&a, &region_for(RegionKind::Strong, &a.scenario()?)?, stdout)
        }
        Command::Gap(a) => {
            let sc = a.scenario.scenario()?;
            let inner = if a.ts3 {
                InnerRegion::TimeSharing3
            } else {
                InnerRegion::Achievable
            };
            let report = gap_report(&sc.channel, &sc.split, inner)?;
            emit_json(&a.scenario.out, &report, stdout)?;
            let ceiling = if a.ts3 { TS3_GAP } else { TWO_BIT_GAP };
            if !report.all_pass() || report.certified_b > ceiling + 1e-9 {
                return Err(Failure::Verify(format!(
                    "gap check failed: certified_b = {} (ceiling {ceiling})",
                    report.certified_b
                )));
            }
            Ok(())
        }
        Command::VerifyFm(a) => verify_fm(&a, stdout, stderr),
        Command::Gdof(a) => {
            let grid = alpha_grid(a.alpha_min, a.alpha_max, a.steps);
            let pts = gdof_sweep(a.k, &grid, db_to_linear(a.snr_db))?;
            let mut text = String::from("alpha,snr_db,dsym_lower,dsym_upper,dsym_formula\n");
            for p in pts {
                text.push_str(&format!(
                    "{},{},{},{},{}\n",
                    fmt_g17(p.alpha),
                    fmt_g17(a.snr_db),
                    fmt_g17(p.dsym_lower),
                    fmt_g17(p.dsym_upper),
                    fmt_g17(p.dsym_formula)
                ));
            }
            emit(&a.out, &text, stdout)
        }
        Command::Slice(a) => {
            let sc = a.scenario.scenario()?;
            let sys = region_for(a.region, &sc)?;
            let k = sc.channel.k();
            if a.i == 0 || a.j == 0 || a.i > k || a.j > k {
                return Err(Failure::Invalid(format!("slice axes must lie in 1..={k}")));
            }
            let sl = slice_2d(&sys, a.i - 1, a.j - 1, &a.fix)?;
            if !sl.feasible {
                writeln!(stderr, "slice is empty: fixed rates are infeasible")?;
            }
            let mut text = String::from("x,y\n");
            for v in &sl.vertices {
                text.push_str(&format!("{},{}\n", fmt_g17(v[0]), fmt_g17(v[1])));
            }
            emit(&a.scenario.out, &text, stdout)
        }
        Command::CheckIneq(a) => {
            let sc = a.scenario()?;
            let hk = hk_params(&sc.channel, &sc.split)?;
            let report = useful_inequalities(&sc.channel, &hk, &outer_params(&sc.channel));
            emit_json(&a.out, &report, stdout)?;
            if report.regime == RegimeLabel::Weak && !report.all_pass() {
                return Err(Failure::Verify("gap inequality violated".into()));
            }
            Ok(())
        }
    }
}

fn verify_fm(
    a: &VerifyArgs,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> std::result::Result<(), Failure> {
    if a.k < 2 {
        return Err(Error::TooFewUsers(a.k).into());
    }
    let mut gen = rng(a.seed);
    let mut failures = 0usize;
    for t in 0..a.trials {
        let ch = weak_instance(&mut gen, a.k);
        debug_assert_eq!(classify_regime(&ch), RegimeLabel::Weak);
        let hk = hk_params(&ch, &etw_split(&ch))?;
        let projected = project_to_rates(&hk, a.k)?;
        let closed = achievable_region(&hk, a.k)?;
        if !regions_equal(&projected, &closed)? {
            failures += 1;
            writeln!(
                stderr,
                "mismatch: seed {} trial {t} snr {:?} inr {:?}",
                a.seed,
                ch.snr(),
                ch.inr()
            )?;
        }
    }
    writeln!(
        stdout,
        "verify-fm k={} trials={} seed={} failures={failures}",
        a.k, a.trials, a.seed
    )?;
    if failures > 0 {
        return Err(Failure::Verify(format!(
            "{failures} of {} instances differ",
            a.trials
        )));
    }
    Ok(())
}

/// Runs the CLI on `argv` (including the program name) with explicit
/// output streams and returns the exit code.
pub fn run_with<I, T>(argv: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => EXIT_OK,
                _ => EXIT_INVALID,
            };
            let _ = write!(stderr, "{e}");
            return code;
        }
    };
    match dispatch(cli.command, stdout, stderr) {
        Ok(()) => EXIT_OK,
        Err(Failure::Invalid(msg)) => {
            let _ = writeln!(stderr, "error: {msg}");
            EXIT_INVALID
        }
        Err(Failure::Verify(msg)) => {
            let _ = writeln!(stderr, "verification failed: {msg}");
            EXIT_VERIFY
        }
    }
}

/// Runs the CLI against the process's stdout and stderr.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_with(argv, &mut stdout.lock(), &mut stderr.lock())
}
