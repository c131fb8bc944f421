//! Command-line front end.
//!
//! Exit codes: 0 success, 1 validation failure (bad flags, parameters or
//! files), 2 verification failure (fidelity below threshold).

use std::ffi::OsString;
use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::bounds::{bound_apm1, bound_apm3, bound_fapm};
use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::hybrid::{hybrid_select, simplified_hybrid};
use crate::propagator::{default_oracle_step, propagate, rk4_oracle};
use crate::schedule_file::ScheduleFile;
use crate::spin::{fidelity, BlochAngles};
use crate::sweep::{sweep, write_csv, SweepQuantity};
use crate::synthesis::{Algorithm, PhysicalParams, SynthesisResult};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID: i32 = 1;
pub const EXIT_VERIFY_FAILED: i32 = 2;

/// A schedule passes verification at this fidelity.
pub const VERIFY_THRESHOLD: f64 = 1.0 - 1e-6;

/// Slack on the `[0, π]` polar-angle check for values typed as decimals.
const THETA_SLACK: f64 = 1e-12;

#[derive(Debug, Parser)]
#[command(
    name = "spinmod",
    version,
    about = "Exact APM/FAPM pulse synthesis for spin-1/2 state transfer"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Synthesize a schedule and write it as JSON.
    Synthesize(SynthesizeArgs),
    /// Replay a schedule file and report the fidelity to a target.
    Verify(VerifyArgs),
    /// Sweep approximate transition times over a (theta0, thetaf) grid as CSV.
    Sweep(SweepArgs),
    /// Print the worst-case transition-time bounds.
    Bounds(EnvelopeArgs),
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum AlgoChoice {
    Apm1,
    Apm3,
    Fapm1,
    Fapm2,
    Hybrid,
    HybridSimple,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum Method {
    Analytic,
    Rk4,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum QuantityChoice {
    Apm1,
    Fapm1,
    Diff,
    HybridMin,
}

impl From<QuantityChoice> for SweepQuantity {
    fn from(q: QuantityChoice) -> Self {
        match q {
            QuantityChoice::Apm1 => SweepQuantity::Apm1,
            QuantityChoice::Fapm1 => SweepQuantity::Fapm1,
            QuantityChoice::Diff => SweepQuantity::Diff,
            QuantityChoice::HybridMin => SweepQuantity::HybridMin,
        }
    }
}

#[derive(Debug, Clone, Args)]
pub struct EnvelopeArgs {
    /// Larmor frequency (rad/s).
    #[arg(long, allow_hyphen_values = true)]
    pub omega0: f64,
    /// Maximum Rabi frequency (rad/s).
    #[arg(long, allow_hyphen_values = true)]
    pub omega1max: f64,
    /// Carrier band below resonance (rad/s).
    #[arg(long = "wb-minus", allow_hyphen_values = true)]
    pub wb_minus: f64,
    /// Carrier band above resonance (rad/s).
    #[arg(long = "wb-plus", allow_hyphen_values = true)]
    pub wb_plus: f64,
}

impl EnvelopeArgs {
    fn params(&self) -> Result<PhysicalParams> {
        PhysicalParams::new(self.omega0, self.omega1max, self.wb_minus, self.wb_plus)
    }
}

#[derive(Debug, Clone, Args)]
pub struct StateArgs {
    #[arg(long, allow_hyphen_values = true)]
    pub theta0: f64,
    #[arg(long, allow_hyphen_values = true)]
    pub phi0: f64,
    #[arg(long, allow_hyphen_values = true)]
    pub thetaf: f64,
    #[arg(long, allow_hyphen_values = true)]
    pub phif: f64,
}

impl StateArgs {
    fn angles(&self) -> Result<(BlochAngles, BlochAngles)> {
        Ok((
            polar(self.theta0, self.phi0, "theta0")?,
            polar(self.thetaf, self.phif, "thetaf")?,
        ))
    }
}

fn polar(theta: f64, phi: f64, name: &str) -> Result<BlochAngles> {
    let angles = BlochAngles::try_new(theta, phi)?;
    if !(-THETA_SLACK..=std::f64::consts::PI + THETA_SLACK).contains(&theta) {
        return Err(Error::InvalidAngle(format!(
            "{name} = {theta} is outside [0, pi]"
        )));
    }
    Ok(angles)
}

#[derive(Debug, Clone, Args)]
pub struct SynthesizeArgs {
    #[arg(long, value_enum)]
    pub algo: AlgoChoice,
    #[command(flatten)]
    pub states: StateArgs,
    #[command(flatten)]
    pub envelope: EnvelopeArgs,
    /// Start time (s).
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    pub t0: f64,
    /// Output schedule file.
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Clone, Args)]
pub struct VerifyArgs {
    #[arg(long)]
    pub schedule: PathBuf,
    #[command(flatten)]
    pub states: StateArgs,
    /// Larmor frequency (rad/s); must match the file when given.
    #[arg(long, allow_hyphen_values = true)]
    pub omega0: Option<f64>,
    #[arg(long, value_enum, default_value = "analytic")]
    pub method: Method,
    /// RK4 step (s); defaults to 1/200 of the fastest carrier period.
    #[arg(long, allow_hyphen_values = true)]
    pub dt: Option<f64>,
}

#[derive(Debug, Clone, Args)]
pub struct SweepArgs {
    #[arg(long, default_value_t = 101)]
    pub grid: usize,
    #[arg(long, value_enum)]
    pub quantity: QuantityChoice,
    #[command(flatten)]
    pub envelope: EnvelopeArgs,
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    pub phi0: f64,
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    pub phif: f64,
    /// Write CSV here instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

/// Parses `args` (program name first) and runs the command.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(stdout, "{e}");
                    EXIT_OK
                }
                _ => {
                    let _ = write!(stderr, "{e}");
                    EXIT_INVALID
                }
            };
        }
    };
    match execute(&cli.command, stdout) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            EXIT_INVALID
        }
    }
}

pub fn execute(command: &Command, out: &mut dyn Write) -> Result<i32> {
    match command {
        Command::Synthesize(a) => cmd_synthesize(a, out),
        Command::Verify(a) => cmd_verify(a, out),
        Command::Sweep(a) => cmd_sweep(a, out),
        Command::Bounds(a) => cmd_bounds(a, out),
    }
}

pub fn synthesize(args: &SynthesizeArgs) -> Result<SynthesisResult> {
    let params = args.envelope.params()?;
    let (init, target) = args.states.angles()?;
    if !args.t0.is_finite() {
        return Err(Error::InvalidParams("t0 must be finite".into()));
    }
    let t0 = args.t0;
    match args.algo {
        AlgoChoice::Apm1 => Algorithm::Apm1.synthesize(&params, init, target, t0),
        AlgoChoice::Apm3 => Algorithm::Apm3.synthesize(&params, init, target, t0),
        AlgoChoice::Fapm1 => Algorithm::Fapm1.synthesize(&params, init, target, t0),
        AlgoChoice::Fapm2 => Algorithm::Fapm2.synthesize(&params, init, target, t0),
        AlgoChoice::Hybrid => hybrid_select(&params, init, target, t0),
        AlgoChoice::HybridSimple => simplified_hybrid(&params, init, target, t0),
    }
}

pub fn cmd_synthesize(args: &SynthesizeArgs, out: &mut dyn Write) -> Result<i32> {
    let result = synthesize(args)?;
    ScheduleFile::new(args.envelope.omega0, &result.schedule).write(&args.out)?;
    writeln!(
        out,
        "algorithm={} k={} transition_time={:e} s segments={}",
        result.algorithm,
        result.k_index,
        result.transition_time,
        result.schedule.segments.len()
    )?;
    Ok(EXIT_OK)
}

pub fn cmd_verify(args: &VerifyArgs, out: &mut dyn Write) -> Result<i32> {
    let file = ScheduleFile::read(&args.schedule)?;
    if let Some(w0) = args.omega0 {
        if w0 != file.omega0 {
            return Err(Error::InvalidParams(format!(
                "--omega0 {w0} does not match the schedule file ({})",
                file.omega0
            )));
        }
    }
    let (init, target) = args.states.angles()?;
    let schedule = file.schedule();
    let psi0 = init.to_state();

    let fid = match args.method {
        Method::Analytic => {
            let fid = fidelity(
                &propagate(file.omega0, &schedule, &psi0),
                &target.to_state(),
            );
            writeln!(out, "method=analytic fidelity={fid:e}")?;
            fid
        }
        Method::Rk4 => {
            let dt = args
                .dt
                .unwrap_or_else(|| default_oracle_step(file.omega0, &schedule));
            let r = rk4_oracle(file.omega0, &schedule, &psi0, dt)?;
            let fid = fidelity(&r.state, &target.to_state());
            writeln!(
                out,
                "method=rk4 fidelity={fid:e} norm_drift={:e} steps={} dt={dt:e}",
                r.max_norm_drift, r.steps
            )?;
            fid
        }
    };
    if fid >= VERIFY_THRESHOLD {
        writeln!(out, "PASS")?;
        Ok(EXIT_OK)
    } else {
        writeln!(out, "FAIL (threshold {VERIFY_THRESHOLD:e})")?;
        Ok(EXIT_VERIFY_FAILED)
    }
}

pub fn cmd_sweep(args: &SweepArgs, out: &mut dyn Write) -> Result<i32> {
    let params = args.envelope.params()?;
    if !(args.phi0.is_finite() && args.phif.is_finite()) {
        return Err(Error::InvalidAngle("phi0/phif must be finite".into()));
    }
    let rows = sweep(
        Execution::default(),
        args.quantity.into(),
        &params,
        args.grid,
        args.phi0,
        args.phif,
    )?;
    match &args.out {
        Some(path) => {
            let mut w = BufWriter::new(File::create(path)?);
            write_csv(&mut w, &rows)?;
            w.flush()?;
        }
        None => write_csv(out, &rows)?,
    }
    Ok(EXIT_OK)
}

pub fn cmd_bounds(args: &EnvelopeArgs, out: &mut dyn Write) -> Result<i32> {
    let p = args.params()?;
    writeln!(out, "algorithm,bound_s")?;
    writeln!(out, "APM3,{:e}", bound_apm3(&p))?;
    writeln!(out, "APM1,{:e}", bound_apm1(&p))?;
    writeln!(out, "FAPM2,{:e}", bound_fapm(&p))?;
    writeln!(out, "FAPM1,{:e}", bound_fapm(&p))?;
    Ok(EXIT_OK)
}
