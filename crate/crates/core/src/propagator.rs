//! Exact and numerical evolution of a spin under piecewise-constant drive.
//!
//! Within a segment the lab-frame equation of motion is
//!
//! ```text
//! dψ/dt = i{ω0·Sz + ω1·[Sx·cos(ωrf·t + φ) − Sy·sin(ωrf·t + φ)]}ψ
//! ```
//!
//! Going to the frame co-rotating with the carrier makes the generator
//! constant, `(ω0 − ωrf)·Sz + ω1·Sx = Ru·S_θu`, so each segment has the
//! closed-form propagator
//! `e^{i(ωrf·Δt + φ1)Sz} · exp{i·Ru·Δt·S_θu} · e^{−iφ1·Sz}` where `φ1` is the
//! carrier phase at the segment start.
//!
//! [`rk4_oracle`] integrates the lab-frame equation directly and shares no
//! code with the analytic route beyond the state type.

use std::f64::consts::TAU;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::spin::{rot_z, su2_exp, SpinState, TiltedAxis, Unitary2, C64};

/// Samples per carrier period for the default oracle step.
pub const DEFAULT_SAMPLES_PER_PERIOD: f64 = 200.0;

/// One constant-parameter stretch of drive.
///
/// `phi` is the absolute-lab-time carrier phase: the drive is
/// `cos(ωrf·t + φ)` with `t` the lab clock, not the time since segment start.
/// `omega1 = 0` is free precession.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PulseSegment {
    pub duration: f64,
    pub omega1: f64,
    pub omega_rf: f64,
    pub phi: f64,
}

impl PulseSegment {
    /// Undriven precession; the carrier fields are placeholders.
    pub fn free(duration: f64, omega0: f64) -> Self {
        Self {
            duration,
            omega1: 0.0,
            omega_rf: omega0,
            phi: 0.0,
        }
    }

    /// Carrier phase referenced to a segment that starts at lab time `tau`.
    pub fn start_phase(&self, tau: f64) -> f64 {
        self.phi + self.omega_rf * tau
    }

    fn validate(&self, index: usize) -> Result<()> {
        let bad = |what: &str| Err(Error::InvalidSchedule(format!("segment {index}: {what}")));
        if !(self.duration.is_finite() && self.duration >= 0.0) {
            return bad("duration must be finite and >= 0");
        }
        if !(self.omega1.is_finite() && self.omega1 >= 0.0) {
            return bad("omega1 must be finite and >= 0");
        }
        if !(self.omega_rf.is_finite() && self.omega_rf > 0.0) {
            return bad("omega_rf must be finite and > 0");
        }
        if !self.phi.is_finite() {
            return bad("phi must be finite");
        }
        Ok(())
    }
}

/// Contiguous segments starting at lab time `t0`.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Schedule {
    pub t0: f64,
    pub segments: Vec<PulseSegment>,
}

impl Schedule {
    pub fn new(t0: f64, segments: Vec<PulseSegment>) -> Self {
        Self { t0, segments }
    }

    /// Total duration, `t_f − t0`.
    pub fn duration(&self) -> f64 {
        self.segments.iter().map(|s| s.duration).sum()
    }

    pub fn end_time(&self) -> f64 {
        self.t0 + self.duration()
    }

    /// Segment start times, in lab time.
    pub fn boundaries(&self) -> Vec<f64> {
        let mut tau = self.t0;
        self.segments
            .iter()
            .map(|s| {
                let start = tau;
                tau += s.duration;
                start
            })
            .collect()
    }

    pub fn validate(&self) -> Result<()> {
        if !self.t0.is_finite() {
            return Err(Error::InvalidSchedule("t0 must be finite".into()));
        }
        self.segments
            .iter()
            .enumerate()
            .try_for_each(|(i, s)| s.validate(i))
    }

    pub fn max_carrier(&self) -> f64 {
        self.segments.iter().map(|s| s.omega_rf).fold(0.0, f64::max)
    }
}

/// Effective rotation in the carrier frame: rate `r_u` about `S_θu`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RotatingFrameParams {
    pub r_u: f64,
    pub theta_u: f64,
}

pub fn rotating_frame_params(omega0: f64, seg: &PulseSegment) -> RotatingFrameParams {
    let detuning = omega0 - seg.omega_rf;
    let r_u = detuning.hypot(seg.omega1);
    // atan2(0, 0) = 0 gives the degenerate-axis convention for free
    let theta_u = seg.omega1.atan2(detuning);
    RotatingFrameParams { r_u, theta_u }
}

/// Closed-form propagator of one segment starting with carrier phase `phi1`.
pub fn segment_propagator(omega0: f64, seg: &PulseSegment, phi1: f64) -> Unitary2 {
    let dt = seg.duration;
    let frame = rotating_frame_params(omega0, seg);
    rot_z(seg.omega_rf * dt + phi1)
        * su2_exp(TiltedAxis::new(frame.theta_u), frame.r_u * dt)
        * rot_z(-phi1)
}

/// Full-schedule propagator, `U_n ⋯ U_1`.
pub fn schedule_propagator(omega0: f64, schedule: &Schedule) -> Unitary2 {
    let mut tau = schedule.t0;
    let mut total = Unitary2::identity();
    for seg in &schedule.segments {
        total = segment_propagator(omega0, seg, seg.start_phase(tau)) * total;
        tau += seg.duration;
    }
    total
}

/// Applies the exact propagator of every segment in time order.
pub fn propagate(omega0: f64, schedule: &Schedule, psi0: &SpinState) -> SpinState {
    let mut tau = schedule.t0;
    let mut psi = *psi0;
    for seg in &schedule.segments {
        psi = segment_propagator(omega0, seg, seg.start_phase(tau)).apply(&psi);
        tau += seg.duration;
    }
    psi
}

/// Final state of a fixed-step integration plus diagnostics.
#[derive(Debug, Clone, Copy)]
pub struct Rk4Outcome {
    pub state: SpinState,
    /// Largest per-step `|‖ψ‖ − 1|` observed before renormalizing.
    pub max_norm_drift: f64,
    pub steps: usize,
}

/// `(2π / max(ω0, ωrf)) / 200`.
pub fn default_oracle_step(omega0: f64, schedule: &Schedule) -> f64 {
    TAU / omega0.max(schedule.max_carrier()) / DEFAULT_SAMPLES_PER_PERIOD
}

/// Classic RK4 on the lab-frame equation.
///
/// Each segment is split into `ceil(duration / dt)` equal steps so segment
/// boundaries are step boundaries and no step exceeds `dt`. The state is
/// renormalized after every step.
pub fn rk4_oracle(
    omega0: f64,
    schedule: &Schedule,
    psi0: &SpinState,
    dt: f64,
) -> Result<Rk4Outcome> {
    if !(dt.is_finite() && dt > 0.0) {
        return Err(Error::InvalidStep(format!(
            "dt must be finite and > 0, got {dt}"
        )));
    }
    let total = schedule.duration();
    if total > 0.0 && dt > total {
        return Err(Error::InvalidStep(format!(
            "dt = {dt} exceeds the schedule duration {total}"
        )));
    }

    let mut psi = (psi0.amp_up(), psi0.amp_down());
    let mut tau = schedule.t0;
    let mut max_drift = 0.0f64;
    let mut steps = 0usize;

    for seg in &schedule.segments {
        if seg.duration > 0.0 {
            let n = (seg.duration / dt).ceil().max(1.0) as usize;
            let h = seg.duration / n as f64;
            let phi1 = seg.start_phase(tau);
            let rhs = |s: f64, (u, d): (C64, C64)| -> (C64, C64) {
                // i·H·ψ with H = ½[[ω0, ω1 e^{iα}], [ω1 e^{−iα}, −ω0]]
                let alpha = seg.omega_rf * s + phi1;
                let drive = C64::from_polar(0.5 * seg.omega1, alpha);
                let i = C64::i();
                (
                    i * (0.5 * omega0 * u + drive * d),
                    i * (drive.conj() * u - 0.5 * omega0 * d),
                )
            };
            for step in 0..n {
                let s = step as f64 * h;
                let k1 = rhs(s, psi);
                let k2 = rhs(s + 0.5 * h, axpy(psi, 0.5 * h, k1));
                let k3 = rhs(s + 0.5 * h, axpy(psi, 0.5 * h, k2));
                let k4 = rhs(s + h, axpy(psi, h, k3));
                let w = h / 6.0;
                let up = psi.0 + w * (k1.0 + 2.0 * k2.0 + 2.0 * k3.0 + k4.0);
                let down = psi.1 + w * (k1.1 + 2.0 * k2.1 + 2.0 * k3.1 + k4.1);
                let norm = (up.norm_sqr() + down.norm_sqr()).sqrt();
                max_drift = max_drift.max((norm - 1.0).abs());
                psi = (up / norm, down / norm);
            }
            steps += n;
        }
        tau += seg.duration;
    }

    Ok(Rk4Outcome {
        state: SpinState::from_normalized(psi.0, psi.1).renormalized(),
        max_norm_drift: max_drift,
        steps,
    })
}

fn axpy(x: (C64, C64), a: f64, k: (C64, C64)) -> (C64, C64) {
    (x.0 + a * k.0, x.1 + a * k.1)
}
