//! The four exact-transfer pulse constructions.
//!
//! Every algorithm picks the smallest admissible integer `k` so that the
//! accumulated Larmor phase lines up with the target azimuth while the drive
//! amplitude (and, for the FAPM variants, the carrier detuning) stays inside
//! the hardware envelope:
//!
//! | algorithm | segments                       | carrier        |
//! |-----------|--------------------------------|----------------|
//! | APM3      | free · resonant pulse · free   | `ωrf = ω0`     |
//! | APM1      | one resonant pulse             | `ωrf = ω0`     |
//! | FAPM2     | free · detuned π pulse         | within band    |
//! | FAPM1     | one detuned π pulse            | within band    |
//!
//! Input angles are normalized (θ clamped into `[0, π]`, φ wrapped into
//! `[0, 2π)`) before any branch is taken.

use std::f64::consts::{FRAC_PI_2, PI, TAU};
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::propagator::{PulseSegment, Schedule};
use crate::spin::BlochAngles;

/// Relative distance to an integer under which `k ≥ x` treats `x` as that
/// integer.
pub const K_SNAP_TOL: f64 = 1e-9;

/// Hardware envelope, all in rad/s.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhysicalParams {
    pub omega0: f64,
    pub omega1_max: f64,
    pub omega_b_minus: f64,
    pub omega_b_plus: f64,
}

impl PhysicalParams {
    pub fn new(
        omega0: f64,
        omega1_max: f64,
        omega_b_minus: f64,
        omega_b_plus: f64,
    ) -> Result<Self> {
        let p = Self {
            omega0,
            omega1_max,
            omega_b_minus,
            omega_b_plus,
        };
        p.validate()?;
        Ok(p)
    }

    /// Same band on both sides of resonance.
    pub fn symmetric(omega0: f64, omega1_max: f64, band: f64) -> Result<Self> {
        Self::new(omega0, omega1_max, band, band)
    }

    pub fn validate(&self) -> Result<()> {
        let all = [
            self.omega0,
            self.omega1_max,
            self.omega_b_minus,
            self.omega_b_plus,
        ];
        if all.iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidParams(
                "all frequencies must be finite".into(),
            ));
        }
        if self.omega0 <= 0.0 {
            return Err(Error::InvalidParams(format!(
                "omega0 must be > 0, got {}",
                self.omega0
            )));
        }
        if self.omega1_max <= 0.0 {
            return Err(Error::InvalidParams(format!(
                "omega1_max must be > 0, got {}",
                self.omega1_max
            )));
        }
        if self.omega_b_minus < 0.0 || self.omega_b_plus < 0.0 {
            return Err(Error::InvalidParams("band edges must be >= 0".into()));
        }
        if self.omega0 <= self.omega_b_minus {
            return Err(Error::InvalidParams(format!(
                "omega0 ({}) must exceed wb- ({}) so the carrier stays positive",
                self.omega0, self.omega_b_minus
            )));
        }
        Ok(())
    }

    pub fn min_band(&self) -> f64 {
        self.omega_b_minus.min(self.omega_b_plus)
    }

    /// `min(ω1max, ωb+, ωb−)`.
    pub fn min_rate(&self) -> f64 {
        self.omega1_max.min(self.min_band())
    }

    pub fn carrier_band(&self) -> (f64, f64) {
        (
            self.omega0 - self.omega_b_minus,
            self.omega0 + self.omega_b_plus,
        )
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Algorithm {
    Apm3,
    Apm1,
    Fapm2,
    Fapm1,
}

impl Algorithm {
    pub const ALL: [Algorithm; 4] = [
        Algorithm::Apm3,
        Algorithm::Apm1,
        Algorithm::Fapm2,
        Algorithm::Fapm1,
    ];

    pub fn is_frequency_modulated(&self) -> bool {
        matches!(self, Algorithm::Fapm2 | Algorithm::Fapm1)
    }

    pub fn synthesize(
        &self,
        params: &PhysicalParams,
        init: BlochAngles,
        target: BlochAngles,
        t0: f64,
    ) -> Result<SynthesisResult> {
        match self {
            Algorithm::Apm3 => synth_apm3(params, init, target, t0),
            Algorithm::Apm1 => synth_apm1(params, init, target, t0),
            Algorithm::Fapm2 => synth_fapm2(params, init, target, t0),
            Algorithm::Fapm1 => synth_fapm1(params, init, target, t0),
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Algorithm::Apm3 => "APM3",
            Algorithm::Apm1 => "APM1",
            Algorithm::Fapm2 => "FAPM2",
            Algorithm::Fapm1 => "FAPM1",
        })
    }
}

impl FromStr for Algorithm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "apm3" => Ok(Algorithm::Apm3),
            "apm1" => Ok(Algorithm::Apm1),
            "fapm2" => Ok(Algorithm::Fapm2),
            "fapm1" => Ok(Algorithm::Fapm1),
            other => Err(Error::InvalidParams(format!("unknown algorithm '{other}'"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SynthesisResult {
    pub schedule: Schedule,
    pub algorithm: Algorithm,
    pub k_index: u64,
    /// Accumulated phase `φ_k`; APM3 has none.
    pub phi_k: Option<f64>,
    /// `t_f − t0`, equal to the schedule duration.
    pub transition_time: f64,
}

impl SynthesisResult {
    fn new(schedule: Schedule, algorithm: Algorithm, k_index: u64, phi_k: Option<f64>) -> Self {
        let transition_time = schedule.duration();
        Self {
            schedule,
            algorithm,
            k_index,
            phi_k,
            transition_time,
        }
    }
}

/// Smallest `k ∈ {1, 2, …}` with `k ≥ x`.
///
/// `x` within [`K_SNAP_TOL`] (relative) of an integer is treated as that
/// integer. Non-finite or huge `x` saturates.
pub fn ceil_pos_int(x: f64) -> u64 {
    if x.is_nan() {
        return 1;
    }
    let r = x.round();
    let snapped = if (x - r).abs() <= K_SNAP_TOL * r.abs().max(1.0) {
        r
    } else {
        x.ceil()
    };
    if snapped < 1.0 {
        1
    } else if snapped >= u64::MAX as f64 {
        u64::MAX
    } else {
        snapped as u64
    }
}

/// Polar rotation needed on the x axis: `θf − θ0`, or `4π + θf − θ0` when
/// going backwards (a 4π turn is the identity on spinors).
pub(crate) fn polar_rotation(init: BlochAngles, target: BlochAngles) -> f64 {
    let d = target.theta() - init.theta();
    if d >= 0.0 {
        d
    } else {
        2.0 * TAU + d
    }
}

/// Half-sum angle `(θ0 + θf)/2` as `(sin, cos)`. Exact zero at `π/2`.
pub(crate) fn mid_axis(init: BlochAngles, target: BlochAngles) -> (f64, f64) {
    let m = 0.5 * (init.theta() + target.theta());
    if m == FRAC_PI_2 {
        (1.0, 0.0)
    } else {
        m.sin_cos()
    }
}

/// `R_ω`: the larger of the amplitude-limited and band-limited rotation counts.
pub(crate) fn rate_ratio(params: &PhysicalParams, sin_m: f64, cos_m: f64) -> Result<f64> {
    let amp = params.omega0 * sin_m / (2.0 * params.omega1_max);
    let band = params.min_band();
    let det = if cos_m == 0.0 {
        0.0
    } else if band > 0.0 {
        params.omega0 * cos_m.abs() / (2.0 * band)
    } else {
        return Err(Error::EmptyBand);
    };
    Ok(amp.max(det))
}

/// 3-stage APM: wait until the azimuth sits at π/2, rotate about x at full
/// amplitude, then free-precess onto the target azimuth.
pub fn synth_apm3(
    params: &PhysicalParams,
    init: BlochAngles,
    target: BlochAngles,
    t0: f64,
) -> Result<SynthesisResult> {
    params.validate()?;
    let (init, target) = normalize(init, target);
    let (w0, w1) = (params.omega0, params.omega1_max);
    let (phi0, phif) = (init.phi(), target.phi());

    let wait = if phi0 >= FRAC_PI_2 {
        (phi0 - FRAC_PI_2) / w0
    } else {
        (phi0 + 1.5 * PI) / w0
    };
    let g = polar_rotation(init, target);
    let pulse = g / w1;
    let k = ceil_pos_int(g * w0 / (TAU * w1) - 0.25 + phif / TAU);
    let tail = ((k as f64) * TAU + FRAC_PI_2 - phif) / w0 - pulse;

    let t1 = t0 + wait;
    let segments = vec![
        PulseSegment::free(wait, w0),
        PulseSegment {
            duration: pulse,
            omega1: w1,
            omega_rf: w0,
            phi: -w0 * t1,
        },
        PulseSegment::free(tail.max(0.0), w0),
    ];
    Ok(SynthesisResult::new(
        Schedule::new(t0, segments),
        Algorithm::Apm3,
        k,
        None,
    ))
}

/// Index `k₂` and phase `φ_k⁽²⁾ = 2k₂π + φ0 − φf` of the 1-stage APM.
pub fn apm1_phase(params: &PhysicalParams, init: BlochAngles, target: BlochAngles) -> (u64, f64) {
    let (init, target) = normalize(init, target);
    let g = polar_rotation(init, target);
    let k = ceil_pos_int(
        g * params.omega0 / (TAU * params.omega1_max) + (target.phi() - init.phi()) / TAU,
    );
    (k, k as f64 * TAU + init.phi() - target.phi())
}

/// 1-stage APM: a single resonant pulse whose amplitude is tuned so that
/// the x rotation and the Larmor phase finish together.
pub fn synth_apm1(
    params: &PhysicalParams,
    init: BlochAngles,
    target: BlochAngles,
    t0: f64,
) -> Result<SynthesisResult> {
    params.validate()?;
    let (init, target) = normalize(init, target);
    let w0 = params.omega0;
    let (k, phi_k) = apm1_phase(params, init, target);
    let g = polar_rotation(init, target);

    let omega1 = (g * w0 / phi_k).min(params.omega1_max);
    let phi1 = FRAC_PI_2 - init.phi();
    let segments = vec![PulseSegment {
        duration: phi_k / w0,
        omega1,
        omega_rf: w0,
        phi: phi1 - w0 * t0,
    }];
    Ok(SynthesisResult::new(
        Schedule::new(t0, segments),
        Algorithm::Apm1,
        k,
        Some(phi_k),
    ))
}

/// Detuned π pulse about the tilted axis `(θ0 + θf)/2` given `φ_k`.
/// Returns `(ω1, ωrf)`, each clamped to the envelope to absorb rounding.
fn detuned_pi_pulse(params: &PhysicalParams, sin_m: f64, cos_m: f64, phi_k: f64) -> (f64, f64) {
    let w0 = params.omega0;
    let omega1 = (w0 * PI * sin_m / phi_k).min(params.omega1_max);
    let (lo, hi) = params.carrier_band();
    let omega_rf = (w0 - w0 * PI * cos_m / phi_k).clamp(lo, hi);
    (omega1, omega_rf)
}

/// Index `k₃` and phase `φ_k⁽³⁾ = 2k₃π − φf + π·cos((θ0+θf)/2)`.
pub fn fapm2_phase(
    params: &PhysicalParams,
    init: BlochAngles,
    target: BlochAngles,
) -> Result<(u64, f64)> {
    let (init, target) = normalize(init, target);
    let (s, c) = mid_axis(init, target);
    let r_b1 = (target.phi() - PI * c) / TAU;
    let k = ceil_pos_int(rate_ratio(params, s, c)? + r_b1);
    Ok((k, k as f64 * TAU - target.phi() + PI * c))
}

/// 2-stage FAPM: free precession to zero azimuth, then one detuned π pulse.
pub fn synth_fapm2(
    params: &PhysicalParams,
    init: BlochAngles,
    target: BlochAngles,
    t0: f64,
) -> Result<SynthesisResult> {
    params.validate()?;
    let (init, target) = normalize(init, target);
    let w0 = params.omega0;
    let (s, c) = mid_axis(init, target);
    let (k, phi_k) = fapm2_phase(params, init, target)?;
    let (omega1, omega_rf) = detuned_pi_pulse(params, s, c, phi_k);

    let wait = init.phi() / w0;
    let t1 = t0 + wait;
    let segments = vec![
        PulseSegment::free(wait, w0),
        PulseSegment {
            duration: phi_k / w0,
            omega1,
            omega_rf,
            phi: -omega_rf * t1,
        },
    ];
    Ok(SynthesisResult::new(
        Schedule::new(t0, segments),
        Algorithm::Fapm2,
        k,
        Some(phi_k),
    ))
}

/// Index `k₄` and phase `φ_k⁽⁴⁾ = 2k₄π − φf + φ0 + π·cos((θ0+θf)/2)`.
pub fn fapm1_phase(
    params: &PhysicalParams,
    init: BlochAngles,
    target: BlochAngles,
) -> Result<(u64, f64)> {
    let (init, target) = normalize(init, target);
    let (s, c) = mid_axis(init, target);
    let r_b2 = (target.phi() - init.phi() - PI * c) / TAU;
    let k = ceil_pos_int(rate_ratio(params, s, c)? + r_b2);
    Ok((k, k as f64 * TAU - target.phi() + init.phi() + PI * c))
}

/// 1-stage FAPM: a single detuned π pulse with the carrier phase chosen to
/// cancel the initial azimuth.
pub fn synth_fapm1(
    params: &PhysicalParams,
    init: BlochAngles,
    target: BlochAngles,
    t0: f64,
) -> Result<SynthesisResult> {
    params.validate()?;
    let (init, target) = normalize(init, target);
    let w0 = params.omega0;
    let (s, c) = mid_axis(init, target);
    let (k, phi_k) = fapm1_phase(params, init, target)?;
    let (omega1, omega_rf) = detuned_pi_pulse(params, s, c, phi_k);

    let phi1 = -init.phi();
    let segments = vec![PulseSegment {
        duration: phi_k / w0,
        omega1,
        omega_rf,
        phi: phi1 - omega_rf * t0,
    }];
    Ok(SynthesisResult::new(
        Schedule::new(t0, segments),
        Algorithm::Fapm1,
        k,
        Some(phi_k),
    ))
}

fn normalize(init: BlochAngles, target: BlochAngles) -> (BlochAngles, BlochAngles) {
    (
        BlochAngles::new(init.theta(), init.phi()),
        BlochAngles::new(target.theta(), target.phi()),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::propagator::propagate;
    use crate::spin::fidelity;
    use std::f64::consts::FRAC_PI_4;

    fn desk() -> PhysicalParams {
        PhysicalParams::symmetric(1000.0, 100.0, 200.0).unwrap()
    }

    fn proton() -> PhysicalParams {
        PhysicalParams::symmetric(5e8, 5e4, 5e4).unwrap()
    }

    fn reaches(
        p: &PhysicalParams,
        r: &SynthesisResult,
        init: BlochAngles,
        target: BlochAngles,
    ) -> f64 {
        fidelity(
            &propagate(p.omega0, &r.schedule, &init.to_state()),
            &target.to_state(),
        )
    }

    #[test]
    fn ceil_pos_int_examples() {
        assert_eq!(ceil_pos_int(2500.5), 2501);
        assert_eq!(ceil_pos_int(-3.2), 1);
        assert_eq!(ceil_pos_int(5.0), 5);
        assert_eq!(ceil_pos_int(0.0), 1);
        assert_eq!(ceil_pos_int(5000.0 - 1e-9), 5000);
        assert_eq!(ceil_pos_int(5000.0 + 1e-9), 5000);
        assert_eq!(ceil_pos_int(5000.01), 5001);
        assert_eq!(ceil_pos_int(f64::NAN), 1);
        assert_eq!(ceil_pos_int(f64::INFINITY), u64::MAX);
    }

    #[test]
    fn params_validation() {
        assert!(PhysicalParams::new(0.0, 1.0, 0.0, 0.0).is_err());
        assert!(PhysicalParams::new(1.0, 0.0, 0.0, 0.0).is_err());
        assert!(PhysicalParams::new(1.0, 1.0, -1.0, 0.0).is_err());
        assert!(PhysicalParams::new(1.0, 1.0, 1.0, 0.0).is_err());
        assert!(PhysicalParams::new(1.0, f64::NAN, 0.5, 0.0).is_err());
        assert!(PhysicalParams::new(1.0, 1.0, 0.5, 0.0).is_ok());
    }

    #[test]
    fn apm3_identity_transfer_runs_all_stages() {
        let b = BlochAngles::new(FRAC_PI_2, PI);
        let r = synth_apm3(&desk(), b, b, 0.0).unwrap();
        assert_eq!(r.schedule.segments.len(), 3);
        assert!(reaches(&desk(), &r, b, b) > 1.0 - 1e-12);
    }

    #[test]
    fn apm3_desk_example() {
        // wait (π/2)/ω0, pulse (π/2)/ω1max, k₁ = ceil(2.5 − 0.25) = 3
        let (i, t) = (BlochAngles::new(FRAC_PI_2, PI), BlochAngles::new(PI, 0.0));
        let r = synth_apm3(&desk(), i, t, 0.0).unwrap();
        assert_eq!(r.k_index, 3);
        assert!((r.transition_time - 7.0 * PI / 1000.0).abs() < 1e-15);
        assert!(reaches(&desk(), &r, i, t) > 1.0 - 1e-12);
    }

    #[test]
    fn apm1_worked_example_forward() {
        let (i, t) = (
            BlochAngles::new(FRAC_PI_4, FRAC_PI_4),
            BlochAngles::new(3.0 * FRAC_PI_4, 5.0 * FRAC_PI_4),
        );
        let r = synth_apm1(&proton(), i, t, 0.0).unwrap();
        assert_eq!(r.k_index, 2501);
        let want = 5001.0 * PI / 5e8;
        assert!((r.transition_time - want).abs() <= 1e-12 * want);
        assert!(reaches(&proton(), &r, i, t) > 1.0 - 1e-9);
    }

    #[test]
    fn apm1_identity_is_one_larmor_period() {
        let b = BlochAngles::new(FRAC_PI_2, 0.0);
        let r = synth_apm1(&desk(), b, b, 0.0).unwrap();
        assert_eq!(r.k_index, 1);
        assert_eq!(r.schedule.segments[0].omega1, 0.0);
        assert!((r.transition_time - TAU / 1000.0).abs() < 1e-15);
    }

    #[test]
    fn apm1_worked_example_reverse() {
        // k₂ = ceil(17500 − 0.5) = 17500, so φ_k = 35001π
        let (i, t) = (
            BlochAngles::new(3.0 * FRAC_PI_4, 5.0 * FRAC_PI_4),
            BlochAngles::new(FRAC_PI_4, FRAC_PI_4),
        );
        let r = synth_apm1(&proton(), i, t, 0.0).unwrap();
        assert_eq!(r.k_index, 17500);
        let w0 = 5e8;
        assert!((r.transition_time - 35001.0 * PI / w0).abs() < 1e-12 * r.transition_time);
        assert!((r.transition_time - 35000.5 * PI / w0).abs() <= 3.0 * PI / w0);
    }

    #[test]
    fn fapm2_desk_example() {
        // R_ω = max(1000/200, 0) = 5, R_B1 = 0 → k₃ = 5, φ_k = 10π
        let b = BlochAngles::new(FRAC_PI_2, 0.0);
        let r = synth_fapm2(&desk(), b, b, 0.0).unwrap();
        assert_eq!(r.k_index, 5);
        let pulse = r.schedule.segments[1];
        assert!((pulse.omega1 - 100.0).abs() < 1e-12);
        assert_eq!(pulse.omega_rf, 1000.0);
        assert!((r.transition_time - 10.0 * PI / 1000.0).abs() < 1e-15);
        assert!(reaches(&desk(), &r, b, b) > 1.0 - 1e-12);
    }

    #[test]
    fn fapm_on_resonance_when_polar_angles_sum_to_pi() {
        for (th0, thf) in [(0.3, PI - 0.3), (FRAC_PI_2, FRAC_PI_2), (0.0, PI)] {
            let (i, t) = (BlochAngles::new(th0, 1.0), BlochAngles::new(thf, 4.0));
            let r2 = synth_fapm2(&desk(), i, t, 0.0).unwrap();
            let r1 = synth_fapm1(&desk(), i, t, 0.0).unwrap();
            assert_eq!(r2.schedule.segments[1].omega_rf, 1000.0);
            assert_eq!(r1.schedule.segments[0].omega_rf, 1000.0);
        }
    }

    #[test]
    fn fapm1_worked_examples() {
        let w0 = 5e8;
        let want = 10001.0 * PI / w0;
        let (a, b) = (
            BlochAngles::new(FRAC_PI_4, FRAC_PI_4),
            BlochAngles::new(3.0 * FRAC_PI_4, 5.0 * FRAC_PI_4),
        );

        let fwd = synth_fapm1(&proton(), a, b, 0.0).unwrap();
        assert_eq!(fwd.k_index, 5001);
        assert!((fwd.transition_time - want).abs() <= 1e-12 * want);

        let rev = synth_fapm1(&proton(), b, a, 0.0).unwrap();
        assert_eq!(rev.k_index, 5000);
        assert!((rev.transition_time - want).abs() <= 1e-12 * want);
        assert!(reaches(&proton(), &rev, b, a) > 1.0 - 1e-9);
    }

    #[test]
    fn fapm1_pole_to_same_pole_is_free_precession() {
        let n = BlochAngles::new(0.0, 0.0);
        let r = synth_fapm1(&desk(), n, n, 0.0).unwrap();
        assert_eq!(r.schedule.segments[0].omega1, 0.0);
        assert!(reaches(&desk(), &r, n, n) > 1.0 - 1e-12);
    }

    #[test]
    fn fapm_needs_a_band() {
        let p = PhysicalParams::new(1000.0, 100.0, 0.0, 200.0).unwrap();
        let (i, t) = (BlochAngles::new(0.2, 0.0), BlochAngles::new(0.4, 0.0));
        assert!(matches!(synth_fapm1(&p, i, t, 0.0), Err(Error::EmptyBand)));
        assert!(matches!(synth_fapm2(&p, i, t, 0.0), Err(Error::EmptyBand)));
        // cos((θ0+θf)/2) = 0 needs no detuning at all
        let t = BlochAngles::new(PI - 0.2, 0.0);
        assert!(synth_fapm1(&p, i, t, 0.0).is_ok());
    }

    #[test]
    fn schedules_are_t0_shift_covariant() {
        let (i, t) = (BlochAngles::new(1.1, 0.3), BlochAngles::new(2.4, 5.9));
        for algo in Algorithm::ALL {
            let a = algo.synthesize(&desk(), i, t, 0.0).unwrap();
            let b = algo.synthesize(&desk(), i, t, 3.7).unwrap();
            assert_eq!(a.k_index, b.k_index);
            assert_eq!(a.transition_time, b.transition_time);
            assert!(reaches(&desk(), &b, i, t) > 1.0 - 1e-9, "{algo}");
        }
    }

    #[test]
    fn algorithm_names_round_trip() {
        for a in Algorithm::ALL {
            assert_eq!(a.to_string().parse::<Algorithm>().unwrap(), a);
        }
        assert!("grape".parse::<Algorithm>().is_err());
    }
}
