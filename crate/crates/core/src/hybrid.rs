//! Selection between the 1-stage APM and 1-stage FAPM schedules.
//!
//! [`hybrid_select`] compares the exact accumulated phases and always returns
//! the faster of the two. [`simplified_hybrid`] decides from the polar angles
//! alone; it can pick the slower schedule near `θ0 = θf`, by at most
//! `11π/ω0`.

use std::f64::consts::PI;

use log::warn;

use crate::error::Result;
use crate::spin::BlochAngles;
use crate::synthesis::{
    apm1_phase, fapm1_phase, synth_apm1, synth_fapm1, PhysicalParams, SynthesisResult,
};

/// Worst-case gap between the two selectors, `11π/ω0`.
pub fn discrepancy_bound(params: &PhysicalParams) -> f64 {
    11.0 * PI / params.omega0
}

/// Whether the band is at least as wide as the amplitude limit, the regime
/// in which the selection rules are motivated.
pub fn band_covers_amplitude(params: &PhysicalParams) -> bool {
    params.min_rate() == params.omega1_max
}

fn check_band(params: &PhysicalParams) {
    if !band_covers_amplitude(params) {
        warn!(
            "min(wb-, wb+) = {} is narrower than omega1_max = {}; selection still runs",
            params.min_band(),
            params.omega1_max
        );
    }
}

/// Picks FAPM1 when `φ_k⁽²⁾ > φ_k⁽⁴⁾`, APM1 otherwise (ties go to APM1).
pub fn hybrid_select(
    params: &PhysicalParams,
    init: BlochAngles,
    target: BlochAngles,
    t0: f64,
) -> Result<SynthesisResult> {
    params.validate()?;
    check_band(params);
    let (_, phi_apm) = apm1_phase(params, init, target);
    let (_, phi_fapm) = fapm1_phase(params, init, target)?;
    if phi_apm > phi_fapm {
        synth_fapm1(params, init, target, t0)
    } else {
        synth_apm1(params, init, target, t0)
    }
}

/// Picks FAPM1 when `θ0 > θf`, APM1 otherwise.
pub fn simplified_hybrid(
    params: &PhysicalParams,
    init: BlochAngles,
    target: BlochAngles,
    t0: f64,
) -> Result<SynthesisResult> {
    params.validate()?;
    check_band(params);
    if init.theta() > target.theta() {
        synth_fapm1(params, init, target, t0)
    } else {
        synth_apm1(params, init, target, t0)
    }
}

/// `|t(hybrid) − t(simplified)|` in seconds.
pub fn hybrid_discrepancy(
    params: &PhysicalParams,
    init: BlochAngles,
    target: BlochAngles,
    t0: f64,
) -> Result<f64> {
    let full = hybrid_select(params, init, target, t0)?;
    let simple = simplified_hybrid(params, init, target, t0)?;
    Ok((full.transition_time - simple.transition_time).abs())
}
