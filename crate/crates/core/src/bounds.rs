//! Worst-case transition-time bounds and the large-`ω0` approximations of
//! the single-pulse algorithms.

use std::f64::consts::{PI, TAU};

use crate::spin::BlochAngles;
use crate::synthesis::{ceil_pos_int, mid_axis, polar_rotation, PhysicalParams};

/// Time estimate `2k′π/ω0` with its guaranteed absolute error.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ApproxEstimate {
    pub k_prime: u64,
    pub time_estimate: f64,
    pub error_bound: f64,
}

/// `4π/ω1max + 7.5π/ω0`.
pub fn bound_apm3(params: &PhysicalParams) -> f64 {
    4.0 * PI / params.omega1_max + 7.5 * PI / params.omega0
}

/// `4π/ω1max + 6π/ω0`.
pub fn bound_apm1(params: &PhysicalParams) -> f64 {
    4.0 * PI / params.omega1_max + 6.0 * PI / params.omega0
}

/// `π/min(ω1max, ωb+, ωb−) + 8π/ω0`; infinite for an empty band.
pub fn bound_fapm(params: &PhysicalParams) -> f64 {
    PI / params.min_rate() + 8.0 * PI / params.omega0
}

/// Azimuth-free estimate of the 1-stage APM time.
pub fn approx_apm1(
    params: &PhysicalParams,
    init: BlochAngles,
    target: BlochAngles,
) -> ApproxEstimate {
    let g = polar_rotation(init, target);
    let k_prime = ceil_pos_int(g * params.omega0 / (TAU * params.omega1_max));
    ApproxEstimate {
        k_prime,
        time_estimate: k_prime as f64 * TAU / params.omega0,
        error_bound: 4.0 * PI / params.omega0,
    }
}

/// Azimuth-free estimate of the 1-stage FAPM time.
///
/// With an empty band and a non-zero detuning term the estimate saturates
/// (the construction itself is infeasible there).
pub fn approx_fapm1(
    params: &PhysicalParams,
    init: BlochAngles,
    target: BlochAngles,
) -> ApproxEstimate {
    let (s, c) = mid_axis(init, target);
    let w0 = params.omega0;
    let amp = w0 * s / (2.0 * params.omega1_max);
    let det = if c == 0.0 {
        0.0
    } else {
        w0 * c.abs() / (2.0 * params.min_band())
    };
    let k_prime = ceil_pos_int(amp.max(det));
    ApproxEstimate {
        k_prime,
        time_estimate: k_prime as f64 * TAU / w0,
        error_bound: 6.0 * PI / w0,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::FRAC_PI_4;

    fn params(w0: f64, w1: f64, band: f64) -> PhysicalParams {
        PhysicalParams::symmetric(w0, w1, band).unwrap()
    }

    #[test]
    fn apm_bounds_at_proton_scale() {
        let p = params(5e8, 5e4, 5e4);
        assert!((bound_apm3(&p) - 2.512e-4).abs() / 2.512e-4 < 1e-3);
        assert!((bound_apm1(&p) - 2.512e-4).abs() / 2.512e-4 < 1e-3);
        assert!(bound_apm1(&p) < bound_apm3(&p));
    }

    #[test]
    fn bounds_by_substitution() {
        let p = params(1000.0, 100.0, 200.0);
        assert!((bound_apm3(&p) - (0.04 * PI + 0.0075 * PI)).abs() < 1e-15);
        assert!((bound_apm1(&p) - (0.04 * PI + 0.006 * PI)).abs() < 1e-15);
        let p = params(1000.0, 1000.0 * 0.5, 200.0);
        assert!((bound_fapm(&p) - (PI / 200.0 + 8.0 * PI / 1000.0)).abs() < 1e-15);

        // ω1max = ω0 collapses to 11.5π/ω0
        let p = PhysicalParams::symmetric(1000.0, 1000.0, 10.0).unwrap();
        assert!((bound_apm3(&p) - 11.5 * PI / 1000.0).abs() < 1e-15);

        // band-limited regime
        let p = PhysicalParams::new(1000.0, 100.0, 200.0, 10.0).unwrap();
        assert!((bound_fapm(&p) - (PI / 10.0 + 8.0 * PI / 1000.0)).abs() < 1e-15);
    }

    #[test]
    fn fapm_bound_near_quarter_of_apm() {
        let p = params(5e8, 5e4, 5e4);
        let r = bound_fapm(&p) / bound_apm1(&p);
        assert!((0.24..=0.26).contains(&r), "ratio {r}");
    }

    #[test]
    fn fapm_bound_at_fifty_mhz() {
        // π/ω1max + 8π/ω0 evaluated exactly; sits 0.85% above π/ω1max here
        let p = params(5e7, 5e4, 1e5);
        let want = PI / 5e4 + 8.0 * PI / 5e7;
        assert_eq!(bound_fapm(&p), want);
        assert!((bound_fapm(&p) - 6.28e-5).abs() / 6.28e-5 < 1e-2);
    }

    #[test]
    fn approx_apm1_examples() {
        let p = params(5e8, 5e4, 5e4);
        let e = approx_apm1(
            &p,
            BlochAngles::new(FRAC_PI_4, 0.0),
            BlochAngles::new(3.0 * FRAC_PI_4, 0.0),
        );
        assert_eq!(e.k_prime, 2500);
        assert!((e.time_estimate - 5000.0 * PI / 5e8).abs() < 1e-18);
        assert_eq!(e.error_bound, 4.0 * PI / 5e8);

        let b = BlochAngles::new(1.0, 0.0);
        let e = approx_apm1(&p, b, b);
        assert_eq!(e.k_prime, 1);
        assert!((e.time_estimate - TAU / 5e8).abs() < 1e-22);
    }

    #[test]
    fn approx_fapm1_examples() {
        let p = params(5e8, 5e4, 5e4);
        let e = approx_fapm1(
            &p,
            BlochAngles::new(3.0 * FRAC_PI_4, 0.0),
            BlochAngles::new(FRAC_PI_4, 0.0),
        );
        assert_eq!(e.k_prime, 5000);
        assert!((e.time_estimate - 6.28e-5).abs() < 1e-7);
        assert_eq!(e.error_bound, 6.0 * PI / 5e8);

        // both at a pole: only the detuning term survives
        let p = PhysicalParams::new(1000.0, 100.0, 250.0, 400.0).unwrap();
        let n = BlochAngles::new(0.0, 0.0);
        assert_eq!(approx_fapm1(&p, n, n).k_prime, 2);
    }

    #[test]
    fn approx_ignores_azimuths() {
        let p = params(5e8, 5e4, 5e4);
        let (a, b) = (BlochAngles::new(0.7, 0.0), BlochAngles::new(2.1, 0.0));
        let (a2, b2) = (BlochAngles::new(0.7, 3.3), BlochAngles::new(2.1, 5.1));
        assert_eq!(approx_apm1(&p, a, b), approx_apm1(&p, a2, b2));
        assert_eq!(approx_fapm1(&p, a, b), approx_fapm1(&p, a2, b2));
    }
}
