//! Exact control-pulse synthesis for steering a single spin-1/2 between
//! arbitrary Bloch states.
//!
//! Four constructions are provided: amplitude-phase modulation with a
//! resonant carrier (3-stage and 1-stage) and frequency-amplitude-phase
//! modulation with a detuned carrier (2-stage and 1-stage). Each returns a
//! piecewise-constant [`Schedule`] that reaches the target exactly (up to
//! global phase) under the lab-frame dynamics, together with its transition
//! time. Schedules can be checked with the closed-form propagator
//! ([`propagate`]) or the independent RK4 integrator ([`rk4_oracle`]).
//!
//! ```
//! use spinmod::{synth_fapm1, propagate, fidelity, BlochAngles, PhysicalParams};
//!
//! let params = PhysicalParams::symmetric(1000.0, 100.0, 200.0).unwrap();
//! let (init, target) = (BlochAngles::new(0.3, 1.0), BlochAngles::new(2.0, 4.0));
//! let r = synth_fapm1(&params, init, target, 0.0).unwrap();
//! let out = propagate(params.omega0, &r.schedule, &init.to_state());
//! assert!(fidelity(&out, &target.to_state()) > 1.0 - 1e-9);
//! ```

pub mod batch;
pub mod bounds;
pub mod cli;
pub mod error;
pub mod exec;
pub mod hybrid;
pub mod propagator;
pub mod schedule_file;
pub mod spin;
pub mod sweep;
pub mod synthesis;

pub use bounds::{approx_apm1, approx_fapm1, bound_apm1, bound_apm3, bound_fapm, ApproxEstimate};
pub use error::{Error, Result};
pub use exec::Execution;
pub use hybrid::{hybrid_discrepancy, hybrid_select, simplified_hybrid};
pub use propagator::{
    propagate, rk4_oracle, rotating_frame_params, segment_propagator, PulseSegment,
    RotatingFrameParams, Schedule,
};
pub use schedule_file::ScheduleFile;
pub use spin::{
    bloch_to_state, fidelity, rot_z, state_to_bloch, su2_exp, BlochAngles, SpinState, TiltedAxis,
    Unitary2,
};
pub use synthesis::{
    ceil_pos_int, synth_apm1, synth_apm3, synth_fapm1, synth_fapm2, Algorithm, PhysicalParams,
    SynthesisResult,
};
