//! Batch synthesis and verification over many state pairs.

use crate::error::Result;
use crate::exec::Execution;
use crate::propagator::{propagate, rk4_oracle};
use crate::spin::{fidelity, BlochAngles};
use crate::synthesis::{Algorithm, PhysicalParams, SynthesisResult};

/// An initial/target pair.
pub type StatePair = (BlochAngles, BlochAngles);

pub fn synthesize_batch(
    exec: Execution,
    algorithm: Algorithm,
    params: &PhysicalParams,
    pairs: &[StatePair],
    t0: f64,
) -> Vec<Result<SynthesisResult>> {
    exec.map(pairs, |&(init, target)| {
        algorithm.synthesize(params, init, target, t0)
    })
}

/// Analytic fidelity of each synthesized schedule to its target.
pub fn analytic_fidelities(
    exec: Execution,
    algorithm: Algorithm,
    params: &PhysicalParams,
    pairs: &[StatePair],
) -> Result<Vec<f64>> {
    exec.map(pairs, |&(init, target)| {
        let r = algorithm.synthesize(params, init, target, 0.0)?;
        let out = propagate(params.omega0, &r.schedule, &init.to_state());
        Ok(fidelity(&out, &target.to_state()))
    })
    .into_iter()
    .collect()
}

/// RK4 fidelity of each synthesized schedule to its target.
pub fn oracle_fidelities(
    exec: Execution,
    algorithm: Algorithm,
    params: &PhysicalParams,
    pairs: &[StatePair],
    dt: f64,
) -> Result<Vec<f64>> {
    exec.map(pairs, |&(init, target)| {
        let r = algorithm.synthesize(params, init, target, 0.0)?;
        let out = rk4_oracle(params.omega0, &r.schedule, &init.to_state(), dt)?;
        Ok(fidelity(&out.state, &target.to_state()))
    })
    .into_iter()
    .collect()
}
