//! (θ0, θf) grid sweeps of the approximate single-pulse transition times.

use std::f64::consts::PI;
use std::fmt;
use std::io::Write;
use std::str::FromStr;

use crate::bounds::{approx_apm1, approx_fapm1};
use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::spin::BlochAngles;
use crate::synthesis::PhysicalParams;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SweepQuantity {
    /// `t̃⁽²⁾ − t0`
    Apm1,
    /// `t̃⁽⁴⁾ − t0`
    Fapm1,
    /// `t̃⁽⁴⁾ − t̃⁽²⁾`
    Diff,
    /// `min(t̃⁽²⁾, t̃⁽⁴⁾) − t0`
    HybridMin,
}

impl FromStr for SweepQuantity {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "apm1" => Ok(SweepQuantity::Apm1),
            "fapm1" => Ok(SweepQuantity::Fapm1),
            "diff" => Ok(SweepQuantity::Diff),
            "hybrid-min" => Ok(SweepQuantity::HybridMin),
            other => Err(Error::InvalidSweep(format!("unknown quantity '{other}'"))),
        }
    }
}

impl fmt::Display for SweepQuantity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SweepQuantity::Apm1 => "apm1",
            SweepQuantity::Fapm1 => "fapm1",
            SweepQuantity::Diff => "diff",
            SweepQuantity::HybridMin => "hybrid-min",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepRow {
    pub theta0: f64,
    pub thetaf: f64,
    pub value: f64,
}

/// `n` evenly spaced polar angles covering `[0, π]`, endpoints included.
pub fn theta_grid(n: usize) -> Result<Vec<f64>> {
    if n < 2 {
        return Err(Error::InvalidSweep(format!(
            "grid needs at least 2 points, got {n}"
        )));
    }
    let step = PI / (n - 1) as f64;
    Ok((0..n)
        .map(|i| if i == n - 1 { PI } else { i as f64 * step })
        .collect())
}

pub fn evaluate(
    quantity: SweepQuantity,
    params: &PhysicalParams,
    init: BlochAngles,
    target: BlochAngles,
) -> f64 {
    let apm = || approx_apm1(params, init, target).time_estimate;
    let fapm = || approx_fapm1(params, init, target).time_estimate;
    match quantity {
        SweepQuantity::Apm1 => apm(),
        SweepQuantity::Fapm1 => fapm(),
        SweepQuantity::Diff => fapm() - apm(),
        SweepQuantity::HybridMin => apm().min(fapm()),
    }
}

/// Rows in θ0-major order. Each θ0 row is one unit of parallel work.
pub fn sweep(
    exec: Execution,
    quantity: SweepQuantity,
    params: &PhysicalParams,
    n: usize,
    phi0: f64,
    phif: f64,
) -> Result<Vec<SweepRow>> {
    let grid = theta_grid(n)?;
    let rows = exec.map(&grid, |&theta0| {
        grid.iter()
            .map(|&thetaf| SweepRow {
                theta0,
                thetaf,
                value: evaluate(
                    quantity,
                    params,
                    BlochAngles::new(theta0, phi0),
                    BlochAngles::new(thetaf, phif),
                ),
            })
            .collect::<Vec<_>>()
    });
    Ok(rows.into_iter().flatten().collect())
}

pub fn write_csv<W: Write + ?Sized>(out: &mut W, rows: &[SweepRow]) -> Result<()> {
    writeln!(out, "theta0,thetaf,value")?;
    for r in rows {
        writeln!(out, "{},{},{}", r.theta0, r.thetaf, r.value)?;
    }
    Ok(())
}
