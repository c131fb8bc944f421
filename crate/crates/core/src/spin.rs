//! Pure spin-1/2 states, 2×2 complex operators and the closed-form SU(2)
//! rotations used by every propagator in the crate.
//!
//! Conventions: `|↑⟩ = (1, 0)`, `|↓⟩ = (0, 1)`, spin operators are half the
//! standard Pauli matrices, and a rotation "by angle `a` about `S`" means
//! `exp{i·a·S}` (note the positive sign, matching the equation of motion
//! `dψ/dt = i·H·ψ`).

use std::f64::consts::{FRAC_PI_2, PI, TAU};
use std::fmt;
use std::ops::Mul;

use num_complex::Complex64;

use crate::error::{Error, Result};

pub type C64 = Complex64;

const ZERO: C64 = C64::new(0.0, 0.0);
const ONE: C64 = C64::new(1.0, 0.0);

/// Amplitudes below this magnitude carry no meaningful phase.
const POLE_EPS: f64 = 1e-14;

/// Wraps an angle into `[0, 2π)`.
pub fn wrap_phase(phi: f64) -> f64 {
    let w = phi.rem_euclid(TAU);
    // rem_euclid can round up to exactly 2π for tiny negative inputs
    if w >= TAU {
        0.0
    } else {
        w
    }
}

/// Polar/azimuthal parametrization of a pure state,
/// `cos(θ/2)|↑⟩ + e^{iφ} sin(θ/2)|↓⟩`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BlochAngles {
    theta: f64,
    phi: f64,
}

impl BlochAngles {
    /// Builds normalized angles: θ is clamped into `[0, π]` and φ wrapped into
    /// `[0, 2π)`. Non-finite input yields NaN angles; use [`BlochAngles::try_new`]
    /// when the input is untrusted.
    pub fn new(theta: f64, phi: f64) -> Self {
        Self {
            theta: theta.clamp(0.0, PI),
            phi: wrap_phase(phi),
        }
    }

    pub fn try_new(theta: f64, phi: f64) -> Result<Self> {
        if !theta.is_finite() || !phi.is_finite() {
            return Err(Error::InvalidAngle(format!(
                "angles must be finite (theta={theta}, phi={phi})"
            )));
        }
        Ok(Self::new(theta, phi))
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    pub fn phi(&self) -> f64 {
        self.phi
    }

    pub fn to_state(&self) -> SpinState {
        bloch_to_state(*self)
    }
}

impl fmt::Display for BlochAngles {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(θ={}, φ={})", self.theta, self.phi)
    }
}

/// Normalized amplitude pair `amp_up|↑⟩ + amp_down|↓⟩`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpinState {
    up: C64,
    down: C64,
}

impl SpinState {
    /// Normalizes the given amplitudes. Fails on a zero or non-finite vector.
    pub fn new(up: C64, down: C64) -> Result<Self> {
        let n = (up.norm_sqr() + down.norm_sqr()).sqrt();
        if !n.is_finite() || n == 0.0 {
            return Err(Error::InvalidState(format!(
                "cannot normalize amplitudes ({up}, {down})"
            )));
        }
        Ok(Self {
            up: up / n,
            down: down / n,
        })
    }

    /// Wraps amplitudes that are already (numerically) normalized.
    pub(crate) fn from_normalized(up: C64, down: C64) -> Self {
        Self { up, down }
    }

    pub fn spin_up() -> Self {
        Self::from_normalized(ONE, ZERO)
    }

    pub fn spin_down() -> Self {
        Self::from_normalized(ZERO, ONE)
    }

    pub fn amp_up(&self) -> C64 {
        self.up
    }

    pub fn amp_down(&self) -> C64 {
        self.down
    }

    pub fn norm(&self) -> f64 {
        (self.up.norm_sqr() + self.down.norm_sqr()).sqrt()
    }

    /// `⟨self|other⟩`.
    pub fn inner(&self, other: &SpinState) -> C64 {
        self.up.conj() * other.up + self.down.conj() * other.down
    }

    pub fn scale(&self, c: C64) -> Self {
        Self::from_normalized(self.up * c, self.down * c)
    }

    pub(crate) fn renormalized(&self) -> Self {
        let n = self.norm();
        Self::from_normalized(self.up / n, self.down / n)
    }

    /// Euclidean distance between amplitude vectors (global phase included).
    pub fn distance(&self, other: &SpinState) -> f64 {
        ((self.up - other.up).norm_sqr() + (self.down - other.down).norm_sqr()).sqrt()
    }

    pub fn to_bloch(&self) -> BlochAngles {
        state_to_bloch(*self)
    }
}

pub fn bloch_to_state(angles: BlochAngles) -> SpinState {
    let (s, c) = (angles.theta / 2.0).sin_cos();
    SpinState::from_normalized(C64::new(c, 0.0), C64::from_polar(s, angles.phi))
}

/// Inverse of [`bloch_to_state`] with the global phase stripped. φ is 0 at
/// the poles.
pub fn state_to_bloch(state: SpinState) -> BlochAngles {
    let (a, b) = (state.up.norm(), state.down.norm());
    let theta = 2.0 * b.atan2(a);
    let phi = if a <= POLE_EPS || b <= POLE_EPS {
        0.0
    } else {
        state.down.arg() - state.up.arg()
    };
    BlochAngles::new(theta, phi)
}

/// `|⟨a|b⟩|`, insensitive to global phase.
pub fn fidelity(a: &SpinState, b: &SpinState) -> f64 {
    a.inner(b).norm().min(1.0)
}

/// General 2×2 complex matrix, row-major.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Mat2(pub [[C64; 2]; 2]);

impl Mat2 {
    pub fn identity() -> Self {
        Mat2([[ONE, ZERO], [ZERO, ONE]])
    }

    pub fn scale(&self, c: C64) -> Self {
        let m = &self.0;
        Mat2([[m[0][0] * c, m[0][1] * c], [m[1][0] * c, m[1][1] * c]])
    }

    pub fn add(&self, other: &Mat2) -> Self {
        let (a, b) = (&self.0, &other.0);
        Mat2([
            [a[0][0] + b[0][0], a[0][1] + b[0][1]],
            [a[1][0] + b[1][0], a[1][1] + b[1][1]],
        ])
    }

    pub fn dagger(&self) -> Self {
        let m = &self.0;
        Mat2([
            [m[0][0].conj(), m[1][0].conj()],
            [m[0][1].conj(), m[1][1].conj()],
        ])
    }

    /// Largest entrywise modulus of `self − other`.
    pub fn max_abs_diff(&self, other: &Mat2) -> f64 {
        let (a, b) = (&self.0, &other.0);
        (0..2)
            .flat_map(|i| (0..2).map(move |j| (a[i][j] - b[i][j]).norm()))
            .fold(0.0, f64::max)
    }

    pub fn apply(&self, up: C64, down: C64) -> (C64, C64) {
        let m = &self.0;
        (m[0][0] * up + m[0][1] * down, m[1][0] * up + m[1][1] * down)
    }
}

impl Mul for Mat2 {
    type Output = Mat2;

    fn mul(self, rhs: Mat2) -> Mat2 {
        let (a, b) = (&self.0, &rhs.0);
        let mut out = [[ZERO; 2]; 2];
        for (i, row) in out.iter_mut().enumerate() {
            for (j, v) in row.iter_mut().enumerate() {
                *v = a[i][0] * b[0][j] + a[i][1] * b[1][j];
            }
        }
        Mat2(out)
    }
}

/// `S_x = σ_x / 2`.
pub fn spin_x() -> Mat2 {
    let h = C64::new(0.5, 0.0);
    Mat2([[ZERO, h], [h, ZERO]])
}

/// `S_y = σ_y / 2`.
pub fn spin_y() -> Mat2 {
    Mat2([[ZERO, C64::new(0.0, -0.5)], [C64::new(0.0, 0.5), ZERO]])
}

/// `S_z = σ_z / 2`.
pub fn spin_z() -> Mat2 {
    Mat2([[C64::new(0.5, 0.0), ZERO], [ZERO, C64::new(-0.5, 0.0)]])
}

/// A 2×2 unitary. Only produced by closed-form constructors and products of
/// unitaries, so `U†U = I` holds up to rounding.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Unitary2(Mat2);

impl Unitary2 {
    pub fn identity() -> Self {
        Unitary2(Mat2::identity())
    }

    pub fn as_mat(&self) -> &Mat2 {
        &self.0
    }

    pub fn dagger(&self) -> Self {
        Unitary2(self.0.dagger())
    }

    /// Largest entrywise deviation of `U†U` from the identity.
    pub fn unitarity_error(&self) -> f64 {
        (self.0.dagger() * self.0).max_abs_diff(&Mat2::identity())
    }

    pub fn apply(&self, state: &SpinState) -> SpinState {
        let (up, down) = self.0.apply(state.up, state.down);
        SpinState::from_normalized(up, down)
    }
}

impl Mul for Unitary2 {
    type Output = Unitary2;

    fn mul(self, rhs: Unitary2) -> Unitary2 {
        Unitary2(self.0 * rhs.0)
    }
}

/// Rotation axis `S_θu = cos θu·S_z + sin θu·S_x`, tilted from z towards x.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TiltedAxis {
    theta_u: f64,
}

impl TiltedAxis {
    pub const Z: TiltedAxis = TiltedAxis { theta_u: 0.0 };
    pub const X: TiltedAxis = TiltedAxis { theta_u: FRAC_PI_2 };

    /// Clamps the tilt into `[0, π]`.
    pub fn new(theta_u: f64) -> Self {
        Self {
            theta_u: theta_u.clamp(0.0, PI),
        }
    }

    pub fn theta_u(&self) -> f64 {
        self.theta_u
    }

    pub fn operator(&self) -> Mat2 {
        let (s, c) = self.theta_u.sin_cos();
        spin_z()
            .scale(C64::new(c, 0.0))
            .add(&spin_x().scale(C64::new(s, 0.0)))
    }
}

/// `exp{i·angle·S_θu} = cos(angle/2)·I + i·sin(angle/2)·(cos θu·σz + sin θu·σx)`.
pub fn su2_exp(axis: TiltedAxis, angle: f64) -> Unitary2 {
    let (s, c) = (angle / 2.0).sin_cos();
    let (su, cu) = axis.theta_u.sin_cos();
    let off = C64::new(0.0, s * su);
    Unitary2(Mat2([
        [C64::new(c, s * cu), off],
        [off, C64::new(c, -s * cu)],
    ]))
}

/// `exp{i·angle·S_z} = diag(e^{i·angle/2}, e^{−i·angle/2})`.
pub fn rot_z(angle: f64) -> Unitary2 {
    Unitary2(Mat2([
        [C64::from_polar(1.0, angle / 2.0), ZERO],
        [ZERO, C64::from_polar(1.0, -angle / 2.0)],
    ]))
}
