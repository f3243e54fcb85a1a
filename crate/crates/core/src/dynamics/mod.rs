//! Equations of motion for a charged particle in electromagnetic and weak
//! gravitational potentials, a fixed-step integrator, invariant monitors and
//! κ sweeps. Numerics are `f64`.

mod force;
mod integrate;
mod monitor;
mod scan;

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::field::EvalError;

pub use force::{
    electrograv_rhs, line_forces, lorentz_rhs, newtonian_1p1_rhs, printed_phase_rate, FieldSet, ForceModel,
    Line4Sign, LineForces, Mode, Toggles,
};
pub use integrate::{integrate, suggest_dt, Method, Trajectory, TRAJECTORY_HEADER};
pub use monitor::{monitor_invariants, InvariantReport, Series};
pub use scan::{kappa_scan, Scenario, ScanRow, ScanTable};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ParticleState {
    pub t: f64,
    pub x: [f64; 3],
    pub v: [f64; 3],
    pub phase: f64,
}

impl ParticleState {
    pub fn new(x: [f64; 3], v: [f64; 3]) -> Self {
        ParticleState { t: 0.0, x, v, phase: 0.0 }
    }

    pub fn is_finite(&self) -> bool {
        self.t.is_finite() && self.phase.is_finite() && self.x.iter().chain(&self.v).all(|c| c.is_finite())
    }

    pub fn speed(&self) -> f64 {
        norm(&self.v)
    }
}

/// Rates `(dx/dt, dv/dt, dφ/dt)`.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Derivative {
    pub dx: [f64; 3],
    pub dv: [f64; 3],
    pub dphase: f64,
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum DynamicsError {
    #[error("at t={t}, x={x:?}: {source}")]
    Eval { t: f64, x: [f64; 3], source: EvalError },
    #[error("singular inertial mass: m + kappa*q = 0 (m={m}, q={q}, kappa={kappa})")]
    SingularMass { m: f64, q: f64, kappa: f64 },
    #[error("non-finite state at step {step}")]
    Blowup { step: usize },
    #[error("|v|/c = {ratio} exceeds the cap {cap}")]
    SpeedCap { ratio: f64, cap: f64 },
    #[error("unbound field parameters: {}", .0.join(", "))]
    Unbound(Vec<String>),
    #[error("step size must be finite and nonzero, got {0}")]
    Step(f64),
}

pub(crate) fn norm(u: &[f64; 3]) -> f64 {
    dot(u, u).sqrt()
}

pub(crate) fn dot(u: &[f64; 3], w: &[f64; 3]) -> f64 {
    u[0] * w[0] + u[1] * w[1] + u[2] * w[2]
}

pub(crate) fn cross(u: &[f64; 3], w: &[f64; 3]) -> [f64; 3] {
    [u[1] * w[2] - u[2] * w[1], u[2] * w[0] - u[0] * w[2], u[0] * w[1] - u[1] * w[0]]
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Lorentz => "lorentz",
            Mode::NewtonianGravity1p1 => "newtonian_gravity_1p1",
            Mode::Electrograv => "electrograv",
        })
    }
}

impl FromStr for Mode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "lorentz" => Ok(Mode::Lorentz),
            "newtonian_gravity_1p1" | "newtonian" => Ok(Mode::NewtonianGravity1p1),
            "electrograv" => Ok(Mode::Electrograv),
            _ => Err(format!("unknown mode {s:?} (expected lorentz, newtonian_gravity_1p1 or electrograv)")),
        }
    }
}
