use std::fmt;

use super::{dot, DynamicsError, FieldSet, ForceModel, Mode, Trajectory};
use crate::field::{Expr, Var};

/// One monitored quantity along a trajectory.
#[derive(Debug, Clone, PartialEq)]
pub struct Series {
    pub name: String,
    pub values: Vec<f64>,
}

impl Series {
    /// `max |I(t) − I(0)|`.
    pub fn max_abs_drift(&self) -> f64 {
        let i0 = self.values.first().copied().unwrap_or(0.0);
        self.values.iter().map(|v| (v - i0).abs()).fold(0.0, f64::max)
    }

    /// The absolute drift over `|I(0)|`, or the absolute drift when `I(0) = 0`.
    pub fn max_rel_drift(&self) -> f64 {
        let i0 = self.values.first().copied().unwrap_or(0.0).abs();
        let d = self.max_abs_drift();
        if i0 == 0.0 {
            d
        } else {
            d / i0
        }
    }
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct InvariantReport {
    pub series: Vec<Series>,
}

impl InvariantReport {
    pub fn get(&self, name: &str) -> Option<&Series> {
        self.series.iter().find(|s| s.name == name)
    }

    pub fn max_rel_drift(&self) -> f64 {
        self.series.iter().map(Series::max_rel_drift).fold(0.0, f64::max)
    }
}

impl fmt::Display for InvariantReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.series {
            let first = s.values.first().copied().unwrap_or(f64::NAN);
            writeln!(
                f,
                "{}: initial={} max_abs_drift={:e} max_rel_drift={:e}",
                s.name,
                first,
                s.max_abs_drift(),
                s.max_rel_drift()
            )?;
        }
        writeln!(f, "max_rel_drift={:e}", self.max_rel_drift())
    }
}

fn independent_of(es: &[&Expr], v: Var) -> bool {
    es.iter().all(|e| e.differentiate(v).is_zero())
}

/// Quantities conserved by the model's fields, sampled along `traj`:
///
/// - `energy` `½mv² + qA⁰` for time-independent potentials (`½mv² − h` in
///   1+1 gravity),
/// - `P1`..`P3` `mv + qA` along directions the potentials do not depend on,
/// - `K1`..`K3` `x − vt` and `phase_residual` `φ + (P²/2mħ)t` without fields.
///
/// Potentials with gravitational entries in the mixed law are not covered.
pub fn monitor_invariants(
    traj: &Trajectory,
    fields: &FieldSet,
    model: &ForceModel,
) -> Result<InvariantReport, DynamicsError> {
    let k = &model.constants;
    let spec = &fields.spec;
    let params = &fields.params;
    let mut report = InvariantReport::default();
    let states = &traj.states;
    let eval = |e: &Expr, t: f64, x: &[f64; 3]| {
        e.eval(&[t, x[0], x[1], x[2]], params).map_err(|source| DynamicsError::Eval { t, x: *x, source })
    };
    let mut push = |name: String, values: Vec<f64>| report.series.push(Series { name, values });

    match model.mode {
        Mode::NewtonianGravity1p1 => {
            let h = spec.h(0, 0);
            if independent_of(&[h], Var::T) {
                let e = states
                    .iter()
                    .map(|s| Ok(0.5 * k.m * s.v[0] * s.v[0] - eval(h, s.t, &[s.x[0], 0.0, 0.0])?))
                    .collect::<Result<_, DynamicsError>>()?;
                push("energy".into(), e);
            }
            if independent_of(&[h], Var::X1) {
                push("P1".into(), states.iter().map(|s| k.m * s.v[0]).collect());
            }
        }
        Mode::Electrograv if fields.has_gravity() => {}
        _ => {
            let a: Vec<&Expr> = spec.a.iter().collect();
            if independent_of(&a, Var::T) {
                let e = states
                    .iter()
                    .map(|s| Ok(0.5 * k.m * dot(&s.v, &s.v) + k.q * eval(spec.a(0), s.t, &s.x)?))
                    .collect::<Result<_, DynamicsError>>()?;
                push("energy".into(), e);
            }
            for (i, v) in Var::SPACE.into_iter().enumerate() {
                if independent_of(&a, v) {
                    let p = states
                        .iter()
                        .map(|s| Ok(k.m * s.v[i] + k.q * eval(spec.a(i + 1), s.t, &s.x)?))
                        .collect::<Result<_, DynamicsError>>()?;
                    push(format!("P{}", i + 1), p);
                }
            }
            if spec.is_vacuum() {
                for i in 0..3 {
                    push(format!("K{}", i + 1), states.iter().map(|s| s.x[i] - s.v[i] * s.t).collect());
                }
                let r = states
                    .iter()
                    .map(|s| s.phase + 0.5 * k.m * dot(&s.v, &s.v) * s.t / k.hbar)
                    .collect();
                push("phase_residual".into(), r);
            }
        }
    }
    Ok(report)
}
