use std::fmt::Write as _;
use std::str::FromStr;

use super::{norm, Derivative, DynamicsError, ParticleState};

pub const TRAJECTORY_HEADER: &str = "step,t,x1,x2,x3,v1,v2,v3,phase";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Method {
    #[default]
    Rk4,
    Euler,
}

impl FromStr for Method {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "rk4" => Ok(Method::Rk4),
            "euler" => Ok(Method::Euler),
            _ => Err(format!("unknown method {s:?} (expected rk4 or euler)")),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory {
    pub dt: f64,
    pub method: Method,
    /// `steps + 1` records, the initial state first.
    pub states: Vec<ParticleState>,
}

impl Trajectory {
    pub fn last(&self) -> &ParticleState {
        self.states.last().expect("at least the initial state")
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from(TRAJECTORY_HEADER);
        out.push('\n');
        for (n, s) in self.states.iter().enumerate() {
            let _ = writeln!(
                out,
                "{n},{},{},{},{},{},{},{},{}",
                s.t, s.x[0], s.x[1], s.x[2], s.v[0], s.v[1], s.v[2], s.phase
            );
        }
        out
    }
}

fn advance(s: &ParticleState, d: &Derivative, h: f64) -> ParticleState {
    ParticleState {
        t: s.t + h,
        x: [0, 1, 2].map(|i| s.x[i] + h * d.dx[i]),
        v: [0, 1, 2].map(|i| s.v[i] + h * d.dv[i]),
        phase: s.phase + h * d.dphase,
    }
}

fn combine(k: [&Derivative; 4]) -> Derivative {
    let w = |a: f64, b: f64, c: f64, d: f64| (a + 2.0 * b + 2.0 * c + d) / 6.0;
    Derivative {
        dx: [0, 1, 2].map(|i| w(k[0].dx[i], k[1].dx[i], k[2].dx[i], k[3].dx[i])),
        dv: [0, 1, 2].map(|i| w(k[0].dv[i], k[1].dv[i], k[2].dv[i], k[3].dv[i])),
        dphase: w(k[0].dphase, k[1].dphase, k[2].dphase, k[3].dphase),
    }
}

/// Running compensation of the state sums, one slot per `x`, `v`, `φ`
/// component.
struct Compensated([f64; 7]);

impl Compensated {
    fn add(&mut self, slot: usize, sum: &mut f64, inc: f64) {
        let y = inc - self.0[slot];
        let t = *sum + y;
        self.0[slot] = (t - *sum) - y;
        *sum = t;
    }

    fn step(&mut self, s: &mut ParticleState, d: &Derivative, h: f64) {
        for i in 0..3 {
            self.add(i, &mut s.x[i], h * d.dx[i]);
            self.add(3 + i, &mut s.v[i], h * d.dv[i]);
        }
        self.add(6, &mut s.phase, h * d.dphase);
    }
}

/// Fixed-step integration. A negative `dt` runs backward in time. Times are
/// `t0 + n dt` and the state increments are summed with compensation, so
/// round-off does not grow with the step count.
pub fn integrate<F>(
    rhs: F,
    s0: ParticleState,
    dt: f64,
    steps: usize,
    method: Method,
) -> Result<Trajectory, DynamicsError>
where
    F: Fn(&ParticleState) -> Result<Derivative, DynamicsError>,
{
    if !dt.is_finite() || dt == 0.0 {
        return Err(DynamicsError::Step(dt));
    }
    if !s0.is_finite() {
        return Err(DynamicsError::Blowup { step: 0 });
    }
    let mut states = Vec::with_capacity(steps + 1);
    states.push(s0);
    let mut s = s0;
    let mut comp = Compensated([0.0; 7]);
    for n in 1..=steps {
        let d = match method {
            Method::Euler => rhs(&s)?,
            Method::Rk4 => {
                let k1 = rhs(&s)?;
                let k2 = rhs(&advance(&s, &k1, dt / 2.0))?;
                let k3 = rhs(&advance(&s, &k2, dt / 2.0))?;
                let k4 = rhs(&advance(&s, &k3, dt))?;
                combine([&k1, &k2, &k3, &k4])
            }
        };
        comp.step(&mut s, &d, dt);
        s.t = s0.t + n as f64 * dt;
        if !s.is_finite() {
            return Err(DynamicsError::Blowup { step: n });
        }
        states.push(s);
    }
    Ok(Trajectory { dt, method, states })
}

/// A step resolving the fastest rate seen at `s0` with 1000 steps per
/// radian-period: `|a|/|v|` when both are nonzero, `√|a|` per unit length
/// when at rest, `fallback` for unforced motion.
pub fn suggest_dt<F>(rhs: F, s0: &ParticleState, fallback: f64) -> Result<f64, DynamicsError>
where
    F: Fn(&ParticleState) -> Result<Derivative, DynamicsError>,
{
    let d = rhs(s0)?;
    let a = norm(&d.dv);
    let v = s0.speed();
    let rate = if a == 0.0 {
        return Ok(fallback);
    } else if v > 0.0 {
        a / v
    } else {
        a.sqrt()
    };
    Ok(2.0 * std::f64::consts::PI / (1000.0 * rate))
}
