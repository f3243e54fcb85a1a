use std::str::FromStr;

use super::{cross, dot, Derivative, DynamicsError, ParticleState};
use crate::constants::NumericConstants;
use crate::field::{curl, dt, eval3, grad, scale, vector_ops, Expr, FieldSpec, Params, Point};

/// A field spec with every derivative the force laws need, built once.
#[derive(Debug, Clone)]
pub struct FieldSet {
    pub spec: FieldSpec,
    pub params: Params,
    a0: Expr,
    a_vec: [Expr; 3],
    curl_a: [Expr; 3],
    grad_a0: [Expr; 3],
    da_dt: [Expr; 3],
    gravity: bool,
    h00: Expr,
    grad_h00: [Expr; 3],
    d0_h: [Expr; 3],
    curl_h: [Expr; 3],
    d0_h00_h: [Expr; 3],
    curl_h00_h: [Expr; 3],
    d0_hh_h: [Expr; 3],
    curl_hh_h: [Expr; 3],
    grad_h00_sq: [Expr; 3],
    grad_h_dot_h: [Expr; 3],
}

impl FieldSet {
    /// Fails when some parameter is bound neither by the spec nor by `extra`.
    pub fn new(spec: &FieldSpec, extra: &Params) -> Result<Self, DynamicsError> {
        let unbound = spec.unbound_params(extra);
        if !unbound.is_empty() {
            return Err(DynamicsError::Unbound(unbound));
        }
        let ops = vector_ops(spec);
        let h00 = spec.h(0, 0).clone();
        let h00_h = scale(&h00, &ops.h_vec);
        Ok(FieldSet {
            params: spec.merged_params(extra),
            a0: spec.a(0).clone(),
            curl_a: ops.curl_a,
            grad_a0: ops.grad_a0,
            da_dt: ops.da_dt,
            gravity: spec.has_gravity(),
            grad_h00: ops.grad_h00,
            d0_h: ops.d0_h,
            curl_h: ops.curl_h_row,
            d0_h00_h: dt(&h00_h),
            curl_h00_h: curl(&h00_h),
            d0_hh_h: dt(&ops.hh_dot_h),
            curl_hh_h: curl(&ops.hh_dot_h),
            grad_h00_sq: grad(&h00.mul(&h00)),
            grad_h_dot_h: ops.grad_h_dot_h,
            a_vec: ops.a_vec,
            h00,
            spec: spec.clone(),
        })
    }

    pub fn has_gravity(&self) -> bool {
        self.gravity
    }

    fn at(&self, s: &ParticleState) -> Eval<'_> {
        Eval { fields: self, point: [s.t, s.x[0], s.x[1], s.x[2]], s: *s }
    }
}

struct Eval<'a> {
    fields: &'a FieldSet,
    point: Point,
    s: ParticleState,
}

impl Eval<'_> {
    fn wrap(&self, source: crate::field::EvalError) -> DynamicsError {
        DynamicsError::Eval { t: self.s.t, x: self.s.x, source }
    }

    fn scalar(&self, e: &Expr) -> Result<f64, DynamicsError> {
        e.eval(&self.point, &self.fields.params).map_err(|e| self.wrap(e))
    }

    fn vector(&self, u: &[Expr; 3]) -> Result<[f64; 3], DynamicsError> {
        eval3(u, &self.point, &self.fields.params).map_err(|e| self.wrap(e))
    }

    /// `∂_t u − v∧(∇∧u)`.
    fn lorentz_like(&self, d0: &[Expr; 3], rot: &[Expr; 3]) -> Result<[f64; 3], DynamicsError> {
        let d = self.vector(d0)?;
        let r = cross(&self.s.v, &self.vector(rot)?);
        Ok([d[0] - r[0], d[1] - r[1], d[2] - r[2]])
    }
}

/// Sign of `∇(h·h)` in the fourth line of the mixed force law; the printed
/// line break leaves it open.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Line4Sign {
    /// `−2∇(h⁰⁰²) + ∇(h·h)`.
    #[default]
    Printed,
    /// `−2∇(h⁰⁰²) − ∇(h·h)`.
    Distributed,
}

impl FromStr for Line4Sign {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "printed" => Ok(Line4Sign::Printed),
            "distributed" => Ok(Line4Sign::Distributed),
            _ => Err(format!("unknown line-4 sign {s:?} (expected printed or distributed)")),
        }
    }
}

/// Per-line switches, lines numbered 1 to 5.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Toggles(pub [bool; 5]);

impl Default for Toggles {
    /// Everything but line 4.
    fn default() -> Self {
        Toggles([true, true, true, false, true])
    }
}

impl Toggles {
    pub fn none() -> Self {
        Toggles([false; 5])
    }

    pub fn only(lines: &[usize]) -> Self {
        let mut t = Toggles::none();
        for &l in lines {
            t.0[l - 1] = true;
        }
        t
    }

    pub fn line(&self, l: usize) -> bool {
        self.0[l - 1]
    }

    /// Any gravitational line (2 to 5) on.
    pub fn gravity(&self) -> bool {
        self.0[1..].iter().any(|&b| b)
    }
}

impl FromStr for Toggles {
    type Err = String;

    /// A comma-separated list of line numbers, `all` or `none`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim() {
            "all" => return Ok(Toggles([true; 5])),
            "none" | "" => return Ok(Toggles::none()),
            _ => {}
        }
        let mut t = Toggles::none();
        for part in s.split(',') {
            let l: usize = part.trim().parse().map_err(|_| format!("bad line number {part:?}"))?;
            if !(1..=5).contains(&l) {
                return Err(format!("line {l} out of range 1..=5"));
            }
            t.0[l - 1] = true;
        }
        Ok(t)
    }
}

impl std::fmt::Display for Toggles {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let on: Vec<String> = (1..=5).filter(|&l| self.line(l)).map(|l| l.to_string()).collect();
        if on.is_empty() {
            f.write_str("none")
        } else {
            f.write_str(&on.join(","))
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Mode {
    #[default]
    Lorentz,
    /// 1+1 motion in `h⁰⁰(t, x1)` read as the potential `h`.
    NewtonianGravity1p1,
    Electrograv,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ForceModel {
    pub mode: Mode,
    pub constants: NumericConstants,
    pub toggles: Toggles,
    pub line4: Line4Sign,
    /// Largest allowed `|v|/c` in the mixed law; `None` lifts the cap.
    pub speed_cap: Option<f64>,
}

impl Default for ForceModel {
    fn default() -> Self {
        ForceModel {
            mode: Mode::default(),
            constants: NumericConstants::default(),
            toggles: Toggles::default(),
            line4: Line4Sign::default(),
            speed_cap: Some(0.3),
        }
    }
}

impl ForceModel {
    pub fn new(mode: Mode, constants: NumericConstants) -> Self {
        ForceModel { mode, constants, ..ForceModel::default() }
    }

    pub fn with_toggles(mut self, toggles: Toggles) -> Self {
        self.toggles = toggles;
        self
    }

    /// `m + κq`, checked.
    pub fn inertial_mass(&self) -> Result<f64, DynamicsError> {
        let k = &self.constants;
        let mass = k.m + k.kappa * k.q;
        if mass == 0.0 {
            return Err(DynamicsError::SingularMass { m: k.m, q: k.q, kappa: k.kappa });
        }
        Ok(mass)
    }

    pub fn rhs(&self, s: &ParticleState, fields: &FieldSet) -> Result<Derivative, DynamicsError> {
        match self.mode {
            Mode::Lorentz => lorentz_rhs(s, fields, &self.constants),
            Mode::NewtonianGravity1p1 => newtonian_1p1_rhs(s, &fields.h00, &fields.params, &self.constants),
            Mode::Electrograv => electrograv_rhs(s, fields, self),
        }
    }
}

/// `v∧(∇∧A) − ∇A⁰ − ∂A/∂t`.
fn lorentz_bracket(e: &Eval<'_>) -> Result<[f64; 3], DynamicsError> {
    let f = e.fields;
    let b = cross(&e.s.v, &e.vector(&f.curl_a)?);
    let g = e.vector(&f.grad_a0)?;
    let d = e.vector(&f.da_dt)?;
    Ok([b[0] - g[0] - d[0], b[1] - g[1] - d[1], b[2] - g[2] - d[2]])
}

/// `dφ/dt = −(1/ħ)[½mv² + q(v·A − A⁰)]`, from `i_X Θ = 0` on the kernel.
fn kernel_phase(e: &Eval<'_>, k: &NumericConstants) -> Result<f64, DynamicsError> {
    let v = &e.s.v;
    let mut l = 0.5 * k.m * dot(v, v);
    if k.q != 0.0 {
        let a = e.vector(&e.fields.a_vec)?;
        l += k.q * (dot(v, &a) - e.scalar(&e.fields.a0)?);
    }
    Ok(-l / k.hbar)
}

/// `m dv/dt = q[v∧(∇∧A) − ∇A⁰ − ∂A/∂t]`, `dx/dt = v`, with the phase rate
/// of the characteristic field.
pub fn lorentz_rhs(s: &ParticleState, fields: &FieldSet, k: &NumericConstants) -> Result<Derivative, DynamicsError> {
    let e = fields.at(s);
    let l = lorentz_bracket(&e)?;
    Ok(Derivative {
        dx: s.v,
        dv: [k.q * l[0] / k.m, k.q * l[1] / k.m, k.q * l[2] / k.m],
        dphase: kernel_phase(&e, k)?,
    })
}

/// `−(1/ħ)(p²/2m − (q/m)A·p)` with `p = mv + qA`, the phase rate written
/// next to the Lorentz equations. It agrees with [`lorentz_rhs`] for `q = 0`
/// only.
pub fn printed_phase_rate(s: &ParticleState, fields: &FieldSet, k: &NumericConstants) -> Result<f64, DynamicsError> {
    let e = fields.at(s);
    let a = e.vector(&fields.a_vec)?;
    let p = [0, 1, 2].map(|i| k.m * s.v[i] + k.q * a[i]);
    Ok(-(dot(&p, &p) / (2.0 * k.m) - k.q / k.m * dot(&a, &p)) / k.hbar)
}

/// Contributions of the five lines to `(m + κq) d²x/dt²`, in units where the
/// overall `c` is divided out: line 1 is `q[…]`, lines 2 to 4 carry `g/c`
/// and line 5 carries `κq/2`. Switched-off lines are zero.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct LineForces(pub [[f64; 3]; 5]);

impl LineForces {
    pub fn line(&self, l: usize) -> [f64; 3] {
        self.0[l - 1]
    }
}

fn gravity_lines(e: &Eval<'_>, model: &ForceModel) -> Result<[[f64; 3]; 4], DynamicsError> {
    let f = e.fields;
    let k = &model.constants;
    let mut out = [[0.0; 3]; 4];
    if !f.gravity {
        return Ok(out);
    }
    let t = &model.toggles;
    let gc = k.g / k.c;
    let need_gem = t.line(2) || t.line(5);
    let gem = if need_gem { e.lorentz_like(&f.d0_h, &f.curl_h)? } else { [0.0; 3] };
    if t.line(2) {
        let g00 = e.vector(&f.grad_h00)?;
        out[0] = [0, 1, 2].map(|i| gc * (gem[i] + g00[i]));
    }
    if t.line(3) {
        let a = e.lorentz_like(&f.d0_h00_h, &f.curl_h00_h)?;
        let b = e.lorentz_like(&f.d0_hh_h, &f.curl_hh_h)?;
        out[1] = [0, 1, 2].map(|i| gc * 0.25 * (b[i] - a[i]));
    }
    let need_hh = t.line(4) || (t.line(5) && k.kappa != 0.0);
    let hh = if need_hh { e.vector(&f.grad_h_dot_h)? } else { [0.0; 3] };
    if t.line(4) {
        let sq = e.vector(&f.grad_h00_sq)?;
        let sign = match model.line4 {
            Line4Sign::Printed => 1.0,
            Line4Sign::Distributed => -1.0,
        };
        out[2] = [0, 1, 2].map(|i| gc * 0.25 * (-2.0 * sq[i] + sign * hh[i]));
    }
    if t.line(5) && k.kappa != 0.0 {
        let kq = 0.5 * k.kappa * k.q;
        out[3] = [0, 1, 2].map(|i| kq * (0.25 * hh[i] + gem[i]));
    }
    Ok(out)
}

/// Each line of the mixed law at `s`.
pub fn line_forces(s: &ParticleState, fields: &FieldSet, model: &ForceModel) -> Result<LineForces, DynamicsError> {
    let e = fields.at(s);
    let mut out = [[0.0; 3]; 5];
    if model.toggles.line(1) {
        let l = lorentz_bracket(&e)?;
        out[0] = l.map(|c| model.constants.q * c);
    }
    let g = gravity_lines(&e, model)?;
    out[1..].copy_from_slice(&g);
    Ok(LineForces(out))
}

/// `(m + κq) d²x/dt² = q[…] + (g/c)[…] + ¼(g/c){…} + (κq/2)[…]` with only
/// the switched-on lines. Without `h` and with `κ = 0` the arithmetic is that
/// of [`lorentz_rhs`].
pub fn electrograv_rhs(s: &ParticleState, fields: &FieldSet, model: &ForceModel) -> Result<Derivative, DynamicsError> {
    let k = &model.constants;
    let mass = model.inertial_mass()?;
    if let Some(cap) = model.speed_cap {
        let ratio = s.speed() / k.c.abs();
        if ratio >= cap {
            return Err(DynamicsError::SpeedCap { ratio, cap });
        }
    }
    let e = fields.at(s);
    let mut dv = [0.0; 3];
    if model.toggles.line(1) {
        let l = lorentz_bracket(&e)?;
        dv = [k.q * l[0], k.q * l[1], k.q * l[2]];
    }
    if fields.gravity && model.toggles.gravity() {
        for line in gravity_lines(&e, model)? {
            for i in 0..3 {
                dv[i] += line[i];
            }
        }
    }
    Ok(Derivative { dx: s.v, dv: dv.map(|c| c / mass), dphase: kernel_phase(&e, k)? })
}

/// 1+1 motion from the kernel of `dΘ′` with `Θ′ = p dx − (p²/2m) dt + h dt
/// + ħ dφ`: `dx/dt = p/m`, `dp/dt = ∂h/∂x`, `ħ dφ/dt = −(p²/2m + h)`. Only
/// the first components of `x` and `v` move, with `p = m v1`.
pub fn newtonian_1p1_rhs(
    s: &ParticleState,
    h: &Expr,
    params: &Params,
    k: &NumericConstants,
) -> Result<Derivative, DynamicsError> {
    let point = [s.t, s.x[0], 0.0, 0.0];
    let wrap = |source| DynamicsError::Eval { t: s.t, x: s.x, source };
    let force = h.differentiate(crate::field::Var::X1).eval(&point, params).map_err(wrap)?;
    let hv = h.eval(&point, params).map_err(wrap)?;
    let p = k.m * s.v[0];
    Ok(Derivative {
        dx: [s.v[0], 0.0, 0.0],
        dv: [force / k.m, 0.0, 0.0],
        dphase: -(p * p / (2.0 * k.m) + hv) / k.hbar,
    })
}
