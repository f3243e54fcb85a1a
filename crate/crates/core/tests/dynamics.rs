use std::f64::consts::PI;
use std::path::PathBuf;

use gaq::constants::NumericConstants;
use gaq::dynamics::*;
use gaq::field::{vector_ops, FieldSpec, Params, Var};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn corpus(name: &str) -> FieldSpec {
    let p = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fields").join(format!("{name}.toml"));
    FieldSpec::load(&p).unwrap()
}

fn spec(entries: &[(&str, &str)]) -> FieldSpec {
    let mut s = FieldSpec::vacuum("test");
    for (k, v) in entries {
        s.set(k, v).unwrap();
    }
    s
}

fn fieldset(s: &FieldSpec) -> FieldSet {
    FieldSet::new(s, &Params::new()).unwrap()
}

fn constants(m: f64, q: f64) -> NumericConstants {
    NumericConstants { m, q, g: m, kappa: 0.0, hbar: 1.0, c: 1.0 }
}

/// Exact orbit in `B ẑ` with `ω = qB/m`: the velocity turns by `−ωt`.
fn cyclotron_exact(s0: &ParticleState, omega: f64, t: f64) -> [f64; 3] {
    let (c, s) = ((omega * t).cos(), (omega * t).sin());
    let (vx, vy) = (s0.v[0], s0.v[1]);
    [
        s0.x[0] + (vx * s + vy * (1.0 - c)) / omega,
        s0.x[1] + (vy * s - vx * (1.0 - c)) / omega,
        s0.x[2] + s0.v[2] * t,
    ]
}

fn cyclotron_run(n: usize) -> (Trajectory, f64, f64, ParticleState) {
    let fs = fieldset(&corpus("uniform_b"));
    let k = constants(2.0, 0.5);
    let omega = k.q * 1.0 / k.m;
    let s0 = ParticleState::new([0.3, -0.2, 0.1], [0.4, 0.1, 0.0]);
    let period = 2.0 * PI / omega;
    let traj = integrate(|s| lorentz_rhs(s, &fs, &k), s0, period / n as f64, n, Method::Rk4).unwrap();
    (traj, omega, period, s0)
}

#[test]
fn cyclotron_orbit_closes() {
    let (traj, omega, _, s0) = cyclotron_run(1000);
    let r = 2.0 * s0.speed() / (0.5 * 1.0);
    assert!((r - s0.speed() / omega).abs() < 1e-15);
    let end = traj.last();
    let gap = ((end.x[0] - s0.x[0]).powi(2) + (end.x[1] - s0.x[1]).powi(2)).sqrt();
    assert!(gap < 1e-6 * r, "closure {gap}");
    let fs = fieldset(&corpus("uniform_b"));
    let model = ForceModel::new(Mode::Lorentz, constants(2.0, 0.5));
    let report = monitor_invariants(&traj, &fs, &model).unwrap();
    assert!(report.get("energy").unwrap().max_rel_drift() < 1e-8);
    // the symmetric gauge depends on x1 and x2 only
    assert!(report.get("P3").unwrap().max_abs_drift() < 1e-15);
    assert!(report.get("P1").is_none());
}

#[test]
fn cyclotron_fourth_order() {
    let err = |n: usize| {
        let (traj, omega, _, s0) = cyclotron_run(n);
        traj.states
            .iter()
            .map(|s| {
                let e = cyclotron_exact(&s0, omega, s.t);
                (0..3).map(|i| (s.x[i] - e[i]).abs()).fold(0.0, f64::max)
            })
            .fold(0.0, f64::max)
    };
    for n in [200, 1000] {
        let ratio = err(n) / err(2 * n);
        assert!((12.0..=20.0).contains(&ratio), "n={n} ratio {ratio}");
    }
}

#[test]
fn euler_is_first_order() {
    let fs = fieldset(&corpus("uniform_b"));
    let k = constants(1.0, 1.0);
    let s0 = ParticleState::new([0.0; 3], [1.0, 0.0, 0.0]);
    let err = |n: usize| {
        let t = integrate(|s| lorentz_rhs(s, &fs, &k), s0, 1.0 / n as f64, n, Method::Euler).unwrap();
        let e = cyclotron_exact(&s0, 1.0, 1.0);
        (0..3).map(|i| (t.last().x[i] - e[i]).abs()).fold(0.0, f64::max)
    };
    let ratio = err(1000) / err(2000);
    assert!((1.8..2.2).contains(&ratio), "{ratio}");
}

#[test]
fn electrostatic_acceleration() {
    let fs = fieldset(&spec(&[("A0", "E*x1")]).tap_params(&[("E", 0.7)]));
    let k = constants(2.0, 3.0);
    let d = lorentz_rhs(&ParticleState::new([1.0, 2.0, 3.0], [0.1, 0.2, 0.3]), &fs, &k).unwrap();
    assert_eq!(d.dv, [-3.0 * 0.7 / 2.0, 0.0, 0.0]);
    assert_eq!(d.dx, [0.1, 0.2, 0.3]);
    // the phase rate is the Lagrangian over −ħ
    let l = 0.5 * 2.0 * 0.14 - 3.0 * 0.7 * 1.0;
    assert!((d.dphase + l).abs() < 1e-15);
}

trait TapParams {
    fn tap_params(self, p: &[(&str, f64)]) -> Self;
}

impl TapParams for FieldSpec {
    fn tap_params(mut self, p: &[(&str, f64)]) -> Self {
        for (k, v) in p {
            self.params.insert(k.to_string(), *v);
        }
        self
    }
}

#[test]
fn free_particle_invariants_and_phase() {
    let fs = fieldset(&FieldSpec::vacuum("free"));
    let k = NumericConstants { m: 1.5, q: 1.0, g: 1.5, kappa: 0.0, hbar: 0.7, c: 1.0 };
    let model = ForceModel::new(Mode::Lorentz, k);
    let s0 = ParticleState::new([1.0, -2.0, 0.5], [0.3, 0.2, -0.4]);
    let traj = integrate(|s| model.rhs(s, &fs), s0, 1e-3, 10_000, Method::Rk4).unwrap();
    let r = monitor_invariants(&traj, &fs, &model).unwrap();
    for name in ["energy", "P1", "P2", "P3", "K1", "K2", "K3"] {
        let d = r.get(name).unwrap().max_abs_drift();
        assert!(d < 1e-12, "{name} {d}");
    }
    let phase = r.get("phase_residual").unwrap();
    assert!(phase.max_abs_drift() < 1e-10, "{}", phase.max_abs_drift());
    // velocity never changes
    assert!(traj.states.iter().all(|s| s.v == s0.v));
}

#[test]
fn printed_phase_rate_differs_with_charge() {
    let fs = fieldset(&corpus("crossed_eb"));
    let s = ParticleState::new([0.5, 0.2, 0.0], [0.1, -0.2, 0.05]);
    let neutral = constants(1.0, 0.0);
    let a = lorentz_rhs(&s, &fs, &neutral).unwrap().dphase;
    let b = printed_phase_rate(&s, &fs, &neutral).unwrap();
    assert!((a - b).abs() < 1e-15);
    let charged = constants(1.0, 1.0);
    let a = lorentz_rhs(&s, &fs, &charged).unwrap().dphase;
    let b = printed_phase_rate(&s, &fs, &charged).unwrap();
    assert!((a - b).abs() > 1e-3);
}

fn random_state(rng: &mut ChaCha8Rng, vmax: f64) -> ParticleState {
    let mut r = |a: f64| rng.gen_range(-a..a);
    ParticleState {
        t: r(3.0),
        x: [r(2.0), r(2.0), r(2.0)],
        v: [r(vmax), r(vmax), r(vmax)],
        phase: r(1.0),
    }
}

#[test]
fn reduction_is_bitwise() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let sets: Vec<FieldSet> = ["uniform_b", "crossed_eb", "plane_wave"].iter().map(|n| fieldset(&corpus(n))).collect();
    for n in 0..100 {
        let fs = &sets[n % sets.len()];
        let k = NumericConstants {
            m: rng.gen_range(0.5..3.0),
            q: rng.gen_range(-2.0..2.0),
            g: 1.0,
            kappa: 0.0,
            hbar: rng.gen_range(0.5..2.0),
            c: rng.gen_range(1.0..3.0),
        };
        let model = ForceModel::new(Mode::Electrograv, k).with_toggles(Toggles([true; 5]));
        let s = random_state(&mut rng, 0.1);
        let a = lorentz_rhs(&s, fs, &k).unwrap();
        let b = electrograv_rhs(&s, fs, &model).unwrap();
        let bits = |d: &Derivative| {
            d.dx.iter().chain(&d.dv).chain([&d.dphase]).map(|c| c.to_bits()).collect::<Vec<_>>()
        };
        assert_eq!(bits(&a), bits(&b), "state {n}");
    }
}

#[test]
fn line_two_is_the_gravito_electromagnetic_force() {
    let spec = corpus("gravitomagnetic");
    let fs = fieldset(&spec);
    let ops = vector_ops(&spec);
    let k = NumericConstants { m: 3.0, q: 0.0, g: 6.0, kappa: 0.0, hbar: 1.0, c: 2.0 };
    let model = ForceModel::new(Mode::Electrograv, k).with_toggles(Toggles::only(&[2]));
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..50 {
        let s = random_state(&mut rng, 0.3);
        let p = [s.t, s.x[0], s.x[1], s.x[2]];
        let ev = |u: &[gaq::field::Expr; 3]| gaq::field::eval3(u, &p, &spec.params).unwrap();
        let (d0h, g00, rot) = (ev(&ops.d0_h), ev(&ops.grad_h00), ev(&ops.curl_h_row));
        let v = s.v;
        let vxr = [v[1] * rot[2] - v[2] * rot[1], v[2] * rot[0] - v[0] * rot[2], v[0] * rot[1] - v[1] * rot[0]];
        let d = electrograv_rhs(&s, &fs, &model).unwrap();
        for i in 0..3 {
            let gem = d0h[i] + g00[i] - vxr[i];
            assert!((d.dv[i] - gem).abs() < 1e-12, "{} vs {gem}", d.dv[i]);
        }
    }
}

#[test]
fn rotating_frame_drag_term() {
    // h = (−J x2/2, J x1/2, 0): ∇∧h = J ẑ, so line 2 alone gives −v∧J ẑ
    let fs = fieldset(&spec(&[("h01", "-x2"), ("h02", "x1")]));
    let model = ForceModel::new(Mode::Electrograv, constants(1.0, 0.0)).with_toggles(Toggles::only(&[2]));
    let d = electrograv_rhs(&ParticleState::new([0.0; 3], [0.1, 0.0, 0.0]), &fs, &model).unwrap();
    assert_eq!(d.dv, [0.0, 0.2, 0.0]);
}

fn pure_h() -> FieldSet {
    fieldset(&corpus("gravitomagnetic"))
}

#[test]
fn line_five_scales_linearly_in_kappa_and_q() {
    let fs = pure_h();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let s = random_state(&mut rng, 0.2);
    let force = |kappa: f64, q: f64| {
        let k = NumericConstants { m: 1.0, q, g: 1.0, kappa, hbar: 1.0, c: 1.0 };
        let model = ForceModel::new(Mode::Electrograv, k);
        let lf = line_forces(&s, &fs, &model).unwrap();
        assert_eq!(lf.line(1), [0.0; 3]);
        let f = lf.line(5);
        (f[0] * f[0] + f[1] * f[1] + f[2] * f[2]).sqrt()
    };
    let fit = |xs: &[f64], ys: &[f64]| {
        let n = xs.len() as f64;
        let (sx, sy) = (xs.iter().sum::<f64>(), ys.iter().sum::<f64>());
        let sxx: f64 = xs.iter().map(|x| x * x).sum();
        let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| x * y).sum();
        let slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
        (slope, (sy - slope * sx) / n)
    };
    let kappas: Vec<f64> = (0..20).map(|_| rng.gen_range(1e-3..1.0)).collect();
    let ys: Vec<f64> = kappas.iter().map(|&k| force(k, 0.8)).collect();
    let (slope, icpt) = fit(&kappas, &ys);
    let unit = force(1.0, 0.8);
    assert!(((slope - unit) / unit).abs() < 1e-6 && icpt.abs() < 1e-9 * unit);
    let qs: Vec<f64> = (0..20).map(|_| rng.gen_range(0.01..2.0)).collect();
    let ys: Vec<f64> = qs.iter().map(|&q| force(0.3, q)).collect();
    let (slope, _) = fit(&qs, &ys);
    let unit = force(0.3, 1.0);
    assert!(((slope - unit) / unit).abs() < 1e-6);
    // and flips with the charge
    let k = |q| NumericConstants { m: 1.0, q, g: 1.0, kappa: 0.5, hbar: 1.0, c: 1.0 };
    let a = line_forces(&s, &fs, &ForceModel::new(Mode::Electrograv, k(1.0))).unwrap().line(5);
    let b = line_forces(&s, &fs, &ForceModel::new(Mode::Electrograv, k(-1.0))).unwrap().line(5);
    assert_eq!(a, b.map(|c| -c));
}

#[test]
fn toggles_only_add_lines() {
    let fs = fieldset(&corpus("mixed"));
    let k = NumericConstants { m: 1.0, q: 0.7, g: 1.0, kappa: 0.2, hbar: 1.0, c: 1.0 };
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let s = random_state(&mut rng, 0.2);
    let all = line_forces(&s, &fs, &ForceModel::new(Mode::Electrograv, k).with_toggles(Toggles([true; 5]))).unwrap();
    for mask in 0..32u32 {
        let t = Toggles(std::array::from_fn(|i| mask & (1 << i) != 0));
        let model = ForceModel::new(Mode::Electrograv, k).with_toggles(t);
        let lf = line_forces(&s, &fs, &model).unwrap();
        for l in 1..=5 {
            let want = if t.line(l) { all.line(l) } else { [0.0; 3] };
            assert_eq!(lf.line(l), want);
        }
        let d = electrograv_rhs(&s, &fs, &model).unwrap();
        let mass = k.m + k.kappa * k.q;
        for i in 0..3 {
            let sum: f64 = (1..=5).map(|l| lf.line(l)[i]).sum();
            assert!((d.dv[i] * mass - sum).abs() < 1e-14);
        }
    }
}

#[test]
fn line_four_sign_readings() {
    let fs = fieldset(&spec(&[("h01", "x1"), ("h00", "x2")]));
    let k = constants(1.0, 0.0);
    let s = ParticleState::new([1.0, 2.0, 0.0], [0.0; 3]);
    let mut model = ForceModel::new(Mode::Electrograv, k).with_toggles(Toggles::only(&[4]));
    // ∇(h00²) = (0, 2 x2, 0), ∇(h·h) = (2 x1, 0, 0)
    assert_eq!(line_forces(&s, &fs, &model).unwrap().line(4), [0.5, -2.0, 0.0]);
    model.line4 = Line4Sign::Distributed;
    assert_eq!(line_forces(&s, &fs, &model).unwrap().line(4), [-0.5, -2.0, 0.0]);
    assert!(!Toggles::default().line(4));
}

#[test]
fn singular_mass_and_speed_cap() {
    let fs = pure_h();
    let k = NumericConstants { m: 1.0, q: 2.0, g: 1.0, kappa: -0.5, hbar: 1.0, c: 1.0 };
    let model = ForceModel::new(Mode::Electrograv, k);
    let s = ParticleState::new([0.0; 3], [0.1, 0.0, 0.0]);
    assert!(matches!(electrograv_rhs(&s, &fs, &model), Err(DynamicsError::SingularMass { .. })));
    let model = ForceModel::new(Mode::Electrograv, constants(1.0, 1.0));
    let fast = ParticleState::new([0.0; 3], [0.5, 0.0, 0.0]);
    assert!(matches!(electrograv_rhs(&fast, &fs, &model), Err(DynamicsError::SpeedCap { .. })));
    let uncapped = ForceModel { speed_cap: None, ..model };
    assert!(electrograv_rhs(&fast, &fs, &uncapped).is_ok());
}

#[test]
fn blowup_reports_the_step() {
    let rhs = |s: &ParticleState| {
        Ok(Derivative { dx: s.v, dv: [if s.t > 0.25 { f64::INFINITY } else { 0.0 }, 0.0, 0.0], dphase: 0.0 })
    };
    let err = integrate(rhs, ParticleState::new([0.0; 3], [1.0, 0.0, 0.0]), 0.1, 10, Method::Euler).unwrap_err();
    assert_eq!(err, DynamicsError::Blowup { step: 4 });
    assert!(matches!(
        integrate(rhs, ParticleState::new([0.0; 3], [0.0; 3]), 0.0, 1, Method::Rk4),
        Err(DynamicsError::Step(_))
    ));
}

#[test]
fn evaluation_errors_carry_the_state() {
    let fs = fieldset(&spec(&[("A0", "sqrt(x1)")]));
    let s = ParticleState::new([-1.0, 0.0, 0.0], [0.0; 3]);
    match lorentz_rhs(&s, &fs, &constants(1.0, 1.0)) {
        Err(DynamicsError::Eval { x, .. }) => assert_eq!(x, [-1.0, 0.0, 0.0]),
        other => panic!("{other:?}"),
    }
    let unbound = FieldSet::new(&spec(&[("A0", "E*x1")]), &Params::new()).unwrap_err();
    assert_eq!(unbound, DynamicsError::Unbound(vec!["E".into()]));
}

#[test]
fn time_reversal_in_static_fields() {
    let fs = fieldset(&corpus("crossed_eb"));
    let k = constants(1.0, 1.0);
    let s0 = ParticleState::new([0.2, -0.1, 0.3], [0.3, 0.1, -0.2]);
    let fwd = integrate(|s| lorentz_rhs(s, &fs, &k), s0, 1e-3, 2000, Method::Rk4).unwrap();
    let back = integrate(|s| lorentz_rhs(s, &fs, &k), *fwd.last(), -1e-3, 2000, Method::Rk4).unwrap();
    let e = back.last();
    for i in 0..3 {
        assert!((e.x[i] - s0.x[i]).abs() < 1e-9 && (e.v[i] - s0.v[i]).abs() < 1e-9);
    }
    assert!((e.phase - s0.phase).abs() < 1e-9);
    assert_eq!(e.t, 0.0);
}

#[test]
fn gauge_transformations_leave_forces_alone() {
    let base = corpus("mixed");
    let f = "sin(x1)*x2 + t*x3^2 + exp(0.3*t*x1)";
    let fexpr = gaq::field::parse(f).unwrap();
    let mut gauged = base.clone();
    gauged.set_a(0, base.a(0).sub(&fexpr.differentiate(Var::T)));
    for (i, v) in Var::SPACE.into_iter().enumerate() {
        gauged.set_a(i + 1, base.a(i + 1).add(&fexpr.differentiate(v)));
    }
    let (fa, fb) = (fieldset(&base), fieldset(&gauged));
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    for _ in 0..100 {
        let k = constants(rng.gen_range(0.5..2.0), rng.gen_range(-2.0..2.0));
        let s = random_state(&mut rng, 0.2);
        let a = lorentz_rhs(&s, &fa, &k).unwrap();
        let b = lorentz_rhs(&s, &fb, &k).unwrap();
        for i in 0..3 {
            assert!((a.dv[i] - b.dv[i]).abs() < 1e-10, "{:?} {:?}", a.dv, b.dv);
        }
    }
}

#[test]
fn newtonian_constant_force() {
    let h = gaq::field::parse("0.3*x1").unwrap();
    let k = NumericConstants { m: 2.0, q: 0.0, g: 2.0, kappa: 0.0, hbar: 1.0, c: 1.0 };
    let d = newtonian_1p1_rhs(&ParticleState::new([5.0, 0.0, 0.0], [0.1, 0.0, 0.0]), &h, &Params::new(), &k).unwrap();
    assert_eq!(d.dv, [0.15, 0.0, 0.0]);
    assert_eq!(d.dx, [0.1, 0.0, 0.0]);
    let free = gaq::field::Expr::num(0.0);
    let d = newtonian_1p1_rhs(&ParticleState::new([5.0, 0.0, 0.0], [0.1, 0.0, 0.0]), &free, &Params::new(), &k).unwrap();
    assert_eq!(d.dv, [0.0; 3]);
}

#[test]
fn newtonian_time_dependent_potential() {
    // h = h(t): p conserved, ħφ = −∫(p²/2m + h) dt
    let spec = spec(&[("h00", "0.5*t^2")]);
    let fs = fieldset(&spec);
    let k = NumericConstants { m: 2.0, q: 0.0, g: 2.0, kappa: 0.0, hbar: 0.5, c: 1.0 };
    let model = ForceModel::new(Mode::NewtonianGravity1p1, k);
    let s0 = ParticleState::new([0.0; 3], [0.3, 0.0, 0.0]);
    let traj = integrate(|s| model.rhs(s, &fs), s0, 1e-2, 200, Method::Rk4).unwrap();
    let end = traj.last();
    let p = k.m * 0.3;
    let want = -(p * p / (2.0 * k.m) * end.t + end.t.powi(3) / 6.0) / k.hbar;
    assert!((end.phase - want).abs() < 1e-12, "{} vs {want}", end.phase);
    let r = monitor_invariants(&traj, &fs, &model).unwrap();
    assert!(r.get("P1").unwrap().max_abs_drift() == 0.0);
    assert!(r.get("energy").is_none());
}

#[test]
fn kappa_scan_table() {
    let k = NumericConstants { m: 1.0, q: 1.0, g: 1.0, kappa: 0.0, hbar: 1.0, c: 1.0 };
    let sc = Scenario {
        fields: pure_h(),
        model: ForceModel::new(Mode::Electrograv, k),
        s0: ParticleState::new([0.5, 0.2, -0.3], [0.1, 0.05, 0.0]),
        dt: 1e-2,
        steps: 200,
        method: Method::Rk4,
    };
    let table = kappa_scan(&sc, &[0.0, 1e-8, 0.1]).unwrap();
    assert_eq!(table.rows[0].mass_split, 0.0);
    assert_eq!(table.rows[0].deflection, 0.0);
    assert_eq!(table.rows[1].mass_split, 2e-8);
    assert!(table.rows[2].deflection > 0.0);
    assert_eq!(table.rows[2].effective_mass, 1.1);
    let csv = table.to_csv();
    assert!(csv.starts_with("kappa,effective_mass,conjugate_mass,mass_split,deflection\n"));
    assert!(csv.contains("\n0.00000001,1.00000001,0.99999999,0.00000002,"));
    assert!(matches!(kappa_scan(&sc, &[-1.0]), Err(DynamicsError::SingularMass { .. })));
}

#[test]
fn trajectory_csv() {
    let fs = fieldset(&FieldSpec::vacuum("free"));
    let k = constants(1.0, 1.0);
    let t = integrate(|s| lorentz_rhs(s, &fs, &k), ParticleState::new([0.0; 3], [1.0, 0.0, 0.0]), 0.5, 2, Method::Rk4)
        .unwrap();
    assert_eq!(
        t.to_csv(),
        "step,t,x1,x2,x3,v1,v2,v3,phase\n0,0,0,0,0,1,0,0,0\n1,0.5,0.5,0,0,1,0,0,-0.25\n2,1,1,0,0,1,0,0,-0.5\n"
    );
}

#[test]
fn suggested_step_resolves_the_cyclotron_period() {
    let fs = fieldset(&corpus("uniform_b"));
    let k = constants(1.0, 2.0);
    let s0 = ParticleState::new([0.0; 3], [0.5, 0.0, 0.0]);
    let dt = suggest_dt(|s| lorentz_rhs(s, &fs, &k), &s0, 0.01).unwrap();
    assert!((dt - PI / 1000.0).abs() < 1e-15);
    let free = fieldset(&FieldSpec::vacuum("free"));
    assert_eq!(suggest_dt(|s| lorentz_rhs(s, &free, &k), &s0, 0.01).unwrap(), 0.01);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn free_motion_is_exact(x in prop::array::uniform3(-5.0..5.0f64), v in prop::array::uniform3(-1.0..1.0f64), n in 1usize..50) {
        let fs = fieldset(&FieldSpec::vacuum("free"));
        let k = constants(1.0, 1.0);
        let t = integrate(|s| lorentz_rhs(s, &fs, &k), ParticleState::new(x, v), 0.125, n, Method::Rk4).unwrap();
        let end = t.last();
        for i in 0..3 {
            prop_assert!((end.x[i] - (x[i] + v[i] * end.t)).abs() < 1e-12);
        }
    }

    #[test]
    fn modes_parse(mode in prop_oneof![Just(Mode::Lorentz), Just(Mode::NewtonianGravity1p1), Just(Mode::Electrograv)]) {
        prop_assert_eq!(mode.to_string().parse::<Mode>().unwrap(), mode);
    }

    #[test]
    fn toggles_round_trip(bits in prop::array::uniform5(any::<bool>())) {
        let t = Toggles(bits);
        prop_assert_eq!(t.to_string().parse::<Toggles>().unwrap(), t);
    }
}
