use std::fmt::Write as _;
use std::path::PathBuf;

use gaq::algebra::{catalog, parse_algebra, peg, AlgebraSpec};
use gaq::constants::Constants;
use gaq::dynamics::{
    integrate, kappa_scan, monitor_invariants, suggest_dt, DynamicsError, FieldSet, ForceModel, Method, Mode,
    ParticleState, Scenario,
};
use gaq::field::{FieldSpec, Params};
use gaq::geometry::{characteristic_module, left_invariant_fields, noether, peg_dtheta, right_invariant_fields, theta};
use gaq::group::{
    check_closed_form, check_group_axioms, closed_form_ge, exponentiate_canonical, group_law_peg, ClosedFormGE,
    GroupLaw, LawError,
};

use crate::config::{resolve_constants, RunConfig};
use crate::{write_outputs, AlgebraArgs, AlgebraSource, CliError, Common, LawArgs, Motion, ScanArgs, SimArgs};

const COCYCLE_TRIALS: usize = 100;
const COCYCLE_TOL: f64 = 1e-12;

fn usage(e: impl std::fmt::Display) -> CliError {
    CliError::Usage(e.to_string())
}

fn numeric(e: impl std::fmt::Display) -> CliError {
    CliError::Numeric(e.to_string())
}

fn load_config(common: &Common) -> Result<RunConfig, CliError> {
    match &common.config {
        Some(p) => RunConfig::load(p),
        None => Ok(RunConfig::default()),
    }
}

fn out_dir(common: &Common, cfg: &RunConfig) -> PathBuf {
    common.out.clone().or_else(|| cfg.out.clone()).unwrap_or_else(|| PathBuf::from("out"))
}

/// The algebra, its catalog name (if any) and the constants it was built
/// with. File algebras carry their own constants.
struct Resolved {
    alg: AlgebraSpec,
    name: Option<&'static str>,
    constants: Constants,
}

fn resolve_algebra(common: &Common, src: &AlgebraSource, cfg: &RunConfig) -> Result<Resolved, CliError> {
    let k = resolve_constants(cfg, common.constants.as_deref(), src.kappa.as_deref(), src.g.as_deref())?;
    let file = src.algebra.clone().or_else(|| if src.catalog.is_some() { None } else { cfg.algebra.clone() });
    if let Some(path) = file {
        let text = std::fs::read_to_string(&path).map_err(|e| usage(format!("reading {}: {e}", path.display())))?;
        let alg = parse_algebra(&text).map_err(|e| usage(format!("{}: {e}", path.display())))?;
        let constants = alg.constants.clone();
        return Ok(Resolved { alg, name: None, constants });
    }
    let name = src
        .catalog
        .clone()
        .or_else(|| cfg.catalog.clone())
        .ok_or_else(|| usage("one of --catalog or --algebra is required"))?;
    let canonical =
        gaq::algebra::canonical_name(&name).ok_or_else(|| usage(format!("unknown catalog algebra {name:?}")))?;
    let alg = catalog(canonical, &k).map_err(|e| CliError::Check(e.to_string()))?;
    Ok(Resolved { alg, name: Some(canonical), constants: k })
}

pub fn algebra_check(a: AlgebraArgs) -> Result<String, CliError> {
    let cfg = load_config(&a.common)?;
    let out = out_dir(&a.common, &cfg);
    let seed = a.seed.or(cfg.seed).unwrap_or(0);
    let r = resolve_algebra(&a.common, &a.source, &cfg)?;
    let alg = &r.alg;
    let jac = alg.check_jacobi();
    let mut ok = jac.ok;
    let mut rep = String::new();
    let _ = writeln!(rep, "algebra = {}", alg.name);
    let _ = writeln!(rep, "dimension = {}", alg.dim());
    let _ = writeln!(rep, "constants = {}", r.constants);
    let _ = writeln!(rep, "antisymmetry_failures = {}", jac.antisymmetry.len());
    let _ = writeln!(rep, "jacobi_violations = {}", jac.violations.len());
    for (x, y, z) in jac.violating_labels() {
        let _ = writeln!(rep, "violation = \"{x} {y} {z}\"");
    }
    let _ = writeln!(rep, "jacobi = {}", if jac.ok { "pass" } else { "fail" });
    match r.name {
        Some("GE_electromagnetic") => {
            let law = ClosedFormGE::new(&r.constants);
            let c = check_closed_form(&law, COCYCLE_TRIALS, seed).map_err(numeric)?;
            let pass = c.ok(COCYCLE_TOL);
            ok &= pass;
            let _ = writeln!(rep, "\n[closed_form]\nseed = {seed}\ntrials = {}", c.trials);
            let _ = writeln!(rep, "axiom_failures = {}", c.axiom_failures);
            let _ = writeln!(rep, "cocycle_failures_mass = {}", c.cocycle_failures_exact[0]);
            let _ = writeln!(rep, "cocycle_failures_charge = {}", c.cocycle_failures_exact[1]);
            let _ = writeln!(rep, "cocycle_residual_mass = {:e}", c.cocycle_residual_f64[0]);
            let _ = writeln!(rep, "cocycle_residual_charge = {:e}", c.cocycle_residual_f64[1]);
            let _ = writeln!(rep, "closed_form = {}", if pass { "pass" } else { "fail" });
        }
        Some("PEG_electrograv") => {
            let (_, dev) = peg::resolve(&r.constants).map_err(|e| CliError::Check(e.to_string()))?;
            rep.push('\n');
            rep.push_str(&dev.to_text());
        }
        _ => {}
    }
    let mut summary = format!("{}: {}\n", alg.name, if ok { "pass" } else { "fail" });
    if r.name == Some("PEG_electrograv") {
        let absent = peg::mixing_terms_absent(alg);
        let _ = writeln!(summary, "mixing terms: {}", if absent { "absent" } else { "present" });
    }
    write_outputs(&out, &[("algebra_check.txt".into(), rep)])?;
    if ok {
        Ok(summary)
    } else {
        Err(CliError::Check(format!("{}see {}", summary, out.join("algebra_check.txt").display())))
    }
}

fn law_error(e: LawError) -> CliError {
    match e {
        LawError::Order { .. } | LawError::Ordering(_) => usage(e),
        LawError::Algebra(_) | LawError::NotSubalgebra(_) => CliError::Check(e.to_string()),
        _ => numeric(e),
    }
}

fn build_law(closed_form: bool, r: &Resolved, order: u32) -> Result<GroupLaw, CliError> {
    if closed_form {
        if r.name != Some("GE_electromagnetic") {
            return Err(usage("--closed-form is only available for GE_electromagnetic"));
        }
        return closed_form_ge(&r.constants, order).map_err(law_error);
    }
    if r.name == Some("PEG_electrograv") {
        return group_law_peg(&r.constants, order).map_err(law_error);
    }
    exponentiate_canonical(&r.alg, order).map_err(law_error)
}

fn law_setup(a: &LawArgs) -> Result<(Resolved, u32, bool, PathBuf), CliError> {
    let cfg = load_config(&a.common)?;
    let order = a.order.or(cfg.order).unwrap_or(3);
    if order == 0 {
        return Err(usage("--order must be at least 1"));
    }
    let r = resolve_algebra(&a.common, &a.source, &cfg)?;
    let closed = a.closed_form || cfg.closed_form.unwrap_or(false);
    Ok((r, order, closed, out_dir(&a.common, &cfg)))
}

pub fn exponentiate(a: LawArgs) -> Result<String, CliError> {
    let (r, order, closed, out) = law_setup(&a)?;
    let law = build_law(closed, &r, order)?;
    let axioms = check_group_axioms(&law).map_err(numeric)?;
    write_outputs(&out, &[("law.txt".into(), law.to_text()), ("axioms.txt".into(), axioms.to_string())])?;
    let summary = format!("{}: law through degree {order}, axioms {}\n", law.name, if axioms.ok() { "pass" } else { "fail" });
    if axioms.ok() {
        Ok(summary)
    } else {
        Err(CliError::Check(summary))
    }
}

fn fields_text(kind: &str, law: &GroupLaw, fields: &[gaq::geometry::PolyField]) -> String {
    let mut s = String::new();
    for (i, f) in fields.iter().enumerate() {
        let _ = write!(s, "[{kind} {}]\n{}", law.chart().name(i), f.to_text());
    }
    s
}

pub fn derive(a: LawArgs) -> Result<String, CliError> {
    let (r, order, closed, out) = law_setup(&a)?;
    let law = build_law(closed, &r, order)?;
    let left = left_invariant_fields(&law).map_err(numeric)?;
    let right = right_invariant_fields(&law).map_err(numeric)?;
    let th = theta(&law, &r.constants.hbar).map_err(usage)?;
    let dth = th.exterior_derivative();
    let kernel = characteristic_module(&th).map_err(numeric)?;
    let mut noether_text = String::new();
    for (i, n) in noether(&th, &right).iter().enumerate() {
        let _ = writeln!(noether_text, "{}: {}", law.chart().name(i), n.to_text());
    }
    let mut files = vec![
        ("law.txt".to_string(), law.to_text()),
        ("fields.txt".to_string(), fields_text("left", &law, &left) + &fields_text("right", &law, &right)),
        ("theta.txt".to_string(), th.to_text()),
        ("dtheta.txt".to_string(), dth.to_text()),
        ("kernel.txt".to_string(), kernel.to_text()),
        ("noether.txt".to_string(), noether_text),
    ];
    if r.name == Some("PEG_electrograv") && order == 3 {
        let p = peg_dtheta(&r.constants).map_err(numeric)?;
        files.push(("dtheta_canonical.txt".to_string(), p.dtheta.to_text()));
        files.push(("dtheta_rows.txt".to_string(), p.to_string()));
    }
    write_outputs(&out, &files)?;
    Ok(format!(
        "{}: degree {order}, kernel rank {}, {} files in {}\n",
        law.name,
        kernel.rank,
        files.len(),
        out.display()
    ))
}

/// Everything a run needs, validated before any integration.
struct Setup {
    fields: FieldSet,
    model: ForceModel,
    s0: ParticleState,
    dt: f64,
    steps: usize,
    method: Method,
    out: PathBuf,
}

fn motion_setup(common: &Common, m: &Motion, default_mode: Mode) -> Result<(Setup, RunConfig), CliError> {
    let cfg = load_config(common)?;
    let k = resolve_constants(&cfg, common.constants.as_deref(), m.kappa.as_deref(), m.g.as_deref())?;
    let spec = match m.fields.clone().or_else(|| cfg.fields.clone()) {
        Some(p) => FieldSpec::load(&p).map_err(usage)?,
        None => FieldSpec::vacuum("vacuum"),
    };
    let mut params: Params = cfg.params.clone();
    params.extend(m.params.iter().cloned());
    let fields = FieldSet::new(&spec, &params).map_err(usage)?;
    let pick = |flag: &Option<String>, file: &Option<String>| flag.clone().or_else(|| file.clone());
    let mode = match pick(&m.mode, &cfg.mode) {
        Some(s) => s.parse::<Mode>().map_err(usage)?,
        None => default_mode,
    };
    let mut model = ForceModel::new(mode, k.to_f64());
    if let Some(t) = pick(&m.toggles, &cfg.toggles) {
        model.toggles = t.parse().map_err(usage)?;
    }
    if let Some(l) = pick(&m.line4, &cfg.line4) {
        model.line4 = l.parse().map_err(usage)?;
    }
    match m.speed_cap.or(cfg.speed_cap) {
        Some(c) if c == 0.0 => model.speed_cap = None,
        Some(c) if c > 0.0 && c.is_finite() => model.speed_cap = Some(c),
        Some(c) => return Err(usage(format!("--speed-cap must be positive or 0, got {c}"))),
        None => {}
    }
    if mode == Mode::Electrograv {
        model.inertial_mass().map_err(usage)?;
    }
    let method = match pick(&m.method, &cfg.method) {
        Some(s) => s.parse().map_err(usage)?,
        None => Method::Rk4,
    };
    let s0 = ParticleState {
        t: m.t0.or(cfg.t0).unwrap_or(0.0),
        x: m.x.or(cfg.x).unwrap_or([0.0; 3]),
        v: m.v.or(cfg.v).unwrap_or([0.0; 3]),
        phase: m.phase.or(cfg.phase).unwrap_or(0.0),
    };
    if !s0.is_finite() {
        return Err(usage("initial state must be finite"));
    }
    let steps = m.steps.or(cfg.steps).unwrap_or(1000);
    if steps == 0 {
        return Err(usage("--steps must be positive"));
    }
    let dt = match m.dt.or(cfg.dt) {
        Some(dt) if dt > 0.0 && dt.is_finite() => dt,
        Some(dt) => return Err(usage(format!("--dt must be positive and finite, got {dt}"))),
        None => suggest_dt(|s| model.rhs(s, &fields), &s0, 1e-3).map_err(numeric)?,
    };
    let out = out_dir(common, &cfg);
    Ok((Setup { fields, model, s0, dt, steps, method, out }, cfg))
}

fn dyn_error(e: DynamicsError) -> CliError {
    match e {
        DynamicsError::Unbound(_) | DynamicsError::Step(_) => usage(e),
        _ => numeric(e),
    }
}

pub fn simulate(a: SimArgs) -> Result<String, CliError> {
    let (s, _) = motion_setup(&a.common, &a.motion, Mode::Lorentz)?;
    let traj = integrate(|st| s.model.rhs(st, &s.fields), s.s0, s.dt, s.steps, s.method).map_err(dyn_error)?;
    let report = monitor_invariants(&traj, &s.fields, &s.model).map_err(dyn_error)?;
    let mut inv = String::new();
    let _ = writeln!(inv, "mode = {}", s.model.mode);
    let _ = writeln!(inv, "fields = {}", s.fields.spec.name);
    let _ = writeln!(inv, "dt = {}", s.dt);
    let _ = writeln!(inv, "steps = {}", s.steps);
    inv.push_str(&report.to_string());
    let end = traj.last();
    write_outputs(&s.out, &[("trajectory.csv".into(), traj.to_csv()), ("invariants.txt".into(), inv)])?;
    Ok(format!(
        "t = {}, x = {:?}, v = {:?}, max relative invariant drift = {:e}\n",
        end.t,
        end.x,
        end.v,
        report.max_rel_drift()
    ))
}

pub fn scan(a: ScanArgs) -> Result<String, CliError> {
    let (s, cfg) = motion_setup(&a.common, &a.motion, Mode::Electrograv)?;
    let kappas = a.kappas.clone().map(|l| l.0).or(cfg.kappas).unwrap_or_default();
    if kappas.is_empty() {
        return Err(usage("--kappas needs at least one value"));
    }
    if kappas.iter().any(|k| !k.is_finite()) {
        return Err(usage("kappa values must be finite"));
    }
    let sc = Scenario { fields: s.fields, model: s.model, s0: s.s0, dt: s.dt, steps: s.steps, method: s.method };
    let table = kappa_scan(&sc, &kappas).map_err(dyn_error)?;
    write_outputs(&s.out, &[("scan.csv".into(), table.to_csv())])?;
    Ok(format!("{} kappa values written to {}\n", table.rows.len(), s.out.join("scan.csv").display()))
}
