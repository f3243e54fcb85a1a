use std::fmt::Write as _;

use super::{integrate, norm, DynamicsError, FieldSet, ForceModel, Method, ParticleState};

/// Fields, model, initial state and run length shared by every point of a
/// sweep.
#[derive(Debug, Clone)]
pub struct Scenario {
    pub fields: FieldSet,
    pub model: ForceModel,
    pub s0: ParticleState,
    pub dt: f64,
    pub steps: usize,
    pub method: Method,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScanRow {
    pub kappa: f64,
    /// `(m + κq)c`.
    pub effective_mass: f64,
    /// `(m − κq)c`, the same particle with charge `−q`.
    pub conjugate_mass: f64,
    /// `2|κq|/m`, the difference of the two inertial masses over `m`.
    pub mass_split: f64,
    /// `|x₊(T) − x₋(T)|` for the runs with charges `q` and `−q`.
    pub deflection: f64,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct ScanTable {
    pub rows: Vec<ScanRow>,
}

impl ScanTable {
    pub const HEADER: &'static str = "kappa,effective_mass,conjugate_mass,mass_split,deflection";

    pub fn to_csv(&self) -> String {
        let mut out = String::from(Self::HEADER);
        out.push('\n');
        for r in &self.rows {
            let _ = writeln!(
                out,
                "{},{},{},{},{}",
                r.kappa, r.effective_mass, r.conjugate_mass, r.mass_split, r.deflection
            );
        }
        out
    }
}

fn run(sc: &Scenario, model: &ForceModel) -> Result<[f64; 3], DynamicsError> {
    model.inertial_mass()?;
    let traj = integrate(|s| model.rhs(s, &sc.fields), sc.s0, sc.dt, sc.steps, sc.method)?;
    Ok(traj.last().x)
}

/// One row per `κ`, in the given order.
pub fn kappa_scan(sc: &Scenario, kappas: &[f64]) -> Result<ScanTable, DynamicsError> {
    let mut rows = Vec::with_capacity(kappas.len());
    for &kappa in kappas {
        let k = sc.model.constants;
        let mut plus = sc.model;
        plus.constants.kappa = kappa;
        let mut minus = plus;
        minus.constants.q = -k.q;
        let xp = run(sc, &plus)?;
        let xm = run(sc, &minus)?;
        rows.push(ScanRow {
            kappa,
            effective_mass: (k.m + kappa * k.q) * k.c,
            conjugate_mass: (k.m - kappa * k.q) * k.c,
            mass_split: 2.0 * (kappa * k.q).abs() / k.m,
            deflection: norm(&[xp[0] - xm[0], xp[1] - xm[1], xp[2] - xm[2]]),
        });
    }
    Ok(ScanTable { rows })
}
