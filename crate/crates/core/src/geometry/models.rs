//! Small hand-written forms and generator sets: the free Poincaré-Cartan
//! form with the Galilei generators, the 1+1 form with a gravitational
//! connection `h dt` and its local current generators, and the reduced form
//! on the solution manifold.

use std::sync::Arc;

use super::{PolyField, PolyForm1};
use crate::constants::Constants;
use crate::poly::{rat, Chart, Rational, Role, TruncatedPoly};

fn var(chart: &Arc<Chart>, degree: u32, name: &str) -> TruncatedPoly {
    TruncatedPoly::var(chart, degree, name).expect("coordinate of a fixed chart")
}

fn field(chart: &Arc<Chart>, degree: u32, parts: Vec<(&str, TruncatedPoly)>) -> PolyField {
    let mut f = PolyField::zero(chart, degree);
    for (name, c) in parts {
        let i = chart.index(name).expect("coordinate of a fixed chart");
        f.components[i] = &f.components[i] + &c;
    }
    PolyField::new(f.components)
}

/// `(t, x1, x2, x3, p1, p2, p3)`.
pub fn pc_chart() -> Arc<Chart> {
    let mut coords = vec![("t".to_string(), Role::Time)];
    coords.extend((1..=3).map(|i| (format!("x{i}"), Role::Space)));
    coords.extend((1..=3).map(|i| (format!("p{i}"), Role::Momentum)));
    Chart::new(coords).expect("distinct names")
}

/// `Θ_PC = p·dx − (p²/2m) dt`.
pub fn poincare_cartan(k: &Constants, degree: u32) -> PolyForm1 {
    let chart = pc_chart();
    let mut pairs = Vec::new();
    let mut p2 = TruncatedPoly::zero(&chart, degree);
    for i in 1..=3 {
        let p = var(&chart, degree, &format!("p{i}"));
        p2 = &p2 + &(&p * &p);
        pairs.push((format!("x{i}"), p));
    }
    pairs.push(("t".to_string(), p2.scale(&(-Rational::from_integer(1.into()) / (&k.m * rat(2, 1))))));
    let pairs: Vec<(&str, TruncatedPoly)> = pairs.iter().map(|(n, p)| (n.as_str(), p.clone())).collect();
    PolyForm1::from_pairs(&chart, degree, &pairs).expect("fixed chart")
}

/// Galilei generators on the `Θ_PC` chart: `b`, `a_i = ∂_{x_i}`,
/// `V_i = t∂_{x_i} + m∂_{p_i}` and rotations `x∧∂_x + p∧∂_p`.
pub fn galilei_fields(k: &Constants, degree: u32) -> Vec<(String, PolyField)> {
    let chart = pc_chart();
    let one = TruncatedPoly::one(&chart, degree);
    let mut out = vec![("b".to_string(), field(&chart, degree, vec![("t", one.clone())]))];
    for i in 1..=3 {
        let x = format!("x{i}");
        out.push((format!("a{i}"), field(&chart, degree, vec![(&x, one.clone())])));
    }
    for i in 1..=3 {
        let (x, p) = (format!("x{i}"), format!("p{i}"));
        let parts = vec![
            (x.as_str(), var(&chart, degree, "t")),
            (p.as_str(), TruncatedPoly::constant(&chart, degree, k.m.clone())),
        ];
        out.push((format!("V{i}"), field(&chart, degree, parts)));
    }
    for i in 1..=3usize {
        let (j, l) = (i % 3 + 1, (i + 1) % 3 + 1);
        let mut parts = Vec::new();
        for s in ["x", "p"] {
            // (y ∧ ∂_y)_i = y_j ∂_{y_l} − y_l ∂_{y_j}
            let (yj, yl) = (format!("{s}{j}"), format!("{s}{l}"));
            parts.push((yl.clone(), var(&chart, degree, &yj)));
            parts.push((yj.clone(), -&var(&chart, degree, &yl)));
        }
        let parts: Vec<(&str, TruncatedPoly)> = parts.iter().map(|(n, p)| (n.as_str(), p.clone())).collect();
        out.push((format!("e{i}"), field(&chart, degree, parts)));
    }
    out
}

/// `(t, x, p, h, phi)`.
pub fn gauged_chart() -> Arc<Chart> {
    Chart::new([
        ("t", Role::Time),
        ("x", Role::Space),
        ("p", Role::Momentum),
        ("h", Role::Potential),
        ("phi", Role::Phase),
    ])
    .expect("distinct names")
}

/// `Θ′ + ħ dφ` with `Θ′ = p dx − (p²/2m) dt + h dt`.
pub fn gauged_theta(k: &Constants, degree: u32) -> PolyForm1 {
    let chart = gauged_chart();
    let p = var(&chart, degree, "p");
    let h = var(&chart, degree, "h");
    let kinetic = (&p * &p).scale(&(rat(1, 2) / &k.m));
    PolyForm1::from_pairs(
        &chart,
        degree,
        &[
            ("x", p),
            ("t", &h - &kinetic),
            ("phi", TruncatedPoly::constant(&chart, degree, k.hbar.clone())),
        ],
    )
    .expect("fixed chart")
}

/// `f(t)` from its coefficients in `t`, on the gauged chart.
pub fn time_function(coeffs: &[Rational], degree: u32) -> TruncatedPoly {
    let chart = gauged_chart();
    let t = var(&chart, degree, "t");
    let mut f = TruncatedPoly::zero(&chart, degree);
    let mut tn = TruncatedPoly::one(&chart, degree);
    for c in coeffs {
        f = &f + &tn.scale(c);
        tn = &tn * &t;
    }
    f
}

fn dt(f: &TruncatedPoly) -> TruncatedPoly {
    f.partial_by("t").expect("gauged chart")
}

/// Local current generators `f⊗X_b`, `f⊗X_a`, `X_V`, `f⊗X_h` without
/// phase components.
pub fn current_fields(k: &Constants, f: &TruncatedPoly) -> Vec<(String, PolyField)> {
    let chart = gauged_chart();
    let d = f.degree();
    let p = var(&chart, d, "p");
    let h = var(&chart, d, "h");
    let e = &(&p * &p).scale(&(rat(1, 2) / &k.m)) - &h;
    vec![
        ("f*Xb".to_string(), field(&chart, d, vec![("t", f.clone()), ("h", &e * &dt(f))])),
        ("f*Xa".to_string(), field(&chart, d, vec![("x", f.clone()), ("h", -&(&p * &dt(f)))])),
        (
            "XV".to_string(),
            field(&chart, d, vec![("x", var(&chart, d, "t")), ("p", TruncatedPoly::constant(&chart, d, k.m.clone()))]),
        ),
        ("f*Xh".to_string(), field(&chart, d, vec![("h", f.clone())])),
    ]
}

/// The current generators with the phase components as printed:
/// `−g/ħ` where `i_X dΘ′ = dg`.
pub fn printed_extended_fields(k: &Constants, f: &TruncatedPoly) -> Vec<(String, PolyField)> {
    let chart = gauged_chart();
    let d = f.degree();
    let p = var(&chart, d, "p");
    let h = var(&chart, d, "h");
    let x = var(&chart, d, "x");
    let t = var(&chart, d, "t");
    let inv_hbar = Rational::from_integer(1.into()) / &k.hbar;
    let e = &(&p * &p).scale(&(rat(1, 2) / &k.m)) - &h;
    let phases = [
        -&(f * &e).scale(&inv_hbar),
        (f * &p).scale(&inv_hbar),
        -&(&x - &(&p * &t).scale(&(Rational::from_integer(1.into()) / &k.m))).scale(&(&k.m * &inv_hbar)),
        -&f.scale(&inv_hbar),
    ];
    current_fields(k, f)
        .into_iter()
        .zip(phases)
        .map(|((name, x), c)| (name, x.add(&field(&chart, d, vec![("phi", c)]))))
        .collect()
}

/// `(K, P, phi)` with `Θ = P dK + ħ dφ`.
pub fn reduced_theta(k: &Constants, degree: u32) -> PolyForm1 {
    let chart = Chart::new([("K", Role::Space), ("P", Role::Momentum), ("phi", Role::Phase)]).expect("distinct");
    PolyForm1::from_pairs(
        &chart,
        degree,
        &[("K", var(&chart, degree, "P")), ("phi", TruncatedPoly::constant(&chart, degree, k.hbar.clone()))],
    )
    .expect("fixed chart")
}

/// `(t, x, p, phi)`.
pub fn newtonian_chart() -> Arc<Chart> {
    Chart::new([("t", Role::Time), ("x", Role::Space), ("p", Role::Momentum), ("phi", Role::Phase)])
        .expect("distinct names")
}

/// Pullback of `Θ′ + ħ dφ` along `h = potential(t, x)`, with `potential` on
/// the [`newtonian_chart`].
pub fn newtonian_theta(k: &Constants, potential: &TruncatedPoly) -> PolyForm1 {
    let chart = newtonian_chart();
    let d = potential.degree();
    let images = vec![
        var(&chart, d, "t"),
        var(&chart, d, "x"),
        var(&chart, d, "p"),
        potential.clone(),
        var(&chart, d, "phi"),
    ];
    gauged_theta(k, d).pullback(&images).expect("matching charts")
}
