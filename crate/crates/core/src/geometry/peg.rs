//! `dΘ` of the transcribed electro-gravitational law, taken to almost
//! canonical form by the printed low-order change of variables and compared
//! row by row with the printed expansion through linear order.

use std::fmt;
use std::sync::Arc;

use super::{theta, GeometryError, PolyForm1, PolyForm2};
use crate::constants::Constants;
use crate::group::group_law_peg;
use crate::poly::{rat, Chart, Rational, TruncatedPoly};

struct Coords {
    chart: Arc<Chart>,
    degree: u32,
}

impl Coords {
    fn v(&self, name: &str) -> TruncatedPoly {
        TruncatedPoly::var(&self.chart, self.degree, name).expect("PEG coordinate")
    }

    fn zero(&self) -> TruncatedPoly {
        TruncatedPoly::zero(&self.chart, self.degree)
    }

    fn konst(&self, c: Rational) -> TruncatedPoly {
        TruncatedPoly::constant(&self.chart, self.degree, c)
    }

    /// `ε^{ab}`, antisymmetric.
    fn eps(&self, a: usize, b: usize) -> TruncatedPoly {
        match a.cmp(&b) {
            std::cmp::Ordering::Equal => self.zero(),
            std::cmp::Ordering::Less => self.v(&format!("e{a}{b}")),
            std::cmp::Ordering::Greater => -&self.v(&format!("e{b}{a}")),
        }
    }

    /// The chart coordinate `h^{ab}`.
    fn h(&self, a: usize, b: usize) -> TruncatedPoly {
        self.v(&format!("h{}{}", a.min(b), a.max(b)))
    }
}

fn eta(a: usize) -> i64 {
    if a == 0 {
        1
    } else {
        -1
    }
}

/// Images of the old coordinates in terms of the new ones:
///
/// ```text
/// A^α    → A^α + η_{σγ}(ε^{ασ} + h^{ασ})A^γ
/// ε^{0i} → ε^{0i} + ε^{ij}ε^{0j} + g/((m+κq)c) h^{00}ε^{0i} − 2h^{ij}ε^{0j}
/// h^{0j} → h^{0j} + ε^{ij}h^{0i}
/// h^{00} → h^{00} − ¼ h^{0i}ε^{0i}
/// ```
pub fn peg_variable_change(k: &Constants, chart: &Arc<Chart>, degree: u32) -> Vec<TruncatedPoly> {
    let z = Coords { chart: chart.clone(), degree };
    let ratio = &k.g / (&(&k.m + &(&k.kappa * &k.q)) * &k.c);
    (0..chart.len())
        .map(|idx| {
            let name = chart.name(idx);
            let digits: Vec<usize> = name[1..].bytes().filter(u8::is_ascii_digit).map(|b| (b - b'0') as usize).collect();
            match (name.as_bytes()[0], digits.as_slice()) {
                (b'A', &[a]) => {
                    let mut out = z.v(name);
                    for s in 0..4 {
                        let t = &(&z.eps(a, s) + &z.h(a, s)) * &z.v(&format!("A{s}"));
                        out = &out + &t.scale(&rat(eta(s), 1));
                    }
                    out
                }
                (b'e', &[0, i]) => {
                    let mut out = &z.v(name) + &(&z.h(0, 0) * &z.eps(0, i)).scale(&ratio);
                    for j in 1..4 {
                        out = &out + &(&z.eps(i, j) * &z.eps(0, j));
                        out = &out - &(&z.h(i, j) * &z.eps(0, j)).scale(&rat(2, 1));
                    }
                    out
                }
                (b'h', &[0, 0]) => {
                    let mut out = z.v(name);
                    for i in 1..4 {
                        out = &out - &(&z.h(0, i) * &z.eps(0, i)).scale(&rat(1, 4));
                    }
                    out
                }
                (b'h', &[0, j]) => {
                    let mut out = z.v(name);
                    for i in 1..4 {
                        out = &out + &(&z.eps(i, j) * &z.h(0, i));
                    }
                    out
                }
                _ => z.v(name),
            }
        })
        .collect()
}

/// One printed coefficient of `da ∧ dx^ρ` next to the computed one.
#[derive(Debug, Clone, PartialEq)]
pub struct DThetaRow {
    pub a: String,
    pub b: String,
    pub printed: TruncatedPoly,
    pub computed: TruncatedPoly,
}

impl DThetaRow {
    pub fn constant_matches(&self) -> bool {
        self.printed.constant_term() == self.computed.constant_term()
    }

    pub fn matches(&self) -> bool {
        self.printed == self.computed
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PegDTheta {
    pub theta: PolyForm1,
    pub dtheta: PolyForm2,
    pub rows: Vec<DThetaRow>,
    /// Nonzero computed coefficients with no printed counterpart.
    pub unlisted: Vec<(String, String, TruncatedPoly)>,
}

impl PegDTheta {
    pub fn constants_match(&self) -> bool {
        self.rows.iter().all(DThetaRow::constant_matches)
            && self.unlisted.iter().all(|(_, _, p)| p.constant_term() == rat(0, 1))
    }

    pub fn mismatches(&self) -> impl Iterator<Item = &DThetaRow> {
        self.rows.iter().filter(|r| !r.matches())
    }
}

impl fmt::Display for PegDTheta {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in &self.rows {
            let tag = if r.matches() { "ok" } else { "differs" };
            writeln!(
                f,
                "d{}^d{}: printed {} computed {} [{tag}]",
                r.a,
                r.b,
                r.printed.to_text(),
                r.computed.to_text()
            )?;
        }
        for (a, b, p) in &self.unlisted {
            writeln!(f, "d{a}^d{b}: unlisted {}", p.to_text())?;
        }
        Ok(())
    }
}

fn printed_rows(k: &Constants, z: &Coords) -> Vec<(String, String, TruncatedPoly)> {
    let mkc = &(&k.m + &(&k.kappa * &k.q)) * &k.c;
    let mc = &k.m * &k.c;
    let mut rows = Vec::new();
    let mut push = |a: String, b: String, p: TruncatedPoly| rows.push((a, b, p));
    for i in 1..4 {
        push(format!("e0{i}"), "x0".into(), (&z.eps(0, i) + &z.h(0, i)).scale(&-mkc.clone()));
        push(format!("e0{i}"), format!("x{i}"), z.konst(mkc.clone()));
    }
    push("h00".into(), "x0".into(), (&z.konst(rat(1, 1)) - &z.h(0, 0).scale(&rat(2, 1))).scale(&(&mc * rat(2, 1))));
    for i in 1..4 {
        push(format!("h0{i}"), "x0".into(), &z.h(0, i).scale(&mc) - &z.eps(0, i).scale(&mkc));
        push("h00".into(), format!("x{i}"), z.h(0, i).scale(&mc));
    }
    for i in 1..4 {
        for j in 1..4 {
            let mut p = -&z.h(j, i);
            if i == j {
                p = &p + &(&z.h(0, 0) - &z.konst(rat(1, 1)));
            }
            push(format!("h0{j}"), format!("x{i}"), p.scale(&mc));
        }
    }
    // −mc dh^{ij}∧dx^i h^{0j} summed over i, j, collected per coordinate
    for a in 1..4 {
        for b in a..4 {
            let name = format!("h{a}{b}");
            push(name.clone(), format!("x{a}"), z.h(0, b).scale(&-mc.clone()));
            if a != b {
                push(name, format!("x{b}"), z.h(0, a).scale(&-mc.clone()));
            }
        }
    }
    push("A0".into(), "x0".into(), z.konst(-k.q.clone()));
    for i in 1..4 {
        push(format!("A{i}"), format!("x{i}"), z.konst(k.q.clone()));
    }
    rows
}

/// `Θ` of the transcribed law at order 3, pulled back along
/// [`peg_variable_change`], and its `dΘ` compared with the printed rows
/// through linear order.
pub fn peg_dtheta(k: &Constants) -> Result<PegDTheta, GeometryError> {
    let law = group_law_peg(k, 3).map_err(|e| GeometryError::NotLiftable(e.to_string()))?;
    let raw = theta(&law, &k.hbar)?;
    let chart = raw.chart().clone();
    let images = peg_variable_change(k, &chart, raw.degree() + 1);
    let th = raw.pullback(&images)?;
    let w = th.exterior_derivative();
    let z = Coords { chart: chart.clone(), degree: w.degree() };
    let printed = printed_rows(k, &z);
    let mut rows = Vec::new();
    for (a, b, p) in printed {
        let computed = w.coefficient(&a, &b)?.clone();
        rows.push(DThetaRow { a, b, printed: p, computed });
    }
    let mut unlisted = Vec::new();
    for i in 0..chart.len() {
        for j in 0..chart.len() {
            let (a, b) = (chart.name(i), chart.name(j));
            if !b.starts_with('x') || a.starts_with('x') || a == "phi" {
                continue;
            }
            let c = &w.coefficients[i][j];
            if !c.is_zero() && !rows.iter().any(|r| r.a == a && r.b == b) {
                unlisted.push((a.to_string(), b.to_string(), c.clone()));
            }
        }
    }
    for i in 0..chart.len() {
        for j in i + 1..chart.len() {
            let (a, b) = (chart.name(i), chart.name(j));
            if a.starts_with('x') || b.starts_with('x') {
                continue;
            }
            let c = &w.coefficients[i][j];
            if !c.is_zero() {
                unlisted.push((a.to_string(), b.to_string(), c.clone()));
            }
        }
    }
    let pairs_xx: Vec<_> = (0..4)
        .flat_map(|i| (i + 1..4).map(move |j| (i, j)))
        .filter_map(|(i, j)| {
            let c = &w.coefficients[i][j];
            (!c.is_zero()).then(|| (chart.name(i).to_string(), chart.name(j).to_string(), c.clone()))
        })
        .collect();
    unlisted.extend(pairs_xx);
    Ok(PegDTheta { theta: th, dtheta: w, rows, unlisted })
}
