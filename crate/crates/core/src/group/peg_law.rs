//! Hand transcription of the approximate Poincaré electrograv group law,
//! kept separate from [`super::exponentiate`] so the two constructions can
//! be compared term by term.
//!
//! Index conventions: `(..)` and `[..]` carry a factor ½ and act on the
//! full tensors `ε^{μν} = −ε^{νμ}` and `h^{μν} = h^{νμ}`, all indices summed
//! over `0..4` with `η = diag(1, −1, −1, −1)`. Three printed patterns need a
//! reading: the `ε′x` phase coupling contracts `η_{μ[ν}δ_{ρ]}^0` with
//! `ε′^{νρ}x^μ`, the index placement of `x″`; in `A″` the dummy `ρ` of `η_{ρ[μ}δ_{ν]}^α ε′^{μν} A^ρ` clashes
//! with the free index, so the free index is taken to be `α`; in the cubic
//! `φ″` term `η_{σ(μ}δ_{ν)}^σ η_{ρ[α}δ_{β]}^σ` the first upper `σ` is read
//! as `0`, matching the bilinear `h′x` coupling it descends from.

use std::collections::BTreeSet;
use std::sync::Arc;

use num_traits::Zero;

use super::{chart_for, GroupLaw, LawError};
use crate::algebra::peg::peg_electrograv;
use crate::constants::Constants;
use crate::poly::{fmt_rational, int, rat, Chart, Monomial, Rational, TruncatedPoly};

// index slots
const AL: usize = 0;
const BE: usize = 1;
const MU: usize = 2;
const NU: usize = 3;
const RH: usize = 4;
const OM: usize = 5;
const SI: usize = 6;
const GA: usize = 7;
/// Slot pinned to the value 0, for brackets such as `δ^{[0}δ^{ρ]}`.
const ZERO: usize = 8;

type Idx = [usize; 9];

#[derive(Clone, Copy)]
enum Pair {
    Sym,
    Anti,
}

fn eta(a: usize, b: usize) -> i64 {
    match (a, b) {
        (0, 0) => 1,
        (a, b) if a == b => -1,
        _ => 0,
    }
}

fn kd(a: usize, b: usize) -> i64 {
    (a == b) as i64
}

/// `f` with the listed index pairs (anti)symmetrized, each with weight ½.
fn bracketed(f: &dyn Fn(&Idx) -> i64, pairs: &[(usize, usize, Pair)], idx: &Idx) -> Rational {
    match pairs.split_first() {
        None => int(f(idx)),
        Some((&(a, b, s), rest)) => {
            let v1 = bracketed(f, rest, idx);
            let mut sw = *idx;
            sw.swap(a, b);
            let v2 = bracketed(f, rest, &sw);
            match s {
                Pair::Sym => (v1 + v2) * rat(1, 2),
                Pair::Anti => (v1 - v2) * rat(1, 2),
            }
        }
    }
}

/// Calls `body` for every assignment of the listed slots.
fn each(slots: &[usize], base: Idx, body: &mut dyn FnMut(&Idx)) {
    match slots.split_first() {
        None => body(&base),
        Some((&s, rest)) => {
            for v in 0..4 {
                let mut idx = base;
                idx[s] = v;
                each(rest, idx, body);
            }
        }
    }
}

struct Fields {
    pair: Arc<Chart>,
    degree: u32,
}

impl Fields {
    fn coord(&self, name: &str) -> TruncatedPoly {
        TruncatedPoly::var(&self.pair, self.degree, name).expect("PEG coordinate")
    }

    fn zero(&self) -> TruncatedPoly {
        TruncatedPoly::zero(&self.pair, self.degree)
    }

    fn eps(&self, primed: bool, a: usize, b: usize) -> TruncatedPoly {
        if a == b {
            return self.zero();
        }
        let p = if primed { "'" } else { "" };
        let c = self.coord(&format!("e{}{}{p}", a.min(b), a.max(b)));
        if a < b {
            c
        } else {
            -&c
        }
    }

    /// Tensor component `h^{ab}`; the diagonal coordinates carry half the
    /// tensor value, matching the algebra's `[x_μ, h^{νν}] = −2η_{νμ}x_ν`.
    fn h(&self, primed: bool, a: usize, b: usize) -> TruncatedPoly {
        let p = if primed { "'" } else { "" };
        let c = self.coord(&format!("h{}{}{p}", a.min(b), a.max(b)));
        if a == b {
            c.scale(&int(2))
        } else {
            c
        }
    }

    fn vec(&self, letter: &str, primed: bool, a: usize) -> TruncatedPoly {
        let p = if primed { "'" } else { "" };
        self.coord(&format!("{letter}{a}{p}"))
    }
}

/// Adds `Σ coeff(idx) · Π factors(idx)` over the `dummies` slots to `out`.
fn accumulate(
    out: &mut TruncatedPoly,
    base: Idx,
    dummies: &[usize],
    scale: &Rational,
    coeff: &dyn Fn(&Idx) -> Rational,
    factors: &dyn Fn(&Idx) -> Vec<TruncatedPoly>,
) {
    each(dummies, base, &mut |idx| {
        let c = coeff(idx);
        if c.is_zero() {
            return;
        }
        let mut p = factors(idx).into_iter();
        let first = p.next().expect("at least one factor");
        let prod = p.fold(first, |acc, f| &acc * &f);
        *out = &*out + &prod.scale(&(&c * scale));
    });
}

/// Approximate group law of the Poincaré electrograv group as printed,
/// through total degree 3. Valid for `g = mc`, where the `h′x` phase
/// coupling reduces to `−mc`.
pub fn group_law_peg(constants: &Constants, order: u32) -> Result<GroupLaw, LawError> {
    if order > 3 {
        return Err(LawError::Unsupported(format!(
            "the transcribed law stops at degree 3 (asked for {order}); use exponentiate instead"
        )));
    }
    if order == 0 {
        return Err(LawError::Order { got: 0, max: 3 });
    }
    if !constants.g_is_mc() {
        return Err(LawError::Unsupported("the transcribed law assumes g = m c".into()));
    }
    let chart = chart_for(&peg_electrograv(constants)?);
    let pair = chart.doubled();
    let f = Fields {
        pair: pair.clone(),
        degree: order,
    };
    let k = constants;
    let kc = &k.kappa * &k.c;
    let mkc = (&k.m + &k.kappa * &k.q) * &k.c;
    let mc = &k.m * &k.c;
    let one = int(1);
    let base: Idx = [0; 9];
    use Pair::*;

    let mut comps: Vec<TruncatedPoly> = Vec::with_capacity(chart.len());
    for name in chart.names() {
        comps.push(&f.coord(&format!("{name}'")) + &f.coord(name));
    }
    let slot = |name: &str| chart.index(name).expect("PEG coordinate");

    // x''^α
    for al in 0..4 {
        let mut c = f.zero();
        let mut b = base;
        b[AL] = al;
        let t = |i: &Idx| eta(i[MU], i[NU]) * kd(i[RH], i[AL]);
        accumulate(
            &mut c,
            b,
            &[MU, NU, RH],
            &one,
            &|i| bracketed(&t, &[(NU, RH, Anti)], i),
            &|i| vec![f.eps(true, i[NU], i[RH]), f.vec("x", false, i[MU])],
        );
        accumulate(
            &mut c,
            b,
            &[MU, NU, RH],
            &one,
            &|i| bracketed(&t, &[(NU, RH, Sym)], i),
            &|i| vec![f.h(true, i[NU], i[RH]), f.vec("x", false, i[MU])],
        );
        let s = slot(&format!("x{al}"));
        comps[s] = &comps[s] + &c;
    }

    // η_{αν} δ_μ^ω δ^ρ_β, shared by the ε'' and h'' patterns
    let t4 = |i: &Idx| eta(i[AL], i[NU]) * kd(i[MU], i[OM]) * kd(i[RH], i[BE]);
    for (om, rh) in crate::algebra::peg::eps_pairs() {
        let mut c = f.zero();
        let mut b = base;
        b[OM] = om;
        b[RH] = rh;
        accumulate(
            &mut c,
            b,
            &[AL, BE, MU, NU],
            &rat(-1, 4),
            &|i| bracketed(&t4, &[(AL, BE, Anti), (NU, MU, Anti), (OM, RH, Anti)], i),
            &|i| vec![f.eps(true, i[MU], i[NU]), f.eps(false, i[AL], i[BE])],
        );
        accumulate(
            &mut c,
            b,
            &[AL, BE, MU, NU],
            &rat(-1, 4),
            &|i| bracketed(&t4, &[(AL, BE, Sym), (NU, MU, Sym), (OM, RH, Anti)], i),
            &|i| vec![f.h(true, i[MU], i[NU]), f.h(false, i[AL], i[BE])],
        );
        let s = slot(&format!("e{om}{rh}"));
        comps[s] = &comps[s] + &c;
    }
    for (om, rh) in crate::algebra::peg::h_pairs() {
        let mut c = f.zero();
        let mut b = base;
        b[OM] = om;
        b[RH] = rh;
        accumulate(
            &mut c,
            b,
            &[AL, BE, MU, NU],
            &rat(-1, 2),
            &|i| bracketed(&t4, &[(AL, BE, Sym), (NU, MU, Anti), (OM, RH, Sym)], i),
            &|i| vec![f.eps(true, i[MU], i[NU]), f.h(false, i[AL], i[BE])],
        );
        if om == rh {
            c = c.scale(&rat(1, 2));
        }
        let s = slot(&format!("h{om}{rh}"));
        comps[s] = &comps[s] + &c;
    }

    // A''
    for out in 0..4 {
        let mut c = f.zero();
        let mut b = base;
        b[RH] = out;
        let tk = |i: &Idx| eta(i[AL], i[NU]) * kd(i[MU], i[ZERO]) * kd(i[BE], i[RH]);
        accumulate(
            &mut c,
            b,
            &[AL, BE, MU, NU],
            &kc,
            &|i| bracketed(&tk, &[(AL, BE, Sym), (NU, MU, Anti)], i),
            &|i| vec![f.eps(true, i[MU], i[NU]), f.h(false, i[AL], i[BE])],
        );
        accumulate(
            &mut c,
            b,
            &[AL, BE, MU, NU],
            &(&kc * rat(1, 2)),
            &|i| bracketed(&tk, &[(AL, BE, Sym), (NU, MU, Sym), (ZERO, RH, Anti)], i),
            &|i| vec![f.h(true, i[MU], i[NU]), f.h(false, i[AL], i[BE])],
        );
        // output index α, summed ρ
        let mut b = base;
        b[AL] = out;
        let ta = |i: &Idx| eta(i[RH], i[MU]) * kd(i[NU], i[AL]);
        accumulate(
            &mut c,
            b,
            &[MU, NU, RH],
            &one,
            &|i| bracketed(&ta, &[(MU, NU, Anti)], i),
            &|i| vec![f.eps(true, i[MU], i[NU]), f.vec("A", false, i[RH])],
        );
        accumulate(
            &mut c,
            b,
            &[MU, NU, RH],
            &int(-1),
            &|i| bracketed(&ta, &[(MU, NU, Sym)], i),
            &|i| vec![f.h(true, i[MU], i[NU]), f.vec("A", false, i[RH])],
        );
        let s = slot(&format!("A{out}"));
        comps[s] = &comps[s] + &c;
    }

    // φ''
    let mut c = f.zero();
    let te = |i: &Idx| eta(i[MU], i[NU]) * kd(i[RH], 0);
    accumulate(
        &mut c,
        base,
        &[MU, NU, RH],
        &-mkc.clone(),
        &|i| bracketed(&te, &[(NU, RH, Anti)], i),
        &|i| vec![f.eps(true, i[NU], i[RH]), f.vec("x", false, i[MU])],
    );
    accumulate(
        &mut c,
        base,
        &[MU, NU, RH],
        &-mc.clone(),
        &|i| bracketed(&te, &[(NU, RH, Sym)], i),
        &|i| vec![f.h(true, i[NU], i[RH]), f.vec("x", false, i[MU])],
    );
    accumulate(
        &mut c,
        base,
        &[MU, NU],
        &k.q,
        &|i| int(eta(i[NU], i[MU])),
        &|i| vec![f.vec("A", true, i[NU]), f.vec("x", false, i[MU])],
    );
    if order >= 3 {
        let half = rat(1, 2);
        // η_{ρ[σ}δ_{γ]}^0 η_{[α[ν}δ_{μ]}^{[σ}δ^{γ]}_{β]}: the σγ bracket on the
        // first factor already antisymmetrizes the second
        let t_rot = |sym: Pair| {
            move |i: &Idx| -> Rational {
                let first = |j: &Idx| eta(j[RH], j[SI]) * kd(j[GA], 0);
                let second = |j: &Idx| eta(j[AL], j[NU]) * kd(j[MU], j[SI]) * kd(j[GA], j[BE]);
                bracketed(&first, &[(SI, GA, Anti)], i)
                    * bracketed(&second, &[(AL, BE, sym), (NU, MU, sym), (SI, GA, Anti)], i)
            }
        };
        let ee = t_rot(Anti);
        let lorentz_x = |j: &Idx| eta(j[RH], j[AL]) * kd(j[BE], j[SI]);
        accumulate(
            &mut c,
            base,
            &[MU, NU, AL, BE, RH, SI, GA],
            &(&half * &mkc * rat(-1, 4)),
            &ee,
            &|i| vec![f.eps(true, i[MU], i[NU]), f.eps(true, i[AL], i[BE]), f.vec("x", false, i[RH])],
        );
        accumulate(
            &mut c,
            base,
            &[MU, NU, AL, BE, RH, SI],
            &(&half * &-mkc.clone()),
            &|i| {
                let a = |j: &Idx| eta(j[SI], j[MU]) * kd(j[NU], 0);
                bracketed(&a, &[(MU, NU, Anti)], i) * bracketed(&lorentz_x, &[(AL, BE, Anti)], i)
            },
            &|i| vec![f.eps(true, i[MU], i[NU]), f.eps(true, i[AL], i[BE]), f.vec("x", false, i[RH])],
        );
        accumulate(
            &mut c,
            base,
            &[MU, NU, AL, BE, RH, SI],
            &(&half * &-mc.clone()),
            &|i| {
                let a = |j: &Idx| eta(j[SI], j[MU]) * kd(j[NU], 0);
                bracketed(&a, &[(MU, NU, Sym)], i) * bracketed(&lorentz_x, &[(AL, BE, Anti)], i)
            },
            &|i| vec![f.h(true, i[MU], i[NU]), f.eps(true, i[AL], i[BE]), f.vec("x", false, i[RH])],
        );
        accumulate(
            &mut c,
            base,
            &[MU, AL, BE, RH, SI],
            &(&half * &k.q),
            &|i| int(eta(i[SI], i[MU])) * bracketed(&lorentz_x, &[(AL, BE, Anti)], i),
            &|i| vec![f.vec("A", true, i[MU]), f.eps(true, i[AL], i[BE]), f.vec("x", false, i[RH])],
        );
        let hh = t_rot(Sym);
        accumulate(
            &mut c,
            base,
            &[MU, NU, AL, BE, RH, SI, GA],
            &(&half * &mkc * rat(-1, 4)),
            &hh,
            &|i| vec![f.h(true, i[MU], i[NU]), f.h(true, i[AL], i[BE]), f.vec("x", false, i[RH])],
        );
        let kqc = &k.kappa * &k.q * &k.c;
        accumulate(
            &mut c,
            base,
            &[MU, NU, AL, BE, RH, SI],
            &(&half * &rat(-1, 2) * -kqc),
            &|i| {
                let t = |j: &Idx| eta(j[AL], j[NU]) * kd(j[MU], j[ZERO]) * kd(j[SI], j[BE]);
                int(eta(i[RH], i[SI]))
                    * bracketed(&t, &[(AL, BE, Sym), (NU, MU, Sym), (ZERO, SI, Anti)], i)
            },
            &|i| vec![f.h(true, i[MU], i[NU]), f.h(true, i[AL], i[BE]), f.vec("x", false, i[RH])],
        );
        accumulate(
            &mut c,
            base,
            &[MU, AL, BE, RH, SI],
            &(&half * &k.q),
            &|i| int(eta(i[SI], i[MU])) * bracketed(&lorentz_x, &[(AL, BE, Sym)], i),
            &|i| vec![f.vec("A", true, i[MU]), f.h(true, i[AL], i[BE]), f.vec("x", false, i[RH])],
        );
    }
    let s = slot("phi");
    comps[s] = &comps[s] + &c;
    Ok(GroupLaw::new("PEG_electrograv", chart, comps))
}

/// One coefficient on which two laws disagree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TermMismatch {
    pub component: String,
    pub monomial: String,
    pub transcribed: Rational,
    pub reference: Rational,
}

fn monomial_text(chart: &Chart, m: &Monomial) -> String {
    let mut parts = Vec::new();
    for (i, &e) in m.iter().enumerate() {
        match e {
            0 => {}
            1 => parts.push(chart.name(i).to_string()),
            _ => parts.push(format!("{}^{e}", chart.name(i))),
        }
    }
    parts.join("*")
}

/// Compares every bilinear `g′g` coefficient, plus the cubic phase
/// coefficients of the printed shape (two primed non-translation parameters
/// times one unprimed translation).
pub fn compare_terms(transcribed: &GroupLaw, reference: &GroupLaw) -> Result<Vec<TermMismatch>, LawError> {
    let reference = reference.reorder(transcribed.chart())?;
    let chart = transcribed.chart();
    let pair = transcribed.pair_chart();
    let n = chart.len();
    let is_x = |i: usize| chart.name(i % n).starts_with('x');
    let phase = chart.phase_index()?;
    let mut out = Vec::new();
    for k in 0..n {
        let (a, b) = (&transcribed.components()[k], &reference.components()[k]);
        let keys: BTreeSet<Monomial> = a.terms().chain(b.terms()).map(|(m, _)| m.clone()).collect();
        for m in keys {
            let deg: u32 = m.iter().map(|&e| e as u32).sum();
            let primed: u32 = m[..n].iter().map(|&e| e as u32).sum();
            let wanted = match deg {
                2 => primed == 1,
                3 => {
                    k == phase
                        && primed == 2
                        && (0..n).all(|i| m[i] == 0 || !is_x(i))
                        && (n..2 * n).all(|i| m[i] == 0 || is_x(i))
                }
                _ => false,
            };
            if !wanted {
                continue;
            }
            let (ca, cb) = (a.coeff(&m), b.coeff(&m));
            if ca != cb {
                out.push(TermMismatch {
                    component: chart.name(k).to_string(),
                    monomial: monomial_text(pair, &m),
                    transcribed: ca,
                    reference: cb,
                });
            }
        }
    }
    Ok(out)
}

/// Compares the structure constants `B_ab^k − B_ba^k` carried by the
/// bilinear parts of two laws. Unlike raw coefficients these do not depend
/// on the choice of coordinates of the second kind.
pub fn compare_commutators(
    transcribed: &GroupLaw,
    reference: &GroupLaw,
) -> Result<Vec<TermMismatch>, LawError> {
    let reference = reference.reorder(transcribed.chart())?;
    let chart = transcribed.chart();
    let n = chart.len();
    let mut out = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            let ca = transcribed.commutator_constants(a, b);
            let cb = reference.commutator_constants(a, b);
            for k in 0..n {
                if ca[k] != cb[k] {
                    out.push(TermMismatch {
                        component: chart.name(k).to_string(),
                        monomial: format!("[{}, {}]", chart.name(a), chart.name(b)),
                        transcribed: ca[k].clone(),
                        reference: cb[k].clone(),
                    });
                }
            }
        }
    }
    Ok(out)
}

impl std::fmt::Display for TermMismatch {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "{}'': {} transcribed {} vs {}",
            self.component,
            self.monomial,
            fmt_rational(&self.transcribed),
            fmt_rational(&self.reference)
        )
    }
}
