//! Closed-form multiplication of the electromagnetically gauged extended
//! Galilei group.
//!
//! Rotations use the vector part `ε = 2u` of a unit quaternion `(w, u)`,
//! `w = sqrt(1 − ε²/4)`:
//!
//! ```text
//! R(ε)x = (1 − ε²/2) x + ½ ε (ε·x) + w ε×x
//! ε″    = w ε′ + w′ ε + ½ ε′×ε
//! ```
//!
//! and the remaining coordinates compose as
//!
//! ```text
//! t″  = t′ + t              x″ = x′ + R′x + v′t
//! v″  = v′ + R′v            A″ = A′ + R′A
//! A0″ = A0′ + A0 + v′·R′A
//! φ″  = φ′ + φ − (m/ħ)[v′·R′x + ½ t v′²] − (q/ħ)[A′·R′x + t(v′·A′ − A0′)]
//! ```

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use num_traits::{One, Signed, Zero};
use thiserror::Error;

use super::{chart_for, GroupLaw, LawError};
use crate::algebra::ge_electromagnetic;
use crate::constants::Constants;
use crate::poly::{exact_sqrt, fmt_rational, int, rat, rational_to_f64, Chart, Rational, TruncatedPoly};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DomainError {
    #[error("square root of a negative quantity ({0})")]
    Negative(String),
    #[error("{0} has no exact rational square root")]
    Irrational(String),
    #[error("rotation parameter outside |ε| <= 2")]
    RotationRange,
}

/// Arithmetic needed by the closed-form law.
pub trait Scalar: Clone {
    /// Constant `q` of the same kind (and chart, for series) as `self`.
    fn lift(&self, q: &Rational) -> Self;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn sqrt(&self) -> Result<Self, DomainError>;
    /// True when the value is known to be negative.
    fn is_negative(&self) -> bool {
        false
    }

    fn neg(&self) -> Self {
        self.lift(&Rational::zero()).sub(self)
    }

    fn scale(&self, q: &Rational) -> Self {
        self.mul(&self.lift(q))
    }
}

impl Scalar for Rational {
    fn lift(&self, q: &Rational) -> Self {
        q.clone()
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn sqrt(&self) -> Result<Self, DomainError> {
        if Signed::is_negative(self) {
            return Err(DomainError::Negative(fmt_rational(self)));
        }
        exact_sqrt(self).ok_or_else(|| DomainError::Irrational(fmt_rational(self)))
    }
    fn is_negative(&self) -> bool {
        Signed::is_negative(self)
    }
}

impl Scalar for f64 {
    fn lift(&self, q: &Rational) -> Self {
        rational_to_f64(q)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn sqrt(&self) -> Result<Self, DomainError> {
        if *self < -1e-14 {
            return Err(DomainError::Negative(self.to_string()));
        }
        Ok(self.max(0.0).sqrt())
    }
    fn is_negative(&self) -> bool {
        *self < 0.0
    }
}

/// Taylor series of the square root around the constant term, which must
/// be a positive rational square.
impl Scalar for TruncatedPoly {
    fn lift(&self, q: &Rational) -> Self {
        TruncatedPoly::constant(self.chart(), self.degree(), q.clone())
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn sqrt(&self) -> Result<Self, DomainError> {
        let c0 = self.constant_term();
        if !Signed::is_positive(&c0) {
            return Err(DomainError::Negative(fmt_rational(&c0)));
        }
        let s0 = Scalar::sqrt(&c0)?;
        let u = (self - &self.lift(&c0)).scale(&(Rational::one() / &c0));
        // sqrt(1 + u) = Σ binom(1/2, k) u^k
        let mut out = self.lift(&Rational::one());
        let mut coeff = Rational::one();
        let mut power = self.lift(&Rational::one());
        for k in 1..=self.degree() {
            let k = k as i64;
            coeff = coeff * (rat(1, 2) - Rational::from_integer((k - 1).into())) / Rational::from_integer(k.into());
            power = &power * &u;
            if power.is_zero() {
                break;
            }
            out = &out + &power.scale(&coeff);
        }
        Ok(out.scale(&s0))
    }
}

/// Group element in the chart order `t, x, v, ε, A, A0, φ`.
#[derive(Debug, Clone, PartialEq)]
pub struct GeElement<S> {
    pub t: S,
    pub x: [S; 3],
    pub v: [S; 3],
    pub e: [S; 3],
    pub a: [S; 3],
    pub a0: S,
    pub phi: S,
}

impl<S: Scalar> GeElement<S> {
    /// From the 15 chart coordinates.
    pub fn from_slice(z: &[S]) -> Self {
        assert_eq!(z.len(), 15, "GE element has 15 coordinates");
        let v3 = |o: usize| [z[o].clone(), z[o + 1].clone(), z[o + 2].clone()];
        GeElement {
            t: z[0].clone(),
            x: v3(1),
            v: v3(4),
            e: v3(7),
            a: v3(10),
            a0: z[13].clone(),
            phi: z[14].clone(),
        }
    }

    pub fn to_vec(&self) -> Vec<S> {
        let mut out = vec![self.t.clone()];
        for block in [&self.x, &self.v, &self.e, &self.a] {
            out.extend(block.iter().cloned());
        }
        out.push(self.a0.clone());
        out.push(self.phi.clone());
        out
    }

    pub fn identity(like: &S) -> Self {
        Self::from_slice(&vec![like.lift(&Rational::zero()); 15])
    }
}

fn dot<S: Scalar>(a: &[S; 3], b: &[S; 3]) -> S {
    a[0].mul(&b[0]).add(&a[1].mul(&b[1])).add(&a[2].mul(&b[2]))
}

fn cross<S: Scalar>(a: &[S; 3], b: &[S; 3]) -> [S; 3] {
    [
        a[1].mul(&b[2]).sub(&a[2].mul(&b[1])),
        a[2].mul(&b[0]).sub(&a[0].mul(&b[2])),
        a[0].mul(&b[1]).sub(&a[1].mul(&b[0])),
    ]
}

fn vadd<S: Scalar>(a: &[S; 3], b: &[S; 3]) -> [S; 3] {
    [a[0].add(&b[0]), a[1].add(&b[1]), a[2].add(&b[2])]
}

fn vscale<S: Scalar>(a: &[S; 3], k: &S) -> [S; 3] {
    [a[0].mul(k), a[1].mul(k), a[2].mul(k)]
}

fn vneg<S: Scalar>(a: &[S; 3]) -> [S; 3] {
    [a[0].neg(), a[1].neg(), a[2].neg()]
}

/// `w = sqrt(1 − ε²/4)`.
fn quaternion_scalar<S: Scalar>(e: &[S; 3]) -> Result<S, DomainError> {
    let e2 = dot(e, e);
    let one = e2.lift(&Rational::one());
    let arg = one.sub(&e2.scale(&rat(1, 4)));
    if arg.is_negative() {
        return Err(DomainError::RotationRange);
    }
    arg.sqrt()
}

/// Rotated vector `R(ε)x`, given `w = sqrt(1 − ε²/4)`.
fn rotate<S: Scalar>(e: &[S; 3], w: &S, x: &[S; 3]) -> [S; 3] {
    let e2 = dot(e, e);
    let one = e2.lift(&Rational::one());
    let k = one.sub(&e2.scale(&rat(1, 2)));
    let ex = dot(e, x).scale(&rat(1, 2));
    vadd(&vadd(&vscale(x, &k), &vscale(e, &ex)), &vscale(&cross(e, x), w))
}

/// Closed-form law with the constants `m/ħ` and `q/ħ` fixed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClosedFormGE {
    pub m_over_hbar: Rational,
    pub q_over_hbar: Rational,
}

impl ClosedFormGE {
    pub fn new(constants: &Constants) -> Self {
        ClosedFormGE {
            m_over_hbar: &constants.m / &constants.hbar,
            q_over_hbar: &constants.q / &constants.hbar,
        }
    }

    /// Mass cocycle `−(m/ħ)[v′·R′x + ½ t v′²]`.
    pub fn xi_mass<S: Scalar>(&self, gp: &GeElement<S>, g: &GeElement<S>) -> Result<S, DomainError> {
        let wp = quaternion_scalar(&gp.e)?;
        let rx = rotate(&gp.e, &wp, &g.x);
        let s = dot(&gp.v, &rx).add(&g.t.mul(&dot(&gp.v, &gp.v)).scale(&rat(1, 2)));
        Ok(s.scale(&-self.m_over_hbar.clone()))
    }

    /// Charge cocycle `−(q/ħ)[A′·R′x + t(v′·A′ − A0′)]`.
    pub fn xi_charge<S: Scalar>(&self, gp: &GeElement<S>, g: &GeElement<S>) -> Result<S, DomainError> {
        let wp = quaternion_scalar(&gp.e)?;
        let rx = rotate(&gp.e, &wp, &g.x);
        let s = dot(&gp.a, &rx).add(&g.t.mul(&dot(&gp.v, &gp.a).sub(&gp.a0)));
        Ok(s.scale(&-self.q_over_hbar.clone()))
    }

    /// Product `g′ · g` without the phase cocycles.
    fn compose_base<S: Scalar>(&self, gp: &GeElement<S>, g: &GeElement<S>) -> Result<GeElement<S>, DomainError> {
        let wp = quaternion_scalar(&gp.e)?;
        let w = quaternion_scalar(&g.e)?;
        let r = |u: &[S; 3]| rotate(&gp.e, &wp, u);
        let ra = r(&g.a);
        let mut e = vadd(
            &vadd(&vscale(&gp.e, &w), &vscale(&g.e, &wp)),
            &vscale(&cross(&gp.e, &g.e), &w.lift(&rat(1, 2))),
        );
        // quaternion q and -q give the same rotation; keep w'' >= 0
        let w2 = wp.mul(&w).sub(&dot(&gp.e, &g.e).scale(&rat(1, 4)));
        if w2.is_negative() {
            e = vneg(&e);
        }
        Ok(GeElement {
            t: gp.t.add(&g.t),
            x: vadd(&vadd(&gp.x, &r(&g.x)), &vscale(&gp.v, &g.t)),
            v: vadd(&gp.v, &r(&g.v)),
            e,
            a: vadd(&gp.a, &ra),
            a0: gp.a0.add(&g.a0).add(&dot(&gp.v, &ra)),
            phi: gp.phi.add(&g.phi),
        })
    }

    pub fn compose<S: Scalar>(&self, gp: &GeElement<S>, g: &GeElement<S>) -> Result<GeElement<S>, DomainError> {
        let mut out = self.compose_base(gp, g)?;
        out.phi = out
            .phi
            .add(&self.xi_mass(gp, g)?)
            .add(&self.xi_charge(gp, g)?);
        Ok(out)
    }

    /// `g⁻¹`, so that `compose(g⁻¹, g)` is the identity.
    pub fn inverse<S: Scalar>(&self, g: &GeElement<S>) -> Result<GeElement<S>, DomainError> {
        let e = vneg(&g.e);
        let w = quaternion_scalar(&e)?;
        let r = |u: &[S; 3]| rotate(&e, &w, u);
        let rv = r(&g.v);
        let (rx, ra) = (r(&g.x), r(&g.a));
        let mut inv = GeElement {
            t: g.t.neg(),
            x: vadd(&vneg(&rx), &vscale(&rv, &g.t)),
            v: vneg(&rv),
            e,
            a: vneg(&ra),
            a0: g.a0.neg().add(&dot(&g.v, &g.a)),
            phi: g.phi.lift(&Rational::zero()),
        };
        let xi = self.xi_mass(&inv, g)?.add(&self.xi_charge(&inv, g)?);
        inv.phi = g.phi.neg().sub(&xi);
        Ok(inv)
    }

    /// `ξ(a,b) + ξ(ab,c) − ξ(a,bc) − ξ(b,c)` for the mass (`charge =
    /// false`) or charge cocycle.
    pub fn cocycle_residual<S: Scalar>(
        &self,
        charge: bool,
        a: &GeElement<S>,
        b: &GeElement<S>,
        c: &GeElement<S>,
    ) -> Result<S, DomainError> {
        let xi = |u: &GeElement<S>, v: &GeElement<S>| {
            if charge {
                self.xi_charge(u, v)
            } else {
                self.xi_mass(u, v)
            }
        };
        let ab = self.compose_base(a, b)?;
        let bc = self.compose_base(b, c)?;
        Ok(xi(a, b)?.add(&xi(&ab, c)?).sub(&xi(a, &bc)?).sub(&xi(b, c)?))
    }
}

/// Chart of the electromagnetic extended Galilei group.
pub fn ge_chart() -> Arc<Chart> {
    chart_for(&ge_electromagnetic(&Constants::default()))
}

/// Closed-form law expanded as exact series through total degree `order`.
pub fn closed_form_ge(constants: &Constants, order: u32) -> Result<GroupLaw, LawError> {
    let chart = ge_chart();
    let pair = chart.doubled();
    let coords: Vec<TruncatedPoly> = (0..pair.len())
        .map(|i| TruncatedPoly::coordinate(&pair, order, i))
        .collect();
    let gp = GeElement::from_slice(&coords[..15]);
    let g = GeElement::from_slice(&coords[15..]);
    let out = ClosedFormGE::new(constants).compose(&gp, &g)?;
    Ok(GroupLaw::new("GE_electromagnetic", chart, out.to_vec()))
}

fn random_rational(rng: &mut ChaCha8Rng) -> Rational {
    rat(rng.gen_range(-20..=20), rng.gen_range(1..=9))
}

/// Random element with exact rational coordinates. With `rotations`, the
/// rotation parameter comes from the rational unit quaternion
/// `((1 − |p|²), 2p)/(1 + |p|²)` with `|p| <= 1`, so `w` stays rational.
pub fn random_element(rng: &mut ChaCha8Rng, rotations: bool) -> GeElement<Rational> {
    let mut z: Vec<Rational> = (0..15).map(|_| random_rational(rng)).collect();
    if rotations {
        let p = loop {
            let p: Vec<Rational> = (0..3).map(|_| rat(rng.gen_range(-6..=6), rng.gen_range(1..=7))).collect();
            let n2: Rational = p.iter().map(|c| c * c).sum();
            if n2 <= Rational::one() {
                break p;
            }
        };
        let n2: Rational = p.iter().map(|c| c * c).sum();
        for i in 0..3 {
            // ε = 2u, u = 2p/(1 + |p|²)
            z[7 + i] = int(4) * &p[i] / (Rational::one() + &n2);
        }
    } else {
        for c in &mut z[7..10] {
            *c = Rational::zero();
        }
    }
    GeElement::from_slice(&z)
}

/// Random element with `|ε| < 2`.
pub fn random_element_f64(rng: &mut ChaCha8Rng) -> GeElement<f64> {
    let mut z: Vec<f64> = (0..15).map(|_| rng.gen_range(-2.0..2.0)).collect();
    loop {
        let e: Vec<f64> = (0..3).map(|_| rng.gen_range(-1.15..1.15)).collect();
        if e.iter().map(|c| c * c).sum::<f64>() < 3.9 {
            z[7..10].copy_from_slice(&e);
            break;
        }
    }
    GeElement::from_slice(&z)
}

/// Outcome of [`check_closed_form`].
#[derive(Debug, Clone, PartialEq)]
pub struct ClosedFormReport {
    pub trials: usize,
    /// Exact failures of identity, inverse or associativity (with rotations).
    pub axiom_failures: usize,
    /// Exact cocycle failures with `ε = 0`, mass and charge.
    pub cocycle_failures_exact: [usize; 2],
    /// Largest cocycle residual over floating-point trials with `ε ≠ 0`.
    pub cocycle_residual_f64: [f64; 2],
}

impl ClosedFormReport {
    pub fn ok(&self, tol: f64) -> bool {
        self.axiom_failures == 0
            && self.cocycle_failures_exact == [0, 0]
            && self.cocycle_residual_f64.iter().all(|r| *r < tol)
    }
}

/// Group axioms and cocycle identities of the closed-form law on seeded
/// random triples.
pub fn check_closed_form(law: &ClosedFormGE, trials: usize, seed: u64) -> Result<ClosedFormReport, DomainError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let id = GeElement::identity(&Rational::zero());
    let mut report = ClosedFormReport {
        trials,
        axiom_failures: 0,
        cocycle_failures_exact: [0, 0],
        cocycle_residual_f64: [0.0, 0.0],
    };
    for _ in 0..trials {
        let (a, b, c) = (
            random_element(&mut rng, true),
            random_element(&mut rng, true),
            random_element(&mut rng, true),
        );
        let lhs = law.compose(&law.compose(&a, &b)?, &c)?;
        let rhs = law.compose(&a, &law.compose(&b, &c)?)?;
        let inv = law.inverse(&a)?;
        let ok = lhs == rhs
            && law.compose(&id, &a)? == a
            && law.compose(&a, &id)? == a
            && law.compose(&inv, &a)? == id
            && law.compose(&a, &inv)? == id;
        if !ok {
            report.axiom_failures += 1;
        }
        let (a, b, c) = (
            random_element(&mut rng, false),
            random_element(&mut rng, false),
            random_element(&mut rng, false),
        );
        for (i, charge) in [false, true].into_iter().enumerate() {
            if !law.cocycle_residual(charge, &a, &b, &c)?.is_zero() {
                report.cocycle_failures_exact[i] += 1;
            }
        }
        let (a, b, c) = (
            random_element_f64(&mut rng),
            random_element_f64(&mut rng),
            random_element_f64(&mut rng),
        );
        for (i, charge) in [false, true].into_iter().enumerate() {
            let r = law.cocycle_residual(charge, &a, &b, &c)?.abs();
            report.cocycle_residual_f64[i] = report.cocycle_residual_f64[i].max(r);
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::int;

    fn el(z: [i64; 15], den: i64) -> GeElement<Rational> {
        GeElement::from_slice(&z.iter().map(|&n| rat(n, den)).collect::<Vec<_>>())
    }

    #[test]
    fn rotation_is_orthogonal_for_pythagorean_parameters() {
        // 1 − ε²/4 = 16/25 with ε = (6/5, 0, 0)
        let e = [rat(6, 5), int(0), int(0)];
        let w = quaternion_scalar(&e).unwrap();
        assert_eq!(w, rat(4, 5));
        let y = rotate(&e, &w, &[int(0), int(1), int(0)]);
        assert_eq!(dot(&y, &y), int(1));
        assert_eq!(y[0], int(0));
    }

    #[test]
    fn inverse_and_identity_exact() {
        let law = ClosedFormGE::new(&Constants::default().with("m", int(2)).with("q", rat(1, 3)));
        let g = el([1, 2, -3, 4, 5, -1, 2, 0, 0, 0, 3, 1, -2, 7, 11], 3);
        let id = GeElement::identity(&int(0));
        assert_eq!(law.compose(&id, &g).unwrap(), g);
        assert_eq!(law.compose(&g, &id).unwrap(), g);
        let inv = law.inverse(&g).unwrap();
        assert_eq!(law.compose(&inv, &g).unwrap(), id);
        assert_eq!(law.compose(&g, &inv).unwrap(), id);
    }

    #[test]
    fn irrational_and_out_of_range_rotations() {
        let law = ClosedFormGE::new(&Constants::default());
        let mut z = [0i64; 15];
        z[7] = 1;
        let g = el(z, 1);
        assert!(matches!(law.compose(&g, &g), Err(DomainError::Irrational(_))));
        z[7] = 3;
        assert_eq!(law.compose(&el(z, 1), &g), Err(DomainError::RotationRange));
        let gf = GeElement::from_slice(&z.iter().map(|&n| n as f64).collect::<Vec<_>>());
        assert!(law.compose(&gf, &gf).is_err());
    }

    #[test]
    fn seeded_trials_pass() {
        let k = Constants::default().with("m", rat(7, 3)).with("q", rat(-2, 5)).with("hbar", rat(3, 2));
        let r = check_closed_form(&ClosedFormGE::new(&k), 20, 7).unwrap();
        assert!(r.ok(1e-12), "{r:?}");
    }

    #[test]
    fn series_sqrt() {
        let chart = Chart::new([("u", crate::poly::Role::Space)]).unwrap();
        let u = TruncatedPoly::var(&chart, 4, "u").unwrap();
        let one = TruncatedPoly::one(&chart, 4);
        let s = Scalar::sqrt(&(&one + &u)).unwrap();
        assert_eq!(&s * &s, &one + &u);
        let s4 = Scalar::sqrt(&(&one + &u).scale(&int(4))).unwrap();
        assert_eq!(s4.constant_term(), int(2));
    }
}
