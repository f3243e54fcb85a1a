use std::fmt;

use num_traits::{One, Zero};
use thiserror::Error;

use super::{AlgebraSpec, LieElement};
use crate::constants::Constants;
use crate::poly::Rational;

/// Generator family of the 1+1 Galilei current algebra.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CurrentKind {
    /// Local time translation `f(t) ⊗ X_b`.
    B,
    /// Local space translation `f(t) ⊗ X_a`.
    A,
    /// Generator `f(t) ⊗ X_h` produced by closure.
    H,
    /// Rigid boost `X_V` (test function must be constant).
    V,
}

impl CurrentKind {
    fn letter(self) -> &'static str {
        match self {
            CurrentKind::B => "b",
            CurrentKind::A => "a",
            CurrentKind::H => "h",
            CurrentKind::V => "V",
        }
    }
}

/// `f(t) ⊗ X` with `f = Σ f[n] t^n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CurrentTerm {
    pub f: Vec<Rational>,
    pub kind: CurrentKind,
}

impl CurrentTerm {
    pub fn new(f: Vec<Rational>, kind: CurrentKind) -> Self {
        CurrentTerm { f: trim(f), kind }
    }

    /// `t^n ⊗ X`.
    pub fn monomial(n: usize, kind: CurrentKind) -> Self {
        let mut f = vec![Rational::zero(); n + 1];
        f[n] = Rational::one();
        CurrentTerm { f, kind }
    }

    pub fn is_zero(&self) -> bool {
        self.f.is_empty()
    }

    /// Polynomial degree of `f` (`None` for `f = 0`).
    pub fn degree(&self) -> Option<usize> {
        self.f.len().checked_sub(1)
    }
}

impl fmt::Display for CurrentTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let poly: Vec<String> = self
            .f
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(n, c)| match n {
                0 => crate::poly::fmt_rational(c),
                1 => format!("{}*t", crate::poly::fmt_rational(c)),
                _ => format!("{}*t^{}", crate::poly::fmt_rational(c), n),
            })
            .collect();
        let poly = if poly.is_empty() { "0".to_string() } else { poly.join(" + ") };
        write!(f, "({poly}) ⊗ X_{}", self.kind.letter())
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CurrentError {
    #[error("bracket produces a test function of degree {degree}, above the limit {limit}")]
    Truncation { degree: usize, limit: usize },
    #[error("X_V is a rigid generator; its test function must be constant")]
    NonLocal,
}

fn trim(mut f: Vec<Rational>) -> Vec<Rational> {
    while f.last().is_some_and(Zero::is_zero) {
        f.pop();
    }
    f
}

fn deriv(f: &[Rational]) -> Vec<Rational> {
    trim(
        f.iter()
            .enumerate()
            .skip(1)
            .map(|(n, c)| c * Rational::from_integer((n as i64).into()))
            .collect(),
    )
}

fn mul(f: &[Rational], g: &[Rational]) -> Vec<Rational> {
    if f.is_empty() || g.is_empty() {
        return Vec::new();
    }
    let mut out = vec![Rational::zero(); f.len() + g.len() - 1];
    for (i, a) in f.iter().enumerate() {
        for (j, b) in g.iter().enumerate() {
            out[i + j] += a * b;
        }
    }
    trim(out)
}

fn sub(f: &[Rational], g: &[Rational]) -> Vec<Rational> {
    let n = f.len().max(g.len());
    let z = Rational::zero();
    trim(
        (0..n)
            .map(|i| f.get(i).unwrap_or(&z) - g.get(i).unwrap_or(&z))
            .collect(),
    )
}

fn scale(f: &[Rational], k: &Rational) -> Vec<Rational> {
    trim(f.iter().map(|c| c * k).collect())
}

/// Finite current algebra with polynomial test functions truncated at
/// degree `d`: `t^n ⊗ X_b` for `n <= min(d, 1)`, `t^n ⊗ X_a` for `n <= d`,
/// `t^n ⊗ X_h` for `n < d`, and `X_V`. This is the largest subalgebra of the
/// degree-`d` currents closed under the bracket.
#[derive(Debug, Clone)]
pub struct CurrentAlgebraSpec {
    pub base: AlgebraSpec,
    pub test_function_degree: usize,
    pub constants: Constants,
    basis: Vec<(usize, CurrentKind)>,
}

impl CurrentAlgebraSpec {
    pub fn new(d: usize, constants: Constants) -> Self {
        let mut basis = Vec::new();
        for n in 0..=d.min(1) {
            basis.push((n, CurrentKind::B));
        }
        for n in 0..=d {
            basis.push((n, CurrentKind::A));
        }
        for n in 0..d {
            basis.push((n, CurrentKind::H));
        }
        basis.push((0, CurrentKind::V));
        let labels = basis
            .iter()
            .map(|(n, k)| match k {
                CurrentKind::V => "V".to_string(),
                _ => format!("{}{}", k.letter(), n),
            })
            .collect();
        let mut base = AlgebraSpec::new("galilei_1p1_gauged", labels, constants.clone());
        let mut cur = CurrentAlgebraSpec {
            base: base.clone(),
            test_function_degree: d,
            constants,
            basis,
        };
        for i in 0..cur.basis.len() {
            for j in i + 1..cur.basis.len() {
                let u = cur.term(i);
                let v = cur.term(j);
                let r = current_bracket(&cur, &u, &v).expect("finite subalgebra closes");
                let mut e = LieElement::zero();
                for t in r {
                    for (n, c) in t.f.iter().enumerate() {
                        let k = cur
                            .index_of(n, t.kind)
                            .expect("closure stays inside the finite basis");
                        e.add_term(k, c.clone());
                    }
                }
                base.set_bracket(i, j, e);
            }
        }
        cur.base = base;
        cur
    }

    /// Basis element `i` as a current term.
    pub fn term(&self, i: usize) -> CurrentTerm {
        let (n, k) = self.basis[i];
        CurrentTerm::monomial(n, k)
    }

    pub fn index_of(&self, n: usize, kind: CurrentKind) -> Option<usize> {
        self.basis.iter().position(|&(m, k)| m == n && k == kind)
    }
}

/// Bracket of two currents, realized as the commutator of the vector
/// fields `f X_b = f ∂t + (p²/2m - h) f' ∂h`, `f X_a = f ∂x - p f' ∂h`,
/// `X_V = t ∂x + m ∂p`, `f X_h = f ∂h`.
pub fn current_bracket(
    cur: &CurrentAlgebraSpec,
    u: &CurrentTerm,
    v: &CurrentTerm,
) -> Result<Vec<CurrentTerm>, CurrentError> {
    use CurrentKind::*;
    for t in [u, v] {
        if t.kind == V && t.f.len() > 1 {
            return Err(CurrentError::NonLocal);
        }
        if let Some(d) = t.degree() {
            if d > cur.test_function_degree {
                return Err(CurrentError::Truncation {
                    degree: d,
                    limit: cur.test_function_degree,
                });
            }
        }
    }
    if u.kind > v.kind {
        let r = current_bracket(cur, v, u)?;
        return Ok(r
            .into_iter()
            .map(|t| CurrentTerm::new(scale(&t.f, &-Rational::one()), t.kind))
            .collect());
    }
    let (f, g) = (&u.f, &v.f);
    let m = &cur.constants.m;
    let out = match (u.kind, v.kind) {
        (B, B) => vec![CurrentTerm::new(sub(&mul(f, &deriv(g)), &mul(g, &deriv(f))), B)],
        (B, A) => vec![CurrentTerm::new(mul(f, &deriv(g)), A)],
        (B, H) => vec![CurrentTerm::new(deriv(&mul(f, g)), H)],
        (B, V) => vec![CurrentTerm::new(mul(f, g), A)],
        (A, V) => vec![CurrentTerm::new(scale(&mul(&deriv(f), g), m), H)],
        _ => Vec::new(),
    };
    let out: Vec<CurrentTerm> = out.into_iter().filter(|t| !t.is_zero()).collect();
    for t in &out {
        if let Some(d) = t.degree() {
            if d > cur.test_function_degree {
                return Err(CurrentError::Truncation {
                    degree: d,
                    limit: cur.test_function_degree,
                });
            }
        }
    }
    Ok(out)
}
