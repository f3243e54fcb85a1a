//! Finite-dimensional Lie algebras given by exact structure constants,
//! their central extensions, and the physics catalog.

mod catalog;
mod current;
mod extension;
pub mod peg;
mod text;

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};
use thiserror::Error;

use crate::constants::Constants;
use crate::poly::Rational;

pub use catalog::{abelian, canonical_name, catalog, galilei_extended, galilei_unextended, ge_electromagnetic, CatalogError};
pub use current::{current_bracket, CurrentAlgebraSpec, CurrentError, CurrentKind, CurrentTerm};
pub use extension::{
    central_extend, check_cocycle, coboundary, forget_generator, trivializing_shift, AlgebraCocycle,
    CocycleError,
};
pub use text::{parse_algebra, AlgebraParseError};

/// Label of the central generator in every extended algebra.
pub const CENTRAL: &str = "Xi";

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BasisError {
    #[error("unknown generator {0:?}")]
    UnknownLabel(String),
    #[error("generator index {index} out of range for dimension {dim}")]
    OutOfRange { index: usize, dim: usize },
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("algebra fails the Jacobi identity on {0} triple(s)")]
    NotJacobi(usize),
    #[error("bracket table is not antisymmetric on {0} pair(s)")]
    NotAntisymmetric(usize),
    #[error("{0}")]
    Singular(String),
    #[error(transparent)]
    Basis(#[from] BasisError),
}

/// Sparse linear combination of basis generators.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct LieElement(BTreeMap<usize, Rational>);

impl LieElement {
    pub fn zero() -> Self {
        LieElement(BTreeMap::new())
    }

    pub fn basis(i: usize) -> Self {
        Self::term(i, Rational::one())
    }

    pub fn term(i: usize, c: Rational) -> Self {
        let mut e = Self::zero();
        e.add_term(i, c);
        e
    }

    pub fn add_term(&mut self, i: usize, c: Rational) {
        if c.is_zero() {
            return;
        }
        let slot = self.0.entry(i).or_insert_with(Rational::zero);
        *slot += c;
        if slot.is_zero() {
            self.0.remove(&i);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn coeff(&self, i: usize) -> Rational {
        self.0.get(&i).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (usize, &Rational)> {
        self.0.iter().map(|(i, c)| (*i, c))
    }

    pub fn plus(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (i, c) in other.terms() {
            out.add_term(i, c.clone());
        }
        out
    }

    pub fn scaled(&self, k: &Rational) -> Self {
        let mut out = Self::zero();
        for (i, c) in self.terms() {
            out.add_term(i, c * k);
        }
        out
    }

    pub fn negated(&self) -> Self {
        self.scaled(&-Rational::one())
    }

    /// Drops the component along generator `i`.
    pub fn without(&self, i: usize) -> Self {
        let mut out = self.clone();
        out.0.remove(&i);
        out
    }

    pub fn max_index(&self) -> Option<usize> {
        self.0.keys().next_back().copied()
    }

    pub fn display<'a>(&'a self, alg: &'a AlgebraSpec) -> impl fmt::Display + 'a {
        DisplayElement { e: self, labels: &alg.labels }
    }
}

struct DisplayElement<'a> {
    e: &'a LieElement,
    labels: &'a [String],
}

impl fmt::Display for DisplayElement<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.e.is_zero() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self
            .e
            .terms()
            .map(|(i, c)| {
                let name = self.labels.get(i).map_or("?", |s| s.as_str());
                if c.is_one() {
                    name.to_string()
                } else {
                    format!("{}*{}", crate::poly::fmt_rational(c), name)
                }
            })
            .collect();
        f.write_str(&parts.join(" + "))
    }
}

/// Lie algebra with a dense antisymmetric bracket table over labelled
/// generators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlgebraSpec {
    pub name: String,
    labels: Vec<String>,
    table: Vec<Vec<LieElement>>,
    pub constants: Constants,
    /// Unordered pairs whose two table entries were set inconsistently.
    asymmetric: Vec<(usize, usize)>,
}

impl AlgebraSpec {
    pub fn new(name: &str, labels: Vec<String>, constants: Constants) -> Self {
        let n = labels.len();
        AlgebraSpec {
            name: name.to_string(),
            labels,
            table: vec![vec![LieElement::zero(); n]; n],
            constants,
            asymmetric: Vec::new(),
        }
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn index(&self, label: &str) -> Result<usize, BasisError> {
        self.labels
            .iter()
            .position(|l| l == label)
            .ok_or_else(|| BasisError::UnknownLabel(label.to_string()))
    }

    /// Index of the central generator, when present.
    pub fn central(&self) -> Option<usize> {
        self.index(CENTRAL).ok()
    }

    /// Sets `[X_i, X_j] = value` and `[X_j, X_i] = -value`.
    pub fn set_bracket(&mut self, i: usize, j: usize, value: LieElement) {
        if i == j {
            if !value.is_zero() {
                self.asymmetric.push((i, i));
            }
            return;
        }
        self.table[j][i] = value.negated();
        self.table[i][j] = value;
    }

    /// Adds `value` to `[X_i, X_j]` (and its negative to `[X_j, X_i]`).
    pub fn add_bracket(&mut self, i: usize, j: usize, value: &LieElement) {
        let v = self.table[i][j].plus(value);
        self.set_bracket(i, j, v);
    }

    /// Records one ordered entry without touching the mirrored one; a later
    /// entry for `(j, i)` that is not the negative is logged as asymmetric.
    pub fn set_ordered(&mut self, i: usize, j: usize, value: LieElement, seen: &mut Vec<Vec<bool>>) {
        if i == j {
            if !value.is_zero() {
                self.asymmetric.push((i, i));
            }
            return;
        }
        if seen[j][i] {
            if self.table[j][i] != value.negated() {
                self.asymmetric.push((i.min(j), i.max(j)));
            }
        } else {
            self.table[j][i] = value.negated();
        }
        self.table[i][j] = value;
        seen[i][j] = true;
    }

    pub fn structure(&self, i: usize, j: usize) -> &LieElement {
        &self.table[i][j]
    }

    /// Structure constant `C_{ij}^k`.
    pub fn c(&self, i: usize, j: usize, k: usize) -> Rational {
        self.table[i][j].coeff(k)
    }

    pub fn element(&self, terms: &[(&str, Rational)]) -> Result<LieElement, BasisError> {
        let mut e = LieElement::zero();
        for (l, c) in terms {
            e.add_term(self.index(l)?, c.clone());
        }
        Ok(e)
    }

    pub fn gen(&self, label: &str) -> Result<LieElement, BasisError> {
        Ok(LieElement::basis(self.index(label)?))
    }

    fn check_element(&self, e: &LieElement) -> Result<(), BasisError> {
        match e.max_index() {
            Some(i) if i >= self.dim() => Err(BasisError::OutOfRange {
                index: i,
                dim: self.dim(),
            }),
            _ => Ok(()),
        }
    }

    /// Bilinear extension of the structure constants.
    pub fn bracket(&self, u: &LieElement, v: &LieElement) -> Result<LieElement, BasisError> {
        self.check_element(u)?;
        self.check_element(v)?;
        Ok(self.bracket_unchecked(u, v))
    }

    pub(crate) fn bracket_unchecked(&self, u: &LieElement, v: &LieElement) -> LieElement {
        let mut out = LieElement::zero();
        for (i, a) in u.terms() {
            for (j, b) in v.terms() {
                let ab = a * b;
                for (k, c) in self.table[i][j].terms() {
                    out.add_term(k, &ab * c);
                }
            }
        }
        out
    }

    pub fn bracket_labels(&self, a: &str, b: &str) -> Result<LieElement, BasisError> {
        self.bracket(&self.gen(a)?, &self.gen(b)?)
    }

    /// Exhaustive antisymmetry and Jacobi scan over basis pairs and triples.
    pub fn check_jacobi(&self) -> JacobiReport {
        let n = self.dim();
        let mut antisymmetry: Vec<(usize, usize)> = self.asymmetric.clone();
        for i in 0..n {
            if !self.table[i][i].is_zero() {
                antisymmetry.push((i, i));
            }
            for j in i + 1..n {
                if self.table[i][j] != self.table[j][i].negated() {
                    antisymmetry.push((i, j));
                }
            }
        }
        antisymmetry.sort();
        antisymmetry.dedup();
        let mut violations = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                let ij = &self.table[i][j];
                for k in j + 1..n {
                    let a = LieElement::basis(i);
                    let b = LieElement::basis(j);
                    let c = LieElement::basis(k);
                    let r1 = self.bracket_unchecked(&a, &self.table[j][k]);
                    let r2 = self.bracket_unchecked(&b, &self.table[k][i]);
                    let r3 = self.bracket_unchecked(&c, ij);
                    let sum = r1.plus(&r2).plus(&r3);
                    if !sum.is_zero() {
                        violations.push(JacobiViolation {
                            triple: (i, j, k),
                            residual: sum,
                        });
                    }
                }
            }
        }
        JacobiReport {
            ok: violations.is_empty() && antisymmetry.is_empty(),
            antisymmetry,
            violations,
            labels: self.labels.clone(),
        }
    }

    /// Errors unless the table is antisymmetric and satisfies Jacobi.
    pub fn require_lie(&self) -> Result<(), AlgebraError> {
        let r = self.check_jacobi();
        if !r.antisymmetry.is_empty() {
            return Err(AlgebraError::NotAntisymmetric(r.antisymmetry.len()));
        }
        if !r.violations.is_empty() {
            return Err(AlgebraError::NotJacobi(r.violations.len()));
        }
        Ok(())
    }

    /// Is generator `i` central?
    pub fn is_central(&self, i: usize) -> bool {
        (0..self.dim()).all(|j| self.table[i][j].is_zero())
    }

    /// Nonzero brackets `(i, j, [X_i, X_j])` with `i < j`.
    pub fn nonzero_brackets(&self) -> impl Iterator<Item = (usize, usize, &LieElement)> {
        let n = self.dim();
        (0..n).flat_map(move |i| {
            (i + 1..n).filter_map(move |j| {
                let e = &self.table[i][j];
                (!e.is_zero()).then_some((i, j, e))
            })
        })
    }

    pub fn to_text(&self) -> String {
        text::write_algebra(self)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JacobiViolation {
    pub triple: (usize, usize, usize),
    pub residual: LieElement,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JacobiReport {
    pub ok: bool,
    pub antisymmetry: Vec<(usize, usize)>,
    pub violations: Vec<JacobiViolation>,
    labels: Vec<String>,
}

impl JacobiReport {
    /// Violating triples as label tuples.
    pub fn violating_labels(&self) -> Vec<(String, String, String)> {
        self.violations
            .iter()
            .map(|v| {
                let (i, j, k) = v.triple;
                (
                    self.labels[i].clone(),
                    self.labels[j].clone(),
                    self.labels[k].clone(),
                )
            })
            .collect()
    }

    pub fn contains(&self, a: &str, b: &str, c: &str) -> bool {
        let mut want = [a, b, c];
        want.sort();
        self.violating_labels().iter().any(|(x, y, z)| {
            let mut got = [x.as_str(), y.as_str(), z.as_str()];
            got.sort();
            got == want
        })
    }
}

impl fmt::Display for JacobiReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ok = {}", self.ok)?;
        writeln!(f, "antisymmetry_failures = {}", self.antisymmetry.len())?;
        for (i, j) in &self.antisymmetry {
            writeln!(f, "  [{}, {}]", self.labels[*i], self.labels[*j])?;
        }
        writeln!(f, "jacobi_violations = {}", self.violations.len())?;
        for v in &self.violations {
            let (i, j, k) = v.triple;
            let residual = DisplayElement {
                e: &v.residual,
                labels: &self.labels,
            };
            writeln!(
                f,
                "  ({}, {}, {}) -> {}",
                self.labels[i], self.labels[j], self.labels[k], residual
            )?;
        }
        Ok(())
    }
}

/// Levi-Civita symbol on `{0, 1, 2}`.
pub(crate) fn levi_civita(i: usize, j: usize, k: usize) -> i64 {
    if i == j || j == k || i == k {
        return 0;
    }
    match (i, j, k) {
        (0, 1, 2) | (1, 2, 0) | (2, 0, 1) => 1,
        _ => -1,
    }
}
