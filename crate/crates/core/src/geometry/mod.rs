//! Vector fields and differential forms with truncated polynomial
//! coefficients, the invariant fields and quantization form of a group law,
//! characteristic modules, Noether invariants and prequantum lifts.
//!
//! Differentiation lowers the degree through which a coefficient is known,
//! so every operation that differentiates truncates its result one degree
//! lower than its inputs.

use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::poly::{Chart, ChartError, Rational, TruncatedPoly};

mod invariance;
mod invariant;
mod kernel;
pub mod models;
mod peg;

pub use invariance::{check_strict_invariance, potential, strict_lift, Invariance, InvarianceReport};
pub use peg::{peg_dtheta, peg_variable_change, DThetaRow, PegDTheta};
pub use invariant::{left_invariant_fields, noether, right_invariant_fields, theta};
pub use kernel::{
    characteristic_module, hamiltonian_lift, poisson_bracket, series_kernel, series_solve, KernelBasis,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GeometryError {
    #[error(transparent)]
    Chart(#[from] ChartError),
    #[error("chart has no phase coordinate")]
    NoPhase,
    #[error("fields do not reduce to coordinate vectors at the identity")]
    SingularIdentity,
    #[error("rank at the origin ({origin}) is below the generic rank ({generic})")]
    DegenerateOrigin { origin: usize, generic: usize },
    #[error("no lift: residual {0}")]
    NotLiftable(String),
    #[error("kernel candidate fails row {0}")]
    Unverified(usize),
}

fn lower(p: &TruncatedPoly) -> TruncatedPoly {
    p.truncate(p.degree().saturating_sub(1))
}

/// Partial derivative, truncated one degree lower.
pub fn derivative(p: &TruncatedPoly, i: usize) -> TruncatedPoly {
    lower(&p.partial(i))
}

/// Vector field `Σ_k c_k ∂/∂z_k`.
#[derive(Debug, Clone, PartialEq)]
pub struct PolyField {
    pub components: Vec<TruncatedPoly>,
}

impl PolyField {
    pub fn new(components: Vec<TruncatedPoly>) -> Self {
        assert!(!components.is_empty(), "field on an empty chart");
        let degree = components.iter().map(TruncatedPoly::degree).min().unwrap();
        PolyField { components: components.iter().map(|c| c.truncate(degree)).collect() }
    }

    pub fn zero(chart: &Arc<Chart>, degree: u32) -> Self {
        PolyField { components: vec![TruncatedPoly::zero(chart, degree); chart.len()] }
    }

    /// `∂/∂z_i`.
    pub fn basis(chart: &Arc<Chart>, degree: u32, i: usize) -> Self {
        let mut f = Self::zero(chart, degree);
        f.components[i] = TruncatedPoly::one(chart, degree);
        f
    }

    pub fn chart(&self) -> &Arc<Chart> {
        self.components[0].chart()
    }

    pub fn degree(&self) -> u32 {
        self.components[0].degree()
    }

    pub fn component(&self, name: &str) -> Result<&TruncatedPoly, ChartError> {
        Ok(&self.components[self.chart().index(name)?])
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(TruncatedPoly::is_zero)
    }

    pub fn truncate(&self, d: u32) -> Self {
        PolyField { components: self.components.iter().map(|c| c.truncate(d)).collect() }
    }

    /// `X(f) = Σ_k c_k ∂f/∂z_k`.
    pub fn apply(&self, f: &TruncatedPoly) -> TruncatedPoly {
        let mut out = TruncatedPoly::zero(f.chart(), f.degree().saturating_sub(1));
        for (k, c) in self.components.iter().enumerate() {
            if !c.is_zero() && f.depends_on(k) {
                out = &out + &(c * &derivative(f, k));
            }
        }
        out
    }

    /// Lie bracket `[X, Y]^k = X(Y^k) − Y(X^k)`.
    pub fn bracket(&self, other: &Self) -> Self {
        PolyField::new(
            self.components
                .iter()
                .zip(&other.components)
                .map(|(x, y)| &self.apply(y) - &other.apply(x))
                .collect(),
        )
    }

    pub fn add(&self, other: &Self) -> Self {
        PolyField::new(self.components.iter().zip(&other.components).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        PolyField::new(self.components.iter().zip(&other.components).map(|(a, b)| a - b).collect())
    }

    pub fn scale(&self, k: &Rational) -> Self {
        PolyField { components: self.components.iter().map(|c| c.scale(k)).collect() }
    }

    /// Pointwise product with a function.
    pub fn times(&self, f: &TruncatedPoly) -> Self {
        PolyField::new(self.components.iter().map(|c| c * f).collect())
    }

    /// Coefficients at the origin.
    pub fn at_origin(&self) -> Vec<Rational> {
        self.components.iter().map(TruncatedPoly::constant_term).collect()
    }

    /// One `d/dz: coefficient` line per nonzero component.
    pub fn to_text(&self) -> String {
        let chart = self.chart();
        let mut s = String::new();
        for (k, c) in self.components.iter().enumerate() {
            if !c.is_zero() {
                s.push_str(&format!("d/d{}: {}\n", chart.name(k), c.to_text()));
            }
        }
        if s.is_empty() {
            s.push_str("0\n");
        }
        s
    }
}

impl fmt::Display for PolyField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

/// 1-form `Σ_k θ_k dz_k`.
#[derive(Debug, Clone, PartialEq)]
pub struct PolyForm1 {
    pub coefficients: Vec<TruncatedPoly>,
}

/// 2-form `Σ_{i<j} ω_ij dz_i ∧ dz_j`, stored as the full antisymmetric
/// matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct PolyForm2 {
    pub coefficients: Vec<Vec<TruncatedPoly>>,
}

impl PolyForm1 {
    pub fn new(coefficients: Vec<TruncatedPoly>) -> Self {
        assert!(!coefficients.is_empty(), "form on an empty chart");
        let degree = coefficients.iter().map(TruncatedPoly::degree).min().unwrap();
        PolyForm1 { coefficients: coefficients.iter().map(|c| c.truncate(degree)).collect() }
    }

    pub fn zero(chart: &Arc<Chart>, degree: u32) -> Self {
        PolyForm1 { coefficients: vec![TruncatedPoly::zero(chart, degree); chart.len()] }
    }

    /// `df`.
    pub fn exact(f: &TruncatedPoly) -> Self {
        PolyForm1 { coefficients: (0..f.chart().len()).map(|i| derivative(f, i)).collect() }
    }

    /// Builds a form from `(coordinate, coefficient)` pairs.
    pub fn from_pairs(
        chart: &Arc<Chart>,
        degree: u32,
        pairs: &[(&str, TruncatedPoly)],
    ) -> Result<Self, ChartError> {
        let mut f = Self::zero(chart, degree);
        for (name, c) in pairs {
            let i = chart.index(name)?;
            f.coefficients[i] = &f.coefficients[i] + c;
        }
        Ok(PolyForm1::new(f.coefficients))
    }

    pub fn chart(&self) -> &Arc<Chart> {
        self.coefficients[0].chart()
    }

    pub fn degree(&self) -> u32 {
        self.coefficients[0].degree()
    }

    pub fn coefficient(&self, name: &str) -> Result<&TruncatedPoly, ChartError> {
        Ok(&self.coefficients[self.chart().index(name)?])
    }

    pub fn is_zero(&self) -> bool {
        self.coefficients.iter().all(TruncatedPoly::is_zero)
    }

    pub fn truncate(&self, d: u32) -> Self {
        PolyForm1 { coefficients: self.coefficients.iter().map(|c| c.truncate(d)).collect() }
    }

    pub fn add(&self, other: &Self) -> Self {
        PolyForm1::new(self.coefficients.iter().zip(&other.coefficients).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        PolyForm1::new(self.coefficients.iter().zip(&other.coefficients).map(|(a, b)| a - b).collect())
    }

    pub fn scale(&self, k: &Rational) -> Self {
        PolyForm1 { coefficients: self.coefficients.iter().map(|c| c.scale(k)).collect() }
    }

    /// `i_X θ`.
    pub fn contract(&self, x: &PolyField) -> TruncatedPoly {
        let mut out = TruncatedPoly::zero(self.chart(), self.degree().min(x.degree()));
        for (a, b) in self.coefficients.iter().zip(&x.components) {
            if !a.is_zero() && !b.is_zero() {
                out = &out + &(a * b);
            }
        }
        out
    }

    /// `dθ`, with `(dθ)_ij = ∂_i θ_j − ∂_j θ_i`.
    pub fn exterior_derivative(&self) -> PolyForm2 {
        let chart = self.chart().clone();
        let n = chart.len();
        let d = self.degree().saturating_sub(1);
        let mut w = vec![vec![TruncatedPoly::zero(&chart, d); n]; n];
        for i in 0..n {
            for j in i + 1..n {
                let c = &derivative(&self.coefficients[j], i) - &derivative(&self.coefficients[i], j);
                w[j][i] = -&c;
                w[i][j] = c;
            }
        }
        PolyForm2 { coefficients: w }
    }

    /// `L_X θ = i_X dθ + d(i_X θ)`.
    pub fn lie_derivative(&self, x: &PolyField) -> PolyForm1 {
        self.exterior_derivative().contract(x).add(&PolyForm1::exact(&self.contract(x)))
    }

    /// Pullback under the change of variables `z_i = images[i](y)`. The
    /// images should be known one degree beyond the form.
    pub fn pullback(&self, images: &[TruncatedPoly]) -> Result<Self, ChartError> {
        let target = images[0].chart().clone();
        let composed: Vec<TruncatedPoly> =
            self.coefficients.iter().map(|c| c.compose(images)).collect::<Result<_, _>>()?;
        let mut out = vec![TruncatedPoly::zero(&target, self.degree()); target.len()];
        for (c, img) in composed.iter().zip(images) {
            if c.is_zero() {
                continue;
            }
            for (j, o) in out.iter_mut().enumerate() {
                let dj = derivative(img, j);
                if !dj.is_zero() {
                    *o = &*o + &(c * &dj);
                }
            }
        }
        Ok(PolyForm1::new(out))
    }

    /// One `dz: coefficient` line per nonzero coefficient.
    pub fn to_text(&self) -> String {
        let chart = self.chart();
        let mut s = String::new();
        for (k, c) in self.coefficients.iter().enumerate() {
            if !c.is_zero() {
                s.push_str(&format!("d{}: {}\n", chart.name(k), c.to_text()));
            }
        }
        if s.is_empty() {
            s.push_str("0\n");
        }
        s
    }
}

impl fmt::Display for PolyForm1 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

impl PolyForm2 {
    pub fn chart(&self) -> &Arc<Chart> {
        self.coefficients[0][0].chart()
    }

    pub fn degree(&self) -> u32 {
        self.coefficients[0][0].degree()
    }

    pub fn dim(&self) -> usize {
        self.coefficients.len()
    }

    /// Coefficient of `dz_a ∧ dz_b`.
    pub fn coefficient(&self, a: &str, b: &str) -> Result<&TruncatedPoly, ChartError> {
        let chart = self.chart();
        Ok(&self.coefficients[chart.index(a)?][chart.index(b)?])
    }

    pub fn is_zero(&self) -> bool {
        self.coefficients.iter().flatten().all(TruncatedPoly::is_zero)
    }

    /// `(i_X ω)_j = Σ_i X^i ω_ij`.
    pub fn contract(&self, x: &PolyField) -> PolyForm1 {
        let n = self.dim();
        let degree = self.degree().min(x.degree());
        let mut out = vec![TruncatedPoly::zero(self.chart(), degree); n];
        for (i, xi) in x.components.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, o) in out.iter_mut().enumerate() {
                let w = &self.coefficients[i][j];
                if !w.is_zero() {
                    *o = &*o + &(xi * w);
                }
            }
        }
        PolyForm1::new(out)
    }

    /// `ω(X, Y)`.
    pub fn eval(&self, x: &PolyField, y: &PolyField) -> TruncatedPoly {
        self.contract(x).contract(y)
    }

    /// Components `∂_i ω_jk + ∂_j ω_ki + ∂_k ω_ij` of `dω` that do not
    /// vanish, as index triples.
    pub fn exterior_derivative_support(&self) -> Vec<(usize, usize, usize)> {
        let n = self.dim();
        let w = &self.coefficients;
        let mut out = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                for k in j + 1..n {
                    let s = &(&derivative(&w[j][k], i) + &derivative(&w[k][i], j)) + &derivative(&w[i][j], k);
                    if !s.is_zero() {
                        out.push((i, j, k));
                    }
                }
            }
        }
        out
    }

    pub fn is_closed(&self) -> bool {
        self.exterior_derivative_support().is_empty()
    }

    /// Rank of the coefficient matrix at the origin.
    pub fn rank_at_origin(&self) -> usize {
        let m: Vec<Vec<Rational>> = self
            .coefficients
            .iter()
            .map(|row| row.iter().map(TruncatedPoly::constant_term).collect())
            .collect();
        crate::linalg::rank(&m)
    }

    /// One `da^db: coefficient` line per nonzero coefficient with `a`
    /// before `b` in chart order.
    pub fn to_text(&self) -> String {
        let chart = self.chart();
        let n = self.dim();
        let mut s = String::new();
        for i in 0..n {
            for j in i + 1..n {
                let c = &self.coefficients[i][j];
                if !c.is_zero() {
                    s.push_str(&format!("d{}^d{}: {}\n", chart.name(i), chart.name(j), c.to_text()));
                }
            }
        }
        if s.is_empty() {
            s.push_str("0\n");
        }
        s
    }
}

impl fmt::Display for PolyForm2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}
