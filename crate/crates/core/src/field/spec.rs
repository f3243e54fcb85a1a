use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::expr::{Expr, Params, Point, Var};
use super::parse::{parse, ParseError};

/// Keys of the stored `h^{μν}` entries, `μ ≤ ν`.
pub const H_KEYS: [&str; 10] = ["h00", "h01", "h02", "h03", "h11", "h12", "h13", "h22", "h23", "h33"];
pub const A_KEYS: [&str; 4] = ["A0", "A1", "A2", "A3"];

#[derive(Debug, Error)]
pub enum FieldError {
    #[error("reading {path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("field file: {0}")]
    Toml(String),
    #[error("{key}: {error}")]
    Parse { key: String, error: ParseError },
}

#[derive(Debug, Default, Deserialize, Serialize)]
struct RawSpec {
    #[serde(default)]
    name: String,
    #[serde(default)]
    units: String,
    #[serde(flatten)]
    entries: BTreeMap<String, String>,
    #[serde(default)]
    params: BTreeMap<String, f64>,
}

/// Potentials `A^μ` and the symmetric perturbation `h^{μν}` as expressions
/// in `t, x1, x2, x3`, with default parameter values.
#[derive(Debug, Clone, PartialEq)]
pub struct FieldSpec {
    pub name: String,
    pub units: String,
    pub a: [Expr; 4],
    /// In [`H_KEYS`] order.
    pub h: [Expr; 10],
    pub params: Params,
}

fn h_slot(mu: usize, nu: usize) -> usize {
    let (a, b) = (mu.min(nu), mu.max(nu));
    // rows of the upper triangle: 0..4, 4..7, 7..9, 9
    [0, 4, 7, 9][a] + (b - a)
}

impl FieldSpec {
    /// All entries zero.
    pub fn vacuum(name: &str) -> Self {
        FieldSpec {
            name: name.to_string(),
            units: String::new(),
            a: std::array::from_fn(|_| Expr::num(0.0)),
            h: std::array::from_fn(|_| Expr::num(0.0)),
            params: Params::new(),
        }
    }

    pub fn a(&self, mu: usize) -> &Expr {
        &self.a[mu]
    }

    /// `h^{μν} = h^{νμ}`.
    pub fn h(&self, mu: usize, nu: usize) -> &Expr {
        &self.h[h_slot(mu, nu)]
    }

    pub fn set_a(&mut self, mu: usize, e: Expr) {
        self.a[mu] = e;
    }

    pub fn set_h(&mut self, mu: usize, nu: usize, e: Expr) {
        self.h[h_slot(mu, nu)] = e;
    }

    /// Sets an entry by key (`A0`..`A3`, `h00`..`h33`, either index order).
    pub fn set(&mut self, key: &str, text: &str) -> Result<(), FieldError> {
        let e = parse(text).map_err(|error| FieldError::Parse { key: key.to_string(), error })?;
        let digits: Vec<usize> = key.get(1..).unwrap_or("").bytes().map(|b| b.wrapping_sub(b'0') as usize).collect();
        match (key.as_bytes().first(), digits.as_slice()) {
            (Some(b'A'), &[mu]) if mu < 4 => self.set_a(mu, e),
            (Some(b'h'), &[mu, nu]) if mu < 4 && nu < 4 => self.set_h(mu, nu, e),
            _ => return Err(FieldError::Toml(format!("unknown key {key:?}"))),
        }
        Ok(())
    }

    pub fn from_toml_str(text: &str) -> Result<Self, FieldError> {
        let raw: RawSpec = toml::from_str(text).map_err(|e| FieldError::Toml(e.to_string()))?;
        let mut spec = FieldSpec::vacuum(&raw.name);
        spec.units = raw.units;
        spec.params = raw.params;
        for (k, v) in &raw.entries {
            spec.set(k, v)?;
        }
        Ok(spec)
    }

    pub fn load(path: &Path) -> Result<Self, FieldError> {
        let text = std::fs::read_to_string(path)
            .map_err(|source| FieldError::Io { path: path.display().to_string(), source })?;
        FieldSpec::from_toml_str(&text)
    }

    /// TOML text with every nonzero entry; reads back to the same spec.
    pub fn to_toml_string(&self) -> String {
        let mut entries = BTreeMap::new();
        for (k, e) in A_KEYS.iter().zip(&self.a).chain(H_KEYS.iter().zip(&self.h)) {
            if !e.is_zero() {
                entries.insert(k.to_string(), e.to_string());
            }
        }
        let raw = RawSpec { name: self.name.clone(), units: self.units.clone(), entries, params: self.params.clone() };
        toml::to_string(&raw).expect("plain strings and floats")
    }

    /// Parameters used by some entry but bound nowhere.
    pub fn unbound_params(&self, extra: &Params) -> Vec<String> {
        let mut out: Vec<String> = self
            .a
            .iter()
            .chain(&self.h)
            .flat_map(Expr::params)
            .filter(|p| !self.params.contains_key(p) && !extra.contains_key(p))
            .collect();
        out.sort();
        out.dedup();
        out
    }

    /// Spec defaults overridden by `extra`.
    pub fn merged_params(&self, extra: &Params) -> Params {
        let mut p = self.params.clone();
        p.extend(extra.iter().map(|(k, v)| (k.clone(), *v)));
        p
    }

    pub fn is_vacuum(&self) -> bool {
        self.a.iter().chain(&self.h).all(Expr::is_zero)
    }

    pub fn has_gravity(&self) -> bool {
        self.h.iter().any(|e| !e.is_zero())
    }
}

/// `(∂/∂x1, ∂/∂x2, ∂/∂x3) e`.
pub fn grad(e: &Expr) -> [Expr; 3] {
    Var::SPACE.map(|v| e.differentiate(v))
}

/// `∇ ∧ u`.
pub fn curl(u: &[Expr; 3]) -> [Expr; 3] {
    let d = |i: usize, v: Var| u[i].differentiate(v);
    [
        d(2, Var::X2).sub(&d(1, Var::X3)),
        d(0, Var::X3).sub(&d(2, Var::X1)),
        d(1, Var::X1).sub(&d(0, Var::X2)),
    ]
}

/// `∇ · u`.
pub fn div(u: &[Expr; 3]) -> Expr {
    u.iter().zip(Var::SPACE).fold(Expr::num(0.0), |acc, (e, v)| acc.add(&e.differentiate(v)))
}

pub fn dt(u: &[Expr; 3]) -> [Expr; 3] {
    u.clone().map(|e| e.differentiate(Var::T))
}

pub fn dot(u: &[Expr; 3], w: &[Expr; 3]) -> Expr {
    u.iter().zip(w).fold(Expr::num(0.0), |acc, (a, b)| acc.add(&a.mul(b)))
}

pub fn scale(k: &Expr, u: &[Expr; 3]) -> [Expr; 3] {
    u.clone().map(|e| k.mul(&e))
}

/// Derived vector fields entering the equations of motion. Time
/// derivatives are `∂/∂t`; `h` is the row `h^{0i}` and `hh` the block
/// `h^{ij}`.
#[derive(Debug, Clone, PartialEq)]
pub struct DerivedFields {
    pub a_vec: [Expr; 3],
    pub h_vec: [Expr; 3],
    pub curl_a: [Expr; 3],
    pub grad_a0: [Expr; 3],
    pub da_dt: [Expr; 3],
    pub grad_h00: [Expr; 3],
    pub d0_h: [Expr; 3],
    pub curl_h_row: [Expr; 3],
    /// `∇(h·h)`.
    pub grad_h_dot_h: [Expr; 3],
    /// `hh·h`, the block applied to the row.
    pub hh_dot_h: [Expr; 3],
}

pub fn vector_ops(spec: &FieldSpec) -> DerivedFields {
    let a_vec = [1, 2, 3].map(|i| spec.a(i).clone());
    let h_vec = [1, 2, 3].map(|i| spec.h(0, i).clone());
    let hh_dot_h = [1, 2, 3].map(|i| {
        (1..4).fold(Expr::num(0.0), |acc, j| acc.add(&spec.h(i, j).mul(spec.h(0, j))))
    });
    DerivedFields {
        curl_a: curl(&a_vec),
        grad_a0: grad(spec.a(0)),
        da_dt: dt(&a_vec),
        grad_h00: grad(spec.h(0, 0)),
        d0_h: dt(&h_vec),
        curl_h_row: curl(&h_vec),
        grad_h_dot_h: grad(&dot(&h_vec, &h_vec)),
        hh_dot_h,
        a_vec,
        h_vec,
    }
}

/// Evaluates a vector expression.
pub fn eval3(u: &[Expr; 3], point: &Point, params: &Params) -> Result<[f64; 3], super::EvalError> {
    Ok([u[0].eval(point, params)?, u[1].eval(point, params)?, u[2].eval(point, params)?])
}
