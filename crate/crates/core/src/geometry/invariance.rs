use std::fmt;

use super::{GeometryError, PolyField, PolyForm1};
use crate::poly::{rat, TruncatedPoly};

/// Potential `g` with `dg = α` and `g(0) = 0`, by the homotopy formula
/// `g(z) = ∫_0^1 α(sz)·z ds`. `None` when `α` is not closed.
pub fn potential(alpha: &PolyForm1) -> Option<TruncatedPoly> {
    if !alpha.exterior_derivative().is_zero() {
        return None;
    }
    let chart = alpha.chart().clone();
    let d = alpha.degree() + 1;
    let mut g = TruncatedPoly::zero(&chart, d);
    for (i, a) in alpha.coefficients.iter().enumerate() {
        for (m, c) in a.terms() {
            let deg: u32 = m.iter().map(|&e| e as u32).sum();
            let mut e = m.clone();
            e[i] += 1;
            let k = c * rat(1, deg as i64 + 1);
            g = &g + &TruncatedPoly::monomial(&chart, d, e, k);
        }
    }
    (PolyForm1::exact(&g) == alpha.truncate(d - 1)).then_some(g)
}

/// Behaviour of a form under one field.
#[derive(Debug, Clone, PartialEq)]
pub enum Invariance {
    /// `L_X θ = 0`.
    Strict,
    /// `L_X θ = dg`.
    Semi(TruncatedPoly),
    /// `L_X θ` is not closed.
    Neither(PolyForm1),
}

#[derive(Debug, Clone, PartialEq)]
pub struct InvarianceReport {
    pub entries: Vec<(String, Invariance)>,
}

impl InvarianceReport {
    pub fn all_strict(&self) -> bool {
        self.entries.iter().all(|(_, i)| *i == Invariance::Strict)
    }

    pub fn get(&self, name: &str) -> Option<&Invariance> {
        self.entries.iter().find(|(n, _)| n == name).map(|(_, i)| i)
    }
}

impl fmt::Display for InvarianceReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (name, inv) in &self.entries {
            match inv {
                Invariance::Strict => writeln!(f, "{name}: strict")?,
                Invariance::Semi(g) => writeln!(f, "{name}: semi-invariant, g = {}", g.to_text())?,
                Invariance::Neither(l) => {
                    writeln!(f, "{name}: not invariant, L_X theta =")?;
                    f.write_str(&l.to_text())?;
                }
            }
        }
        Ok(())
    }
}

/// Classifies `L_X θ` for each named field.
pub fn check_strict_invariance(theta: &PolyForm1, fields: &[(String, PolyField)]) -> InvarianceReport {
    let entries = fields
        .iter()
        .map(|(name, x)| {
            let l = theta.lie_derivative(x);
            let inv = if l.is_zero() {
                Invariance::Strict
            } else {
                match potential(&l) {
                    Some(g) => Invariance::Semi(g),
                    None => Invariance::Neither(l),
                }
            };
            (name.clone(), inv)
        })
        .collect();
    InvarianceReport { entries }
}

/// Adds `−G/ħ ∂/∂φ` to `x`, where `L_X θ = dG`, so that the result leaves
/// `θ` strictly invariant. `θ` must have the constant coefficient `ħ` on
/// `dφ` and coefficients independent of `φ`.
pub fn strict_lift(theta: &PolyForm1, x: &PolyField) -> Result<PolyField, GeometryError> {
    let phase = theta.chart().phase_index().map_err(|_| GeometryError::NoPhase)?;
    let hbar = theta.coefficients[phase].constant_term();
    let l = theta.lie_derivative(x);
    let g = potential(&l).ok_or_else(|| GeometryError::NotLiftable(l.to_text()))?;
    let mut out = x.clone();
    out.components[phase] = &out.components[phase] - &g.truncate(x.degree()).scale(&(hbar.recip()));
    Ok(PolyField::new(out.components))
}
