use num_traits::One;

use super::{derivative, GeometryError, PolyField, PolyForm1};
use crate::group::GroupLaw;
use crate::poly::{Rational, TruncatedPoly};

/// Fields `∂/∂(one argument) law(g′, g)` at the identity of that argument,
/// written on the single chart. `left` selects differentiation in the right
/// argument, which gives the left-invariant fields.
fn invariant_fields(law: &GroupLaw, left: bool) -> Result<Vec<PolyField>, GeometryError> {
    let chart = law.chart().clone();
    let n = chart.len();
    let d = law.order().saturating_sub(1);
    let images: Vec<TruncatedPoly> = (0..2 * n)
        .map(|i| {
            let keep = if left { i < n } else { i >= n };
            if keep {
                TruncatedPoly::coordinate(&chart, d, i % n)
            } else {
                TruncatedPoly::zero(&chart, d)
            }
        })
        .collect();
    let mut out = Vec::with_capacity(n);
    for a in 0..n {
        let var = if left { n + a } else { a };
        let comps = law
            .components()
            .iter()
            .map(|c| derivative(c, var).compose(&images))
            .collect::<Result<Vec<_>, _>>()?;
        out.push(PolyField::new(comps));
    }
    Ok(out)
}

/// Left-invariant fields `X^L_a(g) = ∂/∂h^a law(g, h)|_{h=e}`, one per chart
/// coordinate, exact through degree `order − 1`.
pub fn left_invariant_fields(law: &GroupLaw) -> Result<Vec<PolyField>, GeometryError> {
    invariant_fields(law, true)
}

/// Right-invariant fields `X^R_a(g) = ∂/∂h^a law(h, g)|_{h=e}`.
pub fn right_invariant_fields(law: &GroupLaw) -> Result<Vec<PolyField>, GeometryError> {
    invariant_fields(law, false)
}

/// Quantization form: `ħ` times the left-invariant 1-form dual to the phase
/// generator, so that `Θ(Ξ) = ħ` and `Θ(X^L_a) = 0` for the other generators.
pub fn theta(law: &GroupLaw, hbar: &Rational) -> Result<PolyForm1, GeometryError> {
    let chart = law.chart().clone();
    let phase = chart.phase_index().map_err(|_| GeometryError::NoPhase)?;
    let fields = left_invariant_fields(law)?;
    let n = chart.len();
    let d = fields[0].degree();
    // L = I + N with L[k][a] the k-th component of X^L_a
    let mut nmat = vec![vec![TruncatedPoly::zero(&chart, d); n]; n];
    for (a, f) in fields.iter().enumerate() {
        for (k, c) in f.components.iter().enumerate() {
            let expect = if k == a { Rational::one() } else { Rational::from_integer(0.into()) };
            if c.constant_term() != expect {
                return Err(GeometryError::SingularIdentity);
            }
            nmat[k][a] = c - &TruncatedPoly::constant(&chart, d, expect);
        }
    }
    // phase row of L⁻¹ = Σ_j e_φ (−N)^j
    let mut row = vec![TruncatedPoly::zero(&chart, d); n];
    row[phase] = TruncatedPoly::one(&chart, d);
    let mut acc = row.clone();
    for _ in 0..d {
        let mut next = vec![TruncatedPoly::zero(&chart, d); n];
        for (k, rk) in row.iter().enumerate() {
            if rk.is_zero() {
                continue;
            }
            for (c, nc) in next.iter_mut().enumerate() {
                let e = &nmat[k][c];
                if !e.is_zero() {
                    *nc = &*nc - &(rk * e);
                }
            }
        }
        if next.iter().all(TruncatedPoly::is_zero) {
            break;
        }
        acc = acc.iter().zip(&next).map(|(a, b)| a + b).collect();
        row = next;
    }
    Ok(PolyForm1::new(acc).scale(hbar))
}

/// Noether invariants `i_{X^R} θ`, one per field.
pub fn noether(theta: &PolyForm1, right_fields: &[PolyField]) -> Vec<TruncatedPoly> {
    right_fields.iter().map(|x| theta.contract(x)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constants::Constants;
    use crate::group::closed_form_ge;
    use crate::poly::rat;

    #[test]
    fn electromagnetic_theta() {
        let k = Constants::default().with("m", rat(3, 1)).with("q", rat(2, 1)).with("hbar", rat(5, 1));
        let law = closed_form_ge(&k, 3).unwrap();
        let th = theta(&law, &k.hbar).unwrap();
        let text = th.to_text();
        assert!(text.contains("dt: -2*A0 - 3/2*v3^2 - 3/2*v2^2 - 3/2*v1^2\n"), "{text}");
        assert!(text.contains("dx1: 2*A1 + 3*v1\n"), "{text}");
        assert!(text.contains("dphi: 5\n"), "{text}");
        assert_eq!(text.lines().count(), 5, "{text}");
    }
}
