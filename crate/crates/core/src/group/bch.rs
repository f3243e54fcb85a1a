//! Baker–Campbell–Hausdorff series for algebra elements whose coefficients
//! are truncated polynomials.

use std::sync::Arc;

use crate::algebra::AlgebraSpec;
use crate::poly::{rat, Chart, Rational, TruncatedPoly};

/// Algebra element `Σ_i p_i X_i` with polynomial coefficients on one chart.
pub type PolyElement = Vec<TruncatedPoly>;

pub fn zero_element(chart: &Arc<Chart>, degree: u32, dim: usize) -> PolyElement {
    vec![TruncatedPoly::zero(chart, degree); dim]
}

pub fn add(u: &PolyElement, v: &PolyElement) -> PolyElement {
    u.iter().zip(v).map(|(a, b)| a + b).collect()
}

pub fn sub(u: &PolyElement, v: &PolyElement) -> PolyElement {
    u.iter().zip(v).map(|(a, b)| a - b).collect()
}

pub fn scale(u: &PolyElement, k: &Rational) -> PolyElement {
    u.iter().map(|a| a.scale(k)).collect()
}

/// `[u, v]` using the structure constants of `alg`.
pub fn bracket(alg: &AlgebraSpec, u: &PolyElement, v: &PolyElement) -> PolyElement {
    let chart = u[0].chart().clone();
    let degree = u[0].degree().min(v[0].degree());
    let mut out = zero_element(&chart, degree, alg.dim());
    for (i, ui) in u.iter().enumerate() {
        if ui.is_zero() {
            continue;
        }
        for (j, vj) in v.iter().enumerate() {
            if vj.is_zero() {
                continue;
            }
            let s = alg.structure(i, j);
            if s.is_zero() {
                continue;
            }
            let p = ui * vj;
            if p.is_zero() {
                continue;
            }
            for (k, c) in s.terms() {
                out[k] = &out[k] + &p.scale(c);
            }
        }
    }
    out
}

fn bernoulli_even(two_p: usize) -> Rational {
    match two_p {
        2 => rat(1, 6),
        4 => rat(-1, 30),
        6 => rat(1, 42),
        8 => rat(-1, 30),
        10 => rat(5, 66),
        _ => panic!("Bernoulli number B_{two_p} not tabulated"),
    }
}

fn factorial(n: usize) -> i64 {
    (1..=n as i64).product()
}

/// Largest supported `order` for [`bch`].
pub const MAX_ORDER: u32 = 11;

fn compositions(n: usize, parts: usize) -> Vec<Vec<usize>> {
    if parts == 0 {
        return if n == 0 { vec![vec![]] } else { vec![] };
    }
    let mut out = Vec::new();
    for first in 1..=n.saturating_sub(parts - 1) {
        for mut rest in compositions(n - first, parts - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// `log(exp X exp Y)` through Lie words of length `order`, using the
/// recursion
///
/// `(n+1) Z_{n+1} = ½[X − Y, Z_n] + Σ_p B_{2p}/(2p)! Σ_{k_1+…+k_{2p}=n} [Z_{k_1},[…,[Z_{k_{2p}}, X+Y]…]]`
///
/// with `Z_1 = X + Y`. Coefficients are truncated at their own degree, so
/// when `X` and `Y` vanish at the origin the result is exact through that
/// degree as long as `order` is at least the truncation degree.
pub fn bch(alg: &AlgebraSpec, x: &PolyElement, y: &PolyElement, order: u32) -> PolyElement {
    assert!(order <= MAX_ORDER, "BCH order above {MAX_ORDER}");
    let s = add(x, y);
    let d = sub(x, y);
    let mut z: Vec<PolyElement> = vec![Vec::new(), s.clone()];
    for n in 1..order as usize {
        let mut next = scale(&bracket(alg, &d, &z[n]), &rat(1, 2));
        let mut p = 1;
        while 2 * p <= n {
            let coeff = bernoulli_even(2 * p) / Rational::from_integer(factorial(2 * p).into());
            for comp in compositions(n, 2 * p) {
                let mut acc = s.clone();
                for &k in comp.iter().rev() {
                    acc = bracket(alg, &z[k], &acc);
                    if acc.iter().all(TruncatedPoly::is_zero) {
                        break;
                    }
                }
                next = add(&next, &scale(&acc, &coeff));
            }
            p += 1;
        }
        z.push(scale(&next, &rat(1, n as i64 + 1)));
    }
    let mut out = z[1].clone();
    for zn in &z[2..] {
        out = add(&out, zn);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::LieElement;
    use crate::constants::Constants;
    use crate::poly::Role;

    #[test]
    fn compositions_count() {
        assert_eq!(compositions(4, 2).len(), 3);
        assert_eq!(compositions(3, 3), vec![vec![1, 1, 1]]);
        assert!(compositions(2, 3).is_empty());
    }

    /// Free nilpotent algebra of step 3 on two generators: X, Y, [X,Y],
    /// [X,[X,Y]], [Y,[X,Y]]. Compares against the classical expansion
    /// X + Y + ½[X,Y] + (1/12)[X,[X,Y]] − (1/12)[Y,[X,Y]].
    #[test]
    fn third_order_terms() {
        let labels = ["X", "Y", "XY", "XXY", "YXY"].iter().map(|s| s.to_string()).collect();
        let mut alg = AlgebraSpec::new("free3", labels, Constants::default());
        alg.set_bracket(0, 1, LieElement::basis(2));
        alg.set_bracket(0, 2, LieElement::basis(3));
        alg.set_bracket(1, 2, LieElement::basis(4));
        assert!(alg.check_jacobi().ok);
        let chart = Chart::new([("a", Role::Space), ("b", Role::Space)]).unwrap();
        let a = TruncatedPoly::var(&chart, 3, "a").unwrap();
        let b = TruncatedPoly::var(&chart, 3, "b").unwrap();
        let mut x = zero_element(&chart, 3, 5);
        x[0] = a.clone();
        let mut y = zero_element(&chart, 3, 5);
        y[1] = b.clone();
        let z = bch(&alg, &x, &y, 3);
        assert_eq!(z[0], a);
        assert_eq!(z[1], b);
        assert_eq!(z[2], (&a * &b).scale(&rat(1, 2)));
        assert_eq!(z[3], (&(&a * &a) * &b).scale(&rat(1, 12)));
        assert_eq!(z[4], (&(&a * &b) * &b).scale(&rat(-1, 12)));
    }
}
