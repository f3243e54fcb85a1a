use std::collections::BTreeMap;

use num_traits::Zero;
use thiserror::Error;

use super::{AlgebraSpec, LieElement};
use crate::linalg;
use crate::poly::Rational;

/// Antisymmetric bilinear form on an algebra, stored on pairs `i < j`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct AlgebraCocycle {
    pairs: BTreeMap<(usize, usize), Rational>,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CocycleError {
    #[error("2-cocycle condition fails on {} triple(s), first {:?}", .0.len(), .0.first())]
    NotClosed(Vec<(usize, usize, usize)>),
    #[error("generator label {0:?} already present")]
    LabelClash(String),
}

impl AlgebraCocycle {
    pub fn new() -> Self {
        Self::default()
    }

    /// Sets `xi(X_i, X_j) = c` (and `xi(X_j, X_i) = -c`).
    pub fn set(&mut self, i: usize, j: usize, c: Rational) {
        if i == j {
            return;
        }
        let (key, c) = if i < j { ((i, j), c) } else { ((j, i), -c) };
        if c.is_zero() {
            self.pairs.remove(&key);
        } else {
            self.pairs.insert(key, c);
        }
    }

    pub fn get(&self, i: usize, j: usize) -> Rational {
        if i == j {
            return Rational::zero();
        }
        if i < j {
            self.pairs.get(&(i, j)).cloned().unwrap_or_else(Rational::zero)
        } else {
            -self.pairs.get(&(j, i)).cloned().unwrap_or_else(Rational::zero)
        }
    }

    pub fn eval(&self, u: &LieElement, v: &LieElement) -> Rational {
        let mut s = Rational::zero();
        for (i, a) in u.terms() {
            for (j, b) in v.terms() {
                s += a * b * self.get(i, j);
            }
        }
        s
    }

    pub fn pairs(&self) -> impl Iterator<Item = (&(usize, usize), &Rational)> {
        self.pairs.iter()
    }
}

/// Triples where `xi([a,b],c) + xi([b,c],a) + xi([c,a],b)` does not vanish.
pub fn check_cocycle(alg: &AlgebraSpec, xi: &AlgebraCocycle) -> Vec<(usize, usize, usize)> {
    let n = alg.dim();
    let mut bad = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                let s = xi.eval(alg.structure(i, j), &LieElement::basis(k))
                    + xi.eval(alg.structure(j, k), &LieElement::basis(i))
                    + xi.eval(alg.structure(k, i), &LieElement::basis(j));
                if !s.is_zero() {
                    bad.push((i, j, k));
                }
            }
        }
    }
    bad
}

/// Appends a central generator `label` and adds `xi(X_i, X_j) label` to
/// every bracket.
pub fn central_extend(
    alg: &AlgebraSpec,
    xi: &AlgebraCocycle,
    label: &str,
) -> Result<AlgebraSpec, CocycleError> {
    if alg.index(label).is_ok() {
        return Err(CocycleError::LabelClash(label.to_string()));
    }
    let bad = check_cocycle(alg, xi);
    if !bad.is_empty() {
        return Err(CocycleError::NotClosed(bad));
    }
    let mut labels = alg.labels().to_vec();
    labels.push(label.to_string());
    let z = alg.dim();
    let mut out = AlgebraSpec::new(&format!("{}_ext", alg.name), labels, alg.constants.clone());
    for (i, j, e) in alg.nonzero_brackets() {
        out.set_bracket(i, j, e.clone());
    }
    for (&(i, j), c) in xi.pairs() {
        out.add_bracket(i, j, &LieElement::term(z, c.clone()));
    }
    Ok(out)
}

/// Quotient by a central generator: drops generator `i` from the basis and
/// from every bracket.
pub fn forget_generator(alg: &AlgebraSpec, i: usize) -> AlgebraSpec {
    let keep: Vec<usize> = (0..alg.dim()).filter(|&k| k != i).collect();
    let labels = keep.iter().map(|&k| alg.label(k).to_string()).collect();
    let mut out = AlgebraSpec::new(&alg.name, labels, alg.constants.clone());
    let new_index = |k: usize| if k < i { k } else { k - 1 };
    for (a, b, e) in alg.nonzero_brackets() {
        if a == i || b == i {
            continue;
        }
        let mut v = LieElement::zero();
        for (k, c) in e.terms() {
            if k != i {
                v.add_term(new_index(k), c.clone());
            }
        }
        out.set_bracket(new_index(a), new_index(b), v);
    }
    out
}

/// The coboundary `xi(a, b) = lambda([a, b])` of a linear functional.
pub fn coboundary(alg: &AlgebraSpec, lambda: &[Rational]) -> AlgebraCocycle {
    let mut xi = AlgebraCocycle::new();
    for (i, j, e) in alg.nonzero_brackets() {
        let v: Rational = e.terms().map(|(k, c)| c * &lambda[k]).sum();
        xi.set(i, j, v);
    }
    xi
}

/// Solves `lambda([X_a, X_b]) = xi(X_a, X_b)` for all pairs. When a solution
/// exists, the basis change `Y_a = X_a + lambda_a Xi` removes the cocycle
/// from the extended algebra, so the extension is trivial.
pub fn trivializing_shift(alg: &AlgebraSpec, xi: &AlgebraCocycle) -> Option<Vec<Rational>> {
    let n = alg.dim();
    let mut rows = Vec::new();
    let mut rhs = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let mut row = vec![Rational::zero(); n];
            for (k, c) in alg.structure(i, j).terms() {
                row[k] = c.clone();
            }
            let target = xi.get(i, j);
            if row.iter().all(Zero::is_zero) && target.is_zero() {
                continue;
            }
            rows.push(row);
            rhs.push(target);
        }
    }
    if rows.is_empty() {
        return Some(vec![Rational::zero(); n]);
    }
    linalg::solve(&rows, &rhs)
}

#[cfg(test)]
mod tests {
    use super::super::{galilei_extended, galilei_unextended, CENTRAL};
    use super::*;
    use crate::constants::Constants;
    use crate::poly::{int, rat};

    fn bargmann(alg: &AlgebraSpec, k: &Rational) -> AlgebraCocycle {
        let mut xi = AlgebraCocycle::new();
        for i in 1..=3 {
            let v = alg.index(&format!("V{i}")).unwrap();
            let a = alg.index(&format!("a{i}")).unwrap();
            xi.set(v, a, k.clone());
        }
        xi
    }

    #[test]
    fn extending_galilei_reproduces_the_catalog() {
        let k = Constants::default().with("m", int(2)).with("hbar", int(3));
        let base = galilei_unextended(&k);
        let ext = central_extend(&base, &bargmann(&base, &rat(2, 3)), CENTRAL).unwrap();
        let cat = galilei_extended(&k);
        for i in 0..cat.dim() {
            for j in 0..cat.dim() {
                assert_eq!(ext.structure(i, j), cat.structure(i, j));
            }
        }
        assert!(ext.check_jacobi().ok);
        let back = forget_generator(&ext, ext.index(CENTRAL).unwrap());
        assert_eq!(back.labels(), base.labels());
        for i in 0..base.dim() {
            for j in 0..base.dim() {
                assert_eq!(back.structure(i, j), base.structure(i, j));
            }
        }
    }

    #[test]
    fn zero_cocycle_is_a_direct_product() {
        let base = galilei_unextended(&Constants::default());
        let ext = central_extend(&base, &AlgebraCocycle::new(), "Z").unwrap();
        let z = ext.index("Z").unwrap();
        assert!(ext.is_central(z));
        assert!(ext.nonzero_brackets().all(|(_, _, e)| e.coeff(z).is_zero()));
    }

    #[test]
    fn non_closed_cocycle_is_rejected() {
        let base = galilei_unextended(&Constants::default());
        let mut xi = AlgebraCocycle::new();
        xi.set(base.index("V1").unwrap(), base.index("a2").unwrap(), int(1));
        assert!(matches!(
            central_extend(&base, &xi, CENTRAL),
            Err(CocycleError::NotClosed(_))
        ));
    }

    #[test]
    fn coboundaries_are_trivial_but_bargmann_is_not() {
        let base = galilei_unextended(&Constants::default());
        let lambda: Vec<Rational> = (0..base.dim()).map(|i| rat(i as i64 + 1, 7)).collect();
        let xi = coboundary(&base, &lambda);
        assert!(check_cocycle(&base, &xi).is_empty());
        let shift = trivializing_shift(&base, &xi).expect("coboundary is trivial");
        // Y_a = X_a + shift_a Z closes without Z
        let ext = central_extend(&base, &xi, "Z").unwrap();
        let z = ext.index("Z").unwrap();
        for (i, j, e) in ext.nonzero_brackets() {
            let yi = LieElement::basis(i).plus(&LieElement::term(z, shift[i].clone()));
            let yj = LieElement::basis(j).plus(&LieElement::term(z, shift[j].clone()));
            let lhs = ext.bracket(&yi, &yj).unwrap();
            let mut rhs = LieElement::zero();
            for (k, c) in e.without(z).terms() {
                rhs = rhs.plus(&LieElement::basis(k).scaled(c));
                rhs.add_term(z, c * &shift[k]);
            }
            assert_eq!(lhs, rhs);
        }
        assert!(trivializing_shift(&base, &bargmann(&base, &int(1))).is_none());
    }
}
