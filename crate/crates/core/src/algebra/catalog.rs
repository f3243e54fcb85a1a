use thiserror::Error;

use super::{levi_civita, peg, AlgebraError, AlgebraSpec, LieElement, CENTRAL};
use crate::constants::Constants;
use crate::poly::int;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CatalogError {
    #[error("unknown catalog algebra {0:?} (known: galilei_extended, GE_electromagnetic, PEG_electrograv, galilei_1p1_gauged, abelian)")]
    Unknown(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// Canonical catalog name for a user-supplied name or alias.
pub fn canonical_name(name: &str) -> Option<&'static str> {
    Some(match name {
        "galilei_extended" | "galilei" => "galilei_extended",
        "GE_electromagnetic" | "GE" | "ge" => "GE_electromagnetic",
        "PEG_electrograv" | "PEG" | "peg" => "PEG_electrograv",
        "galilei_1p1_gauged" | "galilei_1p1" => "galilei_1p1_gauged",
        "abelian" => "abelian",
        _ => return None,
    })
}

/// Catalog algebra by name. The gauged 1+1 current algebra uses test
/// functions of degree 3; see [`super::CurrentAlgebraSpec`] for other degrees.
pub fn catalog(name: &str, constants: &Constants) -> Result<AlgebraSpec, CatalogError> {
    match canonical_name(name) {
        Some("galilei_extended") => Ok(galilei_extended(constants)),
        Some("GE_electromagnetic") => Ok(ge_electromagnetic(constants)),
        Some("PEG_electrograv") => Ok(peg::peg_electrograv(constants)?),
        Some("galilei_1p1_gauged") => {
            Ok(super::CurrentAlgebraSpec::new(3, constants.clone()).base)
        }
        Some("abelian") => Ok(abelian(2, constants)),
        _ => Err(CatalogError::Unknown(name.to_string())),
    }
}

fn labels(parts: &[&str]) -> Vec<String> {
    parts.iter().map(|s| s.to_string()).collect()
}

fn rotations_act(alg: &mut AlgebraSpec, rot: usize, vectors: &[usize]) {
    // [e_i, w_j] = eps_ijk w_k for each 3-vector block starting at `w`
    for &w in vectors {
        for i in 0..3 {
            for j in 0..3 {
                for k in 0..3 {
                    let s = levi_civita(i, j, k);
                    if s != 0 {
                        alg.set_bracket(rot + i, w + j, LieElement::term(w + k, int(s)));
                    }
                }
            }
        }
    }
}

/// Unextended Galilei algebra: `b, a1..a3, V1..V3, e1..e3`.
pub fn galilei_unextended(constants: &Constants) -> AlgebraSpec {
    let mut alg = AlgebraSpec::new(
        "galilei",
        labels(&["b", "a1", "a2", "a3", "V1", "V2", "V3", "e1", "e2", "e3"]),
        constants.clone(),
    );
    for i in 0..3 {
        alg.set_bracket(4 + i, 0, LieElement::basis(1 + i));
    }
    rotations_act(&mut alg, 7, &[7, 4, 1]);
    alg
}

/// Centrally extended Galilei algebra with `[V_i, a_j] = (m/hbar) delta_ij Xi`.
pub fn galilei_extended(constants: &Constants) -> AlgebraSpec {
    let base = galilei_unextended(constants);
    let mut alg = AlgebraSpec::new("galilei_extended", base.labels().to_vec(), constants.clone());
    alg.labels.push(CENTRAL.to_string());
    let n = alg.dim();
    alg.table = vec![vec![LieElement::zero(); n]; n];
    for (i, j, e) in base.nonzero_brackets() {
        alg.set_bracket(i, j, e.clone());
    }
    let m_hbar = &constants.m / &constants.hbar;
    for i in 0..3 {
        alg.set_bracket(4 + i, 1 + i, LieElement::term(n - 1, m_hbar.clone()));
    }
    alg
}

/// Extended Galilei group gauged by the linear local phases, in the chart
/// order `t, x1..x3, v1..v3, e1..e3, A1..A3, A0, Xi`.
pub fn ge_electromagnetic(constants: &Constants) -> AlgebraSpec {
    let mut alg = AlgebraSpec::new(
        "GE_electromagnetic",
        labels(&[
            "t", "x1", "x2", "x3", "v1", "v2", "v3", "e1", "e2", "e3", "A1", "A2", "A3", "A0", CENTRAL,
        ]),
        constants.clone(),
    );
    let (t, x, v, e, a, a0, xi) = (0, 1, 4, 7, 10, 13, 14);
    let m_hbar = &constants.m / &constants.hbar;
    let q_hbar = &constants.q / &constants.hbar;
    for i in 0..3 {
        alg.set_bracket(t, v + i, LieElement::term(x + i, int(-1)));
        alg.set_bracket(x + i, v + i, LieElement::term(xi, m_hbar.clone()));
        alg.set_bracket(x + i, a + i, LieElement::term(xi, q_hbar.clone()));
        alg.set_bracket(v + i, a + i, LieElement::basis(a0));
    }
    alg.set_bracket(t, a0, LieElement::term(xi, -q_hbar));
    rotations_act(&mut alg, e, &[e, x, v, a]);
    alg
}

/// `n` commuting generators `a1..an` plus a central `Xi`.
pub fn abelian(n: usize, constants: &Constants) -> AlgebraSpec {
    let mut l: Vec<String> = (1..=n).map(|i| format!("a{i}")).collect();
    l.push(CENTRAL.to_string());
    AlgebraSpec::new("abelian", l, constants.clone())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::rat;

    #[test]
    fn galilei_table() {
        let k = Constants::default().with("m", int(3)).with("hbar", int(2));
        let g = galilei_extended(&k);
        assert!(g.check_jacobi().ok);
        let xi = g.index(CENTRAL).unwrap();
        assert_eq!(
            g.bracket_labels("V1", "a1").unwrap(),
            LieElement::term(xi, rat(3, 2))
        );
        assert_eq!(g.bracket_labels("V2", "b").unwrap(), g.gen("a2").unwrap());
        assert_eq!(g.bracket_labels("e1", "e2").unwrap(), g.gen("e3").unwrap());
        assert_eq!(g.bracket_labels("e3", "V1").unwrap(), g.gen("V2").unwrap());
        assert!(g.is_central(xi));
    }

    #[test]
    fn electromagnetic_table() {
        let k = Constants::default().with("q", int(5)).with("hbar", int(2));
        let g = ge_electromagnetic(&k);
        assert_eq!(g.dim(), 15);
        assert!(g.check_jacobi().ok);
        let xi = g.index(CENTRAL).unwrap();
        assert_eq!(g.bracket_labels("t", "A0").unwrap(), LieElement::term(xi, rat(-5, 2)));
        assert_eq!(g.bracket_labels("x2", "A2").unwrap(), LieElement::term(xi, rat(5, 2)));
        assert!(g.bracket_labels("x2", "A1").unwrap().is_zero());
        assert_eq!(g.bracket_labels("v3", "A3").unwrap(), g.gen("A0").unwrap());
        assert_eq!(
            g.bracket_labels("t", "v1").unwrap(),
            g.gen("x1").unwrap().negated()
        );
    }

    #[test]
    fn aliases() {
        let k = Constants::default();
        assert_eq!(catalog("GE", &k).unwrap().name, "GE_electromagnetic");
        assert!(catalog("abelian", &k).unwrap().check_jacobi().ok);
        assert!(matches!(catalog("nope", &k), Err(CatalogError::Unknown(_))));
    }
}
