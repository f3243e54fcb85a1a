use std::time::Instant;

use gaq::algebra::peg::{mixing_terms_absent, resolve};
use gaq::algebra::*;
use gaq::constants::Constants;
use gaq::poly::*;
use proptest::prelude::*;

fn constants(m: i64, q: i64, kappa: i64) -> Constants {
    Constants::default()
        .with("m", rat(m, 3))
        .with("q", rat(q, 5))
        .with("kappa", rat(kappa, 7))
        .with("hbar", rat(3, 2))
        .with_g_mc()
}

#[test]
fn catalog_algebras_are_lie() {
    let k = constants(4, 3, 2);
    for name in ["galilei_extended", "GE_electromagnetic", "PEG_electrograv", "galilei_1p1_gauged", "abelian"] {
        let start = Instant::now();
        let alg = catalog(name, &k).unwrap();
        let report = alg.check_jacobi();
        assert!(report.ok, "{name}: {:?}", report.violating_labels());
        assert!(start.elapsed().as_secs_f64() < 5.0, "{name} too slow");
        if let Some(xi) = alg.central() {
            assert!(alg.is_central(xi));
        }
    }
}

#[test]
fn printed_brackets() {
    let k = Constants::default().with("m", rat(5, 1)).with("q", rat(2, 1)).with("hbar", rat(3, 1));
    let gal = catalog("galilei", &k).unwrap();
    assert_eq!(gal.bracket_labels("V1", "a1").unwrap(), gal.element(&[("Xi", rat(5, 3))]).unwrap());
    let ge = catalog("GE", &k).unwrap();
    assert_eq!(ge.bracket_labels("t", "A0").unwrap(), ge.element(&[("Xi", rat(-2, 3))]).unwrap());
    assert_eq!(ge.bracket_labels("x1", "A1").unwrap(), ge.element(&[("Xi", rat(2, 3))]).unwrap());
    assert_eq!(ge.bracket_labels("x1", "v1").unwrap(), ge.element(&[("Xi", rat(5, 3))]).unwrap());
    let u = ge.element(&[("x1", rat(1, 2)), ("v2", rat(-3, 1))]).unwrap();
    assert!(ge.bracket(&u, &u).unwrap().is_zero());
}

/// Perturbing the mass term of a single pair breaks Jacobi exactly on the
/// triples where a rotation carries that pair into another one.
#[test]
fn perturbed_mass_term_is_detected() {
    let k = Constants::default();
    let mut gal = catalog("galilei", &k).unwrap();
    let (v1, a1, xi) = (gal.index("V1").unwrap(), gal.index("a1").unwrap(), gal.index("Xi").unwrap());
    gal.set_bracket(v1, a1, LieElement::term(xi, rat(2, 1)));
    let report = gal.check_jacobi();
    assert!(!report.ok);
    assert!(report.contains("V1", "a2", "e3"));
    assert!(report.contains("V2", "a1", "e3"));
    assert!(!report.contains("V1", "a1", "e3"));
    for (a, b, c) in report.violating_labels() {
        let names = [a, b, c];
        assert!(names.iter().any(|n| n.starts_with('e')), "{names:?}");
        assert!(names.iter().any(|n| n == "V1" || n == "a1"), "{names:?}");
    }
}

#[test]
fn mixing_switched_off() {
    let k = Constants::default().with("m", rat(2, 1)).with("q", rat(3, 1)).with_g_mc();
    let (alg, report) = resolve(&k).unwrap();
    assert!(report.mixing_absent);
    assert!(mixing_terms_absent(&alg));
    let k = k.with("kappa", rat(1, 4));
    let (alg, report) = resolve(&k).unwrap();
    assert!(!report.mixing_absent);
    assert!(!mixing_terms_absent(&alg));
}

#[test]
fn extension_then_quotient_is_identity() {
    let k = Constants::default().with("m", rat(7, 2));
    let base = galilei_unextended(&k);
    let mut xi = AlgebraCocycle::new();
    for i in 0..3 {
        xi.set(base.index(&format!("V{}", i + 1)).unwrap(), base.index(&format!("a{}", i + 1)).unwrap(), rat(7, 2));
    }
    let ext = central_extend(&base, &xi, "Xi").unwrap();
    assert!(ext.check_jacobi().ok);
    let back = forget_generator(&ext, ext.index("Xi").unwrap());
    let body = |s: String| s.lines().skip(1).collect::<Vec<_>>().join("\n");
    assert_eq!(body(back.to_text()), body(base.to_text()));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn catalog_invariants(m in 1i64..9, q in -6i64..6, kappa in -3i64..3) {
        let k = constants(m, q, kappa);
        for name in ["galilei_extended", "GE_electromagnetic", "PEG_electrograv"] {
            let alg = catalog(name, &k).unwrap();
            prop_assert!(alg.check_jacobi().ok);
            let xi = alg.central().unwrap();
            prop_assert!(alg.is_central(xi));
            for i in 0..alg.dim() {
                for j in 0..alg.dim() {
                    prop_assert_eq!(alg.structure(i, j).clone(), alg.structure(j, i).negated());
                }
            }
        }
    }
}
