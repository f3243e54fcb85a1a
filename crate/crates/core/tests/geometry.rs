use gaq::algebra::catalog;
use gaq::constants::Constants;
use gaq::geometry::models::{
    current_fields, galilei_fields, gauged_theta, newtonian_chart, newtonian_theta, poincare_cartan, printed_extended_fields, reduced_theta,
    time_function,
};
use gaq::geometry::*;
use gaq::group::closed_form_ge;
use gaq::poly::{rat, Rational, TruncatedPoly};
use proptest::prelude::*;

fn constants() -> Constants {
    Constants::default().with("m", rat(3, 1)).with("q", rat(2, 1)).with("hbar", rat(5, 1))
}

fn combination(fields: &[PolyField], coeffs: impl Iterator<Item = (usize, Rational)>, d: u32) -> PolyField {
    let mut out = PolyField::zero(fields[0].chart(), d);
    for (k, c) in coeffs {
        out = out.add(&fields[k].truncate(d).scale(&c));
    }
    out
}

#[test]
fn invariant_fields_realize_the_table() {
    let k = constants();
    let law = closed_form_ge(&k, 4).unwrap();
    let alg = catalog("GE_electromagnetic", &k).unwrap();
    let left = left_invariant_fields(&law).unwrap();
    let right = right_invariant_fields(&law).unwrap();
    let n = left.len();
    assert_eq!(n, alg.dim());
    for a in 0..n {
        for b in 0..n {
            let c = alg.structure(a, b);
            let ll = left[a].bracket(&left[b]);
            let d = ll.degree();
            let expect = combination(&left, c.terms().map(|(i, v)| (i, v.clone())), d);
            assert!(ll.sub(&expect).is_zero(), "[L{a}, L{b}]");
            let rr = right[a].bracket(&right[b]);
            let expect = combination(&right, c.terms().map(|(i, v)| (i, -v.clone())), d);
            assert!(rr.sub(&expect).is_zero(), "[R{a}, R{b}]");
            assert!(left[a].bracket(&right[b]).is_zero(), "[L{a}, R{b}]");
        }
    }
}

#[test]
fn printed_central_brackets() {
    let k = constants();
    let law = closed_form_ge(&k, 3).unwrap();
    let chart = law.chart().clone();
    let left = left_invariant_fields(&law).unwrap();
    let f = |n: &str| &left[chart.index(n).unwrap()];
    let xi = f("phi");
    let q_hbar = &k.q / &k.hbar;
    let br = f("t").bracket(f("A0"));
    assert!(br.sub(&xi.truncate(br.degree()).scale(&-q_hbar.clone())).is_zero(), "{br}");
    for i in 1..=3 {
        for j in 1..=3 {
            let br = f(&format!("x{i}")).bracket(f(&format!("A{j}")));
            let c = if i == j { q_hbar.clone() } else { rat(0, 1) };
            assert!(br.sub(&xi.truncate(br.degree()).scale(&c)).is_zero(), "{br}");
        }
    }
}

#[test]
fn theta_and_noether_invariants() {
    let k = constants();
    let law = closed_form_ge(&k, 3).unwrap();
    let th = theta(&law, &k.hbar).unwrap();
    let right = right_invariant_fields(&law).unwrap();
    for x in &right {
        assert!(th.lie_derivative(x).is_zero());
    }
    let left = left_invariant_fields(&law).unwrap();
    let phase = law.chart().phase_index().unwrap();
    for (a, x) in left.iter().enumerate() {
        let c = th.contract(x);
        let want = if a == phase { k.hbar.clone() } else { rat(0, 1) };
        assert_eq!(c, TruncatedPoly::constant(c.chart(), c.degree(), want));
    }
    let inv: Vec<String> = noether(&th, &right).iter().map(TruncatedPoly::to_text).collect();
    let at = |n: &str| inv[law.chart().index(n).unwrap()].as_str();
    assert_eq!(at("t"), "-2*A0 - 3/2*v3^2 - 3/2*v2^2 - 3/2*v1^2");
    assert_eq!(at("x1"), "2*A1 + 3*v1");
    assert_eq!(at("v2"), "-3*x2 + 2*t*A2 + 3*t*v2");
    assert_eq!(at("A3"), "-2*x3");
    assert_eq!(at("A0"), "2*t");
}

#[test]
fn characteristic_ranks() {
    let k = constants();
    let th = theta(&closed_form_ge(&k, 3).unwrap(), &k.hbar).unwrap();
    let cm = characteristic_module(&th).unwrap();
    assert_eq!(cm.rank, 6);
    assert_eq!(cm.free, ["e1", "e2", "e3", "A1", "A2", "A3"]);
    assert_eq!(cm.quotient_dimension(15, true), 8);
    let a1 = &cm.generators[3];
    assert_eq!(a1.to_text(), "d/dv1: -2/3\nd/dA1: 1\nd/dA0: v1\n");

    let k0 = k.with("q", rat(0, 1));
    let th0 = theta(&closed_form_ge(&k0, 4).unwrap(), &k0.hbar).unwrap();
    let cm0 = characteristic_module(&th0).unwrap();
    assert_eq!(cm0.rank, 8);
    assert_eq!(cm0.free, ["t", "e1", "e2", "e3", "A1", "A2", "A3", "A0"]);
    assert_eq!(cm0.quotient_dimension(15, true), 6);
    assert_eq!(cm0.generators[0].to_text(), "d/dt: 1\nd/dx1: v1\nd/dx2: v2\nd/dx3: v3\nd/dphi: -3/10*v3^2 - 3/10*v2^2 - 3/10*v1^2\n");
}

#[test]
fn poincare_cartan_kernel_is_free_motion() {
    let k = constants();
    let th = poincare_cartan(&k, 4);
    let cm = characteristic_module(&th).unwrap();
    assert_eq!(cm.rank, 1);
    assert_eq!(cm.generators[0].to_text(), "d/dt: 1\nd/dx1: 1/3*p1\nd/dx2: 1/3*p2\nd/dx3: 1/3*p3\n");
}

#[test]
fn semi_invariance_table() {
    let k = constants();
    let report = check_strict_invariance(&poincare_cartan(&k, 4), &galilei_fields(&k, 4));
    for (name, inv) in &report.entries {
        match name.chars().next().unwrap() {
            'V' => {
                let i = &name[1..];
                match inv {
                    Invariance::Semi(g) => assert_eq!(g.to_text(), format!("3*x{i}")),
                    other => panic!("{name}: {other:?}"),
                }
            }
            _ => assert_eq!(*inv, Invariance::Strict, "{name}"),
        }
    }
}

#[test]
fn gauged_currents() {
    let k = constants();
    let th = gauged_theta(&k, 5);
    let f = time_function(&[rat(1, 2), rat(-2, 1), rat(1, 3)], 5);
    let bare = check_strict_invariance(&th, &current_fields(&k, &f));
    assert_eq!(bare.get("f*Xb"), Some(&Invariance::Strict));
    assert_eq!(bare.get("f*Xa"), Some(&Invariance::Strict));
    assert!(matches!(bare.get("XV"), Some(Invariance::Semi(_))));
    assert!(matches!(bare.get("f*Xh"), Some(Invariance::Semi(_))));

    let printed = check_strict_invariance(&th, &printed_extended_fields(&k, &f));
    assert!(!printed.all_strict(), "{printed}");
    match printed.get("XV") {
        Some(Invariance::Semi(g)) => assert_eq!(g.to_text(), "t*p"),
        other => panic!("{other:?}"),
    }

    let lifted: Vec<(String, PolyField)> =
        current_fields(&k, &f).into_iter().map(|(n, x)| (n, strict_lift(&th, &x).unwrap())).collect();
    assert!(check_strict_invariance(&th, &lifted).all_strict());
    let xv = &lifted[2].1;
    assert_eq!(xv.component("phi").unwrap().to_text(), "-3/5*x");
}

#[test]
fn newtonian_equations_of_motion() {
    let k = constants();
    let chart = newtonian_chart();
    let v = |n: &str| TruncatedPoly::var(&chart, 4, n).unwrap();
    // h = x^2/2 - t x
    let h = &(&v("x") * &v("x")).scale(&rat(1, 2)) - &(&v("t") * &v("x"));
    let cm = characteristic_module(&newtonian_theta(&k, &h)).unwrap();
    assert_eq!(cm.rank, 1);
    assert_eq!(cm.free, ["t"]);
    let x = cm.generators[0].truncate(2);
    assert_eq!(x.component("x").unwrap(), &v("p").scale(&rat(1, 3)).truncate(2));
    // dp/dt = +∂h/∂x, ħ dφ/dt = −(p²/2m + h)
    assert_eq!(x.component("p").unwrap(), &(&v("x") - &v("t")).truncate(2));
    let kinetic = (&v("p") * &v("p")).scale(&rat(1, 6));
    assert_eq!(x.component("phi").unwrap(), &(&kinetic + &h).scale(&rat(-1, 5)).truncate(2));
}

#[test]
fn lifts_on_the_solution_manifold() {
    let k = constants();
    let th = reduced_theta(&k, 4);
    let chart = th.chart().clone();
    let v = |n: &str| TruncatedPoly::var(&chart, 4, n).unwrap();
    let one = TruncatedPoly::one(&chart, 4);
    let xi = PolyField::basis(&chart, 4, 2);
    assert_eq!(hamiltonian_lift(&one.scale(&k.hbar), &th).unwrap(), xi.truncate(3));
    let xk = hamiltonian_lift(&v("K"), &th).unwrap();
    let xp = hamiltonian_lift(&v("P"), &th).unwrap();
    assert_eq!(xk.to_text(), "d/dP: -1\nd/dphi: 1/5*K\n");
    assert_eq!(xp.to_text(), "d/dK: 1\n");
    assert_eq!(poisson_bracket(&v("K"), &v("P"), &th).unwrap(), one.truncate(3));
    let br = xk.bracket(&xp);
    let lift1 = hamiltonian_lift(&one, &th).unwrap();
    assert_eq!(br, lift1.truncate(br.degree()).scale(&rat(-1, 1)));
}

fn small_poly() -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(-4i64..=4, 10)
}

fn quadratic(c: &[i64], k: &Constants) -> TruncatedPoly {
    let th = reduced_theta(k, 4);
    let chart = th.chart().clone();
    let v = |n: &str| TruncatedPoly::var(&chart, 4, n).unwrap();
    let terms = [
        TruncatedPoly::one(&chart, 4),
        v("K"),
        v("P"),
        &v("K") * &v("K"),
        &v("K") * &v("P"),
        &v("P") * &v("P"),
        &(&v("K") * &v("K")) * &v("P"),
        v("P").pow(3),
        v("K").pow(3),
        &v("K") * &v("P").pow(2),
    ];
    let mut f = TruncatedPoly::zero(&chart, 4);
    for (t, &ci) in terms.iter().zip(c) {
        f = &f + &t.scale(&rat(ci, 1));
    }
    f
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn d_squared_vanishes(c in small_poly()) {
        let k = constants();
        let f = quadratic(&c, &k);
        prop_assert!(PolyForm1::exact(&f).exterior_derivative().is_zero());
        let th = reduced_theta(&k, 4).add(&PolyForm1::exact(&f));
        prop_assert!(th.exterior_derivative().is_closed());
    }

    #[test]
    fn lift_is_linear(a in small_poly(), b in small_poly(), s in -5i64..=5) {
        let k = constants();
        let th = reduced_theta(&k, 4);
        let (f, g) = (quadratic(&a, &k), quadratic(&b, &k));
        let lhs = hamiltonian_lift(&(&f + &g.scale(&rat(s, 1))), &th).unwrap();
        let rhs = hamiltonian_lift(&f, &th).unwrap().add(&hamiltonian_lift(&g, &th).unwrap().scale(&rat(s, 1)));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn lifts_preserve_theta(a in small_poly()) {
        let k = constants();
        let th = reduced_theta(&k, 4);
        let x = hamiltonian_lift(&quadratic(&a, &k), &th).unwrap();
        prop_assert!(th.lie_derivative(&x).is_zero());
    }

    #[test]
    fn potential_inverts_d(c in small_poly()) {
        let k = constants();
        let mut f = quadratic(&c, &k);
        f = &f - &TruncatedPoly::constant(f.chart(), f.degree(), f.constant_term());
        prop_assert_eq!(potential(&PolyForm1::exact(&f)), Some(f.truncate(4)));
    }
}

#[test]
fn left_time_field() {
    let k = constants();
    let law = closed_form_ge(&k, 3).unwrap();
    let left = left_invariant_fields(&law).unwrap();
    let xt = &left[law.chart().index("t").unwrap()];
    // ∂_t + v·∂_x − (1/ħ)[½mv² + q(v·A − A0)]Ξ
    assert_eq!(xt.component("x2").unwrap().to_text(), "v2");
    assert_eq!(
        xt.component("phi").unwrap().to_text(),
        "2/5*A0 - 2/5*v3*A3 - 3/10*v3^2 - 2/5*v2*A2 - 3/10*v2^2 - 2/5*v1*A1 - 3/10*v1^2"
    );
}

#[test]
fn noether_invariants_are_constant_on_the_kernel() {
    let k = constants();
    let law = closed_form_ge(&k, 4).unwrap();
    let th = theta(&law, &k.hbar).unwrap();
    let right = right_invariant_fields(&law).unwrap();
    let cm = characteristic_module(&th).unwrap();
    for f in noether(&th, &right) {
        for g in &cm.generators {
            assert!(g.apply(&f).is_zero(), "{}", f.to_text());
        }
    }
}

#[test]
fn lift_of_zero_is_zero() {
    let k = constants();
    let th = reduced_theta(&k, 4);
    let zero = TruncatedPoly::zero(th.chart(), 4);
    assert!(hamiltonian_lift(&zero, &th).unwrap().is_zero());
}

#[test]
fn electrograv_dtheta_rows() {
    let k = Constants::default()
        .with("m", rat(3, 2))
        .with("q", rat(2, 5))
        .with("kappa", rat(1, 3))
        .with("c", rat(2, 1))
        .with_g_mc();
    let r = peg_dtheta(&k).unwrap();
    assert!(r.constants_match(), "{r}");
    assert!(r.dtheta.is_closed());
    for row in &r.rows {
        if row.a.starts_with('A') {
            assert!(row.matches(), "{r}");
        }
    }
    let e01 = r.rows.iter().find(|row| row.a == "e01" && row.b == "x0").unwrap();
    assert_eq!(e01.computed.coeff_of(&[("e01", 1)]).unwrap(), rat(-49, 15));
    assert_eq!(e01.computed.coeff_of(&[("h01", 1)]).unwrap(), rat(-49, 15));
}
