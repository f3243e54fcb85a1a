use std::path::PathBuf;

use gaq::field::*;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn corpus() -> Vec<FieldSpec> {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fields");
    let mut paths: Vec<_> = std::fs::read_dir(&dir).unwrap().map(|e| e.unwrap().path()).collect();
    paths.sort();
    paths.iter().map(|p| FieldSpec::load(p).unwrap()).collect()
}

fn no_params() -> Params {
    Params::new()
}

#[test]
fn parse_examples() {
    let e = parse("-B0/2*x2").unwrap();
    let want = Expr::Binary(
        Binary::Mul,
        Expr::Binary(Binary::Div, Expr::Unary(Unary::Neg, Expr::param("B0").into()).into(), Expr::num(2.0).into())
            .into(),
        Expr::var(Var::X2).into(),
    );
    assert_eq!(e, want);
    let e = parse("sin(x1)^2 + cos(x1)^2").unwrap();
    assert_eq!(e.to_string(), "sin(x1)^2+cos(x1)^2");
    let err = parse("x1 +").unwrap_err();
    assert_eq!(err.offset, 4);
    assert_eq!(parse("x1 * (x2").unwrap_err().offset, 8);
    assert_eq!(parse("foo(x1)").unwrap_err().offset, 0);
    assert_eq!(parse("2 $").unwrap_err().offset, 2);
    assert_eq!(parse("-a^2").unwrap(), parse("-(a^2)").unwrap());
    assert_eq!(parse("a^b^c").unwrap(), parse("a^(b^c)").unwrap());
    assert_eq!(parse("1.5e-3").unwrap(), Expr::num(1.5e-3));
}

#[test]
fn evaluate_examples() {
    let p = [0.0, 2.0, 3.0, 0.0];
    assert_eq!(parse("x1*x2").unwrap().eval(&p, &no_params()).unwrap(), 6.0);
    assert_eq!(parse("exp(0)").unwrap().eval(&p, &no_params()).unwrap(), 1.0);
    let params = Params::from([("phi_g".to_string(), -1.0 / 2.0)]);
    assert_eq!(parse("2*phi_g").unwrap().eval(&p, &params).unwrap(), -1.0);
    let err = parse("1/(x1-2)").unwrap().eval(&p, &no_params()).unwrap_err();
    assert_eq!(err.kind, EvalErrorKind::DivisionByZero);
    assert_eq!(err.node, "1/(x1-2)");
    let err = parse("x2 + sqrt(x1 - x2)").unwrap().eval(&p, &no_params()).unwrap_err();
    assert_eq!(err.kind, EvalErrorKind::NegativeSqrt);
    assert_eq!(err.node, "sqrt(x1-x2)");
    let err = parse("B0*x1").unwrap().eval(&p, &no_params()).unwrap_err();
    assert_eq!(err.kind, EvalErrorKind::Unbound("B0".into()));
}

#[test]
fn differentiate_examples() {
    let e = parse("x1^2").unwrap().differentiate(Var::X1);
    assert_eq!(e.to_string(), "2*x1");
    assert!(parse("3.5").unwrap().differentiate(Var::T).is_zero());
    assert!(parse("B0*x1").unwrap().differentiate(Var::T).is_zero());
}

#[test]
fn uniform_field_gauge() {
    let spec = FieldSpec::from_toml_str("A1 = \"-B0/2*x2\"\nA2 = \"B0/2*x1\"\n[params]\nB0 = 1.5\n").unwrap();
    let d = vector_ops(&spec);
    let p = [0.3, 1.0, -2.0, 0.5];
    assert_eq!(eval3(&d.curl_a, &p, &spec.params).unwrap(), [0.0, 0.0, 1.5]);
    assert!(d.grad_h00.iter().chain(&d.d0_h).chain(&d.curl_h_row).chain(&d.grad_h_dot_h).all(Expr::is_zero));
}

#[test]
fn newtonian_potential() {
    let spec = FieldSpec::from_toml_str("h00 = \"2*(-GM/sqrt(x1^2 + x2^2 + x3^2))\"\n[params]\nGM = 1.0\n").unwrap();
    let d = vector_ops(&spec);
    let p = [0.0, 2.0, 0.0, 0.0];
    assert_eq!(spec.h(0, 0).eval(&p, &spec.params).unwrap(), -1.0);
    let g = eval3(&d.grad_h00, &p, &spec.params).unwrap();
    // 2∇(−1/r) = 2 x/r³
    assert!((g[0] - 0.5).abs() < 1e-15 && g[1] == 0.0 && g[2] == 0.0, "{g:?}");
    assert!(d.d0_h.iter().all(Expr::is_zero));
}

#[test]
fn toml_round_trip_and_errors() {
    for spec in corpus() {
        let again = FieldSpec::from_toml_str(&spec.to_toml_string()).unwrap();
        assert_eq!(again, spec);
        assert!(spec.unbound_params(&Params::new()).is_empty(), "{}", spec.name);
    }
    assert!(matches!(FieldSpec::from_toml_str("A7 = \"1\""), Err(FieldError::Toml(_))));
    match FieldSpec::from_toml_str("h12 = \"x1 +\"") {
        Err(FieldError::Parse { key, error }) => assert_eq!((key.as_str(), error.offset), ("h12", 4)),
        other => panic!("{other:?}"),
    }
    let s = FieldSpec::from_toml_str("h21 = \"x1\"").unwrap();
    assert_eq!(s.h(1, 2), s.h(2, 1));
    assert_eq!(s.h(1, 2).to_string(), "x1");
}

fn all_expressions(spec: &FieldSpec) -> Vec<Expr> {
    let d = vector_ops(spec);
    let mut out: Vec<Expr> = spec.a.iter().chain(&spec.h).cloned().collect();
    for v in [&d.hh_dot_h, &d.curl_a, &d.curl_h_row] {
        out.extend(v.iter().cloned());
    }
    out.push(dot(&d.h_vec, &d.h_vec));
    out
}

#[test]
fn derivatives_match_finite_differences() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    let step = 1e-5;
    let mut worst: f64 = 0.0;
    for spec in corpus() {
        for e in all_expressions(&spec) {
            for _ in 0..20 {
                let p: Point = std::array::from_fn(|_| rng.gen_range(-2.0..2.0));
                for v in Var::ALL {
                    let i = Var::ALL.iter().position(|w| *w == v).unwrap();
                    let (mut lo, mut hi) = (p, p);
                    lo[i] -= step;
                    hi[i] += step;
                    let fd = (e.eval(&hi, &spec.params).unwrap() - e.eval(&lo, &spec.params).unwrap()) / (2.0 * step);
                    let exact = e.differentiate(v).eval(&p, &spec.params).unwrap();
                    let err = (exact - fd).abs() / exact.abs().max(1.0);
                    worst = worst.max(err);
                    assert!(err < 1e-6, "{}: d/d{} {e} at {p:?}: {exact} vs {fd}", spec.name, v.name());
                }
            }
        }
    }
    assert!(worst < 1e-6);
}

#[test]
fn curls_are_divergence_free() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for spec in corpus() {
        let d = vector_ops(&spec);
        for u in [&d.curl_a, &d.curl_h_row] {
            let dv = div(u);
            for _ in 0..20 {
                let p: Point = std::array::from_fn(|_| rng.gen_range(-2.0..2.0));
                assert!(dv.eval(&p, &spec.params).unwrap().abs() < 1e-10, "{}", spec.name);
            }
        }
    }
}

fn leaf() -> impl Strategy<Value = Expr> {
    prop_oneof![
        (0u32..1000, 0u32..3).prop_map(|(n, s)| Expr::num(n as f64 / 10f64.powi(s as i32))),
        prop::sample::select(Var::ALL.to_vec()).prop_map(Expr::var),
        prop::sample::select(vec!["a", "B0", "phi_g", "k2"]).prop_map(Expr::param),
    ]
}

fn tree() -> impl Strategy<Value = Expr> {
    leaf().prop_recursive(5, 48, 2, |inner| {
        prop_oneof![
            (prop::sample::select(vec![Unary::Neg, Unary::Sin, Unary::Cos, Unary::Exp, Unary::Sqrt, Unary::Ln]), inner.clone())
                .prop_map(|(op, a)| Expr::Unary(op, a.into())),
            (
                prop::sample::select(vec![Binary::Add, Binary::Sub, Binary::Mul, Binary::Div, Binary::Pow]),
                inner.clone(),
                inner
            )
                .prop_map(|(op, a, b)| Expr::Binary(op, a.into(), b.into())),
        ]
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn print_parse_round_trip(e in tree()) {
        let once = parse(&e.to_string()).unwrap();
        prop_assert_eq!(&once, &e);
        let twice = parse(&once.to_string()).unwrap();
        prop_assert_eq!(twice, once);
    }

    #[test]
    fn derivative_trees_print_and_parse(e in tree()) {
        let d = e.differentiate(Var::X1);
        let back = parse(&d.to_string()).unwrap();
        prop_assert_eq!(parse(&back.to_string()).unwrap(), back);
    }
}
