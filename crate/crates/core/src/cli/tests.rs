use proptest::prelude::*;

use super::*;
use crate::operators::{equal_up_to_degree, BracketKind, OPERATOR_NAMES};

fn run_args(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("dunkl-sym").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

#[test]
fn parses_bracket_relation_with_four_summands() {
    let e = parse("comm(O12,O13) - O23 - 2*O123*O1 - E").unwrap();
    assert_eq!(e.summands(), 4);
    let Expr::Sum(first, rest) = &e else {
        panic!("not a sum")
    };
    assert!(matches!(**first, Expr::Call(BracketKind::Commutator, _, _)));
    assert!(rest.iter().all(|(minus, _)| *minus));
    assert!(matches!(rest[1].1, Expr::Product(ref v) if v.len() == 3));
    assert_eq!(e.names(), ["O12", "O13", "O23", "O123", "O1", "E"]);
}

#[test]
fn parses_ladder_operator_definition() {
    let e = parse("acomm(O0, Op) * 1/2").unwrap();
    let Expr::Product(v) = &e else { panic!("not a product") };
    assert!(matches!(v[0], Expr::Call(BracketKind::Anticommutator, _, _)));
    assert_eq!(v[1], Expr::Scalar(Scalar::Rational(Rational::new(1, 2))));
}

#[test]
fn unbalanced_bracket_reports_end_position() {
    let err = parse("comm(O12").unwrap_err();
    assert_eq!(err.position, 9);
    assert!(err.expected.iter().any(|t| t == "','"), "{err}");
    assert_eq!(err.found, "end of input");
}

#[test]
fn parse_errors_carry_positions() {
    assert_eq!(parse("O1 + Q7").unwrap_err().position, 6);
    assert_eq!(parse("comm(O1)").unwrap_err().position, 8);
    assert_eq!(parse("comm(O1, O2, O3)").unwrap_err().position, 12);
    assert_eq!(parse("foo(O1, O2)").unwrap_err().position, 1);
    assert_eq!(parse("O1 O2").unwrap_err().position, 4);
    assert_eq!(parse("1/0").unwrap_err().position, 3);
    assert_eq!(parse("O1 # O2").unwrap_err().position, 4);
    assert_eq!(parse("").unwrap_err().position, 1);
}

#[test]
fn whitespace_is_insignificant() {
    assert_eq!(
        parse(" comm ( O1 ,O2 )*  sqrt3 ").unwrap(),
        parse("comm(O1,O2)*sqrt3").unwrap()
    );
}

#[test]
fn built_expression_matches_catalogue_ladder_operator() {
    let cat = Catalogue::symbolic(&RootSystemPreset::g2(), Signature::MINUS);
    let e = parse("acomm(O0, Op) * 1/2").unwrap();
    let op = build_operator(&e, &cat, None).unwrap();
    assert!(equal_up_to_degree(&op, &cat.k_plus(), 2).verdict.is_pass());
    let e = parse("-(kappa1 + i*sqrt2) * X").unwrap();
    let op = build_operator(&e, &cat, None).unwrap();
    let c = -(&ParamScalar::kappa1() + &ParamScalar::constant(RadicalComplex::i() * RadicalComplex::sqrt2()));
    assert!(equal_up_to_degree(&op, &cat.dual_x().scale(c), 2).verdict.is_pass());
}

#[test]
fn kappa_literals_follow_instantiation() {
    let cat = Catalogue::new(
        &RootSystemPreset::a2(),
        Signature::PLUS,
        Weights::rational(Rational::new(1, 2), Rational::from(3)),
    );
    let k = (Rational::new(1, 2), Rational::from(3));
    let op = build_operator(&parse("kappa1*kappa2").unwrap(), &cat, Some(&k)).unwrap();
    let one = crate::operators::SpinorPolynomial::basis(Monomial::ONE, Blade::SCALAR);
    assert_eq!(op.apply(&one).unwrap().to_string(), "3/2");
}

#[test]
fn g2_only_names_are_scope_errors_for_a2() {
    let cat = Catalogue::symbolic(&RootSystemPreset::a2(), Signature::PLUS);
    let err = build_operator(&parse("comm(O0, Kp)").unwrap(), &cat, None).unwrap_err();
    assert!(matches!(err, CliError::Relation(RelationError::ScopeMismatch { .. })));
    assert_eq!(err.exit_code(), 2);
    let err = build_operator(&parse("tsig5").unwrap(), &cat, None).unwrap_err();
    assert_eq!(err.exit_code(), 2);
}

#[test]
fn spinor_literals() {
    for s in Signature::BOTH {
        let v = parse_spinor("e1*e1", s).unwrap();
        assert_eq!(v.to_string(), if s == Signature::PLUS { "1" } else { "-1" });
        assert_eq!(parse_spinor("e2 e1", s).unwrap().to_string(), "-e12");
        assert_eq!(
            parse_spinor("(x1 + x2)^2", s).unwrap(),
            parse_spinor("x1^2 + 2 x1 x2 + x2^2", s).unwrap()
        );
        assert_eq!(parse_spinor("-x3^2*e13", s).unwrap().to_string(), "-x3^2*e13");
    }
    assert!(parse_spinor("x4", Signature::PLUS).is_err());
    assert_eq!(parse_spinor("x1^", Signature::PLUS).unwrap_err().position, 4);
}

#[test]
fn spinor_display_reparses() {
    let cat = Catalogue::symbolic(&RootSystemPreset::g2(), Signature::MINUS);
    let v = parse_spinor("x1^2*x2*e12 - 1/3*x3 + kappa1*e123 + i*sqrt3*x2*e2", Signature::MINUS).unwrap();
    for op in [cat.o_zero(), cat.three_index(), cat.two_index(1, 3)] {
        let r = op.apply(&v).unwrap();
        assert_eq!(parse_spinor(&r.to_string(), Signature::MINUS).unwrap(), r);
    }
}

#[test]
fn apply_golden() {
    let (code, out, _) = run_args(&["apply", "--group", "g2", "--expr", "D2", "--input", "x2"]);
    assert_eq!(code, 0);
    assert_eq!(out.trim(), "1 + 2*kappa1 + 2*kappa2");
    let (code, out, _) = run_args(&[
        "apply", "--expr", "D1", "--input", "x2", "--kappa1", "1/2", "--kappa2", "-1",
    ]);
    assert_eq!(code, 0);
    assert_eq!(out.trim(), "1/2");
}

#[test]
fn exit_codes() {
    let (code, _, err) = run_args(&["apply", "--expr", "comm(O12", "--input", "x2"]);
    assert_eq!(code, 2);
    assert!(err.contains("position 9"), "{err}");
    assert_eq!(run_args(&["verify", "--group", "a2", "--relation", "R11"]).0, 2);
    assert_eq!(run_args(&["verify", "--relation", "R99"]).0, 2);
    assert_eq!(run_args(&["verify", "--format", "csv", "--expr", "O1"]).0, 2);
    assert_eq!(
        run_args(&["apply", "--expr", "D1", "--input", "x1", "--kappa1", "1"]).0,
        2
    );
    assert_eq!(run_args(&["verify", "--epsilon", "2"]).0, 2);
    assert_eq!(run_args(&["matrix", "--group", "a2", "--expr", "Km"]).0, 2);
    assert_eq!(run_args(&["bogus"]).0, 2);
    let (code, out, _) = run_args(&["--help"]);
    assert_eq!(code, 0);
    assert!(out.contains("groupinfo"));
}

#[test]
fn verify_expression_pass_and_fail() {
    let args = [
        "verify",
        "--group",
        "g2",
        "--epsilon",
        "-1",
        "--expr",
        "O1 + O2 + O3",
        "--max-degree",
        "2",
    ];
    let (code, out, _) = run_args(&args);
    assert_eq!(code, 0, "{out}");
    assert!(out.starts_with("PASS expr [g2 eps=-1]"), "{out}");
    let (code, out, _) = run_args(&["verify", "--expr", "O123", "--max-degree", "1"]);
    assert_eq!(code, 1);
    assert!(out.contains("witness: monomial 1, blade 1"), "{out}");
    assert!(out.contains("summary: 0 passed, 2 failed"), "{out}");
}

#[test]
fn verify_relation_subset_json() {
    let (code, out, _) = run_args(&[
        "verify",
        "--relation",
        "R9",
        "--max-degree",
        "1",
        "--epsilon",
        "+1",
        "--format",
        "json",
    ]);
    assert_eq!(code, 0);
    let lines: Vec<serde_json::Value> = out.lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert_eq!(lines.len(), 3);
    assert!(lines.iter().all(|l| l["verdict"] == "pass" && l["basis_size"] == 32));
}

#[test]
fn sampled_verification_is_deterministic() {
    let args = [
        "verify",
        "--relation",
        "R6",
        "--max-degree",
        "3",
        "--epsilon",
        "-1",
        "--sample",
        "20",
        "--seed",
        "7",
        "--jobs",
        "1",
        "--format",
        "json",
    ];
    let (c1, o1, _) = run_args(&args);
    let (c2, o2, _) = run_args(&args);
    assert_eq!((c1, c2), (0, 0));
    assert_eq!(o1, o2);
    let first: serde_json::Value = serde_json::from_str(o1.lines().next().unwrap()).unwrap();
    assert_eq!(first["basis_size"], 20);
    assert!(first.get("millis").is_none());
    let (_, timed, _) = run_args(&[
        "verify",
        "--relation",
        "R6",
        "--max-degree",
        "1",
        "--epsilon",
        "+1",
        "--timing",
    ]);
    assert!(timed.contains(" ms)"), "{timed}");
    assert_eq!(sample_basis(3, Some(20), 7), sample_basis(3, Some(20), 7));
    assert_ne!(sample_basis(3, Some(20), 7), sample_basis(3, Some(20), 8));
}

#[test]
fn matrix_outputs() {
    let (code, out, _) = run_args(&[
        "matrix",
        "--expr",
        "O0",
        "--degree",
        "0",
        "--kappa1",
        "0",
        "--kappa2",
        "0",
        "--epsilon",
        "+1",
        "--charpoly",
    ]);
    assert_eq!(code, 0);
    assert!(out.lines().any(|l| l == "charpoly: (l^2 - 1/4)^4"), "{out}");
    let (code, out, _) = run_args(&["matrix", "--expr", "e12", "--format", "csv"]);
    assert_eq!(code, 0);
    assert_eq!(out.lines().count(), 8);
    let (code, _, err) = run_args(&["matrix", "--expr", "D", "--degree", "1"]);
    assert_eq!(code, 1);
    assert!(err.contains("degree"), "{err}");
    let (code, out, _) = run_args(&["matrix", "--expr", "O123", "--format", "json"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(out.trim()).unwrap();
    assert_eq!(v["dimension"], 8);
}

#[test]
fn groupinfo_reports_covers() {
    let (code, out, _) = run_args(&["groupinfo", "--group", "g2", "--epsilon", "-1"]);
    assert_eq!(code, 0);
    assert!(out.contains("order: 12\n"), "{out}");
    assert!(
        out.contains("double cover (eps=-1): order 24, dicyclic, 1 involution(s)"),
        "{out}"
    );
    assert!(out.contains("tsig^2 = eps for every root: yes"), "{out}");
    assert!(out.contains("^6 = -1"), "{out}");
    let (_, out, _) = run_args(&["groupinfo", "--group", "a2", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(out.trim()).unwrap();
    assert_eq!(v["order"], 6);
    assert_eq!(v["double_covers"][0]["order"], 12);
    assert_eq!(v["double_covers"][0]["kind"], "dihedral");
    assert_eq!(v["double_covers"][1]["kind"], "dicyclic");
    assert_eq!(v["elements"].as_array().unwrap().len(), 6);
}

fn leaf() -> impl Strategy<Value = Expr> {
    prop_oneof![
        (0i64..40, 1i64..12).prop_map(|(p, q)| Expr::Scalar(Scalar::Rational(Rational::new(p, q)))),
        proptest::sample::select(ScalarName::ALL.to_vec()).prop_map(|n| Expr::Scalar(Scalar::Named(n))),
        proptest::sample::select(OPERATOR_NAMES.to_vec()).prop_map(|n| Expr::Name(n.to_string())),
    ]
}

/// Expressions in the shape the parser produces.
pub(crate) fn arb_expr() -> impl Strategy<Value = Expr> {
    leaf().prop_recursive(4, 40, 4, |inner| {
        let kind = prop_oneof![Just(BracketKind::Commutator), Just(BracketKind::Anticommutator)];
        let factor = prop_oneof![
            leaf(),
            (kind, inner.clone(), inner.clone()).prop_map(|(k, a, b)| Expr::Call(k, Box::new(a), Box::new(b))),
            inner.clone().prop_map(|e| Expr::Paren(Box::new(e))),
        ]
        .boxed();
        let factor = prop_oneof![
            3 => factor.clone(),
            1 => factor.clone().prop_map(|f| Expr::Neg(Box::new(f))),
        ]
        .boxed();
        let term = prop_oneof![
            factor.clone(),
            proptest::collection::vec(factor, 2..4).prop_map(Expr::Product),
        ]
        .boxed();
        prop_oneof![
            term.clone(),
            (term.clone(), proptest::collection::vec((any::<bool>(), term), 1..3))
                .prop_map(|(first, rest)| Expr::Sum(Box::new(first), rest)),
        ]
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(600))]

    #[test]
    fn render_then_parse_round_trips(e in arb_expr()) {
        let text = render(&e);
        let back = parse(&text).map_err(|err| TestCaseError::fail(format!("{text}: {err}")))?;
        prop_assert_eq!(&back, &e);
        prop_assert_eq!(render(&back), text);
    }
}
