//! Acceptance suite: one PASS/FAIL line per criterion, all checks exact.
//! Runs with a plain `main` so the lines are always printed.

use std::process::Command;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use dunkl_sym::cli::{parse, render, Expr, Scalar, ScalarName};
use dunkl_sym::clifford::{CliffordElement, Signature};
use dunkl_sym::exactfield::{RadicalComplex, Rational};
use dunkl_sym::group::{
    generate_group, pin_group, pin_product, tilde_lift, PinElement, RootSystemPreset, Weights, DEFAULT_CLOSURE_BUDGET,
};
use dunkl_sym::matrixrep::{ladder_matrix_check, matrix_of, CharPoly};
use dunkl_sym::operators::{
    commutator, equal_up_to_degree_with, BracketKind, Catalogue, DunklMutation, Evaluator, Operator, SpinorPolynomial,
    OPERATOR_NAMES,
};
use dunkl_sym::poly::XPolynomial;
use dunkl_sym::relations::{all_ok, select, verify_many, verify_with, ReportVerdict};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn cli(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_dunkl-sym"))
        .args(args)
        .output()
        .expect("binary runs");
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8_lossy(&out.stdout).into_owned(),
        String::from_utf8_lossy(&out.stderr).into_owned(),
    )
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn summary_line(out: &str) -> String {
    out.lines()
        .filter(|l| l.starts_with("summary:"))
        .collect::<Vec<_>>()
        .join("; ")
}

fn first_failure(out: &str) -> String {
    out.lines()
        .skip_while(|l| !l.starts_with("FAIL"))
        .take(3)
        .collect::<Vec<_>>()
        .join(" | ")
}

/// Family of a report line for the given signature, e.g. `R8` for `R8a.printed`.
fn report_family(line: &str, eps: &str) -> Option<String> {
    let words: Vec<&str> = line.split_whitespace().collect();
    let k = words.iter().position(|w| *w == "[g2")?;
    if k == 0 || words.get(k + 1) != Some(&format!("eps={eps}]").as_str()) {
        return None;
    }
    let name = words[k - 1].split('.').next()?;
    Some(name.trim_end_matches(['a', 'b', 'c']).to_string())
}

/// Full registry for G2 at degree 4, both signatures, through the binary.
fn criterion_1() -> Outcome {
    let (code, out, err) = cli(&["verify", "--group", "g2", "--max-degree", "4"]);
    ensure(code == 0, || format!("exit {code}: {} {err}", first_failure(&out)))?;
    let passes: Vec<&str> = out.lines().filter(|l| l.starts_with("PASS")).collect();
    ensure(passes.iter().all(|l| l.contains("280 basis elements")), || {
        "basis is not 280 elements".into()
    })?;
    for fam in 1..=15 {
        for eps in ["+1", "-1"] {
            let found = out
                .lines()
                .filter_map(|l| report_family(l, eps))
                .any(|f| f == format!("R{fam}"));
            ensure(found, || format!("no report for R{fam} at eps={eps}"))?;
        }
    }
    Ok(format!(
        "{} assertions passed at degree 4 on 280 basis elements ({})",
        passes.len(),
        summary_line(&out)
    ))
}

/// Relations for A2 at degree 3, both signatures.
fn criterion_2() -> Outcome {
    let (code, out, err) = cli(&["verify", "--group", "a2", "--max-degree", "3"]);
    ensure(code == 0, || format!("exit {code}: {} {err}", first_failure(&out)))?;
    ensure(!out.contains("R11") && !out.contains("R12"), || {
        "G2-only relations ran for A2".into()
    })?;
    let passes = out.lines().filter(|l| l.starts_with("PASS")).count();
    Ok(format!("{passes} assertions passed for a2 ({})", summary_line(&out)))
}

fn spinor_sign(p: &PinElement) -> Option<i64> {
    if !p.matrix.is_identity() {
        None
    } else if p.spinor == CliffordElement::one() {
        Some(1)
    } else if p.spinor == CliffordElement::one().neg() {
        Some(-1)
    } else {
        None
    }
}

/// Reflection group and double covers of G2.
fn criterion_3() -> Outcome {
    let g2 = RootSystemPreset::g2();
    let w = generate_group(&g2.simple_reflections(), DEFAULT_CLOSURE_BUDGET).map_err(|e| e.to_string())?;
    ensure(w.order() == 12, || format!("|W| = {}", w.order()))?;
    for s in Signature::BOTH {
        let cover = pin_group(&g2, s).map_err(|e| e.to_string())?;
        ensure(cover.order() == 24, || {
            format!("cover order {} at eps={}", cover.order(), s.epsilon())
        })?;
        let a = tilde_lift(&g2.roots[g2.simple[0]].vector);
        let b = tilde_lift(&g2.roots[g2.simple[1]].vector);
        let ab = pin_product(&a, &b, s);
        let mut p = PinElement::identity();
        for _ in 0..6 {
            p = pin_product(&p, &ab, s);
        }
        ensure(spinor_sign(&p) == Some(-1), || {
            format!("braid power is {:?} at eps={}", spinor_sign(&p), s.epsilon())
        })?;
        for r in &g2.roots {
            let l = tilde_lift(&r.vector);
            ensure(spinor_sign(&pin_product(&l, &l, s)) == Some(s.epsilon()), || {
                "lift square is not eps".into()
            })?;
        }
    }
    Ok("|W| = 12, cover order 24 and (tsig1 tsig2)^6 = -1 for both eps, tsig^2 = eps on all six roots".into())
}

/// Ladder relations as operator identities and as exact matrices.
fn criterion_4() -> Outcome {
    let g2 = RootSystemPreset::g2();
    let ladder = select("R12").map_err(|e| e.to_string())?;
    for s in Signature::BOTH {
        let reports = verify_many(&ladder, 3, s, &g2);
        ensure(reports.len() == 2 && all_ok(&reports), || {
            format!(
                "operator ladder failed at eps={}: {:?}",
                s.epsilon(),
                reports.iter().map(|r| r.to_text()).collect::<Vec<_>>()
            )
        })?;
    }
    let mut dims = Vec::new();
    for d in 0..=2 {
        let r = ladder_matrix_check(d, Some((Rational::new(1, 2), Rational::new(1, 3))), Signature::PLUS)
            .map_err(|e| e.to_string())?;
        ensure(r.holds(), || format!("matrix ladder failed at d={d}: {r:?}"))?;
        dims.push(r.dimension.to_string());
    }
    Ok(format!(
        "[O0,K+-] = +-K+- to degree 3 for both eps; matrix identities hold in dimensions {}",
        dims.join(", ")
    ))
}

/// Characteristic polynomial of O0 on constants.
fn criterion_5() -> Outcome {
    let cat = Catalogue::new(&RootSystemPreset::g2(), Signature::PLUS, Weights::zero());
    let m = matrix_of(&cat.o_zero(), 0).map_err(|e| e.to_string())?;
    let m = m.instantiate(&Rational::zero(), &Rational::zero());
    let quarter = RadicalComplex::from_rational(Rational::new(-1, 4));
    let base = CharPoly {
        coeffs: vec![RadicalComplex::one(), RadicalComplex::zero(), quarter],
    };
    let expected = base.pow(4);
    let got = m.charpoly();
    ensure(got == expected, || format!("charpoly is {got}"))?;
    ensure(got.factored() == "(l^2 - 1/4)^4", || {
        format!("factored form {}", got.factored())
    })?;
    Ok(format!("charpoly = {} = {}", got.factored(), got))
}

/// Dunkl values on x2, commutativity and the square of the Dirac operator.
fn criterion_6() -> Outcome {
    let g2 = RootSystemPreset::g2();
    let x2 = SpinorPolynomial::scalar(XPolynomial::var(1));
    let cat = Catalogue::symbolic(&g2, Signature::PLUS);
    let d2 = cat.dunkl(2).apply(&x2).map_err(|e| e.to_string())?.to_string();
    let d1 = cat.dunkl(1).apply(&x2).map_err(|e| e.to_string())?.to_string();
    ensure(d2 == "1 + 2*kappa1 + 2*kappa2", || format!("D2(x2) = {d2}"))?;
    ensure(d1 == "-kappa1 - kappa2", || format!("D1(x2) = {d1}"))?;
    let mut size = 0;
    for s in Signature::BOTH {
        let cat = Catalogue::symbolic(&g2, s);
        let eval = Evaluator::new();
        for (i, j) in [(1, 2), (1, 3), (2, 3)] {
            let c = equal_up_to_degree_with(&eval, &commutator(&cat.dunkl(i), &cat.dunkl(j)), &Operator::zero(), 6);
            ensure(c.verdict.is_pass(), || {
                format!("[D{i},D{j}] != 0 at eps={}: {:?}", s.epsilon(), c.verdict.witness())
            })?;
        }
        let lap = Operator::sum((1..=3).map(|i| cat.dunkl(i).pow(2))).scale_int(s.epsilon());
        let c = equal_up_to_degree_with(&eval, &cat.dirac().pow(2), &lap, 6);
        ensure(c.verdict.is_pass(), || {
            format!("D^2 != eps Laplacian at eps={}: {:?}", s.epsilon(), c.verdict.witness())
        })?;
        size = c.basis_size;
    }
    Ok(format!(
        "D2(x2) = {d2}, D1(x2) = {d1}; [Di,Dj] = 0 and D^2 = eps*Laplacian on {size} basis elements, both eps"
    ))
}

/// The D2 formula exactly as printed breaks the symmetry relations.
fn criterion_7() -> Outcome {
    let g2 = RootSystemPreset::g2();
    let mut relations = select("R1").map_err(|e| e.to_string())?;
    relations.extend(select("R15").map_err(|e| e.to_string())?);
    let mut caught = Vec::new();
    for s in Signature::BOTH {
        let cat = Catalogue::with_mutation(&g2, s, Weights::symbolic(), DunklMutation::PrintedD2);
        let eval = Evaluator::new();
        for r in &relations {
            let rep = verify_with(r, &cat, 3, &eval).map_err(|e| e.to_string())?;
            if rep.verdict == ReportVerdict::Fail {
                let w = rep.witness.as_ref().ok_or("failure without witness")?;
                caught.push(format!(
                    "{} eps={:+} at x^{}*{}",
                    rep.name,
                    s.epsilon(),
                    w.monomial,
                    w.blade
                ));
            }
        }
    }
    ensure(!caught.is_empty(), || "printed formula passes R1 and R15".into())?;
    Ok(format!("{} failures, first: {}", caught.len(), caught[0]))
}

/// At zero weights the two-index relations are those of so(3).
fn criterion_8() -> Outcome {
    let r9 = select("R9").map_err(|e| e.to_string())?;
    let mut n = 0;
    for preset in [RootSystemPreset::g2(), RootSystemPreset::a2()] {
        for s in Signature::BOTH {
            let reports = verify_many(&r9, 4, s, &preset);
            ensure(reports.len() == 3 && all_ok(&reports), || {
                format!("R9 failed for {} eps={}", preset.name, s.epsilon())
            })?;
            n += reports.len();
        }
    }
    Ok(format!("{n} so(3) brackets pass at degree 4 for g2 and a2, both eps"))
}

fn random_factor(rng: &mut ChaCha8Rng, depth: u32) -> Expr {
    let leaf = |rng: &mut ChaCha8Rng| match rng.gen_range(0..3) {
        0 => Expr::Scalar(Scalar::Rational(Rational::new(
            rng.gen_range(0..50),
            rng.gen_range(1..13),
        ))),
        1 => Expr::Scalar(Scalar::Named(ScalarName::ALL[rng.gen_range(0..ScalarName::ALL.len())])),
        _ => Expr::Name(OPERATOR_NAMES[rng.gen_range(0..OPERATOR_NAMES.len())].to_string()),
    };
    if depth == 0 {
        return leaf(rng);
    }
    match rng.gen_range(0..6) {
        0 | 1 => leaf(rng),
        2 => {
            let kind = if rng.gen() {
                BracketKind::Commutator
            } else {
                BracketKind::Anticommutator
            };
            Expr::Call(
                kind,
                Box::new(random_expr(rng, depth - 1)),
                Box::new(random_expr(rng, depth - 1)),
            )
        }
        3 => Expr::Paren(Box::new(random_expr(rng, depth - 1))),
        _ => Expr::Neg(Box::new(random_factor(rng, depth - 1))),
    }
}

fn random_term(rng: &mut ChaCha8Rng, depth: u32) -> Expr {
    match rng.gen_range(0..3) {
        0 => Expr::Product((0..rng.gen_range(2..4)).map(|_| random_factor(rng, depth)).collect()),
        _ => random_factor(rng, depth),
    }
}

fn random_expr(rng: &mut ChaCha8Rng, depth: u32) -> Expr {
    let first = random_term(rng, depth);
    match rng.gen_range(0..3) {
        0 => Expr::Sum(
            Box::new(first),
            (0..rng.gen_range(1..4))
                .map(|_| (rng.gen(), random_term(rng, depth)))
                .collect(),
        ),
        _ => first,
    }
}

/// Parser round trip and the command-line goldens.
fn criterion_9() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let cases = 1000;
    for _ in 0..cases {
        let e = random_expr(&mut rng, 3);
        let text = render(&e);
        let back = parse(&text).map_err(|err| format!("{text}: {err}"))?;
        ensure(back == e && render(&back) == text, || {
            format!("round trip changed {text}")
        })?;
    }
    ensure(
        parse("comm(O12,O13) - O23 - 2*O123*O1 - E").map(|e| e.summands()) == Ok(4),
        || "four summands".into(),
    )?;

    let (code, out, err) = cli(&["apply", "--group", "g2", "--expr", "D2", "--input", "x2"]);
    ensure(code == 0 && out.trim() == "1 + 2*kappa1 + 2*kappa2", || {
        format!("apply: exit {code}, {out} {err}")
    })?;
    let (code, out, _) = cli(&["groupinfo", "--group", "g2", "--epsilon", "-1"]);
    ensure(
        code == 0 && out.contains("order: 12\n") && out.contains("double cover (eps=-1): order 24"),
        || format!("groupinfo: {out}"),
    )?;
    let args = [
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
    ];
    let (code, out, _) = cli(&args);
    ensure(code == 0 && out.lines().any(|l| l == "charpoly: (l^2 - 1/4)^4"), || {
        format!("matrix: {out}")
    })?;
    let args = [
        "verify",
        "--group",
        "g2",
        "--epsilon",
        "-1",
        "--expr",
        "comm(O0,Kp) - Kp",
        "--max-degree",
        "3",
    ];
    let (code, out, _) = cli(&args);
    ensure(code == 0, || format!("ladder expression: exit {code}, {out}"))?;
    let (code, _, err) = cli(&["verify", "--group", "a2", "--expr", "O123", "--relation", "R12"]);
    ensure(code == 2 && err.contains("not defined for preset a2"), || {
        format!("scope: exit {code}, {err}")
    })?;
    let (code, _, err) = cli(&["verify", "--expr", "comm(O12"]);
    ensure(code == 2 && err.contains("position 9"), || {
        format!("parse error: exit {code}, {err}")
    })?;
    Ok(format!("{cases} generated expressions round-trip; apply, groupinfo, matrix and verify goldens match; exit 2 on scope and parse errors"))
}

fn main() {
    let criteria: [Criterion; 9] = [
        ("full G2 registry at degree 4", criterion_1),
        ("A2 relations at degree 3", criterion_2),
        ("group facts", criterion_3),
        ("ladder relations", criterion_4),
        ("spectrum of O0 on constants", criterion_5),
        ("Dunkl sanity", criterion_6),
        ("mutation sensitivity", criterion_7),
        ("zero-weight degeneration", criterion_8),
        ("parser and CLI goldens", criterion_9),
    ];
    let mut failed = 0;
    for (k, (name, check)) in criteria.iter().enumerate() {
        let start = std::time::Instant::now();
        let outcome = check();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {}: PASS {name} ({secs:.1} s): {detail}", k + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {}: FAIL {name} ({secs:.1} s): {detail}", k + 1);
            }
        }
    }
    println!(
        "acceptance: {} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
