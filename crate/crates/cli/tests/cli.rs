//! End-to-end behaviour of the command-line interface.

use num_bigint::BigUint;
use proptest::prelude::*;
use yangian_cli::parser::{Builtin, Generator, Node};
use yangian_cli::{parse, run, Context, Expr, Value};
use yangian_core::freequant::relation_defect_sl2;
use yangian_core::Envelope;

fn call(args: &[&str]) -> (i32, String, String) {
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let argv = std::iter::once("yangian").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn sl2() -> Context {
    Context::new(Envelope::sl(2).unwrap()).unwrap()
}

#[test]
fn exit_codes() {
    let (code, out, _) = call(&["verify", "sl2-steps", "--type", "A1"]);
    assert_eq!(code, 0);
    assert!(out.contains("PASS e/step4"));

    let (code, out, _) = call(&["verify", "defects", "--type", "A2"]);
    assert_eq!(code, 0, "{out}");

    let (code, out, _) = call(&["verify", "gnw", "--type", "A2", "--inject-fault", "nu"]);
    assert_eq!(code, 1);
    assert!(out.lines().any(|l| l.starts_with("FAIL")));

    for bad in [
        &["verify", "no-such-suite"][..],
        &["verify", "gnw", "--type", "B2"],
        &["verify", "gnw", "--inject-fault", "nope"],
        &["verify", "cartier", "--inject-fault", "nu"],
        &["frobnicate"],
        &["expand", "[e, f"],
        &["cohomology", "--module", "adjoint (x)"],
    ] {
        let (code, _, err) = call(bad);
        assert_eq!(code, 2, "{bad:?}");
        assert!(!err.is_empty(), "{bad:?}");
    }
}

#[test]
fn json_schema_and_determinism() {
    let dir = tempfile::tempdir().unwrap();
    let paths: Vec<String> = (0..3).map(|i| dir.path().join(format!("r{i}.json")).to_str().unwrap().to_string()).collect();
    for (path, jobs) in paths.iter().zip(["1", "1", "3"]) {
        let (code, _, _) = call(&["verify", "bicomplex", "--seed", "7", "--deterministic", "--jobs", jobs, "--json", path]);
        assert_eq!(code, 0);
    }
    let bytes: Vec<Vec<u8>> = paths.iter().map(|p| std::fs::read(p).unwrap()).collect();
    assert_eq!(bytes[0], bytes[1]);
    assert_eq!(bytes[0], bytes[2]);

    let v: serde_json::Value = serde_json::from_slice(&bytes[0]).unwrap();
    let keys: Vec<&str> = v.as_object().unwrap().keys().map(String::as_str).collect();
    for k in ["suite", "algebra", "checks", "seed", "elapsed_ms"] {
        assert!(keys.contains(&k), "missing {k}");
    }
    assert_eq!(v["suite"], "bicomplex");
    assert_eq!(v["seed"], 7);
    let checks = v["checks"].as_array().unwrap();
    let ids: Vec<&str> = checks.iter().map(|c| c["id"].as_str().unwrap()).collect();
    assert!(ids.windows(2).all(|w| w[0] <= w[1]));
    for c in checks {
        assert!(c["anchor"].is_string());
        assert_eq!(c["pass"], true);
        assert!(c.get("residual").is_none());
    }

    // a failing report carries residuals exactly on failed checks
    let path = dir.path().join("fault.json");
    let (code, _, _) = call(&["verify", "sl2-steps", "--inject-fault", "step2-drop", "--json", path.to_str().unwrap()]);
    assert_eq!(code, 1);
    let v: serde_json::Value = serde_json::from_slice(&std::fs::read(path).unwrap()).unwrap();
    for c in v["checks"].as_array().unwrap() {
        assert_eq!(c["pass"] == false, c.get("residual").is_some());
    }
}

#[test]
fn expand_command() {
    let (code, out, _) = call(&["expand", "Delta(J(h)) - box(J(h))"]);
    assert_eq!(code, 0);
    assert_eq!(out.trim(), "-hbar*I(f) (x) I(e) + hbar*I(e) (x) I(f)");

    let (code, out, _) = call(&["expand", "eps(J(e))"]);
    assert_eq!((code, out.trim()), (0, "0"));

    let (code, _, err) = call(&["expand", "e + q", "--type", "A1"]);
    assert_eq!(code, 2);
    assert!(err.contains("line 1, column 5"), "{err}");

    let (code, out, _) = call(&["expand", "[e12, e23]", "--type", "A2"]);
    assert_eq!((code, out.trim()), (0, "e13"));
}

#[test]
fn cohomology_command() {
    let dims = |module: &str, ty: &str| {
        let (code, out, _) = call(&["cohomology", "--module", module, "--up-to", "3", "--type", ty]);
        assert_eq!(code, 0);
        out.lines().skip(1).map(|l| l.rsplit(' ').next().unwrap().to_string()).collect::<Vec<_>>()
    };
    assert_eq!(dims("trivial", "A1"), ["1", "0", "0", "1"]);
    assert_eq!(dims("trivial", "A2"), ["1", "0", "0", "1"]);
    assert_eq!(dims("adjoint", "A1"), ["0", "0", "0", "0"]);
    assert_eq!(dims("dual(adjoint) (x) pbw(2)", "A1"), ["1", "0", "0", "1"]);
}

#[test]
fn dsl_examples() {
    let ctx = sl2();
    let omega = ctx.evaluate("Omega").unwrap();
    assert_eq!(ctx.evaluate("(1/2)*h (x) h + e (x) f + f (x) e").unwrap(), omega);

    let defect = ctx.evaluate("[[J(e),J(f)],J(h)] - hbar^2*(I(f)*J(e)-J(f)*I(e))*I(h)").unwrap();
    assert_eq!(Value::Fm(relation_defect_sl2(ctx.free_model()).unwrap()), defect);

    assert_eq!(
        ctx.evaluate("Delta(J(h)) - box(J(h))").unwrap(),
        ctx.evaluate("hbar*(I(e) (x) I(f) - I(f) (x) I(e))").unwrap()
    );
    assert!(ctx.evaluate("eps(J(e))").unwrap().is_zero());
    assert!(ctx.evaluate("e (x) f + e").is_err());
    assert!(ctx.evaluate("nu(e, f)").is_err());
}

fn leaf() -> impl Strategy<Value = Expr> {
    let name = prop_oneof![Just("e"), Just("f"), Just("h")].prop_map(|s| Expr::new(Node::Name(s.into())));
    prop_oneof![
        (0u32..20).prop_map(|n| Expr::new(Node::Int(BigUint::from(n)))),
        Just(Expr::new(Node::Hbar)),
        Just(Expr::new(Node::Omega)),
        name.clone(),
        (prop_oneof![Just(Generator::I), Just(Generator::J)], name.clone())
            .prop_map(|(g, n)| Expr::new(Node::Gen(g, Box::new(n)))),
        (proptest::sample::select(Builtin::ALL.to_vec()), name).prop_map(|(b, n)| Expr::new(Node::Call(b, Box::new(n)))),
    ]
}

fn ast() -> impl Strategy<Value = Expr> {
    leaf().prop_recursive(4, 24, 2, |inner| {
        let b = |n: fn(Box<Expr>, Box<Expr>) -> Node| {
            (inner.clone(), inner.clone()).prop_map(move |(x, y)| Expr::new(n(Box::new(x), Box::new(y))))
        };
        prop_oneof![
            inner.clone().prop_map(|x| Expr::new(Node::Neg(Box::new(x)))),
            (inner.clone(), 1u32..4).prop_map(|(x, k)| Expr::new(Node::Pow(Box::new(x), k))),
            b(Node::Add),
            b(Node::Sub),
            b(Node::Mul),
            b(Node::Div),
            b(Node::Bracket),
            b(Node::Tensor),
        ]
    })
}

/// Small free-model expressions that always evaluate.
fn fm_source() -> impl Strategy<Value = String> {
    let atom = prop_oneof![
        Just("I(e)"), Just("I(f)"), Just("I(h)"), Just("J(e)"), Just("J(f)"), Just("J(h)"), Just("hbar"),
    ];
    let monomial = (-3i32..4, proptest::collection::vec(atom, 1..4))
        .prop_map(|(c, w)| format!("({c})*{}", w.join("*")));
    proptest::collection::vec(monomial, 1..4).prop_map(|ms| ms.join(" + "))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn printed_ast_parses_back(e in ast()) {
        let printed = e.to_string();
        let reparsed = parse(&printed).map_err(|err| TestCaseError::fail(format!("{printed}: {err}")))?;
        prop_assert_eq!(&reparsed, &e, "{}", printed);
        prop_assert_eq!(reparsed.to_string(), printed);
    }

    #[test]
    fn rendered_values_evaluate_back(src in fm_source()) {
        round_trip(&src)?;
    }

    #[test]
    fn rendered_coproducts_evaluate_back(src in fm_source()) {
        round_trip(&format!("Delta({src})"))?;
    }
}

/// The rendering is a fixed point and denotes the same value.
fn round_trip(src: &str) -> Result<(), TestCaseError> {
    let ctx = sl2();
    let shown = ctx.render(&ctx.evaluate(src).unwrap());
    let again = ctx.render(&ctx.evaluate(&shown).unwrap());
    prop_assert_eq!(&again, &shown, "{}", src);
    let diff = ctx.evaluate(&format!("({src}) - ({shown})")).unwrap();
    prop_assert!(diff.is_zero(), "{} rendered as {}", src, shown);
    Ok(())
}
