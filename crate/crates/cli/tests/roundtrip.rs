use std::sync::Arc;

use katoforge::finite_fields::{GFConfig, GFElem};
use katoforge::forms::DiffForm;
use katoforge::function_fields::laurent::EXACT;
use katoforge::function_fields::{FuncField, Laurent};
use katoforge::kato::h_build;
use katoforge::milnor::MilnorElement;
use katoforge::random;
use katoforge::witt::WittVector;
use katoforge_cli::eval::int_elem;
use katoforge_cli::parser::parse_expr;
use katoforge_cli::value::*;
use katoforge_cli::Session;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn session(decl: &str) -> Session {
    let mut s = Session::default();
    s.run_line(decl, 1).unwrap();
    s
}

fn rational(s: &Session) -> Arc<FuncField> {
    match &s.current_field().unwrap().kind {
        FieldKind::Rational(f) => f.clone(),
        _ => unreachable!(),
    }
}

fn config(s: &Session) -> Arc<GFConfig> {
    s.current_field().unwrap().config().clone()
}

/// Integers read back as field elements and functions as 0-forms. Zero
/// symbols, classes and forms print as a bare `0`, which carries no degree.
fn coerce(s: &Session, v: Value, like: &Value) -> Value {
    match (v, like) {
        (Value::Int(0), Value::Form(_) | Value::Symbol(_) | Value::Class(_)) if s.render_value(like) == "0" => like.clone(),
        (Value::Int(n), Value::Elem(_)) => Value::Elem(int_elem(s.current_field().unwrap(), n)),
        (Value::Int(n), Value::Form(_)) => match int_elem(s.current_field().unwrap(), n) {
            Elem::Rat(g) => Value::Form(DiffForm::function(&g)),
            _ => unreachable!(),
        },
        (Value::Elem(Elem::Rat(g)), Value::Form(_)) => Value::Form(DiffForm::function(&g)),
        (v, _) => v,
    }
}

fn check(s: &Session, v: Value) {
    let text = s.render_value(&v);
    let expr = parse_expr(&text).unwrap_or_else(|e| panic!("{text}: {e}"));
    let back = s.eval_expr(&expr).unwrap_or_else(|e| panic!("{text}: {e}"));
    assert_eq!(coerce(s, back, &v), v, "{text}");
}

fn check_rational(seed: u64, decl: &str) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let s = session(decl);
    let f = rational(&s);
    let a = random::ratfunc(&mut rng, &f, 3);
    check(&s, Value::Elem(Elem::Rat(a)));
    let level = rng.gen_range(1..=2);
    let w = random::witt_ratfunc(&mut rng, &f, level, 2);
    check(&s, Value::Witt(WittVal::Rat(w.clone())));
    let n = rng.gen_range(0..=f.nvars());
    check(&s, Value::Form(random::form(&mut rng, &f, n, 2)));
    let entries: Vec<_> = (0..2).map(|_| random::nonconstant_ratfunc(&mut rng, &f, 2)).collect();
    let x = MilnorElement::symbol(&entries).unwrap();
    let y = MilnorElement::symbol(&[random::nonconstant_ratfunc(&mut rng, &f, 2), entries[0].clone()]).unwrap();
    check(&s, Value::Symbol(x.try_sub(&y.scale(2)).unwrap()));
    if f.nvars() == 1 {
        let b = random::nonconstant_ratfunc(&mut rng, &f, 2);
        let c = h_build(&w, &[b]).unwrap();
        let b2 = random::nonconstant_ratfunc(&mut rng, &f, 1);
        let c2 = h_build(&random::witt_ratfunc(&mut rng, &f, level, 1), &[b2]).unwrap();
        check(&s, Value::Class(ClassVal::Rat(c.try_add(&c2).unwrap())));
    }
}

fn check_finite(seed: u64, decl: &str) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let s = session(decl);
    let cfg = config(&s);
    check(&s, Value::Elem(Elem::Gf(random::gf_elem(&mut rng, &cfg))));
    let level = rng.gen_range(1..=3);
    let w = random::witt_gf(&mut rng, &cfg, level);
    check(&s, Value::Witt(WittVal::Gf(w.clone())));
    check(&s, Value::Class(ClassVal::Gf(h_build(&w, &[]).unwrap())));
}

fn check_laurent(seed: u64, decl: &str) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let s = session(decl);
    let cfg = config(&s);
    let val = rng.gen_range(-3..=2);
    let prec = rng.gen_range(val + 1..=12);
    let a = random::laurent(&mut rng, &cfg, val, prec);
    check(&s, Value::Elem(Elem::Ser(a)));
    let exact = Laurent::new(-2, (0..5).map(|_| random::gf_elem(&mut rng, &cfg)).collect(), EXACT, &GFElem::zero(&cfg));
    check(&s, Value::Elem(Elem::Ser(exact)));
    let w = WittVector::new((0..2).map(|_| random::laurent(&mut rng, &cfg, -2, 10)).collect()).unwrap();
    check(&s, Value::Witt(WittVal::Ser(w.clone())));
    let b = Laurent::monomial(random::gf_nonzero(&mut rng, &cfg), rng.gen_range(1..=3));
    let c = h_build(&w, &[b.add(&random::laurent(&mut rng, &cfg, 4, 10))]).unwrap();
    check(&s, Value::Class(ClassVal::Ser(c)));
}

#[test]
fn scalars() {
    let s = session("field F = GF(3)(t)");
    for text in ["2", "7", "-1"] {
        let v = s.eval_expr(&parse_expr(text).unwrap()).unwrap();
        assert!(matches!(v, Value::Int(_)));
        check(&s, v);
    }
    check(&s, Value::Bool(true));
}

proptest! {
    #![proptest_config(ProptestConfig { failure_persistence: None, ..ProptestConfig::with_cases(150) })]

    #[test]
    fn print_then_parse(seed in any::<u64>()) {
        for decl in ["field F = GF(2)(t)", "field F = GF(3)(x, y)", "field F = GF(2, 2)(t)", "field F = GF(3)(t)"] {
            check_rational(seed, decl);
        }
        for decl in ["field k = GF(5)", "field k = GF(2, 3)", "field k = GF(3, 2)"] {
            check_finite(seed, decl);
        }
        for decl in ["field K = GF(2)((t))", "field K = GF(3, 2)((s))"] {
            check_laurent(seed, decl);
        }
    }
}
