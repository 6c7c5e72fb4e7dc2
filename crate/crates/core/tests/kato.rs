use std::sync::Arc;

use katoforge::algebra::Ring;
use katoforge::finite_fields::{gf_make, GFElem};
use katoforge::function_fields::{residue_at, FuncField, Laurent, Place, RatFunc};
use katoforge::kato::*;
use katoforge::milnor::MilnorElement;
use katoforge::random;
use katoforge::witt::WittVector;
use katoforge::Error;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn field(p: u64, e: usize) -> Arc<FuncField> {
    FuncField::new(&gf_make(p, e).unwrap(), &["t"])
}

fn table(c: &HClass<RatFunc>) -> Vec<(Place, u64)> {
    reciprocity_check(c).unwrap().table.into_iter().map(|v| (v.place, v.value)).collect()
}

fn all_zero(c: &HClass<RatFunc>) -> bool {
    table(c).iter().all(|(_, v)| *v == 0)
}

/// Invariants of `c` at the places of `places`, as a map-like vector.
fn values_at(c: &HClass<RatFunc>, places: &[Place]) -> Vec<u64> {
    places.iter().map(|v| local_invariant(c, v).unwrap().value).collect()
}

fn union_places(cs: &[&HClass<RatFunc>]) -> Vec<Place> {
    let mut out: Vec<Place> = Vec::new();
    for c in cs {
        for v in invariant_places(c).unwrap() {
            if !out.contains(&v) {
                out.push(v);
            }
        }
    }
    out
}

const CASES: [(u64, usize, usize); 5] = [(2, 1, 1), (3, 1, 1), (2, 2, 1), (2, 1, 2), (3, 1, 2)];

#[test]
fn worked_example_table() {
    let f = field(2, 1);
    let t = RatFunc::var(&f, 0);
    let w = WittVector::new(vec![t.inv().unwrap()]).unwrap();
    let c = h_build(&w, &[Ring::add(&t, &RatFunc::one(&f))]).unwrap();
    let rendered: Vec<(String, u64)> = table(&c).into_iter().map(|(v, x)| (v.render("t"), x)).collect();
    assert_eq!(rendered, vec![("t".into(), 1), ("t+1".into(), 1), ("inf".into(), 0)]);
    assert!(!h_zero_test(&c).unwrap());
}

#[test]
fn constant_of_trace_zero_gives_zero_table() {
    let cfg = gf_make(2, 2).unwrap();
    let f = FuncField::new(&cfg, &["t"]);
    let t = RatFunc::var(&f, 0);
    for a in GFElem::all(&cfg).filter(|a| a.trace_int() == 0) {
        let w = WittVector::new(vec![RatFunc::constant(&f, a)]).unwrap();
        let c = HClass::free(&w, &[Ring::add(&t, &RatFunc::one(&f))]);
        assert!(all_zero(&c));
        assert!(h_build(&w, &[t.clone()]).unwrap().is_zero());
    }
}

#[test]
fn generators_of_j_normalize_away() {
    let f = field(3, 1);
    let t = RatFunc::var(&f, 0);
    let one = RatFunc::one(&f);
    let b = Ring::add(&t, &one);
    let v = WittVector::new(vec![t.inv().unwrap(), Ring::mul(&t, &t)]).unwrap();
    assert!(h_build(&v.wp(), &[b.clone()]).unwrap().is_zero());
    let a = Ring::add(&Ring::mul(&t, &t), &one);
    let tau = WittVector::teichmuller(&a, 2).unwrap();
    assert!(h_build(&tau, &[a.clone(), b.clone()]).unwrap().is_zero());
    assert!(h_build(&v, &[b.clone(), b.clone()]).unwrap().is_zero());
    let s = MilnorElement::symbol(&[b.clone(), b.clone()]).unwrap();
    assert!(pair(&v, &s).unwrap().is_zero());
    let zero = WittVector::zero(&t, 2).unwrap();
    assert!(pair(&zero, &MilnorElement::symbol(&[b]).unwrap()).unwrap().is_zero());
}

#[test]
fn level_shift_example() {
    let f = field(2, 1);
    let t = RatFunc::var(&f, 0);
    let c = h_build(&WittVector::new(vec![RatFunc::one(&f)]).unwrap(), &[t.clone()]).unwrap();
    assert_eq!(level_shift(&c, 1).unwrap(), c);
    let s = level_shift(&c, 2).unwrap();
    assert_eq!(s.terms()[0].w.coords(), &[RatFunc::zero(&f), RatFunc::one(&f)]);
    assert!(matches!(level_shift(&s, 1), Err(Error::LevelDecrease { from: 2, to: 1 })));
}

#[test]
fn unsupported_cases() {
    let f2 = FuncField::new(&gf_make(2, 1).unwrap(), &["x", "y"]);
    let x = RatFunc::var(&f2, 0);
    let y = RatFunc::var(&f2, 1);
    let c = h_build(&WittVector::new(vec![x.clone()]).unwrap(), &[y.clone()]).unwrap();
    assert!(matches!(h_zero_test(&c), Err(Error::UnsupportedField(_))));
    let f = field(2, 1);
    let t = RatFunc::var(&f, 0);
    let u = Ring::add(&t, &RatFunc::one(&f));
    let c = HClass::free(&WittVector::new(vec![t.inv().unwrap()]).unwrap(), &[t.clone(), u]);
    assert!(matches!(h_zero_test(&c), Err(Error::UnsupportedDegree(_))));
    assert!(matches!(local_invariant(&c, &Place::Infinity), Err(Error::UnsupportedDegree(_))));
}

#[test]
fn degree_zero_over_rational_field() {
    let f = field(3, 1);
    let t = RatFunc::var(&f, 0);
    let v = WittVector::new(vec![t.inv().unwrap(), t.clone()]).unwrap();
    let c = HClass::free(&v.wp(), &[]);
    assert!(h_zero_test(&c).unwrap());
    let c = HClass::free(&WittVector::new(vec![t.inv().unwrap(), t.clone()]).unwrap(), &[]);
    assert!(!h_zero_test(&c).unwrap());
}

#[test]
fn finite_field_classes() {
    let cfg = gf_make(2, 2).unwrap();
    let z = GFElem::generator(&cfg);
    let w = WittVector::new(vec![z.clone(), GFElem::zero(&cfg)]).unwrap();
    assert!(h_build(&w, &[z.clone()]).unwrap().is_zero());
    assert!(h_zero_test(&HClass::free(&w, &[z.clone()])).unwrap());
    for a in GFElem::all(&cfg) {
        let w = WittVector::new(vec![a.clone(), GFElem::zero(&cfg)]).unwrap();
        let zero = h_zero_test(&HClass::free(&w, &[])).unwrap();
        assert_eq!(zero, katoforge::witt::witt_trace(&w).value == 0);
    }
}

#[test]
fn colimit_examples() {
    let f = field(2, 1);
    let t = RatFunc::var(&f, 0);
    let u = Ring::add(&t, &RatFunc::one(&f));
    let c = h_build(&WittVector::new(vec![t.inv().unwrap()]).unwrap(), &[u.clone()]).unwrap();
    let shifted = level_shift(&c, 3).unwrap();
    assert!(colimit_equal(&ColimitClass::new(c.clone()), &ColimitClass::new(shifted)).unwrap());
    let v = WittVector::new(vec![t.clone()]).unwrap();
    let plus = c.try_add(&HClass::free(&v.wp(), &[u.clone()])).unwrap();
    assert!(colimit_equal(&ColimitClass::new(c.clone()), &ColimitClass::new(plus)).unwrap());
    let other = h_build(&WittVector::new(vec![RatFunc::one(&f)]).unwrap(), &[t.clone()]).unwrap();
    assert!(!colimit_equal(&ColimitClass::new(c), &ColimitClass::new(other)).unwrap());
}

/// Level 1 against `Tr Res_v(w db/b)` computed by Taylor expansion.
fn check_level_one(seed: u64, p: u64, e: usize) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let f = field(p, e);
    let w = random::ratfunc(&mut rng, &f, 2);
    let b = random::nonconstant_ratfunc(&mut rng, &f, 2);
    let c = HClass::free(&WittVector::new(vec![w.clone()]).unwrap(), &[b.clone()]);
    let form = Ring::mul(&w, &b.partial(0).try_div(&b).unwrap());
    let r = reciprocity_check(&c).unwrap();
    assert!(r.holds);
    for inv in &r.table {
        let oracle = residue_at(&form, &inv.place).unwrap().trace_to_prime();
        assert_eq!(inv.value, oracle, "w={w} b={b} at {:?}", inv.place);
    }
}

/// Every J family has zero invariants, for unnormalized generators.
fn check_relations(seed: u64, p: u64, e: usize, level: usize) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let f = field(p, e);
    let v = random::witt_ratfunc(&mut rng, &f, level, 2);
    let b = random::nonconstant_ratfunc(&mut rng, &f, 2);
    assert!(all_zero(&HClass::free(&v.wp(), &[b.clone()])));
    let tau = WittVector::teichmuller(&b, level).unwrap();
    assert!(all_zero(&HClass::free(&tau, &[b.clone()])));
}

/// Additivity in `w`, multiplicativity in `b`, reciprocity.
fn check_bilinear(seed: u64, p: u64, e: usize, level: usize) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let f = field(p, e);
    let w1 = random::witt_ratfunc(&mut rng, &f, level, 2);
    let w2 = random::witt_ratfunc(&mut rng, &f, level, 2);
    let b1 = random::nonconstant_ratfunc(&mut rng, &f, 2);
    let b2 = random::nonconstant_ratfunc(&mut rng, &f, 2);
    let m = p.pow(level as u32);
    let a = HClass::free(&w1, &[b1.clone()]);
    let b = HClass::free(&w2, &[b1.clone()]);
    let ab = HClass::free(&w1.add(&w2), &[b1.clone()]);
    let c = HClass::free(&w1, &[b2.clone()]);
    let ac = HClass::free(&w1, &[Ring::mul(&b1, &b2)]);
    let places = union_places(&[&a, &b, &c, &ab, &ac]);
    let (va, vb, vc) = (values_at(&a, &places), values_at(&b, &places), values_at(&c, &places));
    let sum = |x: &[u64], y: &[u64]| -> Vec<u64> { x.iter().zip(y).map(|(s, t)| (s + t) % m).collect() };
    assert_eq!(values_at(&ab, &places), sum(&va, &vb));
    assert_eq!(values_at(&ac, &places), sum(&va, &vc));
    for cl in [&a, &b, &c, &ab, &ac] {
        assert!(reciprocity_check(cl).unwrap().holds);
    }
    // Normalization does not change invariants.
    let normalized = h_build(&w1, &[b1.clone()]).unwrap();
    assert_eq!(values_at(&normalized, &places), va);
}

/// `inv(shift c) = p^{i'-i} inv(c)`, and `p^i · shift_{i+1}(c) = 0`.
fn check_shift(seed: u64, p: u64, e: usize, level: usize) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let f = field(p, e);
    let w = random::witt_ratfunc(&mut rng, &f, level, 2);
    let b = random::nonconstant_ratfunc(&mut rng, &f, 2);
    let c = HClass::free(&w, &[b]);
    let s = level_shift(&c, level + 1).unwrap();
    let places = union_places(&[&c, &s]);
    let up: Vec<u64> = values_at(&c, &places).iter().map(|v| v * p).collect();
    assert_eq!(values_at(&s, &places), up);
    assert_eq!(h_zero_test(&s).unwrap(), h_zero_test(&c).unwrap());
    let killed = s.scale_int(p.pow(level as u32) as i64);
    assert!(h_zero_test(&killed).unwrap());
}

/// Global invariant at `t` agrees with the Laurent invariant of the expansion.
fn check_completion(seed: u64, p: u64, e: usize, level: usize) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let f = field(p, e);
    let cfg = f.base().clone();
    let w = random::witt_ratfunc(&mut rng, &f, level, 2);
    let b = random::nonconstant_ratfunc(&mut rng, &f, 2);
    let c = HClass::free(&w, &[b.clone()]);
    let t_place = Place::Finite(katoforge::algebra::UPoly::x(&GFElem::zero(&cfg)));
    let global = local_invariant(&c, &t_place).unwrap();
    let expand = |g: &RatFunc| {
        let (n, d) = g.univariate_parts(0).unwrap();
        Laurent::from_fraction(&n, &d, 40).unwrap()
    };
    let wl = WittVector::new(w.coords().iter().map(expand).collect()).unwrap();
    let local = laurent_invariant(&HClass::free(&wl, &[expand(&b)])).unwrap();
    assert_eq!(local.value, global.value, "w={w:?} b={b}");
}

#[test]
fn level_one_matches_residues() {
    for seed in 0..40 {
        for (p, e) in [(2, 1), (3, 1), (2, 2)] {
            check_level_one(seed, p, e);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig { failure_persistence: None, ..ProptestConfig::with_cases(12) })]

    #[test]
    fn relations_vanish(seed in any::<u64>()) {
        for (p, e, level) in CASES {
            check_relations(seed, p, e, level);
        }
        check_relations(seed, 2, 1, 3);
    }

    #[test]
    fn bilinear_and_reciprocal(seed in any::<u64>()) {
        for (p, e, level) in CASES {
            check_bilinear(seed, p, e, level);
        }
    }

    #[test]
    fn shift_compatible(seed in any::<u64>()) {
        for (p, e, level) in CASES {
            check_shift(seed, p, e, level);
        }
    }

    #[test]
    fn completion_agrees(seed in any::<u64>()) {
        for (p, e, level) in CASES {
            check_completion(seed, p, e, level);
        }
    }
}
