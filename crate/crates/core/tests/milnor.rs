use std::sync::Arc;

use katoforge::algebra::{CharP, Ring};
use katoforge::finite_fields::gf_make;
use katoforge::function_fields::{FuncField, RatFunc};
use katoforge::milnor::*;
use katoforge::random;
use katoforge::Error;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const QS: [(u64, usize); 3] = [(2, 1), (3, 1), (2, 2)];

fn fields() -> Vec<Arc<FuncField>> {
    let mut out = Vec::new();
    for (p, e) in QS {
        let base = gf_make(p, e).unwrap();
        out.push(FuncField::new(&base, &["t"]));
        out.push(FuncField::new(&base, &["x", "y"]));
    }
    out
}

fn sym(entries: &[RatFunc]) -> MilnorElement {
    MilnorElement::symbol(entries).unwrap()
}

fn zero_in_kn(x: &MilnorElement) -> bool {
    kn_equal(x, &MilnorElement::zero(x.field(), x.degree())).unwrap()
}

/// A nonzero entry different from one.
fn entry(rng: &mut ChaCha8Rng, field: &Arc<FuncField>) -> RatFunc {
    loop {
        let f = random::nonzero_ratfunc(rng, field, 2);
        if !f.is_one() {
            return f;
        }
    }
}

fn check_relations(seed: u64, field: &Arc<FuncField>) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let one = RatFunc::one(field);
    let a = entry(&mut rng, field);
    let b = entry(&mut rng, field);
    let c = entry(&mut rng, field);
    // Steinberg: {a, 1 - a} = 0 and {a, -a} = 0.
    let one_minus = &one - &a;
    if !one_minus.is_zero() {
        assert!(zero_in_kn(&sym(&[a.clone(), one_minus])));
    }
    assert!(zero_in_kn(&sym(&[a.clone(), a.neg()])));
    // Bilinearity in either slot.
    for (x, y) in [(sym(&[&a * &b, c.clone()]), sym(&[a.clone(), c.clone()]).try_add(&sym(&[b.clone(), c.clone()])))] {
        assert!(kn_equal(&x, &y.unwrap()).unwrap());
    }
    let x = sym(&[c.clone(), &a * &b]);
    let y = sym(&[c.clone(), a.clone()]).try_add(&sym(&[c.clone(), b.clone()])).unwrap();
    assert!(kn_equal(&x, &y).unwrap());
    // Graded anticommutativity and p-divisibility.
    let ab = sym(&[a.clone(), b.clone()]);
    assert!(kn_equal(&ab, &sym(&[b.clone(), a.clone()]).neg()).unwrap());
    assert!(zero_in_kn(&sym(&[a.frobenius(), b.clone()])));
    assert!(zero_in_kn(&ab.scale(field.base().p() as i64)));
    // Images are logarithmic forms.
    for s in [sym(&[a.clone()]), ab.clone(), ab.try_add(&sym(&[c.clone(), a.clone()])).unwrap()] {
        assert!(d_symbol(&s).unwrap().nu_test());
    }
    // Expansion does not change the class.
    let e = symbol_expand(&ab).unwrap();
    assert_eq!(d_symbol(&e).unwrap(), d_symbol(&ab).unwrap());
    // kn_equal is an equivalence compatible with addition.
    let ca = sym(&[c.clone(), a.clone()]);
    assert!(kn_equal(&ab, &ab).unwrap());
    assert_eq!(kn_equal(&ab, &ca).unwrap(), kn_equal(&ca, &ab).unwrap());
    if kn_equal(&ab, &e).unwrap() && kn_equal(&e, &ca).unwrap() {
        assert!(kn_equal(&ab, &ca).unwrap());
    }
    let shift = sym(&[b.clone(), c.clone()]);
    assert!(kn_equal(&ab.try_add(&shift).unwrap(), &e.try_add(&shift).unwrap()).unwrap());
}

fn check_restriction(seed: u64, p: u64) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let cfg = gf_make(p, 1).unwrap();
    let e = ASExtension::new(&FuncField::new(&cfg, &["t"]), &FuncField::new(&cfg, &["u"])).unwrap();
    let a = entry(&mut rng, e.base());
    let x = sym(&[a.clone()]);
    let r = e.restrict(&x).unwrap();
    assert!(zero_in_kn(&e.one_minus_sigma(&r).unwrap()));
    // norm ∘ restriction is multiplication by p.
    let back = e.norm_proj(&r).unwrap();
    assert!(kn_equal(&back, &x.scale(p as i64)).unwrap());
    let deg = rng.gen_range(1..=2);
    let l = random::nonconstant_ratfunc(&mut rng, e.ext(), deg);
    let nl = e.norm(&l).unwrap();
    assert_eq!(e.sigma(&e.embed(&nl).unwrap()).unwrap(), e.embed(&nl).unwrap());
    assert!(e.in_base(&e.embed(&nl).unwrap()).unwrap());
}

#[test]
fn examples() {
    let field = FuncField::new(&gf_make(2, 1).unwrap(), &["x", "y"]);
    let x = RatFunc::var(&field, 0);
    let y = RatFunc::var(&field, 1);
    assert_eq!(d_symbol(&sym(&[x.clone(), y.clone()])).unwrap().render(), "(1/(x*y)) dx^dy");
    // In characteristic 2, {x, y} = {y, x}.
    assert!(zero_in_kn(&sym(&[x.clone(), y.clone()]).try_sub(&sym(&[y.clone(), x.clone()])).unwrap()));
    assert!(matches!(MilnorElement::symbol(&[RatFunc::zero(&field)]), Err(Error::InvalidArgument(_))));
    let t = FuncField::new(&gf_make(2, 1).unwrap(), &["t"]);
    let mixed = MilnorElement::symbol(&[x.clone()]).unwrap().try_add(&sym(&[RatFunc::var(&t, 0)]));
    assert!(matches!(mixed, Err(Error::ConfigMismatch(_))));
    // Degree above the number of variables: every symbol is zero in k_n.
    assert!(zero_in_kn(&sym(&[x.clone(), y.clone(), &x + &y])));
}

proptest! {
    #![proptest_config(ProptestConfig { failure_persistence: None, ..ProptestConfig::with_cases(200) })]

    #[test]
    fn relations_die_under_d_log(seed in any::<u64>(), which in 0..6usize) {
        check_relations(seed, &fields()[which]);
    }
}

proptest! {
    #![proptest_config(ProptestConfig { failure_persistence: None, ..ProptestConfig::with_cases(40) })]

    #[test]
    fn restriction_is_sigma_invariant(seed in any::<u64>()) {
        check_restriction(seed, 2);
        check_restriction(seed, 3);
    }
}
