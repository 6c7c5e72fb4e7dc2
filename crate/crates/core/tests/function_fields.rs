use std::sync::Arc;

use katoforge::algebra::{CharP, Ring, UPoly};
use katoforge::finite_fields::{gf_make, GFConfig, GFElem};
use katoforge::function_fields::residue::residue_places;
use katoforge::function_fields::*;
use katoforge::random;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Poly = UPoly<GFElem>;

const QS: [(u64, usize); 3] = [(2, 1), (3, 1), (2, 2)];

/// Every monic polynomial of degree `d`.
fn monics(cfg: &Arc<GFConfig>, d: usize) -> Vec<Poly> {
    let q = cfg.order();
    (0..q.pow(d as u32))
        .map(|mut n| {
            let mut c = Vec::with_capacity(d + 1);
            for _ in 0..d {
                c.push(GFElem::from_index(cfg, n % q));
                n /= q;
            }
            c.push(GFElem::one(cfg));
            Poly::new(c, &GFElem::zero(cfg))
        })
        .collect()
}

/// Trial division by all monic polynomials of degree up to half.
fn irreducible_oracle(f: &Poly) -> bool {
    let n = f.degree().unwrap();
    let cfg = f.template().config().clone();
    (1..=n / 2).all(|d| monics(&cfg, d).iter().all(|g| !f.rem(g).unwrap().is_zero()))
}

fn check_factor(seed: u64, p: u64, e: usize) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let cfg = gf_make(p, e).unwrap();
    let deg = rng.gen_range(1..=5);
    let reps = rng.gen_range(0..=p + 1);
    // Force some repeated factors.
    let f = random::upoly(&mut rng, &cfg, deg).mul(&random::monic(&mut rng, &cfg, 1).pow(reps));
    if f.is_zero() {
        return;
    }
    let fac = factor_univariate(&f).unwrap();
    assert_eq!(fac.expand(), f);
    for (k, (g, m)) in fac.factors.iter().enumerate() {
        assert!(*m >= 1);
        assert!(g.is_monic());
        assert!(irreducible_oracle(g), "{g:?} reducible");
        for (h, _) in &fac.factors[k + 1..] {
            assert_ne!(g, h);
        }
    }
}

fn check_ratfunc_field(seed: u64, p: u64, e: usize, vars: &[&str]) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let field = FuncField::new(&gf_make(p, e).unwrap(), vars);
    let a = random::ratfunc(&mut rng, &field, 3);
    let b = random::nonzero_ratfunc(&mut rng, &field, 3);
    let c = random::ratfunc(&mut rng, &field, 2);
    assert_eq!(&(&a + &b) * &c, &(&a * &c) + &(&b * &c));
    assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
    assert_eq!(&rf_arith(&a, &b, RfOp::Div).unwrap() * &b, a);
    // Lowest terms with monic denominator.
    assert!(a.num().gcd(a.den()).is_constant());
    assert!(a.den().leading_coeff().is_one());
    // Frobenius is additive.
    assert_eq!((&a + &c).frobenius(), &a.frobenius() + &c.frobenius());
    // p-power decomposition recombines.
    let mut acc = RatFunc::zero(&field);
    for (pattern, g) in p_power_decompose(&a) {
        let mut term = g.frobenius();
        for (v, &k) in pattern.iter().enumerate() {
            term = &term * &Ring::pow(&RatFunc::var(&field, v), k as u64);
        }
        acc = &acc + &term;
    }
    assert_eq!(acc, a);
}

fn check_residue_theorem(seed: u64, p: u64, e: usize) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let cfg = gf_make(p, e).unwrap();
    let field = FuncField::new(&cfg, &["t"]);
    let g = random::ratfunc(&mut rng, &field, 4);
    let mut total = GFElem::zero(&cfg);
    for place in residue_places(&g).unwrap() {
        total = &total + &residue_at(&g, &place).unwrap().trace_to_base();
    }
    assert!(total.is_zero(), "g = {}", g.render());
}

fn check_expansion(seed: u64, p: u64, e: usize) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let cfg = gf_make(p, e).unwrap();
    let field = FuncField::new(&cfg, &["t"]);
    let prec = 12;
    let expand = |f: &RatFunc| {
        let (n, d) = f.univariate_parts(0).unwrap();
        Laurent::from_fraction(&n, &d, prec).unwrap()
    };
    let f = random::ratfunc(&mut rng, &field, 3);
    let g = random::nonzero_ratfunc(&mut rng, &field, 3);
    let (ef, eg) = (expand(&f), expand(&g));
    let same = |x: &Laurent<GFElem>, y: &Laurent<GFElem>| {
        let k = x.precision().min(y.precision());
        assert_eq!(x.truncated(k), y.truncated(k));
    };
    same(&expand(&(&f + &g)), &ef.add(&eg));
    same(&expand(&(&f * &g)), &ef.mul(&eg));
    same(&expand(&f.try_div(&g).unwrap()), &ef.try_div(&eg).unwrap());
    same(&expand(&f.partial(0)), &ef.derivative());
    // The Laurent residue at t = 0 agrees with the place residue.
    let at_zero = Place::Finite(Poly::x(&GFElem::zero(&cfg)));
    assert_eq!(ef.residue().unwrap(), residue_at(&f, &at_zero).unwrap().trace_to_base());
}

#[test]
fn factor_examples() {
    let cfg = gf_make(2, 1).unwrap();
    let z = GFElem::zero(&cfg);
    let o = GFElem::one(&cfg);
    // t^4 + t = t (t + 1) (t^2 + t + 1).
    let f = Poly::new(vec![z.clone(), o.clone(), z.clone(), z.clone(), o.clone()], &z);
    let fac = factor_univariate(&f).unwrap();
    let degs: Vec<usize> = fac.factors.iter().map(|(g, _)| g.degree().unwrap()).collect();
    assert_eq!(degs, vec![1, 1, 2]);
    assert!(factor_univariate(&Poly::zero(&z)).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig { failure_persistence: None, ..ProptestConfig::with_cases(40) })]

    #[test]
    fn factorization_is_correct(seed in any::<u64>()) {
        for (p, e) in [(2, 1), (3, 1), (2, 2), (5, 1)] {
            check_factor(seed, p, e);
        }
    }

    #[test]
    fn rational_functions(seed in any::<u64>()) {
        for (p, e) in QS {
            check_ratfunc_field(seed, p, e, &["t"]);
            check_ratfunc_field(seed, p, e, &["x", "y"]);
        }
    }

    #[test]
    fn expansions_are_ring_maps(seed in any::<u64>()) {
        for (p, e) in QS {
            check_expansion(seed, p, e);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig { failure_persistence: None, ..ProptestConfig::with_cases(200) })]

    #[test]
    fn residue_theorem(seed in any::<u64>()) {
        for (p, e) in QS {
            check_residue_theorem(seed, p, e);
        }
    }
}
