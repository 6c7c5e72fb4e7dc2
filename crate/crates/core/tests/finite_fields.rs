use std::sync::Arc;

use katoforge::algebra::{CharP, Ring};
use katoforge::finite_fields::*;
use katoforge::random;
use katoforge::Error;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const FIELDS: [(u64, usize); 8] = [(2, 1), (2, 3), (2, 8), (3, 1), (3, 4), (5, 2), (7, 3), (101, 1)];

fn check_axioms(seed: u64, cfg: &Arc<GFConfig>) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let a = random::gf_elem(&mut rng, cfg);
    let b = random::gf_elem(&mut rng, cfg);
    let c = random::gf_elem(&mut rng, cfg);
    let zero = GFElem::zero(cfg);
    let one = GFElem::one(cfg);
    assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
    assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
    assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
    assert_eq!(&a + &b, &b + &a);
    assert_eq!(&a * &b, &b * &a);
    assert_eq!(&a + &zero, a);
    assert_eq!(&a * &one, a);
    assert!((&a - &a).is_zero());
    if !a.is_zero() {
        assert_eq!(&a * &a.inv().unwrap(), one);
        assert_eq!(gf_arith(&b, &a, GfOp::Div).unwrap(), &b * &a.inv().unwrap());
        assert_eq!(a.pow_int(-3).unwrap(), a.inv().unwrap().pow_int(3).unwrap());
    }
    // Frobenius is a ring automorphism and the trace is Frobenius-invariant.
    assert_eq!((&a + &b).frobenius(), &a.frobenius() + &b.frobenius());
    assert_eq!((&a * &b).frobenius(), &a.frobenius() * &b.frobenius());
    assert_eq!(a.frobenius().trace(), a.trace());
    assert!(a.trace().is_prime_field_elem());
    assert_eq!(gf_pth_root(&a).frobenius(), a);
    assert_eq!(gf_pth_root(&a.frobenius()), a);
    assert_eq!(Ring::pow(&a, cfg.order()), a);
}

#[test]
fn frobenius_permutes_the_field() {
    for (p, e) in [(2, 4), (3, 3), (5, 2)] {
        let cfg = gf_make(p, e).unwrap();
        let mut images: Vec<u64> = GFElem::all(&cfg).map(|a| a.frobenius().index()).collect();
        images.sort_unstable();
        assert_eq!(images, (0..cfg.order()).collect::<Vec<_>>());
    }
}

#[test]
fn artin_schreier_iff_trace_zero() {
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61] {
        let mut e = 1;
        while p * e as u64 <= 64 && p.pow(e as u32) <= 1 << 12 {
            let cfg = gf_make(p, e).unwrap();
            let mut image = vec![false; cfg.order() as usize];
            for x in GFElem::all(&cfg) {
                image[(&Ring::pow(&x, p) - &x).index() as usize] = true;
            }
            for c in GFElem::all(&cfg) {
                let sol = gf_as_solve(&c);
                assert_eq!(sol.is_some(), c.trace_int() == 0, "p={p} e={e} c={c:?}");
                assert_eq!(sol.is_some(), image[c.index() as usize]);
                if let Some(x) = sol {
                    assert_eq!(&Ring::pow(&x, p) - &x, c);
                }
            }
            e += 1;
        }
    }
}

#[test]
fn construction_errors() {
    assert!(matches!(gf_make(4, 1), Err(Error::NonPrime(4))));
    assert!(matches!(gf_make(2, 21), Err(Error::ResourceBound(_))));
    let a = GFElem::one(&gf_make(2, 2).unwrap());
    let b = GFElem::one(&gf_make(2, 3).unwrap());
    assert!(matches!(a.try_add(&b), Err(Error::ConfigMismatch(_))));
    assert!(matches!(GFElem::zero(&gf_make(3, 1).unwrap()).inv(), Err(Error::DivisionByZero)));
}

#[test]
fn multiplicative_group_is_cyclic() {
    let cfg = gf_make(3, 3).unwrap();
    let g = GFElem::generator(&cfg);
    let mut seen = std::collections::BTreeSet::new();
    let mut x = GFElem::one(&cfg);
    for _ in 0..cfg.order() - 1 {
        seen.insert(x.index());
        x = &x * &g;
    }
    assert_eq!(seen.len() as u64, cfg.order() - 1);
}

proptest! {
    #![proptest_config(ProptestConfig { failure_persistence: None, ..ProptestConfig::with_cases(64) })]

    #[test]
    fn field_axioms(seed in any::<u64>()) {
        for (p, e) in FIELDS {
            check_axioms(seed, &gf_make(p, e).unwrap());
        }
    }
}
