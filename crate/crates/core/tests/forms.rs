use std::sync::Arc;

use katoforge::finite_fields::gf_make;
use katoforge::forms::DiffForm;
use katoforge::function_fields::{FuncField, RatFunc};
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

/// A random element of `ν_n`: an `F_p`-combination of dlog wedges.
fn nu_element(rng: &mut ChaCha8Rng, field: &Arc<FuncField>, n: usize) -> DiffForm {
    let p = field.base().p() as i64;
    let mut acc = DiffForm::vanishing(field, n);
    for _ in 0..rng.gen_range(1..=2) {
        let mut w = DiffForm::function(&RatFunc::one(field));
        for _ in 0..n {
            let f = random::nonconstant_ratfunc(rng, field, 2);
            w = w.wedge(&DiffForm::dlog(&f).unwrap()).unwrap();
        }
        acc = acc.add(&w.scale_int(rng.gen_range(1..p)));
    }
    acc
}

fn check_calculus(seed: u64, field: &Arc<FuncField>) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let k = field.nvars();
    for a in 0..=k {
        let w = random::form(&mut rng, field, a, 2);
        assert!(w.d().d().is_zero());
        for b in 0..=k - a {
            let v = random::form(&mut rng, field, b, 2);
            let sign = if (a * b) % 2 == 1 { -1 } else { 1 };
            assert_eq!(w.wedge(&v).unwrap(), v.wedge(&w).unwrap().scale_int(sign));
            if a + b < k {
                let lhs = w.wedge(&v).unwrap().d();
                let s = if a % 2 == 1 { -1 } else { 1 };
                let rhs = w.d().wedge(&v).unwrap().add(&w.wedge(&v.d()).unwrap().scale_int(s));
                assert_eq!(lhs, rhs);
            }
        }
    }
}

fn check_cartier(seed: u64, field: &Arc<FuncField>) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for n in 0..=field.nvars() {
        let w = random::form(&mut rng, field, n, 2);
        let lifted = w.cartier_inv();
        assert!(lifted.is_closed());
        assert_eq!(lifted.cartier().unwrap(), w);
        if n > 0 {
            let eta = random::form(&mut rng, field, n - 1, 2);
            let exact = eta.d();
            assert!(exact.cartier().unwrap().is_zero());
            assert!(exact.is_exact());
            assert_eq!(lifted.add(&exact).cartier().unwrap(), w);
        }
    }
}

/// `ω ∈ ν_n` iff `C⁻¹ω − ω` is exact, against closed-and-Cartier-fixed.
fn check_nu(seed: u64, field: &Arc<FuncField>) -> usize {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = rng.gen_range(1..=field.nvars());
    let w = match rng.gen_range(0..3) {
        0 => random::form(&mut rng, field, n, 2),
        1 => nu_element(&mut rng, field, n),
        _ => {
            let eta = random::form(&mut rng, field, n - 1, 1);
            nu_element(&mut rng, field, n).add(&eta.d())
        }
    };
    let via_phi = w.cartier_inv().sub(&w).is_exact();
    assert_eq!(via_phi, w.nu_test(), "{}", w.render());
    usize::from(via_phi)
}

#[test]
fn examples() {
    let field = FuncField::new(&gf_make(2, 1).unwrap(), &["t"]);
    let t = RatFunc::var(&field, 0);
    let w = DiffForm::dlog(&t).unwrap();
    assert_eq!(w.render(), "(1/t) dt");
    assert!(w.nu_test());
    assert!(!DiffForm::dx(&field, 0).unwrap().nu_test());
    assert!(DiffForm::dx(&field, 0).unwrap().is_exact());
    assert!(matches!(DiffForm::dlog(&RatFunc::zero(&field)), Err(Error::DlogOfZero)));
    assert!(matches!(DiffForm::zero(&field, 2), Err(Error::DegreeOverflow(2, 1))));
    let xy = FuncField::new(&gf_make(3, 1).unwrap(), &["x", "y"]);
    let x = RatFunc::var(&xy, 0);
    let not_closed = DiffForm::monomial(&x, &[1]).unwrap();
    assert!(matches!(not_closed.cartier(), Err(Error::NotClosed(_))));
    assert!(DiffForm::monomial(&x, &[0, 0]).unwrap().is_zero());
    assert_eq!(DiffForm::monomial(&x, &[1, 0]).unwrap(), DiffForm::monomial(&x, &[0, 1]).unwrap().neg());
}

#[test]
fn nu_characterizations_agree() {
    let mut positives = 0;
    for (k, field) in fields().iter().enumerate() {
        for s in 0..300u64 {
            positives += check_nu(s * 7 + k as u64, field);
        }
    }
    assert!(positives > 100);
}

proptest! {
    #![proptest_config(ProptestConfig { failure_persistence: None, ..ProptestConfig::with_cases(30) })]

    #[test]
    fn exterior_calculus(seed in any::<u64>()) {
        for field in fields() {
            check_calculus(seed, &field);
        }
    }

    #[test]
    fn cartier_operator(seed in any::<u64>()) {
        for field in fields() {
            check_cartier(seed, &field);
        }
    }

    #[test]
    fn dlog_wedges_are_logarithmic(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for field in fields() {
            for n in 1..=field.nvars() {
                prop_assert!(nu_element(&mut rng, &field, n).nu_test());
            }
        }
    }
}
