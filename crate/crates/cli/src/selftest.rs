//! Randomized consistency checks run by `katoforge selftest`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use katoforge::algebra::Ring;
use katoforge::finite_fields::gf_make;
use katoforge::forms::DiffForm;
use katoforge::function_fields::FuncField;
use katoforge::kato::{h_build, reciprocity_check};
use katoforge::milnor::{d_symbol, MilnorElement};
use katoforge::random;
use katoforge::witt::witt_trace;
use katoforge::Result;

pub const TRIALS: usize = 20;

/// Name of a check and whether every trial passed.
pub type Check = (&'static str, bool);

fn witt_ring(rng: &mut ChaCha8Rng) -> Result<bool> {
    let cfg = gf_make(2, 2)?;
    for _ in 0..TRIALS {
        let [a, b, c] = [0; 3].map(|_| random::witt_gf(rng, &cfg, 3));
        let assoc = a.mul(&b).mul(&c) == a.mul(&b.mul(&c));
        let dist = a.mul(&b.add(&c)) == a.mul(&b).add(&a.mul(&c));
        let fv = a.verschiebung().frobenius() == a.scale_int(2);
        if !(assoc && dist && fv) {
            return Ok(false);
        }
    }
    Ok(true)
}

fn artin_schreier(rng: &mut ChaCha8Rng) -> Result<bool> {
    let cfg = gf_make(3, 2)?;
    for _ in 0..TRIALS {
        let w = random::witt_gf(rng, &cfg, 2);
        let solvable = katoforge::witt::witt_as_solve(&w);
        if solvable.is_some() != (witt_trace(&w).value == 0) {
            return Ok(false);
        }
        if solvable.is_some_and(|v| v.wp() != w) {
            return Ok(false);
        }
    }
    Ok(true)
}

fn reciprocity(rng: &mut ChaCha8Rng) -> Result<bool> {
    for (p, e, level) in [(2, 1, 1), (3, 1, 1), (2, 2, 1), (2, 1, 2)] {
        let field = FuncField::new(&gf_make(p, e)?, &["t"]);
        for _ in 0..TRIALS / 4 {
            let w = random::witt_ratfunc(rng, &field, level, 2);
            let b = random::nonconstant_ratfunc(rng, &field, 2);
            if !reciprocity_check(&h_build(&w, &[b])?)?.holds {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

fn cartier(rng: &mut ChaCha8Rng) -> Result<bool> {
    let field = FuncField::new(&gf_make(3, 1)?, &["x", "y"]);
    for _ in 0..TRIALS {
        let n = rng.gen_range(0..=2);
        let w = random::form(rng, &field, n, 2);
        if w.cartier_inv().cartier()? != w || !w.d().d().is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

fn steinberg(rng: &mut ChaCha8Rng) -> Result<bool> {
    let field = FuncField::new(&gf_make(2, 1)?, &["t"]);
    for _ in 0..TRIALS {
        let a = random::nonconstant_ratfunc(rng, &field, 2);
        let one_minus = Ring::sub(&a.one_like(), &a);
        let s = MilnorElement::symbol(&[a, one_minus])?;
        if !d_symbol(&s)?.is_zero() {
            return Ok(false);
        }
        let b = random::nonconstant_ratfunc(rng, &field, 2);
        let form = d_symbol(&MilnorElement::symbol(&[b.clone()])?)?;
        if !form.nu_test() || form != DiffForm::dlog(&b)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Run every check from one seed.
pub fn run(seed: u64) -> Result<Vec<Check>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Ok(vec![
        ("witt ring laws in W_3(F_4)", witt_ring(&mut rng)?),
        ("Artin-Schreier-Witt solvability in W_2(F_9)", artin_schreier(&mut rng)?),
        ("reciprocity over F_q(t)", reciprocity(&mut rng)?),
        ("Cartier inverse and d^2 over F_3(x, y)", cartier(&mut rng)?),
        ("Steinberg relation under dlog", steinberg(&mut rng)?),
    ])
}
