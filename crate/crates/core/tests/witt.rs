use std::collections::HashSet;
use std::sync::Arc;

use katoforge::finite_fields::{gf_make, GFConfig, GFElem};
use katoforge::function_fields::FuncField;
use katoforge::galois_ring::gr_from;
use katoforge::random;
use katoforge::witt::cache::*;
use katoforge::witt::structure::check_bounds;
use katoforge::witt::*;
use katoforge::Error;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// `(p, e, i)` with `p ∈ {2, 3}`, `i ≤ 3`, `q ∈ {p, p²}`.
const RING_CASES: [(u64, usize, usize); 12] =
    [(2, 1, 1), (2, 1, 2), (2, 1, 3), (2, 2, 1), (2, 2, 2), (2, 2, 3), (3, 1, 1), (3, 1, 2), (3, 1, 3), (3, 2, 1), (3, 2, 2), (3, 2, 3)];

fn check_ring_laws(seed: u64, p: u64, e: usize, i: usize) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let cfg = gf_make(p, e).unwrap();
    let a = random::witt_gf(&mut rng, &cfg, i);
    let b = random::witt_gf(&mut rng, &cfg, i);
    let c = random::witt_gf(&mut rng, &cfg, i);
    let zero = WittVector::zero(&GFElem::zero(&cfg), i).unwrap();
    let one = WittVector::one(&GFElem::zero(&cfg), i).unwrap();
    assert_eq!(a.add(&b).add(&c), a.add(&b.add(&c)));
    assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
    assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
    assert_eq!(a.add(&b), b.add(&a));
    assert_eq!(a.mul(&b), b.mul(&a));
    assert_eq!(a.add(&zero), a);
    assert_eq!(a.mul(&one), a);
    assert!(a.add(&a.neg()).is_zero());
    assert_eq!(a.sub(&b).add(&b), a);
    assert_eq!(a.scale_int(3), a.add(&a).add(&a));
    // F is a ring endomorphism, and F V = V F = p.
    assert_eq!(a.add(&b).frobenius(), a.frobenius().add(&b.frobenius()));
    assert_eq!(a.mul(&b).frobenius(), a.frobenius().mul(&b.frobenius()));
    assert_eq!(a.verschiebung().frobenius(), a.scale_int(p as i64));
    assert_eq!(a.frobenius().verschiebung(), a.scale_int(p as i64));
    assert_eq!(witt_maps(&a, WittMap::Wp), a.frobenius().sub(&a));
    // V is additive and satisfies the projection formula x · V y = V(F x · y).
    assert_eq!(a.add(&b).verschiebung(), a.verschiebung().add(&b.verschiebung()));
    assert_eq!(a.mul(&b.verschiebung()), a.frobenius().mul(&b).verschiebung());
    // Teichmüller lifts are multiplicative.
    let (x, y) = (random::gf_elem(&mut rng, &cfg), random::gf_elem(&mut rng, &cfg));
    let tx = WittVector::teichmuller(&x, i).unwrap();
    let ty = WittVector::teichmuller(&y, i).unwrap();
    assert_eq!(tx.mul(&ty), WittVector::teichmuller(&(&x * &y), i).unwrap());
    // The Galois ring picture is a ring isomorphism.
    let gr = gr_from(p, e, i as u32).unwrap();
    let (ga, gb) = (witt_to_gr(&a, &gr), witt_to_gr(&b, &gr));
    assert_eq!(witt_to_gr(&a.add(&b), &gr), &ga + &gb);
    assert_eq!(witt_to_gr(&a.mul(&b), &gr), &ga * &gb);
    assert_eq!(gr_to_witt(&ga).unwrap(), a);
}

fn check_function_field(seed: u64, p: u64, i: usize) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let field = FuncField::new(&gf_make(p, 1).unwrap(), &["t"]);
    let a = random::witt_ratfunc(&mut rng, &field, i, 2);
    let b = random::witt_ratfunc(&mut rng, &field, i, 2);
    let c = random::witt_ratfunc(&mut rng, &field, i, 1);
    assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
    assert_eq!(a.verschiebung().frobenius(), a.scale_int(p as i64));
    assert_eq!(a.add(&b).wp(), a.wp().add(&b.wp()));
}

/// Every element of `W_i(F_q)`.
fn all_vectors(cfg: &Arc<GFConfig>, i: usize) -> Vec<WittVector<GFElem>> {
    let q = cfg.order();
    (0..q.pow(i as u32))
        .map(|mut n| {
            let coords = (0..i)
                .map(|_| {
                    let c = GFElem::from_index(cfg, n % q);
                    n /= q;
                    c
                })
                .collect();
            WittVector::new(coords).unwrap()
        })
        .collect()
}

fn key(w: &WittVector<GFElem>) -> Vec<u64> {
    w.coords().iter().map(GFElem::index).collect()
}

#[test]
fn artin_schreier_exhaustive() {
    let mut covered = 0;
    for p in [2u64, 3, 5, 7, 11, 13] {
        for e in 1..=8usize {
            for i in 1..=8usize {
                let size = p.checked_pow((e * i) as u32).unwrap_or(u64::MAX);
                if size > 256 || check_bounds(p, i).is_err() {
                    continue;
                }
                let cfg = gf_make(p, e).unwrap();
                let all = all_vectors(&cfg, i);
                let image: HashSet<Vec<u64>> = all.iter().map(|v| key(&v.wp())).collect();
                // W_i(F_q)/℘ has p^i classes.
                assert_eq!(all.len() / image.len(), p.pow(i as u32) as usize, "p={p} e={e} i={i}");
                for v in &all {
                    let sol = witt_as_solve(v);
                    assert_eq!(sol.is_some(), image.contains(&key(v)));
                    assert_eq!(sol.is_some(), witt_trace(v).value == 0);
                    if let Some(w) = sol {
                        assert_eq!(&w.wp(), v);
                    }
                }
                covered += 1;
            }
        }
    }
    assert!(covered >= 15);
}

#[test]
fn unit_has_order_p_to_the_i() {
    for (p, i) in [(2, 1), (2, 3), (2, 5), (3, 2), (3, 4), (5, 3), (7, 2)] {
        let cfg = gf_make(p, 1).unwrap();
        let one = WittVector::teichmuller(&GFElem::one(&cfg), i).unwrap();
        let m = p.pow(i as u32) as i64;
        assert!(one.scale_int(m).is_zero());
        assert!(!one.scale_int(m / p as i64).is_zero());
        let (value, modulus) = prime_witt_to_int(&one.scale_int(m - 1));
        assert_eq!((value, modulus), (m as u64 - 1, m as u64));
        assert_eq!(int_to_prime_witt(p, i, -1).unwrap(), one.neg());
    }
}

#[test]
fn ghost_identities() {
    for (p, i) in [(2, 1), (2, 2), (2, 3), (2, 4), (3, 1), (3, 2), (3, 3), (5, 2), (5, 3), (7, 2), (31, 2)] {
        let st = WittStructure::compute(p, i).unwrap();
        assert!(st.ghost_identities_hold(), "p={p} i={i}");
    }
}

#[test]
fn bounds() {
    assert!(matches!(WittStructure::compute(2, 7), Err(Error::ResourceBound(_))));
    assert!(matches!(witt_structure(37, 2), Err(Error::ResourceBound(_))));
    assert!(matches!(witt_structure(6, 2), Err(Error::NonPrime(6))));
    let a = WittVector::one(&GFElem::zero(&gf_make(2, 1).unwrap()), 2).unwrap();
    let b = WittVector::one(&GFElem::zero(&gf_make(2, 1).unwrap()), 3).unwrap();
    assert!(matches!(witt_arith(&a, &b, WittOp::Add), Err(Error::ConfigMismatch(_))));
}

#[test]
fn cache_round_trip_and_corruption() {
    let dir = tempfile::tempdir().unwrap();
    let st = WittStructure::compute(3, 3).unwrap();
    let path = write_cache_file(dir.path(), &st).unwrap();
    assert_eq!(path.file_name().unwrap().to_str(), Some("wittpoly-v1-p3-i3.txt"));
    assert_eq!(read_cache_file(&path, 3, 3).unwrap(), st);
    verify_cache_file(&path, 3, 3).unwrap();
    assert!(matches!(read_cache_file(&path, 3, 2), Err(Error::CacheFormat { .. })));

    let text = std::fs::read_to_string(&path).unwrap();
    let flipped = text.replacen("S 1 ", "S 1 9", 1);
    std::fs::write(&path, flipped).unwrap();
    assert!(matches!(verify_cache_file(&path, 3, 3), Err(Error::VerifyMismatch(_))));
    std::fs::write(&path, "garbage\n").unwrap();
    assert!(matches!(read_cache_file(&path, 3, 3), Err(Error::CacheFormat { .. })));
    // No stray temporary files are left behind.
    let names: Vec<_> = std::fs::read_dir(dir.path()).unwrap().map(|e| e.unwrap().file_name()).collect();
    assert_eq!(names.len(), 1);
}

#[test]
fn concurrent_first_use_shares_one_structure() {
    let handles: Vec<_> = (0..8).map(|_| std::thread::spawn(|| witt_structure(5, 2).unwrap())).collect();
    let all: Vec<_> = handles.into_iter().map(|h| h.join().unwrap()).collect();
    assert!(all.iter().all(|s| Arc::ptr_eq(s, &all[0])));
}

proptest! {
    #![proptest_config(ProptestConfig { failure_persistence: None, ..ProptestConfig::with_cases(500) })]

    #[test]
    fn ring_laws(seed in any::<u64>(), case in 0..RING_CASES.len()) {
        let (p, e, i) = RING_CASES[case];
        check_ring_laws(seed, p, e, i);
    }
}

proptest! {
    #![proptest_config(ProptestConfig { failure_persistence: None, ..ProptestConfig::with_cases(30) })]

    #[test]
    fn over_function_fields(seed in any::<u64>()) {
        check_function_field(seed, 2, 2);
        check_function_field(seed, 3, 2);
        check_function_field(seed, 2, 3);
    }
}
