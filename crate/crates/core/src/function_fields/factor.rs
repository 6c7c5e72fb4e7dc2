//! Univariate factorization over `F_q`: squarefree split, distinct-degree,
//! then equal-degree splitting.

use std::collections::BTreeMap;

use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::UPoly;
use crate::error::{Error, Result};
use crate::finite_fields::GFElem;

type Poly = UPoly<GFElem>;

const EDF_SEED: u64 = 0x6b61_746f;

/// `f = unit · Π factor^multiplicity` with monic irreducible factors.
#[derive(Clone, Debug, PartialEq)]
pub struct Factorization {
    pub unit: GFElem,
    pub factors: Vec<(Poly, u32)>,
}

impl Factorization {
    pub fn expand(&self) -> Poly {
        let mut acc = Poly::constant(self.unit.clone());
        for (f, m) in &self.factors {
            acc = acc.mul(&f.pow(*m as u64));
        }
        acc
    }
}

/// Sort key: degree, then coefficient indices from the top down.
pub fn poly_key(f: &Poly) -> (usize, Vec<u64>) {
    (f.coeffs().len(), f.coeffs().iter().rev().map(GFElem::index).collect())
}

pub fn factor_univariate(f: &Poly) -> Result<Factorization> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let unit = f.lead();
    let monic = f.monic().expect("field coefficients");
    let mut acc: BTreeMap<(usize, Vec<u64>), (Poly, u32)> = BTreeMap::new();
    for (sqf, mult) in squarefree(&monic) {
        for (deg, part) in distinct_degree(&sqf) {
            for g in equal_degree(&part, deg) {
                acc.entry(poly_key(&g)).or_insert_with(|| (g, 0)).1 += mult;
            }
        }
    }
    Ok(Factorization { unit, factors: acc.into_values().collect() })
}

fn pth_root_poly(f: &Poly) -> Poly {
    let p = f.template().config().p() as usize;
    let coeffs: Vec<GFElem> = f.coeffs().iter().step_by(p).map(GFElem::pth_root).collect();
    Poly::new(coeffs, f.template())
}

/// Squarefree decomposition of a monic polynomial: pairs `(g, m)` with the
/// `g` squarefree and `f = Π g^m`.
pub fn squarefree(f: &Poly) -> Vec<(Poly, u32)> {
    let mut out = Vec::new();
    if f.degree().unwrap_or(0) == 0 {
        return out;
    }
    let p = f.template().config().p() as u32;
    let df = f.derivative();
    if df.is_zero() {
        for (g, m) in squarefree(&pth_root_poly(f)) {
            out.push((g, m * p));
        }
        return out;
    }
    let mut c = f.gcd(&df);
    let mut w = f.div_rem(&c).expect("monic").0;
    let mut i = 1;
    while w.degree().unwrap_or(0) > 0 {
        let y = w.gcd(&c);
        let z = w.div_rem(&y).expect("monic").0;
        if z.degree().unwrap_or(0) > 0 {
            out.push((z, i));
        }
        i += 1;
        c = c.div_rem(&y).expect("monic").0;
        w = y;
    }
    if c.degree().unwrap_or(0) > 0 {
        for (g, m) in squarefree(&pth_root_poly(&c.monic().expect("nonzero"))) {
            out.push((g, m * p));
        }
    }
    out
}

/// Split a squarefree monic polynomial into products of irreducibles of equal degree.
pub fn distinct_degree(f: &Poly) -> Vec<(usize, Poly)> {
    let q = BigUint::from(f.template().config().order());
    let x = Poly::x(f.template());
    let mut rest = f.clone();
    let mut h = x.clone();
    let mut out = Vec::new();
    let mut d = 1;
    while rest.degree().unwrap_or(0) >= 2 * d {
        h = h.pow_mod(&q, &rest).expect("monic modulus");
        let g = h.sub(&x).gcd(&rest);
        if g.degree().unwrap_or(0) > 0 {
            rest = rest.div_rem(&g).expect("monic").0;
            h = h.rem(&rest).expect("monic");
            out.push((d, g));
        }
        d += 1;
    }
    if let Some(k) = rest.degree().filter(|&k| k > 0) {
        out.push((k, rest));
    }
    out
}

/// Cantor–Zassenhaus splitting of a product of degree-`d` irreducibles.
pub fn equal_degree(f: &Poly, d: usize) -> Vec<Poly> {
    let n = f.degree().unwrap_or(0);
    if n == 0 {
        return Vec::new();
    }
    if n == d {
        return vec![f.clone()];
    }
    let cfg = f.template().config().clone();
    let p = cfg.p();
    let q = cfg.order();
    let mut rng = ChaCha8Rng::seed_from_u64(EDF_SEED ^ n as u64);
    loop {
        let coeffs: Vec<GFElem> = (0..n).map(|_| GFElem::from_index(&cfg, rng.gen_range(0..q))).collect();
        let a = Poly::new(coeffs, f.template());
        if a.degree().unwrap_or(0) == 0 {
            continue;
        }
        let b = if p == 2 {
            // Absolute trace a + a^2 + … + a^{2^{k d - 1}} mod f.
            let steps = cfg.degree() * d;
            let mut cur = a.clone();
            let mut acc = a.clone();
            for _ in 1..steps {
                cur = cur.mul_mod(&cur, f).expect("monic");
                acc = acc.add(&cur);
            }
            acc
        } else {
            let e = (BigUint::from(q).pow(d as u32) - 1u32) / 2u32;
            a.pow_mod(&e, f).expect("monic").sub(&Poly::one(f.template()))
        };
        let g = b.gcd(f);
        let k = g.degree().unwrap_or(0);
        if k > 0 && k < n {
            let h = f.div_rem(&g).expect("monic").0;
            let mut out = equal_degree(&g, d);
            out.extend(equal_degree(&h, d));
            return out;
        }
    }
}

/// Rabin-style irreducibility test.
pub fn is_irreducible(f: &Poly) -> bool {
    let n = match f.degree() {
        Some(n) if n >= 1 => n,
        _ => return false,
    };
    let f = f.monic().expect("nonzero");
    let q = BigUint::from(f.template().config().order());
    let x = Poly::x(f.template());
    let mut h = x.clone();
    for _ in 0..n / 2 {
        h = h.pow_mod(&q, &f).expect("monic");
        if h.sub(&x).gcd(&f).degree().unwrap_or(0) > 0 {
            return false;
        }
    }
    true
}
