//! Random elements for property tests and the self-test command.

use std::sync::Arc;

use rand::Rng;

use crate::algebra::{Ring, UPoly};
use crate::finite_fields::{GFConfig, GFElem};
use crate::forms::DiffForm;
use crate::function_fields::{FuncField, Laurent, MPoly, Monomial, RatFunc};
use crate::witt::WittVector;

pub fn gf_elem(rng: &mut impl Rng, cfg: &Arc<GFConfig>) -> GFElem {
    GFElem::from_index(cfg, rng.gen_range(0..cfg.order()))
}

pub fn gf_nonzero(rng: &mut impl Rng, cfg: &Arc<GFConfig>) -> GFElem {
    GFElem::from_index(cfg, rng.gen_range(1..cfg.order()))
}

/// Polynomial of degree at most `deg`.
pub fn upoly(rng: &mut impl Rng, cfg: &Arc<GFConfig>, deg: usize) -> UPoly<GFElem> {
    let coeffs = (0..=deg).map(|_| gf_elem(rng, cfg)).collect();
    UPoly::new(coeffs, &GFElem::zero(cfg))
}

/// Monic polynomial of degree exactly `deg`.
pub fn monic(rng: &mut impl Rng, cfg: &Arc<GFConfig>, deg: usize) -> UPoly<GFElem> {
    let mut coeffs: Vec<GFElem> = (0..deg).map(|_| gf_elem(rng, cfg)).collect();
    coeffs.push(GFElem::one(cfg));
    UPoly::new(coeffs, &GFElem::zero(cfg))
}

/// Polynomial with at most `terms` terms of total degree at most `deg`.
pub fn mpoly(rng: &mut impl Rng, field: &Arc<FuncField>, deg: u32, terms: usize) -> MPoly {
    let n = field.nvars();
    let base = field.base();
    let mut out = MPoly::zero(base, n);
    for _ in 0..terms {
        let mut exps = vec![0u32; n];
        let mut budget = rng.gen_range(0..=deg);
        for e in exps.iter_mut() {
            let k = rng.gen_range(0..=budget);
            *e = k;
            budget -= k;
        }
        out = out.add(&MPoly::term(base, gf_elem(rng, base), Monomial(exps)));
    }
    out
}

/// Rational function with numerator and denominator of degree at most `deg`.
pub fn ratfunc(rng: &mut impl Rng, field: &Arc<FuncField>, deg: u32) -> RatFunc {
    let num = mpoly(rng, field, deg, 3);
    let mut den = mpoly(rng, field, deg, 2);
    if den.is_zero() {
        den = MPoly::one(field.base(), field.nvars());
    }
    RatFunc::new(field, num, den).expect("nonzero denominator")
}

pub fn nonzero_ratfunc(rng: &mut impl Rng, field: &Arc<FuncField>, deg: u32) -> RatFunc {
    loop {
        let f = ratfunc(rng, field, deg);
        if !f.is_zero() {
            return f;
        }
    }
}

/// Nonconstant nonzero rational function.
pub fn nonconstant_ratfunc(rng: &mut impl Rng, field: &Arc<FuncField>, deg: u32) -> RatFunc {
    loop {
        let f = ratfunc(rng, field, deg.max(1));
        if !f.is_zero() && !f.is_constant() {
            return f;
        }
    }
}

pub fn witt_ratfunc(rng: &mut impl Rng, field: &Arc<FuncField>, level: usize, deg: u32) -> WittVector<RatFunc> {
    let coords = (0..level).map(|_| ratfunc(rng, field, deg)).collect();
    WittVector::new(coords).expect("supported level")
}

pub fn witt_gf(rng: &mut impl Rng, cfg: &Arc<GFConfig>, level: usize) -> WittVector<GFElem> {
    let coords = (0..level).map(|_| gf_elem(rng, cfg)).collect();
    WittVector::new(coords).expect("supported level")
}

/// Series `Σ_{k=val}^{prec-1} c_k t^k` with random coefficients.
pub fn laurent(rng: &mut impl Rng, cfg: &Arc<GFConfig>, val: i64, prec: i64) -> Laurent<GFElem> {
    let coeffs = (val..prec).map(|_| gf_elem(rng, cfg)).collect();
    Laurent::new(val, coeffs, prec, &GFElem::zero(cfg))
}

/// A unit of `F_q[[t]]` known modulo `t^prec`.
pub fn laurent_unit(rng: &mut impl Rng, cfg: &Arc<GFConfig>, prec: i64) -> Laurent<GFElem> {
    let head = Laurent::constant(gf_nonzero(rng, cfg));
    Ring::add(&head, &laurent(rng, cfg, 1, prec))
}

/// Every increasing index sequence of length `n` from `0..k`.
pub fn index_sets(k: usize, n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for rest in index_sets(k, n - 1) {
        let start = rest.last().map_or(0, |&l| l + 1);
        for v in start..k {
            let mut idx = rest.clone();
            idx.push(v);
            out.push(idx);
        }
    }
    out
}

/// A random `n`-form with coefficients of degree at most `deg`.
pub fn form(rng: &mut impl Rng, field: &Arc<FuncField>, n: usize, deg: u32) -> DiffForm {
    let mut acc = DiffForm::vanishing(field, n);
    for idx in index_sets(field.nvars(), n) {
        let f = ratfunc(rng, field, deg);
        acc = acc.add(&DiffForm::monomial(&f, &idx).expect("valid index"));
    }
    acc
}
