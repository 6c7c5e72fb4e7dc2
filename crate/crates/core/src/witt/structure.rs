//! Universal Witt addition and multiplication polynomials.
//!
//! `S_n` and `P_n` are obtained from the ghost recursion
//! `Σ_{j≤n} p^j S_j^{p^{n-j}} = w_n(a) + w_n(b)` (resp. `w_n(a) w_n(b)`),
//! dividing by `p^n` exactly at every step. Variables are ordered
//! `a_0, …, a_{i-1}, b_0, …, b_{i-1}`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::algebra::{is_prime, Ring};
use crate::error::{Error, Result};

/// Largest supported `p^{i-1}`; beyond it the polynomials grow too large.
pub const MAX_PI: u64 = 32;

/// Sparse integer polynomial keyed by exponent vectors.
pub type IntPoly = BTreeMap<Vec<u32>, BigInt>;

/// The same polynomial reduced mod `p`, zero terms dropped.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModPoly {
    pub terms: Vec<(Vec<u32>, u64)>,
}

fn poly_add_assign(a: &mut IntPoly, b: &IntPoly, sign: i32) {
    for (m, c) in b {
        let entry = a.entry(m.clone()).or_insert_with(BigInt::zero);
        if sign >= 0 {
            *entry += c;
        } else {
            *entry -= c;
        }
        if entry.is_zero() {
            a.remove(m);
        }
    }
}

fn poly_mul(a: &IntPoly, b: &IntPoly) -> IntPoly {
    let mut out = IntPoly::new();
    for (ma, ca) in a {
        for (mb, cb) in b {
            let m: Vec<u32> = ma.iter().zip(mb).map(|(x, y)| x + y).collect();
            let entry = out.entry(m).or_insert_with(BigInt::zero);
            *entry += ca * cb;
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

fn poly_pow(a: &IntPoly, mut e: u64, nvars: usize) -> IntPoly {
    let mut acc: IntPoly = [(vec![0; nvars], BigInt::one())].into_iter().collect();
    let mut base = a.clone();
    while e > 0 {
        if e & 1 == 1 {
            acc = poly_mul(&acc, &base);
        }
        e >>= 1;
        if e > 0 {
            base = poly_mul(&base, &base);
        }
    }
    acc
}

fn poly_scale(a: &IntPoly, k: &BigInt) -> IntPoly {
    a.iter().map(|(m, c)| (m.clone(), c * k)).collect()
}

/// `w_n` of the vector whose coordinates are the variables `offset..offset+n+1`.
fn ghost(p: u64, n: usize, offset: usize, nvars: usize) -> IntPoly {
    let mut out = IntPoly::new();
    for j in 0..=n {
        let mut m = vec![0; nvars];
        m[offset + j] = p.pow((n - j) as u32) as u32;
        out.insert(m, BigInt::from(p).pow(j as u32));
    }
    out
}

/// `Σ_{j≤n} p^j X_j^{p^{n-j}}` for polynomials `X_j`.
pub fn ghost_of(p: u64, xs: &[IntPoly], n: usize, nvars: usize) -> IntPoly {
    let mut out = IntPoly::new();
    for (j, x) in xs.iter().enumerate().take(n + 1) {
        let term = poly_scale(&poly_pow(x, p.pow((n - j) as u32), nvars), &BigInt::from(p).pow(j as u32));
        poly_add_assign(&mut out, &term, 1);
    }
    out
}

fn reduce_mod(a: &IntPoly, p: u64) -> ModPoly {
    let pb = BigInt::from(p);
    let terms = a
        .iter()
        .filter_map(|(m, c)| {
            let r = c.mod_floor(&pb).to_u64().expect("small residue");
            (r != 0).then(|| (m.clone(), r))
        })
        .collect();
    ModPoly { terms }
}

/// The structure polynomials of `W_i` at the prime `p`.
#[derive(Debug, PartialEq, Eq)]
pub struct WittStructure {
    p: u64,
    i: usize,
    sum: Vec<IntPoly>,
    prod: Vec<IntPoly>,
    sum_mod: Vec<ModPoly>,
    prod_mod: Vec<ModPoly>,
}

/// Which family of structure polynomials.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    Sum,
    Product,
}

pub fn check_bounds(p: u64, i: usize) -> Result<()> {
    if !is_prime(p) {
        return Err(Error::NonPrime(p));
    }
    if i == 0 {
        return Err(Error::InvalidArgument("Witt length must be at least 1".into()));
    }
    let pi = (1..i).try_fold(1u64, |acc, _| acc.checked_mul(p)).unwrap_or(u64::MAX);
    if pi > MAX_PI {
        return Err(Error::ResourceBound(format!("W_{i} at p = {p}: p^(i-1) = {pi} exceeds {MAX_PI}")));
    }
    Ok(())
}

impl WittStructure {
    /// Solve the ghost equations from scratch.
    pub fn compute(p: u64, i: usize) -> Result<WittStructure> {
        check_bounds(p, i)?;
        let nvars = 2 * i;
        let mut sum: Vec<IntPoly> = Vec::with_capacity(i);
        let mut prod: Vec<IntPoly> = Vec::with_capacity(i);
        // Running powers X_j^{p^{n-j}} for the current n.
        let mut sum_pows: Vec<IntPoly> = Vec::new();
        let mut prod_pows: Vec<IntPoly> = Vec::new();
        for n in 0..i {
            for pw in sum_pows.iter_mut().chain(prod_pows.iter_mut()) {
                *pw = poly_pow(pw, p, nvars);
            }
            let ga = ghost(p, n, 0, nvars);
            let gb = ghost(p, n, i, nvars);
            let mut ts = ga.clone();
            poly_add_assign(&mut ts, &gb, 1);
            let mut tp = poly_mul(&ga, &gb);
            for j in 0..n {
                let pj = BigInt::from(p).pow(j as u32);
                poly_add_assign(&mut ts, &poly_scale(&sum_pows[j], &pj), -1);
                poly_add_assign(&mut tp, &poly_scale(&prod_pows[j], &pj), -1);
            }
            let pn = BigInt::from(p).pow(n as u32);
            let s = exact_div(&ts, &pn, "S", n)?;
            let m = exact_div(&tp, &pn, "P", n)?;
            sum_pows.push(s.clone());
            prod_pows.push(m.clone());
            sum.push(s);
            prod.push(m);
        }
        Ok(Self::from_parts(p, i, sum, prod))
    }

    pub(crate) fn from_parts(p: u64, i: usize, sum: Vec<IntPoly>, prod: Vec<IntPoly>) -> WittStructure {
        let sum_mod = sum.iter().map(|s| reduce_mod(s, p)).collect();
        let prod_mod = prod.iter().map(|s| reduce_mod(s, p)).collect();
        WittStructure { p, i, sum, prod, sum_mod, prod_mod }
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn length(&self) -> usize {
        self.i
    }

    pub fn polys(&self, family: Family) -> &[IntPoly] {
        match family {
            Family::Sum => &self.sum,
            Family::Product => &self.prod,
        }
    }

    pub fn polys_mod_p(&self, family: Family) -> &[ModPoly] {
        match family {
            Family::Sum => &self.sum_mod,
            Family::Product => &self.prod_mod,
        }
    }

    /// Check `w_n(S) = w_n(a) + w_n(b)` and `w_n(P) = w_n(a) w_n(b)` as integer
    /// polynomial identities for every `n < i`.
    pub fn ghost_identities_hold(&self) -> bool {
        let nvars = 2 * self.i;
        (0..self.i).all(|n| {
            let ga = ghost(self.p, n, 0, nvars);
            let gb = ghost(self.p, n, self.i, nvars);
            let mut gs = ga.clone();
            poly_add_assign(&mut gs, &gb, 1);
            ghost_of(self.p, &self.sum, n, nvars) == gs && ghost_of(self.p, &self.prod, n, nvars) == poly_mul(&ga, &gb)
        })
    }

    /// Evaluate the `n`-th polynomial of a family, reduced mod `p`, at
    /// `(a, b)` in a ring of characteristic `p`.
    pub fn eval<K: Ring>(&self, family: Family, n: usize, a: &[K], b: &[K]) -> K {
        let vars: Vec<&K> = a.iter().chain(b.iter()).collect();
        eval_mod_poly(&self.polys_mod_p(family)[n], &vars)
    }

    /// Evaluate all coordinates at once, sharing the power tables.
    pub fn eval_all<K: Ring>(&self, family: Family, a: &[K], b: &[K]) -> Vec<K> {
        let vars: Vec<&K> = a.iter().chain(b.iter()).collect();
        let polys = self.polys_mod_p(family);
        let mut tables = PowerTables::new(&vars);
        polys.iter().map(|poly| eval_with(poly, &mut tables)).collect()
    }
}

struct PowerTables<'a, K: Ring> {
    vars: Vec<&'a K>,
    pows: Vec<Vec<K>>,
}

impl<'a, K: Ring> PowerTables<'a, K> {
    fn new(vars: &[&'a K]) -> Self {
        let pows = vars.iter().map(|v| vec![v.one_like(), (*v).clone()]).collect();
        PowerTables { vars: vars.to_vec(), pows }
    }

    fn get(&mut self, v: usize, e: u32) -> &K {
        let table = &mut self.pows[v];
        while table.len() <= e as usize {
            let next = table.last().expect("nonempty").mul(self.vars[v]);
            table.push(next);
        }
        &table[e as usize]
    }
}

fn eval_with<K: Ring>(poly: &ModPoly, tables: &mut PowerTables<'_, K>) -> K {
    let zero = tables.vars[0].zero_like();
    let mut acc: Option<K> = None;
    for (m, c) in &poly.terms {
        let mut t: Option<K> = None;
        for (v, &e) in m.iter().enumerate() {
            if e == 0 {
                continue;
            }
            let f = tables.get(v, e).clone();
            t = Some(match t {
                None => f,
                Some(x) => x.mul(&f),
            });
        }
        let t = match t {
            None => zero.from_int_like(*c as i64),
            Some(x) if *c == 1 => x,
            Some(x) => x.scale_int(*c as i64),
        };
        acc = Some(match acc {
            None => t,
            Some(a) => a.add(&t),
        });
    }
    acc.unwrap_or(zero)
}

fn eval_mod_poly<K: Ring>(poly: &ModPoly, vars: &[&K]) -> K {
    let mut tables = PowerTables::new(vars);
    eval_with(poly, &mut tables)
}

fn exact_div(a: &IntPoly, d: &BigInt, which: &str, n: usize) -> Result<IntPoly> {
    let mut out = IntPoly::new();
    for (m, c) in a {
        let (q, r) = c.div_rem(d);
        if !r.is_zero() {
            return Err(Error::IntegralityViolation(format!("{which}_{n}: coefficient {c} not divisible by {d}")));
        }
        out.insert(m.clone(), q);
    }
    Ok(out)
}

/// Render an integer polynomial over `a_*, b_*` for diagnostics, e.g. `a1 + b1 + a0*b0`.
pub fn render_int_poly(poly: &IntPoly, i: usize) -> String {
    if poly.is_empty() {
        return "0".into();
    }
    let mut parts = Vec::new();
    for (m, c) in poly {
        let mono: Vec<String> = m
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(v, &e)| {
                let name = if v < i { format!("a{v}") } else { format!("b{}", v - i) };
                if e == 1 {
                    name
                } else {
                    format!("{name}^{e}")
                }
            })
            .collect();
        let coef = if c.abs().is_one() && !mono.is_empty() {
            if c.is_negative() {
                "-".to_string()
            } else {
                String::new()
            }
        } else {
            format!("{c}*")
        };
        let body = if mono.is_empty() { c.to_string() } else { format!("{coef}{}", mono.join("*")) };
        parts.push(body);
    }
    parts.join(" + ")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mono(i: usize, entries: &[(usize, u32)]) -> Vec<u32> {
        let mut m = vec![0; 2 * i];
        for &(v, e) in entries {
            m[v] = e;
        }
        m
    }

    #[test]
    fn level_zero_polynomials() {
        for p in [2, 3, 5] {
            let st = WittStructure::compute(p, 1).unwrap();
            let s0: IntPoly = [(mono(1, &[(0, 1)]), BigInt::one()), (mono(1, &[(1, 1)]), BigInt::one())].into();
            let p0: IntPoly = [(mono(1, &[(0, 1), (1, 1)]), BigInt::one())].into();
            assert_eq!(st.polys(Family::Sum)[0], s0);
            assert_eq!(st.polys(Family::Product)[0], p0);
        }
    }

    #[test]
    fn s1_at_two() {
        let st = WittStructure::compute(2, 2).unwrap();
        // S_1 = a1 + b1 - a0 b0 over Z; reduces to a1 + b1 + a0 b0 mod 2.
        let expected: IntPoly =
            [(mono(2, &[(1, 1)]), BigInt::one()), (mono(2, &[(3, 1)]), BigInt::one()), (mono(2, &[(0, 1), (2, 1)]), BigInt::from(-1))]
                .into();
        assert_eq!(st.polys(Family::Sum)[1], expected);
        assert!(st.ghost_identities_hold());
    }

    #[test]
    fn bounds() {
        assert_eq!(WittStructure::compute(4, 1), Err(Error::NonPrime(4)));
        assert!(matches!(WittStructure::compute(2, 7), Err(Error::ResourceBound(_))));
    }
}
