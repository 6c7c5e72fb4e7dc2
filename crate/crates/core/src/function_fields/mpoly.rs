//! Sparse multivariate polynomials over `F_q` in graded-lexicographic order.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::algebra::{CharP, Ring, UPoly};
use crate::finite_fields::{GFConfig, GFElem};

/// Exponent vector compared in graded-lex order.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn var(nvars: usize, v: usize) -> Self {
        let mut e = vec![0; nvars];
        e[v] = 1;
        Monomial(e)
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn div(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| self.0.cmp(&other.0))
    }
}

#[derive(Clone)]
pub struct MPoly {
    base: Arc<GFConfig>,
    nvars: usize,
    terms: BTreeMap<Monomial, GFElem>,
}

impl MPoly {
    pub fn zero(base: &Arc<GFConfig>, nvars: usize) -> Self {
        MPoly { base: base.clone(), nvars, terms: BTreeMap::new() }
    }

    pub fn constant(base: &Arc<GFConfig>, nvars: usize, c: GFElem) -> Self {
        let mut p = Self::zero(base, nvars);
        if !c.is_zero() {
            p.terms.insert(Monomial::one(nvars), c);
        }
        p
    }

    pub fn one(base: &Arc<GFConfig>, nvars: usize) -> Self {
        Self::constant(base, nvars, GFElem::one(base))
    }

    pub fn var(base: &Arc<GFConfig>, nvars: usize, v: usize) -> Self {
        Self::term(base, GFElem::one(base), Monomial::var(nvars, v))
    }

    pub fn term(base: &Arc<GFConfig>, c: GFElem, m: Monomial) -> Self {
        let nvars = m.0.len();
        let mut p = Self::zero(base, nvars);
        if !c.is_zero() {
            p.terms.insert(m, c);
        }
        p
    }

    pub fn from_terms(base: &Arc<GFConfig>, nvars: usize, terms: impl IntoIterator<Item = (Monomial, GFElem)>) -> Self {
        let mut p = Self::zero(base, nvars);
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    fn add_term(&mut self, m: Monomial, c: GFElem) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(existing) => {
                let s = Ring::add(existing, &c);
                if s.is_zero() {
                    self.terms.remove(&m);
                } else {
                    *existing = s;
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn base(&self) -> &Arc<GFConfig> {
        &self.base
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &GFElem)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.degree() == 0)
    }

    pub fn constant_value(&self) -> Option<GFElem> {
        if !self.is_constant() {
            return None;
        }
        Some(self.terms.values().next().cloned().unwrap_or_else(|| GFElem::zero(&self.base)))
    }

    /// Leading term in graded-lex order.
    pub fn leading(&self) -> Option<(&Monomial, &GFElem)> {
        self.terms.iter().next_back()
    }

    pub fn leading_coeff(&self) -> GFElem {
        self.leading().map(|(_, c)| c.clone()).unwrap_or_else(|| GFElem::zero(&self.base))
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    pub fn degree_in(&self, v: usize) -> Option<u32> {
        self.terms.keys().map(|m| m.0[v]).max()
    }

    pub fn add(&self, rhs: &MPoly) -> MPoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, rhs: &MPoly) -> MPoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), Ring::neg(c));
        }
        out
    }

    pub fn neg(&self) -> MPoly {
        MPoly { base: self.base.clone(), nvars: self.nvars, terms: self.terms.iter().map(|(m, c)| (m.clone(), Ring::neg(c))).collect() }
    }

    pub fn mul(&self, rhs: &MPoly) -> MPoly {
        let mut out = MPoly::zero(&self.base, self.nvars);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.mul(mb), Ring::mul(ca, cb));
            }
        }
        out
    }

    pub fn scale(&self, c: &GFElem) -> MPoly {
        if c.is_zero() {
            return MPoly::zero(&self.base, self.nvars);
        }
        MPoly { base: self.base.clone(), nvars: self.nvars, terms: self.terms.iter().map(|(m, a)| (m.clone(), Ring::mul(a, c))).collect() }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> MPoly {
        MPoly { base: self.base.clone(), nvars: self.nvars, terms: self.terms.iter().map(|(k, c)| (k.mul(m), c.clone())).collect() }
    }

    pub fn pow(&self, mut e: u64) -> MPoly {
        let mut acc = MPoly::one(&self.base, self.nvars);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// `self^p`, computed term-wise since the Frobenius is additive.
    pub fn frobenius(&self) -> MPoly {
        let p = self.base.p() as u32;
        MPoly {
            base: self.base.clone(),
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, c)| (Monomial(m.0.iter().map(|e| e * p).collect()), CharP::frobenius(c))).collect(),
        }
    }

    pub fn partial(&self, v: usize) -> MPoly {
        let mut out = MPoly::zero(&self.base, self.nvars);
        for (m, c) in &self.terms {
            if m.0[v] == 0 {
                continue;
            }
            let mut e = m.clone();
            e.0[v] -= 1;
            out.add_term(e, c.scale_int(m.0[v] as i64));
        }
        out
    }

    /// Exact division; `None` if `d` does not divide `self`.
    pub fn exact_div(&self, d: &MPoly) -> Option<MPoly> {
        let (ld, lc) = d.leading()?;
        let inv = lc.try_inv()?;
        let mut rem = self.clone();
        let mut quot = MPoly::zero(&self.base, self.nvars);
        while let Some((lm, c)) = rem.leading() {
            if !ld.divides(lm) {
                return None;
            }
            let m = lm.div(ld);
            let c = Ring::mul(c, &inv);
            rem = rem.sub(&d.mul_monomial(&m).scale(&c));
            quot.add_term(m, c);
        }
        Some(quot)
    }

    /// Scale so the graded-lex leading coefficient is one.
    pub fn monic(&self) -> MPoly {
        match self.leading_coeff().try_inv() {
            Some(inv) => self.scale(&inv),
            None => self.clone(),
        }
    }

    /// Coefficients with respect to the variable `v`, keyed by exponent.
    fn split_by(&self, v: usize) -> BTreeMap<u32, MPoly> {
        let mut out: BTreeMap<u32, MPoly> = BTreeMap::new();
        for (m, c) in &self.terms {
            let mut rest = m.clone();
            let k = rest.0[v];
            rest.0[v] = 0;
            out.entry(k).or_insert_with(|| MPoly::zero(&self.base, self.nvars)).add_term(rest, c.clone());
        }
        out
    }

    fn coeff_in(&self, v: usize, k: u32) -> MPoly {
        let mut out = MPoly::zero(&self.base, self.nvars);
        for (m, c) in &self.terms {
            if m.0[v] == k {
                let mut rest = m.clone();
                rest.0[v] = 0;
                out.add_term(rest, c.clone());
            }
        }
        out
    }

    fn highest_var(&self) -> Option<usize> {
        (0..self.nvars).rev().find(|&v| self.terms.keys().any(|m| m.0[v] > 0))
    }

    fn content_in(&self, v: usize) -> MPoly {
        self.split_by(v).into_values().fold(MPoly::zero(&self.base, self.nvars), |g, c| g.gcd(&c))
    }

    fn prem(&self, b: &MPoly, v: usize) -> MPoly {
        let db = b.degree_in(v).unwrap_or(0);
        let lcb = b.coeff_in(v, db);
        let mut a = self.clone();
        while let Some(da) = a.degree_in(v) {
            if a.is_zero() || da < db {
                break;
            }
            let lca = a.coeff_in(v, da);
            let mut shift = Monomial::one(self.nvars);
            shift.0[v] = da - db;
            a = a.mul(&lcb).sub(&b.mul(&lca).mul_monomial(&shift));
        }
        a
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, rhs: &MPoly) -> MPoly {
        if self.is_zero() {
            return rhs.monic();
        }
        if rhs.is_zero() {
            return self.monic();
        }
        if self.is_constant() || rhs.is_constant() {
            return MPoly::one(&self.base, self.nvars);
        }
        if self.nvars == 1 {
            let g = self.to_upoly(0).gcd(&rhs.to_upoly(0));
            return MPoly::from_upoly(&g, 1, 0);
        }
        let v = self.highest_var().max(rhs.highest_var()).expect("non-constant");
        if self.degree_in(v) == Some(0) {
            return self.gcd(&rhs.content_in(v));
        }
        if rhs.degree_in(v) == Some(0) {
            return rhs.gcd(&self.content_in(v));
        }
        let (ca, cb) = (self.content_in(v), rhs.content_in(v));
        let gc = ca.gcd(&cb);
        let mut a = self.exact_div(&ca).expect("content divides");
        let mut b = rhs.exact_div(&cb).expect("content divides");
        if a.degree_in(v) < b.degree_in(v) {
            std::mem::swap(&mut a, &mut b);
        }
        loop {
            let r = a.prem(&b, v);
            if r.is_zero() {
                break;
            }
            if r.degree_in(v) == Some(0) {
                b = MPoly::one(&self.base, self.nvars);
                break;
            }
            a = b;
            let cr = r.content_in(v);
            b = r.exact_div(&cr).expect("content divides");
        }
        let cbv = b.content_in(v);
        let b = b.exact_div(&cbv).expect("content divides");
        b.mul(&gc).monic()
    }

    /// View as a dense polynomial in variable `v`; other variables must be absent.
    pub fn to_upoly(&self, v: usize) -> UPoly<GFElem> {
        let zero = GFElem::zero(&self.base);
        let deg = self.degree_in(v).unwrap_or(0) as usize;
        let mut coeffs = vec![zero.clone(); deg + 1];
        for (m, c) in &self.terms {
            debug_assert!(m.0.iter().enumerate().all(|(k, &e)| k == v || e == 0));
            coeffs[m.0[v] as usize] = c.clone();
        }
        UPoly::new(coeffs, &zero)
    }

    pub fn from_upoly(u: &UPoly<GFElem>, nvars: usize, v: usize) -> MPoly {
        let base = u.template().config().clone();
        let mut out = MPoly::zero(&base, nvars);
        for (k, c) in u.coeffs().iter().enumerate() {
            let mut m = Monomial::one(nvars);
            m.0[v] = k as u32;
            out.add_term(m, c.clone());
        }
        out
    }

    /// Evaluate every variable at a field element.
    pub fn eval(&self, point: &[GFElem]) -> GFElem {
        let mut acc = GFElem::zero(&self.base);
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (x, &e) in point.iter().zip(&m.0) {
                t = Ring::mul(&t, &Ring::pow(x, e as u64));
            }
            acc = Ring::add(&acc, &t);
        }
        acc
    }

    /// Render with the given variable names, highest term first, e.g. `t^2+t`.
    pub fn render(&self, vars: &[String]) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (m, c) in self.terms.iter().rev() {
            let mono: Vec<String> =
                m.0.iter()
                    .enumerate()
                    .filter(|(_, &e)| e > 0)
                    .map(|(k, &e)| if e == 1 { vars[k].clone() } else { format!("{}^{}", vars[k], e) })
                    .collect();
            let coef = c.to_string();
            let piece = if mono.is_empty() {
                coef
            } else if c.is_one() {
                mono.join("*")
            } else if coef.contains('+') {
                format!("({})*{}", coef, mono.join("*"))
            } else {
                format!("{}*{}", coef, mono.join("*"))
            };
            if !out.is_empty() {
                out.push('+');
            }
            out.push_str(&piece);
        }
        out
    }

    /// Compare by (degree-ordered) term lists; used for canonical sorting.
    pub fn cmp_terms(&self, other: &MPoly) -> Ordering {
        self.terms.iter().rev().cmp(other.terms.iter().rev())
    }
}

impl PartialEq for MPoly {
    fn eq(&self, other: &Self) -> bool {
        self.nvars == other.nvars && self.terms == other.terms
    }
}

impl Eq for MPoly {}

impl fmt::Debug for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = (0..self.nvars).map(|k| format!("x{k}")).collect();
        write!(f, "{}", self.render(&names))
    }
}
