//! Witt vectors of finite length over rings of characteristic `p`.

use std::fmt;
use std::sync::Arc;

use super::cache::witt_structure;
use super::structure::{Family, WittStructure};
use crate::algebra::{CharP, Ring};
use crate::error::{Error, Result};
use crate::finite_fields::{gf_make, GFElem};
use crate::galois_ring::{GrConfig, GrElem};

/// `(a_0, …, a_{i-1}) ∈ W_i(K)`.
#[derive(Clone)]
pub struct WittVector<K: CharP> {
    st: Arc<WittStructure>,
    coords: Vec<K>,
}

/// Selector for [`witt_arith`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WittOp {
    Add,
    Sub,
    Mul,
}

/// Selector for [`witt_maps`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WittMap {
    Frobenius,
    Verschiebung,
    Wp,
}

impl<K: CharP> WittVector<K> {
    pub fn new(coords: Vec<K>) -> Result<Self> {
        let first = coords.first().ok_or_else(|| Error::InvalidArgument("empty Witt vector".into()))?;
        let st = witt_structure(first.characteristic(), coords.len())?;
        Ok(WittVector { st, coords })
    }

    pub fn from_structure(st: &Arc<WittStructure>, coords: Vec<K>) -> Self {
        assert_eq!(st.length(), coords.len(), "coordinate count must match the Witt length");
        WittVector { st: st.clone(), coords }
    }

    pub fn zero(template: &K, i: usize) -> Result<Self> {
        Self::new(vec![template.zero_like(); i])
    }

    pub fn one(template: &K, i: usize) -> Result<Self> {
        Self::teichmuller(&template.one_like(), i)
    }

    /// `[a] = (a, 0, …, 0)`.
    pub fn teichmuller(a: &K, i: usize) -> Result<Self> {
        let mut coords = vec![a.zero_like(); i];
        if i > 0 {
            coords[0] = a.clone();
        }
        Self::new(coords)
    }

    pub fn structure(&self) -> &Arc<WittStructure> {
        &self.st
    }

    pub fn coords(&self) -> &[K] {
        &self.coords
    }

    pub fn level(&self) -> usize {
        self.coords.len()
    }

    pub fn p(&self) -> u64 {
        self.st.p()
    }

    pub fn template(&self) -> K {
        self.coords[0].zero_like()
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Ring::is_zero)
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.coords.len() == other.coords.len() && self.p() == other.p() {
            Ok(())
        } else {
            Err(Error::ConfigMismatch(format!("W_{} (p = {}) vs W_{} (p = {})", self.level(), self.p(), other.level(), other.p())))
        }
    }

    fn with(&self, coords: Vec<K>) -> Self {
        WittVector { st: self.st.clone(), coords }
    }

    /// Witt sum; panics on mismatched lengths (see [`witt_arith`] for the checked form).
    pub fn add(&self, rhs: &Self) -> Self {
        self.check(rhs).expect("matching Witt lengths");
        self.with(self.st.eval_all(Family::Sum, &self.coords, &rhs.coords))
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        self.check(rhs).expect("matching Witt lengths");
        self.with(self.st.eval_all(Family::Product, &self.coords, &rhs.coords))
    }

    /// Additive inverse. For odd `p` it is coordinate-wise; for `p = 2` the
    /// coordinates are solved one at a time from `S_n(a, w) = 0`.
    pub fn neg(&self) -> Self {
        if self.p() != 2 {
            return self.with(self.coords.iter().map(Ring::neg).collect());
        }
        let mut w: Vec<K> = vec![self.template(); self.level()];
        w[0] = self.coords[0].neg();
        for n in 1..self.level() {
            let s = self.st.eval(Family::Sum, n, &self.coords, &w);
            w[n] = s.neg();
        }
        self.with(w)
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    /// `m · self`, reducing `m` modulo `p^i` first.
    pub fn scale_int(&self, m: i64) -> Self {
        let pi = (self.p() as i64).pow(self.level() as u32);
        let mut m = m.rem_euclid(pi);
        let mut acc = self.with(vec![self.template(); self.level()]);
        let mut base = self.clone();
        while m > 0 {
            if m & 1 == 1 {
                acc = acc.add(&base);
            }
            m >>= 1;
            if m > 0 {
                base = base.add(&base);
            }
        }
        acc
    }

    /// `F(a_0, …) = (a_0^p, …)`.
    pub fn frobenius(&self) -> Self {
        self.with(self.coords.iter().map(CharP::frobenius).collect())
    }

    /// `V(a_0, …, a_{i-1}) = (0, a_0, …, a_{i-2})`.
    pub fn verschiebung(&self) -> Self {
        let mut coords = vec![self.template()];
        coords.extend(self.coords[..self.level() - 1].iter().cloned());
        self.with(coords)
    }

    /// `℘ = F - id`.
    pub fn wp(&self) -> Self {
        self.frobenius().sub(self)
    }

    /// Image under `W_i → W_{i'}`, `(a) ↦ (0, …, 0, a)` with `i' - i` zeros.
    pub fn shift_to(&self, level: usize) -> Result<Self> {
        if level < self.level() {
            return Err(Error::LevelDecrease { from: self.level(), to: level });
        }
        let mut coords = vec![self.template(); level - self.level()];
        coords.extend(self.coords.iter().cloned());
        Self::new(coords)
    }

    /// The restriction `W_i → W_k` keeping the first `k` coordinates.
    pub fn truncate(&self, k: usize) -> Result<Self> {
        Self::new(self.coords[..k.min(self.level())].to_vec())
    }

    pub fn map<L: CharP>(&self, f: impl Fn(&K) -> L) -> WittVector<L> {
        WittVector { st: self.st.clone(), coords: self.coords.iter().map(f).collect() }
    }
}

impl<K: CharP> PartialEq for WittVector<K> {
    fn eq(&self, other: &Self) -> bool {
        self.coords == other.coords
    }
}

impl<K: CharP> fmt::Debug for WittVector<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.coords.iter()).finish()
    }
}

impl<K: CharP + fmt::Display> fmt::Display for WittVector<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coords.iter().map(|c| c.to_string()).collect();
        write!(f, "[{}]", parts.join(", "))
    }
}

pub fn witt_arith<K: CharP>(u: &WittVector<K>, v: &WittVector<K>, op: WittOp) -> Result<WittVector<K>> {
    u.check(v)?;
    Ok(match op {
        WittOp::Add => u.add(v),
        WittOp::Sub => u.sub(v),
        WittOp::Mul => u.mul(v),
    })
}

pub fn witt_maps<K: CharP>(v: &WittVector<K>, map: WittMap) -> WittVector<K> {
    match map {
        WittMap::Frobenius => v.frobenius(),
        WittMap::Verschiebung => v.verschiebung(),
        WittMap::Wp => v.wp(),
    }
}

/// Result of [`witt_trace`]: the vector in `W_i(F_p)` and its value in `Z/p^i`.
#[derive(Clone, Debug, PartialEq)]
pub struct WittTrace {
    pub vector: WittVector<GFElem>,
    pub value: u64,
    pub modulus: u64,
}

/// `Σ_{j<e} F^j(w)` for `w ∈ W_i(F_{p^e})`, read in `W_i(F_p) ≅ Z/p^i`.
pub fn witt_trace(w: &WittVector<GFElem>) -> WittTrace {
    let cfg = w.coords[0].config().clone();
    let mut acc = w.clone();
    let mut cur = w.clone();
    for _ in 1..cfg.degree() {
        cur = cur.frobenius();
        acc = acc.add(&cur);
    }
    let prime = gf_make(cfg.p(), 1).expect("prime field");
    let vector = acc.map(|c| {
        debug_assert!(c.is_prime_field_elem());
        GFElem::from_int(&prime, c.index() as i64)
    });
    let (value, modulus) = prime_witt_to_int(&vector);
    WittTrace { vector, value, modulus }
}

/// The isomorphism `W_i(F_p) → Z/p^i`, `x ↦ Σ p^k τ(x_k)` with `τ` the
/// Teichmüller lift. Returns `(value, p^i)`.
pub fn prime_witt_to_int(x: &WittVector<GFElem>) -> (u64, u64) {
    let p = x.p();
    let i = x.level() as u32;
    let m = p.pow(i);
    let teich = |c: u64| -> u64 {
        let mut r = c % m;
        for _ in 1..i {
            r = mod_pow(r, p, m);
        }
        r
    };
    let mut value = 0u64;
    let mut pk = 1u64;
    for c in &x.coords {
        value = (value + pk * teich(c.index()) % m) % m;
        pk *= p;
    }
    (value, m)
}

/// The integer `m` as an element of `W_i(F_p)`.
pub fn int_to_prime_witt(p: u64, i: usize, m: i64) -> Result<WittVector<GFElem>> {
    let prime = gf_make(p, 1)?;
    Ok(WittVector::one(&GFElem::zero(&prime), i)?.scale_int(m))
}

fn mod_pow(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    acc
}

/// Solve `℘(w) = v` over a finite field by lifting along the `V`-filtration.
///
/// At each step the first coordinate is an Artin–Schreier equation; its
/// canonical root is taken, its Teichmüller lift subtracted, and the
/// remainder (which lies in `V W`) is solved one level down.
pub fn witt_as_solve(v: &WittVector<GFElem>) -> Option<WittVector<GFElem>> {
    let i = v.level();
    let x0 = v.coords[0].as_solve()?;
    let t = WittVector::teichmuller(&x0, i).expect("valid length");
    if i == 1 {
        return Some(t);
    }
    let r = v.sub(&t.wp());
    debug_assert!(r.coords[0].is_zero());
    let rest = WittVector::new(r.coords[1..].to_vec()).expect("valid length");
    let y = witt_as_solve(&rest)?;
    let y_up = y.shift_to(i).expect("longer");
    Some(t.add(&y_up))
}

/// `W_n(F_q) → GR(p^n, e)`, `(a_j) ↦ Σ p^j ω(a_j^{p^{-j}})`.
pub fn witt_to_gr(w: &WittVector<GFElem>, gr: &Arc<GrConfig>) -> GrElem {
    let mut acc = GrElem::zero(gr);
    let mut pj = 1i64;
    for (j, a) in w.coords.iter().enumerate() {
        let mut root = a.clone();
        for _ in 0..j {
            root = root.pth_root();
        }
        acc = acc.add(&GrElem::teichmuller(gr, &root).scale_int(pj));
        pj *= w.p() as i64;
    }
    acc
}

/// Inverse of [`witt_to_gr`].
pub fn gr_to_witt(x: &GrElem) -> Result<WittVector<GFElem>> {
    let cfg = x.config().clone();
    let p = cfg.p();
    let n = cfg.level() as usize;
    let mut coords = Vec::with_capacity(n);
    let mut cur = x.clone();
    for j in 0..n {
        let digit = cur.reduce();
        coords.push(Ring::pow(&digit, p.pow(j as u32)));
        let rest = cur.sub(&GrElem::teichmuller(&cfg, &digit));
        let divided: Vec<u64> = rest.coeffs().iter().map(|c| c / p).collect();
        cur = GrElem::from_coeffs(&cfg, &divided);
    }
    WittVector::new(coords)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::galois_ring::gr_make;

    fn f(p: u64, e: usize) -> Arc<crate::finite_fields::GFConfig> {
        gf_make(p, e).unwrap()
    }

    fn wv(cfg: &Arc<crate::finite_fields::GFConfig>, idx: &[u64]) -> WittVector<GFElem> {
        WittVector::new(idx.iter().map(|&k| GFElem::from_index(cfg, k)).collect()).unwrap()
    }

    #[test]
    fn w2_f2_is_z4() {
        let cfg = f(2, 1);
        let one = wv(&cfg, &[1, 0]);
        assert_eq!(one.add(&one), wv(&cfg, &[0, 1]));
        assert_eq!(wv(&cfg, &[0, 1]).add(&wv(&cfg, &[0, 1])), wv(&cfg, &[0, 0]));
        assert!(one.scale_int(4).is_zero());
        assert!(!one.scale_int(2).is_zero());
        assert_eq!(prime_witt_to_int(&wv(&cfg, &[1, 1])), (3, 4));
    }

    #[test]
    fn trace_example() {
        let cfg = f(2, 2);
        let z = GFElem::generator(&cfg);
        let w = WittVector::teichmuller(&z, 2).unwrap();
        let tr = witt_trace(&w);
        assert_eq!((tr.value, tr.modulus), (3, 4));
    }

    #[test]
    fn frobenius_verschiebung() {
        let cfg = f(2, 2);
        let z = GFElem::generator(&cfg);
        let a = WittVector::teichmuller(&z, 2).unwrap();
        assert_eq!(a.verschiebung().frobenius(), a.scale_int(2));
    }

    #[test]
    fn as_solve_examples() {
        let cfg = f(2, 2);
        let one = wv(&cfg, &[1]);
        let w = witt_as_solve(&one).unwrap();
        assert_eq!(w.coords()[0], GFElem::generator(&cfg));
        assert!(witt_as_solve(&wv(&cfg, &[2])).is_none());
        let prime = f(2, 1);
        for k in 1..4 {
            assert!(witt_as_solve(&wv(&prime, &[k & 1, k >> 1])).is_none());
        }
    }

    #[test]
    fn galois_ring_isomorphism() {
        let cfg = f(3, 2);
        let gr = gr_make(&cfg, 2).unwrap();
        for a in 0..9 {
            for b in 0..9 {
                let u = wv(&cfg, &[a, b]);
                let x = witt_to_gr(&u, &gr);
                assert_eq!(gr_to_witt(&x).unwrap(), u);
                let v = wv(&cfg, &[b, (a + 4) % 9]);
                let y = witt_to_gr(&v, &gr);
                assert_eq!(witt_to_gr(&u.add(&v), &gr), x.clone() + y.clone());
                assert_eq!(witt_to_gr(&u.mul(&v), &gr), x * y);
            }
        }
    }
}
