//! Galois rings `GR(p^n, e) = (Z/p^n)[z]/(M)` where `M` is the coefficient-wise
//! lift of the canonical modulus of `F_{p^e}`. `GR(p^n, e)` is isomorphic to
//! `W_n(F_{p^e})` and serves as the characteristic-zero shadow in which Witt
//! residues are evaluated.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use crate::algebra::{modp, Ring};
use crate::error::{Error, Result};
use crate::finite_fields::{gf_make, GFConfig, GFElem};

pub struct GrConfig {
    p: u64,
    n: u32,
    modulus_pn: u64,
    base: Arc<GFConfig>,
    /// Lifted modulus `c_0..c_{e-1}` (monic).
    lifted: Vec<u64>,
}

impl GrConfig {
    pub fn p(&self) -> u64 {
        self.p
    }

    /// The exponent `n` in `p^n`.
    pub fn level(&self) -> u32 {
        self.n
    }

    /// `p^n`.
    pub fn characteristic(&self) -> u64 {
        self.modulus_pn
    }

    pub fn residue_field(&self) -> &Arc<GFConfig> {
        &self.base
    }

    pub fn degree(&self) -> usize {
        self.base.degree()
    }
}

impl fmt::Debug for GrConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GR({}^{}, {})", self.p, self.n, self.base.degree())
    }
}

static REGISTRY: OnceLock<Mutex<HashMap<(u64, usize, u32), Arc<GrConfig>>>> = OnceLock::new();

/// The Galois ring lifting `base` to characteristic `p^n`.
pub fn gr_make(base: &Arc<GFConfig>, n: u32) -> Result<Arc<GrConfig>> {
    let p = base.p();
    let e = base.degree();
    if n == 0 {
        return Err(Error::InvalidArgument("Galois ring level must be positive".into()));
    }
    let pn = (0..n)
        .try_fold(1u64, |acc, _| acc.checked_mul(p).filter(|&v| v < (1 << 31)))
        .ok_or_else(|| Error::ResourceBound(format!("{p}^{n} is too large for a Galois ring")))?;
    let registry = REGISTRY.get_or_init(|| Mutex::new(HashMap::new()));
    let mut guard = registry.lock().unwrap();
    let cfg = guard.entry((p, e, n)).or_insert_with(|| {
        let mut lifted = base.modulus();
        lifted.pop();
        Arc::new(GrConfig { p, n, modulus_pn: pn, base: base.clone(), lifted })
    });
    Ok(cfg.clone())
}

#[derive(Clone)]
pub struct GrElem {
    cfg: Arc<GrConfig>,
    c: Vec<u64>,
}

impl GrElem {
    pub fn config(&self) -> &Arc<GrConfig> {
        &self.cfg
    }

    pub fn zero(cfg: &Arc<GrConfig>) -> Self {
        GrElem { cfg: cfg.clone(), c: vec![0; cfg.degree()] }
    }

    pub fn one(cfg: &Arc<GrConfig>) -> Self {
        Self::from_int(cfg, 1)
    }

    pub fn from_int(cfg: &Arc<GrConfig>, k: i64) -> Self {
        let mut c = vec![0; cfg.degree()];
        c[0] = modp(k, cfg.modulus_pn);
        GrElem { cfg: cfg.clone(), c }
    }

    /// The coefficient-wise lift with digits in `[0, p)`.
    pub fn lift(cfg: &Arc<GrConfig>, a: &GFElem) -> Self {
        let mut c = a.coeffs();
        c.resize(cfg.degree(), 0);
        GrElem { cfg: cfg.clone(), c }
    }

    /// Element with the given power-basis coefficients, reduced mod `p^n`.
    pub fn from_coeffs(cfg: &Arc<GrConfig>, coeffs: &[u64]) -> Self {
        let mut c: Vec<u64> = coeffs.iter().map(|x| x % cfg.modulus_pn).collect();
        c.resize(cfg.degree(), 0);
        GrElem { cfg: cfg.clone(), c }
    }

    /// Reduction modulo `p`.
    pub fn reduce(&self) -> GFElem {
        let coeffs: Vec<i64> = self.c.iter().map(|&x| (x % self.cfg.p) as i64).collect();
        GFElem::from_coeffs(&self.cfg.base, &coeffs).expect("degree matches")
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.c
    }

    /// Largest `k` such that `p^k` divides `self` (`n` for zero).
    pub fn p_valuation(&self) -> u32 {
        let mut v = self.cfg.n;
        for &x in &self.c {
            if x != 0 {
                let mut k = 0;
                let mut y = x;
                while y % self.cfg.p == 0 {
                    y /= self.cfg.p;
                    k += 1;
                }
                v = v.min(k);
            }
        }
        v
    }

    /// `Tr_{GR/(Z/p^n)}`: the trace of multiplication by `self` on the basis
    /// `1, z, …, z^{e-1}`; returned in `[0, p^n)`.
    pub fn trace(&self) -> u64 {
        let e = self.cfg.degree();
        let mut basis = GrElem::one(&self.cfg);
        let z = {
            let mut c = vec![0; e];
            if e > 1 {
                c[1] = 1;
            }
            GrElem { cfg: self.cfg.clone(), c }
        };
        let mut acc = 0u64;
        for k in 0..e {
            let prod = self.mul(&basis);
            acc = (acc + prod.c[k]) % self.cfg.modulus_pn;
            basis = basis.mul(&z);
        }
        acc
    }

    /// Teichmüller representative of `a`: the unique root of unity (or zero)
    /// reducing to `a`.
    pub fn teichmuller(cfg: &Arc<GrConfig>, a: &GFElem) -> Self {
        let q = cfg.base.order();
        let mut x = Self::lift(cfg, a);
        for _ in 1..cfg.n {
            x = Ring::pow(&x, q);
        }
        x
    }
}

impl Ring for GrElem {
    fn zero_like(&self) -> Self {
        GrElem::zero(&self.cfg)
    }

    fn one_like(&self) -> Self {
        GrElem::one(&self.cfg)
    }

    fn is_zero(&self) -> bool {
        self.c.iter().all(|&x| x == 0)
    }

    fn add(&self, rhs: &Self) -> Self {
        let m = self.cfg.modulus_pn;
        let c = self.c.iter().zip(&rhs.c).map(|(a, b)| (a + b) % m).collect();
        GrElem { cfg: self.cfg.clone(), c }
    }

    fn sub(&self, rhs: &Self) -> Self {
        let m = self.cfg.modulus_pn;
        let c = self.c.iter().zip(&rhs.c).map(|(a, b)| (a + m - b) % m).collect();
        GrElem { cfg: self.cfg.clone(), c }
    }

    fn neg(&self) -> Self {
        let m = self.cfg.modulus_pn;
        let c = self.c.iter().map(|a| (m - a) % m).collect();
        GrElem { cfg: self.cfg.clone(), c }
    }

    fn mul(&self, rhs: &Self) -> Self {
        let m = self.cfg.modulus_pn;
        let e = self.cfg.degree();
        let mut prod = vec![0u64; 2 * e];
        for (i, &a) in self.c.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in rhs.c.iter().enumerate() {
                prod[i + j] = (prod[i + j] + a * b) % m;
            }
        }
        for k in (e..2 * e).rev() {
            let t = prod[k];
            if t == 0 {
                continue;
            }
            prod[k] = 0;
            for (j, &mc) in self.cfg.lifted.iter().enumerate() {
                prod[k - e + j] = (prod[k - e + j] + (m - t) * mc % m) % m;
            }
        }
        prod.truncate(e);
        GrElem { cfg: self.cfg.clone(), c: prod }
    }

    fn from_int_like(&self, n: i64) -> Self {
        GrElem::from_int(&self.cfg, n)
    }

    fn try_inv(&self) -> Option<Self> {
        let r = self.reduce().try_inv()?;
        // Newton iteration x <- x(2 - a x) doubles the p-adic precision.
        let mut x = GrElem::lift(&self.cfg, &r);
        let two = GrElem::from_int(&self.cfg, 2);
        let mut prec = 1;
        while prec < self.cfg.n {
            x = x.mul(&two.sub(&self.mul(&x)));
            prec *= 2;
        }
        Some(x)
    }
}

impl PartialEq for GrElem {
    fn eq(&self, other: &Self) -> bool {
        self.c == other.c && Arc::ptr_eq(&self.cfg, &other.cfg)
    }
}

impl Eq for GrElem {}

impl fmt::Debug for GrElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.c)
    }
}

crate::impl_ring_ops!(GrElem);

/// Convenience: `GR(p^n, e)` from `(p, e, n)`.
pub fn gr_from(p: u64, e: usize, n: u32) -> Result<Arc<GrConfig>> {
    gr_make(&gf_make(p, e)?, n)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverse_and_reduction() {
        let cfg = gr_from(2, 2, 3).unwrap();
        let base = cfg.residue_field().clone();
        for a in GFElem::all(&base).skip(1) {
            let x = GrElem::lift(&cfg, &a);
            let inv = x.try_inv().unwrap();
            assert!((x.clone() * inv).is_one());
            assert_eq!(x.reduce(), a);
        }
        assert!(GrElem::from_int(&cfg, 2).try_inv().is_none());
    }

    #[test]
    fn teichmuller_is_multiplicative_root_of_unity() {
        let cfg = gr_from(3, 2, 3).unwrap();
        let base = cfg.residue_field().clone();
        let q = base.order();
        for a in GFElem::all(&base) {
            let t = GrElem::teichmuller(&cfg, &a);
            assert_eq!(Ring::pow(&t, q), t);
            assert_eq!(t.reduce(), a);
            for b in GFElem::all(&base) {
                let tb = GrElem::teichmuller(&cfg, &b);
                assert_eq!(t.clone() * tb, GrElem::teichmuller(&cfg, &(a.clone() * b)));
            }
        }
    }

    #[test]
    fn trace_reduces_to_field_trace() {
        let cfg = gr_from(2, 3, 2).unwrap();
        let base = cfg.residue_field().clone();
        for a in GFElem::all(&base) {
            let x = GrElem::lift(&cfg, &a);
            assert_eq!(x.trace() % 2, a.trace_int());
        }
        assert_eq!(GrElem::one(&cfg).trace(), 3);
    }
}
