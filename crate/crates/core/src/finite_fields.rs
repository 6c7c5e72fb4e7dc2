//! Finite fields `F_{p^e}` in the power basis of a canonical generator `z`.
//!
//! The defining polynomial is the lexicographically least monic irreducible
//! polynomial of degree `e`, comparing coefficient sequences `(c_0, …, c_{e-1})`
//! from `c_0` onwards. Elements are packed as `Σ c_k p^k` and multiplied
//! through exp/log tables of a primitive element.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::{Arc, Mutex, OnceLock};

use crate::algebra::{is_prime, modp, prime_divisors, CharP, Ring};
use crate::error::{Error, Result};

/// Largest supported field size `p^e`.
pub const MAX_FIELD_SIZE: u64 = 1 << 20;

/// Description of `F_{p^e}`.
pub struct GFConfig {
    p: u64,
    e: usize,
    q: u64,
    /// `c_0..c_{e-1}` of the monic modulus (leading one implied).
    modulus: Vec<u64>,
    exp: Vec<u32>,
    log: Vec<u32>,
    as_solver: OnceLock<AsSolver>,
}

impl GFConfig {
    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn degree(&self) -> usize {
        self.e
    }

    pub fn order(&self) -> u64 {
        self.q
    }

    /// Coefficients `c_0, …, c_{e-1}, 1` of the modulus.
    pub fn modulus(&self) -> Vec<u64> {
        let mut m = self.modulus.clone();
        m.push(1);
        m
    }

    fn digits(&self, mut v: u32) -> Vec<u64> {
        let mut out = vec![0; self.e];
        for d in out.iter_mut() {
            *d = v as u64 % self.p;
            v /= self.p as u32;
        }
        out
    }

    fn pack(&self, digits: &[u64]) -> u32 {
        digits.iter().rev().fold(0u64, |acc, &d| acc * self.p + d % self.p) as u32
    }
}

impl fmt::Debug for GFConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({}^{})", self.p, self.e)
    }
}

static REGISTRY: OnceLock<Mutex<HashMap<(u64, usize), Arc<GFConfig>>>> = OnceLock::new();

/// Build (or fetch the shared instance of) `F_{p^e}` with its canonical modulus.
pub fn gf_make(p: u64, e: usize) -> Result<Arc<GFConfig>> {
    if !is_prime(p) {
        return Err(Error::NonPrime(p));
    }
    if e == 0 {
        return Err(Error::InvalidArgument("extension degree must be at least 1".into()));
    }
    let too_big = || Error::ResourceBound(format!("GF({p}^{e}) exceeds {MAX_FIELD_SIZE} elements"));
    let q = (0..e).try_fold(1u64, |acc, _| acc.checked_mul(p).filter(|&v| v <= MAX_FIELD_SIZE));
    let q = q.ok_or_else(too_big)?;
    let registry = REGISTRY.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(cfg) = registry.lock().unwrap().get(&(p, e)) {
        return Ok(cfg.clone());
    }
    let cfg = Arc::new(build_config(p, e, q));
    let mut guard = registry.lock().unwrap();
    Ok(guard.entry((p, e)).or_insert(cfg).clone())
}

fn build_config(p: u64, e: usize, q: u64) -> GFConfig {
    let modulus = canonical_modulus(p, e);
    let mut full = modulus.clone();
    full.push(1);
    let mut cfg = GFConfig { p, e, q, modulus, exp: Vec::new(), log: Vec::new(), as_solver: OnceLock::new() };
    if q == 2 {
        cfg.exp = vec![1];
        cfg.log = vec![0, 0];
        return cfg;
    }
    let order = q - 1;
    let divisors = prime_divisors(order);
    let generator = (1..q as u32)
        .map(|v| cfg.digits(v))
        .find(|g| {
            divisors.iter().all(|r| {
                let h = fp_powmod(g, order / r, &full, p);
                !(h[0] == 1 && h[1..].iter().all(|&c| c == 0))
            })
        })
        .expect("multiplicative group of a finite field is cyclic");
    let mut exp = Vec::with_capacity(order as usize);
    let mut log = vec![0u32; q as usize];
    let mut cur = vec![0u64; e];
    cur[0] = 1;
    for k in 0..order {
        let packed = cfg.pack(&cur);
        exp.push(packed);
        log[packed as usize] = k as u32;
        cur = fp_mulmod(&cur, &generator, &full, p);
    }
    cfg.exp = exp;
    cfg.log = log;
    cfg
}

/// Multiply two residues modulo a monic polynomial over `F_p`.
fn fp_mulmod(a: &[u64], b: &[u64], m: &[u64], p: u64) -> Vec<u64> {
    let e = m.len() - 1;
    let mut prod = vec![0u64; 2 * e.max(1)];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x * y) % p;
        }
    }
    for k in (e..prod.len()).rev() {
        let c = prod[k];
        if c == 0 {
            continue;
        }
        for (j, &mc) in m.iter().enumerate() {
            prod[k - e + j] = (prod[k - e + j] + (p - c) * mc) % p;
        }
    }
    prod.truncate(e);
    prod.resize(e, 0);
    prod
}

fn fp_powmod(a: &[u64], mut k: u64, m: &[u64], p: u64) -> Vec<u64> {
    let e = m.len() - 1;
    let mut acc = vec![0u64; e];
    acc[0] = 1;
    let mut base = a.to_vec();
    while k > 0 {
        if k & 1 == 1 {
            acc = fp_mulmod(&acc, &base, m, p);
        }
        base = fp_mulmod(&base, &base, m, p);
        k >>= 1;
    }
    acc
}

fn fp_trim(mut a: Vec<u64>) -> Vec<u64> {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

fn fp_rem(a: &[u64], m: &[u64], p: u64) -> Vec<u64> {
    let mut r = fp_trim(a.to_vec());
    let dm = m.len() - 1;
    let inv = fp_inv(m[dm], p);
    while r.len() > dm {
        let k = r.len() - 1;
        let c = r[k] * inv % p;
        for (j, &mc) in m.iter().enumerate() {
            r[k - dm + j] = (r[k - dm + j] + (p - c) * mc % p) % p;
        }
        r = fp_trim(r);
    }
    r
}

fn fp_gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let (mut a, mut b) = (fp_trim(a.to_vec()), fp_trim(b.to_vec()));
    while !b.is_empty() {
        let r = fp_rem(&a, &b, p);
        a = b;
        b = r;
    }
    a
}

fn fp_inv(a: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    let (mut base, mut k) = (a % p, p - 2);
    while k > 0 {
        if k & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        k >>= 1;
    }
    acc
}

/// Ben-Or irreducibility test for a monic polynomial over `F_p`.
fn fp_is_irreducible(m: &[u64], p: u64) -> bool {
    let e = m.len() - 1;
    if e <= 1 {
        return true;
    }
    let mut xpow = vec![0u64; e];
    xpow[1] = 1;
    for _ in 1..=e / 2 {
        // xpow <- xpow^p mod m
        xpow = fp_powmod(&xpow, p, m, p);
        let mut diff = xpow.clone();
        diff[1] = (diff[1] + p - 1) % p;
        if fp_gcd(m, &diff, p).len() > 1 {
            return false;
        }
    }
    true
}

fn canonical_modulus(p: u64, e: usize) -> Vec<u64> {
    if e == 1 {
        return vec![0];
    }
    // lexicographic on (c_0, …, c_{e-1}): c_0 is the most significant digit
    let total = p.pow(e as u32);
    (0..total)
        .map(|idx| {
            let mut c = vec![0u64; e];
            let mut v = idx;
            for k in (0..e).rev() {
                c[k] = v % p;
                v /= p;
            }
            c
        })
        .find(|c| {
            let mut m = c.clone();
            m.push(1);
            fp_is_irreducible(&m, p)
        })
        .expect("irreducible polynomials exist in every degree")
}

/// Solver for `x^p - x = c`, the `F_p`-linear Artin–Schreier map.
struct AsSolver {
    /// Row-reduced system for the columns `1..e` (the canonical solution has `x_0 = 0`).
    rows: Vec<(Vec<u64>, usize)>,
    /// Transformation applied to the right-hand side during elimination.
    transform: Vec<Vec<u64>>,
}

impl AsSolver {
    fn build(cfg: &Arc<GFConfig>) -> AsSolver {
        let (p, e) = (cfg.p, cfg.e);
        // matrix[r][c] = coefficient r of L(z^c), c in 1..e
        let mut mat: Vec<Vec<u64>> = vec![vec![0; e.saturating_sub(1)]; e];
        for c in 1..e {
            let mut basis = vec![0u64; e];
            basis[c] = 1;
            let v = GFElem { cfg: cfg.clone(), v: cfg.pack(&basis) };
            let image = v.frobenius().sub(&v);
            for (r, d) in cfg.digits(image.v).into_iter().enumerate() {
                mat[r][c - 1] = d;
            }
        }
        let mut transform: Vec<Vec<u64>> = (0..e).map(|r| (0..e).map(|c| u64::from(r == c)).collect()).collect();
        let mut rows = Vec::new();
        let mut pivot_row = 0;
        for col in 0..e.saturating_sub(1) {
            let Some(sel) = (pivot_row..e).find(|&r| mat[r][col] != 0) else { continue };
            mat.swap(pivot_row, sel);
            transform.swap(pivot_row, sel);
            let inv = fp_inv(mat[pivot_row][col], p);
            for x in mat[pivot_row].iter_mut() {
                *x = *x * inv % p;
            }
            for x in transform[pivot_row].iter_mut() {
                *x = *x * inv % p;
            }
            for r in 0..e {
                if r != pivot_row && mat[r][col] != 0 {
                    let f = mat[r][col];
                    for c in 0..mat[r].len() {
                        mat[r][c] = (mat[r][c] + (p - f) * mat[pivot_row][c]) % p;
                    }
                    for c in 0..e {
                        transform[r][c] = (transform[r][c] + (p - f) * transform[pivot_row][c]) % p;
                    }
                }
            }
            rows.push((mat[pivot_row].clone(), col));
            pivot_row += 1;
        }
        AsSolver { rows, transform }
    }

    fn solve(&self, cfg: &GFConfig, rhs: &[u64]) -> Option<Vec<u64>> {
        let p = cfg.p;
        let e = cfg.e;
        let t: Vec<u64> = self.transform.iter().map(|row| row.iter().zip(rhs).fold(0, |acc, (a, b)| (acc + a * b) % p)).collect();
        if t[self.rows.len()..].iter().any(|&x| x != 0) {
            return None;
        }
        let mut x = vec![0u64; e];
        for (k, (_, col)) in self.rows.iter().enumerate() {
            x[col + 1] = t[k];
        }
        Some(x)
    }
}

/// An element of `F_{p^e}`.
#[derive(Clone)]
pub struct GFElem {
    cfg: Arc<GFConfig>,
    v: u32,
}

impl GFElem {
    pub fn config(&self) -> &Arc<GFConfig> {
        &self.cfg
    }

    pub fn zero(cfg: &Arc<GFConfig>) -> Self {
        GFElem { cfg: cfg.clone(), v: 0 }
    }

    pub fn one(cfg: &Arc<GFConfig>) -> Self {
        GFElem { cfg: cfg.clone(), v: 1 }
    }

    /// The generator `z` of the power basis (equal to `0` in a prime field).
    pub fn generator(cfg: &Arc<GFConfig>) -> Self {
        if cfg.e == 1 {
            Self::zero(cfg)
        } else {
            GFElem { cfg: cfg.clone(), v: cfg.p as u32 }
        }
    }

    pub fn from_int(cfg: &Arc<GFConfig>, n: i64) -> Self {
        GFElem { cfg: cfg.clone(), v: modp(n, cfg.p) as u32 }
    }

    /// Element with power-basis coefficients `c_0, c_1, …` (reduced mod p).
    pub fn from_coeffs(cfg: &Arc<GFConfig>, coeffs: &[i64]) -> Result<Self> {
        if coeffs.len() > cfg.e {
            return Err(Error::InvalidArgument(format!("{} coefficients for a degree-{} field", coeffs.len(), cfg.e)));
        }
        let digits: Vec<u64> = coeffs.iter().map(|&c| modp(c, cfg.p)).collect();
        Ok(GFElem { cfg: cfg.clone(), v: cfg.pack(&digits) })
    }

    /// Element from its packed index `Σ c_k p^k`, `0 <= index < q`.
    pub fn from_index(cfg: &Arc<GFConfig>, index: u64) -> Self {
        assert!(index < cfg.q, "index out of range");
        GFElem { cfg: cfg.clone(), v: index as u32 }
    }

    pub fn index(&self) -> u64 {
        self.v as u64
    }

    /// All elements in packed-index order.
    pub fn all(cfg: &Arc<GFConfig>) -> impl Iterator<Item = GFElem> + '_ {
        (0..cfg.q).map(move |v| GFElem::from_index(cfg, v))
    }

    pub fn coeffs(&self) -> Vec<u64> {
        self.cfg.digits(self.v)
    }

    /// Lexicographic key on `(c_0, c_1, …)`.
    pub fn canonical_key(&self) -> Vec<u64> {
        self.coeffs()
    }

    fn same_field(&self, other: &GFElem) -> bool {
        Arc::ptr_eq(&self.cfg, &other.cfg) || (self.cfg.p == other.cfg.p && self.cfg.e == other.cfg.e)
    }

    fn check(&self, other: &GFElem) -> Result<()> {
        if self.same_field(other) {
            Ok(())
        } else {
            Err(Error::ConfigMismatch(format!("{:?} vs {:?}", self.cfg, other.cfg)))
        }
    }

    pub fn try_add(&self, other: &GFElem) -> Result<GFElem> {
        self.check(other)?;
        Ok(Ring::add(self, other))
    }

    pub fn try_sub(&self, other: &GFElem) -> Result<GFElem> {
        self.check(other)?;
        Ok(Ring::sub(self, other))
    }

    pub fn try_mul(&self, other: &GFElem) -> Result<GFElem> {
        self.check(other)?;
        Ok(Ring::mul(self, other))
    }

    pub fn try_div(&self, other: &GFElem) -> Result<GFElem> {
        self.check(other)?;
        let inv = other.inv()?;
        Ok(Ring::mul(self, &inv))
    }

    pub fn inv(&self) -> Result<GFElem> {
        self.try_inv().ok_or(Error::DivisionByZero)
    }

    /// `self^n` for any integer `n`; negative powers of zero fail.
    pub fn pow_int(&self, n: i64) -> Result<GFElem> {
        if n >= 0 {
            return Ok(Ring::pow(self, n as u64));
        }
        Ok(Ring::pow(&self.inv()?, n.unsigned_abs()))
    }

    /// `Tr_{F_{p^e}/F_p}`, returned as an element of the same field lying in `F_p`.
    pub fn trace(&self) -> GFElem {
        let mut acc = GFElem::zero(&self.cfg);
        let mut cur = self.clone();
        for _ in 0..self.cfg.e {
            acc = Ring::add(&acc, &cur);
            cur = cur.frobenius();
        }
        acc
    }

    /// The trace read as an integer in `[0, p)`.
    pub fn trace_int(&self) -> u64 {
        self.trace().v as u64
    }

    /// Unique `b` with `b^p = self`.
    pub fn pth_root(&self) -> GFElem {
        if self.v == 0 || self.cfg.q == 2 {
            return self.clone();
        }
        let order = self.cfg.q - 1;
        let pe1 = self.cfg.p.pow(self.cfg.e as u32 - 1) % order;
        let l = self.cfg.log[self.v as usize] as u64;
        GFElem { cfg: self.cfg.clone(), v: self.cfg.exp[(l * pe1 % order) as usize] }
    }

    /// Solve `x^p - x = self`: the root with lexicographically least coefficients
    /// when the trace vanishes, `None` otherwise.
    pub fn as_solve(&self) -> Option<GFElem> {
        let solver = self.cfg.as_solver.get_or_init(|| AsSolver::build(&self.cfg));
        let x = solver.solve(&self.cfg, &self.coeffs())?;
        Some(GFElem { cfg: self.cfg.clone(), v: self.cfg.pack(&x) })
    }

    /// Whether the element lies in the prime field.
    pub fn is_prime_field_elem(&self) -> bool {
        (self.v as u64) < self.cfg.p
    }
}

/// Binary operation selector for [`gf_arith`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GfOp {
    Add,
    Sub,
    Mul,
    Div,
    /// Raise `a` to an integer power; the second operand is ignored.
    Pow(i64),
}

pub fn gf_arith(a: &GFElem, b: &GFElem, op: GfOp) -> Result<GFElem> {
    match op {
        GfOp::Add => a.try_add(b),
        GfOp::Sub => a.try_sub(b),
        GfOp::Mul => a.try_mul(b),
        GfOp::Div => a.try_div(b),
        GfOp::Pow(n) => a.pow_int(n),
    }
}

pub fn gf_trace(a: &GFElem) -> GFElem {
    a.trace()
}

pub fn gf_as_solve(c: &GFElem) -> Option<GFElem> {
    c.as_solve()
}

pub fn gf_pth_root(a: &GFElem) -> GFElem {
    a.pth_root()
}

impl Ring for GFElem {
    fn zero_like(&self) -> Self {
        GFElem::zero(&self.cfg)
    }

    fn one_like(&self) -> Self {
        GFElem::one(&self.cfg)
    }

    fn is_zero(&self) -> bool {
        self.v == 0
    }

    fn is_one(&self) -> bool {
        self.v == 1
    }

    fn add(&self, rhs: &Self) -> Self {
        debug_assert!(self.same_field(rhs), "field mismatch");
        let p = self.cfg.p as u32;
        let v = if p == 2 {
            self.v ^ rhs.v
        } else {
            let (mut a, mut b, mut out, mut place) = (self.v, rhs.v, 0u32, 1u32);
            while a > 0 || b > 0 {
                out += ((a % p + b % p) % p) * place;
                a /= p;
                b /= p;
                place = place.wrapping_mul(p);
            }
            out
        };
        GFElem { cfg: self.cfg.clone(), v }
    }

    fn neg(&self) -> Self {
        let p = self.cfg.p as u32;
        if p == 2 {
            return self.clone();
        }
        let (mut a, mut out, mut place) = (self.v, 0u32, 1u32);
        while a > 0 {
            out += ((p - a % p) % p) * place;
            a /= p;
            place = place.wrapping_mul(p);
        }
        GFElem { cfg: self.cfg.clone(), v: out }
    }

    fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    fn mul(&self, rhs: &Self) -> Self {
        debug_assert!(self.same_field(rhs), "field mismatch");
        if self.v == 0 || rhs.v == 0 {
            return GFElem::zero(&self.cfg);
        }
        let order = self.cfg.q - 1;
        let l = (self.cfg.log[self.v as usize] as u64 + self.cfg.log[rhs.v as usize] as u64) % order;
        GFElem { cfg: self.cfg.clone(), v: self.cfg.exp[l as usize] }
    }

    fn from_int_like(&self, n: i64) -> Self {
        GFElem::from_int(&self.cfg, n)
    }

    fn try_inv(&self) -> Option<Self> {
        if self.v == 0 {
            return None;
        }
        let order = self.cfg.q - 1;
        let l = self.cfg.log[self.v as usize] as u64;
        Some(GFElem { cfg: self.cfg.clone(), v: self.cfg.exp[((order - l) % order) as usize] })
    }

    fn pow(&self, e: u64) -> Self {
        if e == 0 {
            return self.one_like();
        }
        if self.v == 0 {
            return self.clone();
        }
        let order = self.cfg.q - 1;
        let l = self.cfg.log[self.v as usize] as u64;
        let k = ((l as u128 * e as u128) % order as u128) as usize;
        GFElem { cfg: self.cfg.clone(), v: self.cfg.exp[k] }
    }
}

crate::impl_ring_ops!(GFElem);

impl CharP for GFElem {
    fn characteristic(&self) -> u64 {
        self.cfg.p
    }
}

impl PartialEq for GFElem {
    fn eq(&self, other: &Self) -> bool {
        self.v == other.v && self.same_field(other)
    }
}

impl Eq for GFElem {}

impl Hash for GFElem {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.cfg.p.hash(state);
        self.cfg.e.hash(state);
        self.v.hash(state);
    }
}

impl PartialOrd for GFElem {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for GFElem {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.cfg.p, self.cfg.e).cmp(&(other.cfg.p, other.cfg.e)).then_with(|| self.canonical_key().cmp(&other.canonical_key()))
    }
}

impl fmt::Debug for GFElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for GFElem {
    /// Prints as a polynomial in `z` with coefficients in `0..p`, e.g. `z+1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = self.coeffs();
        let mut parts = Vec::new();
        for k in (0..c.len()).rev() {
            let ck = c[k];
            if ck == 0 {
                continue;
            }
            let s = match (k, ck) {
                (0, _) => ck.to_string(),
                (1, 1) => "z".to_string(),
                (1, _) => format!("{ck}*z"),
                (_, 1) => format!("z^{k}"),
                _ => format!("{ck}*z^{k}"),
            };
            parts.push(s);
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join("+"))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f4() -> Arc<GFConfig> {
        gf_make(2, 2).unwrap()
    }

    #[test]
    fn canonical_moduli() {
        assert_eq!(gf_make(2, 1).unwrap().modulus(), vec![0, 1]);
        assert_eq!(gf_make(2, 2).unwrap().modulus(), vec![1, 1, 1]);
        assert_eq!(gf_make(3, 2).unwrap().modulus(), vec![1, 0, 1]);
        // brute force oracle for F_3: first (c0, c1) in lex order with no root
        let first =
            (0..3).flat_map(|c0| (0..3).map(move |c1| (c0, c1))).find(|&(c0, c1)| (0..3).all(|x| (x * x + c1 * x + c0) % 3 != 0)).unwrap();
        assert_eq!(first, (1, 0));
    }

    #[test]
    fn rejects_bad_input() {
        assert_eq!(gf_make(4, 1).unwrap_err(), Error::NonPrime(4));
        assert!(matches!(gf_make(2, 40), Err(Error::ResourceBound(_))));
    }

    #[test]
    fn f4_arithmetic() {
        let cfg = f4();
        let z = GFElem::generator(&cfg);
        let one = GFElem::one(&cfg);
        assert_eq!(z.clone() * z.clone(), z.clone() + one.clone());
        assert_eq!(z.pow_int(3).unwrap(), one);
        assert_eq!(format!("{}", z.clone() + one), "z+1");
        assert_eq!(GFElem::zero(&cfg).inv(), Err(Error::DivisionByZero));
    }

    #[test]
    fn mismatch_is_reported() {
        let a = GFElem::one(&f4());
        let b = GFElem::one(&gf_make(3, 1).unwrap());
        assert!(matches!(gf_arith(&a, &b, GfOp::Add), Err(Error::ConfigMismatch(_))));
    }

    #[test]
    fn trace_examples() {
        let cfg = f4();
        let z = GFElem::generator(&cfg);
        assert_eq!(z.trace_int(), 1);
        assert_eq!(GFElem::zero(&cfg).trace_int(), 0);
        assert_eq!(GFElem::one(&cfg).trace_int(), 0);
    }

    #[test]
    fn artin_schreier_examples() {
        let f2 = gf_make(2, 1).unwrap();
        assert_eq!(GFElem::one(&f2).as_solve(), None);
        assert_eq!(GFElem::zero(&f2).as_solve(), Some(GFElem::zero(&f2)));
        let cfg = f4();
        let z = GFElem::generator(&cfg);
        assert_eq!(z.as_solve(), None);
        assert_eq!(GFElem::one(&cfg).as_solve(), Some(z));
    }

    #[test]
    fn as_solve_matches_enumeration() {
        for (p, e) in [(2, 1), (2, 2), (2, 3), (2, 4), (3, 1), (3, 2), (3, 3), (5, 2), (7, 1)] {
            let cfg = gf_make(p, e).unwrap();
            for c in GFElem::all(&cfg) {
                let roots: Vec<GFElem> = GFElem::all(&cfg).filter(|x| x.frobenius() - x.clone() == c).collect();
                let least = roots.iter().min_by_key(|x| x.canonical_key()).cloned();
                assert_eq!(c.as_solve(), least, "p={p} e={e} c={c}");
                assert_eq!(least.is_some(), c.trace_int() == 0);
            }
        }
    }

    #[test]
    fn pth_root_examples() {
        let cfg = f4();
        let z = GFElem::generator(&cfg);
        assert_eq!(z.pth_root(), z.clone() * z.clone());
        for (p, e) in [(2, 3), (3, 2), (5, 1)] {
            let cfg = gf_make(p, e).unwrap();
            for a in GFElem::all(&cfg) {
                assert_eq!(a.pth_root().frobenius(), a);
                assert_eq!(a.frobenius().pth_root(), a);
            }
        }
    }

    #[test]
    fn field_axioms_exhaustive_small() {
        let cfg = gf_make(3, 2).unwrap();
        let all: Vec<GFElem> = GFElem::all(&cfg).collect();
        for a in &all {
            if !a.is_zero() {
                assert!((a.clone() * a.inv().unwrap()).is_one());
            }
            assert_eq!(a.trace(), a.frobenius().trace());
            for b in &all {
                assert_eq!(a.clone() * b.clone(), b.clone() * a.clone());
                for c in &all {
                    assert_eq!(a.clone() * (b.clone() + c.clone()), a.clone() * b.clone() + a.clone() * c.clone());
                }
            }
        }
    }
}
