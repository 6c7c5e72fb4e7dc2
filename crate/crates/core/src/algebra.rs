//! Ring traits shared by every coefficient domain, and dense univariate
//! polynomials over them.
//!
//! Elements are self-describing: each value carries a handle to the structure
//! it lives in, so a ring "context" is recovered from any element through
//! [`Ring::zero_like`] and [`Ring::one_like`].

use std::fmt;

/// A commutative ring with identity whose elements know their parent.
pub trait Ring: Clone + PartialEq + fmt::Debug {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    fn neg(&self) -> Self;
    /// Image of an integer under the canonical map `Z -> R`.
    fn from_int_like(&self, n: i64) -> Self;
    /// Multiplicative inverse, if `self` is a unit.
    fn try_inv(&self) -> Option<Self>;

    fn is_one(&self) -> bool {
        self.sub(&self.one_like()).is_zero()
    }

    fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = self.one_like();
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

    fn scale_int(&self, n: i64) -> Self {
        self.mul(&self.from_int_like(n))
    }
}

/// A ring of prime characteristic `p`.
pub trait CharP: Ring {
    fn characteristic(&self) -> u64;

    /// The absolute Frobenius `x -> x^p`.
    fn frobenius(&self) -> Self {
        self.pow(self.characteristic())
    }
}

/// Dense univariate polynomial; `coeffs[k]` is the coefficient of `X^k`.
///
/// The coefficient vector never carries trailing zeros. A template element of
/// the coefficient ring is kept so that the zero polynomial still knows its
/// ring.
#[derive(Clone, PartialEq)]
pub struct UPoly<R: Ring> {
    coeffs: Vec<R>,
    zero: R,
}

impl<R: Ring> UPoly<R> {
    pub fn new(coeffs: Vec<R>, template: &R) -> Self {
        let mut p = UPoly { coeffs, zero: template.zero_like() };
        p.trim();
        p
    }

    pub fn zero(template: &R) -> Self {
        UPoly { coeffs: Vec::new(), zero: template.zero_like() }
    }

    pub fn one(template: &R) -> Self {
        Self::constant(template.one_like())
    }

    pub fn constant(c: R) -> Self {
        let zero = c.zero_like();
        Self::new(vec![c], &zero)
    }

    /// `c * X^k`.
    pub fn monomial(c: R, k: usize) -> Self {
        let zero = c.zero_like();
        let mut coeffs = vec![zero.clone(); k];
        coeffs.push(c);
        Self::new(coeffs, &zero)
    }

    /// The variable `X`.
    pub fn x(template: &R) -> Self {
        Self::monomial(template.one_like(), 1)
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn template(&self) -> &R {
        &self.zero
    }

    pub fn coeffs(&self) -> &[R] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<R> {
        self.coeffs
    }

    pub fn coeff(&self, k: usize) -> R {
        self.coeffs.get(k).cloned().unwrap_or_else(|| self.zero.clone())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn lead(&self) -> R {
        self.coeffs.last().cloned().unwrap_or_else(|| self.zero.clone())
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().is_some_and(|c| c.is_one())
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n).map(|k| self.coeff(k).add(&rhs.coeff(k))).collect();
        Self::new(coeffs, &self.zero)
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n).map(|k| self.coeff(k).sub(&rhs.coeff(k))).collect();
        Self::new(coeffs, &self.zero)
    }

    pub fn neg(&self) -> Self {
        Self::new(self.coeffs.iter().map(R::neg).collect(), &self.zero)
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return Self::zero(&self.zero);
        }
        let mut out = vec![self.zero.clone(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].add(&a.mul(b));
            }
        }
        Self::new(out, &self.zero)
    }

    pub fn scale(&self, c: &R) -> Self {
        Self::new(self.coeffs.iter().map(|a| a.mul(c)).collect(), &self.zero)
    }

    /// Multiply by `X^k`.
    pub fn shift_up(&self, k: usize) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut coeffs = vec![self.zero.clone(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Self::new(coeffs, &self.zero)
    }

    /// Keep only the terms of degree `< k`.
    pub fn truncate(&self, k: usize) -> Self {
        Self::new(self.coeffs.iter().take(k).cloned().collect(), &self.zero)
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(&self.zero);
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

    pub fn derivative(&self) -> Self {
        let coeffs = self.coeffs.iter().enumerate().skip(1).map(|(k, c)| c.scale_int(k as i64)).collect();
        Self::new(coeffs, &self.zero)
    }

    pub fn eval(&self, x: &R) -> R {
        self.coeffs.iter().rev().fold(self.zero.clone(), |acc, c| acc.mul(x).add(c))
    }

    /// Substitute a polynomial for the variable: `self(g(X))`.
    pub fn compose(&self, g: &Self) -> Self {
        self.coeffs.iter().rev().fold(Self::zero(&self.zero), |acc, c| acc.mul(g).add(&Self::constant(c.clone())))
    }

    /// Map every coefficient through `f` into another ring.
    pub fn map<S: Ring>(&self, template: &S, f: impl Fn(&R) -> S) -> UPoly<S> {
        UPoly::new(self.coeffs.iter().map(f).collect(), template)
    }

    /// Division with remainder by a polynomial whose leading coefficient is a
    /// unit. Returns `None` if the divisor is zero or its leading coefficient
    /// is not invertible.
    pub fn div_rem(&self, d: &Self) -> Option<(Self, Self)> {
        let dd = d.degree()?;
        let inv = d.lead().try_inv()?;
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Some((Self::zero(&self.zero), self.clone()));
        }
        let mut quot = vec![self.zero.clone(); rem.len() - dd];
        for k in (dd..rem.len()).rev() {
            let c = rem[k].mul(&inv);
            if c.is_zero() {
                continue;
            }
            for (j, dc) in d.coeffs.iter().enumerate() {
                rem[k - dd + j] = rem[k - dd + j].sub(&c.mul(dc));
            }
            quot[k - dd] = c;
        }
        rem.truncate(dd);
        Some((Self::new(quot, &self.zero), Self::new(rem, &self.zero)))
    }

    pub fn rem(&self, d: &Self) -> Option<Self> {
        self.div_rem(d).map(|(_, r)| r)
    }

    /// `self * rhs mod m`.
    pub fn mul_mod(&self, rhs: &Self, m: &Self) -> Option<Self> {
        self.mul(rhs).rem(m)
    }

    /// `self^e mod m` by square-and-multiply; `e` may be large.
    pub fn pow_mod(&self, e: &num_bigint::BigUint, m: &Self) -> Option<Self> {
        let mut acc = Self::one(&self.zero).rem(m)?;
        let base = self.rem(m)?;
        for bit in (0..e.bits()).rev() {
            acc = acc.mul_mod(&acc, m)?;
            if e.bit(bit) {
                acc = acc.mul_mod(&base, m)?;
            }
        }
        Some(acc)
    }

    /// Make the polynomial monic. Fails on zero or a non-unit leading coefficient.
    pub fn monic(&self) -> Option<Self> {
        let inv = self.lead().try_inv()?;
        Some(self.scale(&inv))
    }

    /// Greatest common divisor, normalized monic. Meaningful over fields.
    pub fn gcd(&self, rhs: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), rhs.clone());
        while !b.is_zero() {
            let r = a.rem(&b).expect("gcd needs a field of coefficients");
            a = b;
            b = r;
        }
        a.monic().unwrap_or(a)
    }

    /// Extended Euclid over a field: returns `(g, s, t)` with
    /// `s*self + t*rhs = g`, `g` monic.
    pub fn ext_gcd(&self, rhs: &Self) -> (Self, Self, Self) {
        let zero = Self::zero(&self.zero);
        let one = Self::one(&self.zero);
        let (mut r0, mut r1) = (self.clone(), rhs.clone());
        let (mut s0, mut s1) = (one.clone(), zero.clone());
        let (mut t0, mut t1) = (zero, one);
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1).expect("ext_gcd needs a field of coefficients");
            r0 = std::mem::replace(&mut r1, r);
            let s = s0.sub(&q.mul(&s1));
            s0 = std::mem::replace(&mut s1, s);
            let t = t0.sub(&q.mul(&t1));
            t0 = std::mem::replace(&mut t1, t);
        }
        match r0.lead().try_inv() {
            Some(inv) if !r0.is_zero() => (r0.scale(&inv), s0.scale(&inv), t0.scale(&inv)),
            _ => (r0, s0, t0),
        }
    }

    /// Inverse of `self` modulo `m` over a field, if it exists.
    pub fn inv_mod(&self, m: &Self) -> Option<Self> {
        let (g, s, _) = self.rem(m)?.ext_gcd(m);
        if g.degree() == Some(0) {
            s.rem(m)
        } else {
            None
        }
    }
}

impl<R: Ring> fmt::Debug for UPoly<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.coeffs.iter()).finish()
    }
}

/// Integer modulus helper: `a mod m` in `[0, m)`.
pub(crate) fn modp(a: i64, m: u64) -> u64 {
    a.rem_euclid(m as i64) as u64
}

/// Trial-division primality test for word-sized integers.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n < 4 {
        return true;
    }
    if n % 2 == 0 {
        return false;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// Distinct prime divisors of `n`.
pub(crate) fn prime_divisors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d.saturating_mul(d) <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Implement `+ - * unary-`  for a [`Ring`] type, owned and borrowed.
#[macro_export]
macro_rules! impl_ring_ops {
    ($t:ty) => {
        impl std::ops::Add for $t {
            type Output = $t;
            fn add(self, rhs: $t) -> $t {
                $crate::algebra::Ring::add(&self, &rhs)
            }
        }
        impl<'a> std::ops::Add<&'a $t> for &'a $t {
            type Output = $t;
            fn add(self, rhs: &'a $t) -> $t {
                $crate::algebra::Ring::add(self, rhs)
            }
        }
        impl std::ops::Sub for $t {
            type Output = $t;
            fn sub(self, rhs: $t) -> $t {
                $crate::algebra::Ring::sub(&self, &rhs)
            }
        }
        impl<'a> std::ops::Sub<&'a $t> for &'a $t {
            type Output = $t;
            fn sub(self, rhs: &'a $t) -> $t {
                $crate::algebra::Ring::sub(self, rhs)
            }
        }
        impl std::ops::Mul for $t {
            type Output = $t;
            fn mul(self, rhs: $t) -> $t {
                $crate::algebra::Ring::mul(&self, &rhs)
            }
        }
        impl<'a> std::ops::Mul<&'a $t> for &'a $t {
            type Output = $t;
            fn mul(self, rhs: &'a $t) -> $t {
                $crate::algebra::Ring::mul(self, rhs)
            }
        }
        impl std::ops::Neg for $t {
            type Output = $t;
            fn neg(self) -> $t {
                $crate::algebra::Ring::neg(&self)
            }
        }
        impl<'a> std::ops::Neg for &'a $t {
            type Output = $t;
            fn neg(self) -> $t {
                $crate::algebra::Ring::neg(self)
            }
        }
    };
}
