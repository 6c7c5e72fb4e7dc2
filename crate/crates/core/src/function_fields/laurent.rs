//! Truncated Laurent series `Σ_{k<N} c_k t^k + O(t^N)` over any coefficient ring.

use std::fmt;

use crate::algebra::{CharP, Ring, UPoly};
use crate::error::{Error, Result};

/// Precision marker for elements known exactly (finite sums of monomials).
pub const EXACT: i64 = 1 << 60;

fn clamp(p: i64) -> i64 {
    if p >= EXACT / 2 {
        EXACT
    } else {
        p
    }
}

/// A Laurent series known modulo `t^prec`.
///
/// `coeffs[k]` is the coefficient of `t^{val+k}`; the first stored coefficient
/// is nonzero and trailing zeros are trimmed. An element with no stored
/// coefficients is zero to its precision and has `val == prec`.
#[derive(Clone, PartialEq)]
pub struct Laurent<R: Ring> {
    val: i64,
    coeffs: Vec<R>,
    prec: i64,
    zero: R,
}

impl<R: Ring> Laurent<R> {
    /// Series with coefficients `coeffs[k]` at `t^{start+k}`, known mod `t^prec`.
    pub fn new(start: i64, coeffs: Vec<R>, prec: i64, template: &R) -> Self {
        let zero = template.zero_like();
        let prec = clamp(prec);
        let mut first = None;
        let mut last = None;
        for (k, c) in coeffs.iter().enumerate() {
            if start + (k as i64) >= prec {
                break;
            }
            if !c.is_zero() {
                first.get_or_insert(k);
                last = Some(k);
            }
        }
        match (first, last) {
            (Some(a), Some(b)) => Laurent { val: start + a as i64, coeffs: coeffs[a..=b].to_vec(), prec, zero },
            _ => Laurent { val: prec, coeffs: Vec::new(), prec, zero },
        }
    }

    pub fn zero_to(prec: i64, template: &R) -> Self {
        Self::new(0, Vec::new(), prec, template)
    }

    /// `c t^k`, exactly.
    pub fn monomial(c: R, k: i64) -> Self {
        let z = c.zero_like();
        Self::new(k, vec![c], EXACT, &z)
    }

    pub fn constant(c: R) -> Self {
        Self::monomial(c, 0)
    }

    /// An exact polynomial in `t`.
    pub fn from_poly(f: &UPoly<R>) -> Self {
        Self::new(0, f.coeffs().to_vec(), EXACT, f.template())
    }

    /// Expansion of `num/den` at `t = 0` to precision `prec`.
    pub fn from_fraction(num: &UPoly<R>, den: &UPoly<R>, prec: i64) -> Result<Self> {
        let n = Self::from_poly(num);
        let d = Self::from_poly(den);
        if d.is_exact_zero() {
            return Err(Error::DivisionByZero);
        }
        // Enough working precision that the quotient is known mod t^prec.
        let dv = d.val;
        let work = prec + 2 * dv - n.val.min(prec) + 1;
        let d = d.truncated(work.max(dv + 1));
        let q = n.try_div(&d)?;
        Ok(q.truncated(prec))
    }

    pub fn template(&self) -> &R {
        &self.zero
    }

    pub fn precision(&self) -> i64 {
        self.prec
    }

    pub fn is_exact(&self) -> bool {
        self.prec == EXACT
    }

    /// Valuation, or `None` for a series that is zero to its precision.
    pub fn valuation(&self) -> Option<i64> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.val)
        }
    }

    /// Lower bound for the valuation: `val`, or `prec` when zero to precision.
    pub fn val_bound(&self) -> i64 {
        self.val
    }

    pub fn is_exact_zero(&self) -> bool {
        self.coeffs.is_empty() && self.prec == EXACT
    }

    /// Coefficient of `t^k`; `None` when `k` is beyond the precision.
    pub fn coeff(&self, k: i64) -> Option<R> {
        if k >= self.prec {
            return None;
        }
        if k < self.val {
            return Some(self.zero.clone());
        }
        Some(self.coeffs.get((k - self.val) as usize).cloned().unwrap_or_else(|| self.zero.clone()))
    }

    /// Stored terms `(exponent, coefficient)`, nonzero only.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &R)> {
        self.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(move |(k, c)| (self.val + k as i64, c))
    }

    /// Forget everything from `t^prec` on.
    pub fn truncated(&self, prec: i64) -> Self {
        if prec >= self.prec {
            return self.clone();
        }
        Self::new(self.val, self.coeffs.clone(), prec, &self.zero)
    }

    /// Coefficients at `t^{from}, …, t^{to-1}`.
    fn window(&self, from: i64, to: i64) -> Vec<R> {
        (from..to)
            .map(|k| {
                if k < self.val {
                    self.zero.clone()
                } else {
                    self.coeffs.get((k - self.val) as usize).cloned().unwrap_or_else(|| self.zero.clone())
                }
            })
            .collect()
    }

    /// Part with negative exponents (exact).
    pub fn principal_part(&self) -> Self {
        let coeffs = self.window(self.val.min(0), 0);
        Self::new(self.val.min(0), coeffs, EXACT, &self.zero)
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let prec = self.prec.min(rhs.prec);
        let start = self.val.min(rhs.val);
        let end = if prec == EXACT {
            let top = |x: &Self| if x.coeffs.is_empty() { i64::MIN } else { x.val + x.coeffs.len() as i64 };
            top(self).max(top(rhs))
        } else {
            prec
        };
        if end <= start {
            return Self::zero_to(prec, &self.zero);
        }
        let a = self.window(start, end);
        let b = rhs.window(start, end);
        let coeffs = a.iter().zip(&b).map(|(x, y)| x.add(y)).collect();
        Self::new(start, coeffs, prec, &self.zero)
    }

    pub fn neg(&self) -> Self {
        Laurent { val: self.val, coeffs: self.coeffs.iter().map(Ring::neg).collect(), prec: self.prec, zero: self.zero.clone() }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        let prec = clamp(self.val.saturating_add(rhs.prec).min(rhs.val.saturating_add(self.prec)).min(EXACT));
        if self.coeffs.is_empty() || rhs.coeffs.is_empty() {
            return Self::zero_to(prec, &self.zero);
        }
        let start = self.val + rhs.val;
        let len = if prec == EXACT { self.coeffs.len() + rhs.coeffs.len() - 1 } else { (prec - start).max(0) as usize };
        let mut out = vec![self.zero.clone(); len];
        for (i, a) in self.coeffs.iter().enumerate() {
            if i >= len || a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if i + j >= len {
                    break;
                }
                out[i + j] = out[i + j].add(&a.mul(b));
            }
        }
        Self::new(start, out, prec, &self.zero)
    }

    pub fn scale(&self, c: &R) -> Self {
        let coeffs = self.coeffs.iter().map(|x| x.mul(c)).collect();
        Self::new(self.val, coeffs, self.prec, &self.zero)
    }

    /// Inverse; needs a unit leading coefficient.
    pub fn try_inverse(&self) -> Result<Self> {
        if self.coeffs.is_empty() {
            return if self.prec == EXACT {
                Err(Error::DivisionByZero)
            } else {
                Err(Error::PrecisionExhausted(format!("divisor is O(t^{})", self.prec)))
            };
        }
        let u0inv = self.coeffs[0].try_inv().ok_or(Error::DivisionByZero)?;
        let v = self.val;
        if self.prec == EXACT && self.coeffs.len() == 1 {
            return Ok(Self::new(-v, vec![u0inv], EXACT, &self.zero));
        }
        if self.prec == EXACT {
            return Err(Error::PrecisionExhausted("inverse of an exact non-monomial series needs a precision".into()));
        }
        let len = (self.prec - v) as usize;
        let u = self.window(v, self.prec);
        let mut c: Vec<R> = Vec::with_capacity(len);
        c.push(u0inv.clone());
        for k in 1..len {
            let mut s = self.zero.clone();
            for j in 1..=k {
                s = s.add(&u[j].mul(&c[k - j]));
            }
            c.push(s.mul(&u0inv).neg());
        }
        Ok(Self::new(-v, c, self.prec - 2 * v, &self.zero))
    }

    pub fn try_div(&self, rhs: &Self) -> Result<Self> {
        if self.is_exact_zero() {
            return Ok(self.clone());
        }
        Ok(self.mul(&rhs.try_inverse()?))
    }

    /// `d/dt`.
    pub fn derivative(&self) -> Self {
        let coeffs = self.coeffs.iter().enumerate().map(|(k, c)| c.scale_int(self.val + k as i64)).collect();
        let prec = if self.prec == EXACT { EXACT } else { self.prec - 1 };
        Self::new(self.val - 1, coeffs, prec, &self.zero)
    }

    /// Apply `f` to every coefficient.
    pub fn map<S: Ring>(&self, template: &S, f: impl Fn(&R) -> S) -> Laurent<S> {
        Laurent::new(self.val, self.coeffs.iter().map(f).collect(), self.prec, template)
    }

    /// Coefficient of `t^{-1}`.
    pub fn residue(&self) -> Result<R> {
        self.coeff(-1).ok_or_else(|| Error::PrecisionExhausted(format!("need precision > -1, have {}", self.prec)))
    }

    pub fn pow_int(&self, n: i64) -> Result<Self> {
        if n >= 0 {
            return Ok(Ring::pow(self, n as u64));
        }
        Ok(Ring::pow(&self.try_inverse()?, n.unsigned_abs()))
    }
}

impl<R: Ring + fmt::Display> Laurent<R> {
    /// Text form such as `t^-2 + 1 + O(t^5)`.
    pub fn render(&self, var: &str) -> String {
        let mut parts = Vec::new();
        for (k, c) in self.terms() {
            let coef = c.to_string();
            let mono = match k {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{k}"),
            };
            let is_one = c.is_one();
            parts.push(match (mono.is_empty(), is_one) {
                (true, _) => coef,
                (false, true) => mono,
                (false, false) if coef.contains('+') => format!("({coef})*{mono}"),
                (false, false) => format!("{coef}*{mono}"),
            });
        }
        if self.prec != EXACT {
            parts.push(format!("O({var}^{})", self.prec));
        } else if parts.is_empty() {
            parts.push("0".into());
        }
        parts.join(" + ")
    }
}

impl<R: Ring> fmt::Debug for Laurent<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "t^{} {:?} + O(t^{})", self.val, self.coeffs, self.prec)
    }
}

impl<R: Ring> Ring for Laurent<R> {
    fn zero_like(&self) -> Self {
        Self::zero_to(EXACT, &self.zero)
    }

    fn one_like(&self) -> Self {
        Self::constant(self.zero.one_like())
    }

    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    fn add(&self, rhs: &Self) -> Self {
        Laurent::add(self, rhs)
    }

    fn sub(&self, rhs: &Self) -> Self {
        Laurent::sub(self, rhs)
    }

    fn mul(&self, rhs: &Self) -> Self {
        Laurent::mul(self, rhs)
    }

    fn neg(&self) -> Self {
        Laurent::neg(self)
    }

    fn from_int_like(&self, n: i64) -> Self {
        Self::constant(self.zero.from_int_like(n))
    }

    fn try_inv(&self) -> Option<Self> {
        self.try_inverse().ok()
    }

    fn scale_int(&self, n: i64) -> Self {
        self.scale(&self.zero.from_int_like(n))
    }
}

impl<R: CharP> CharP for Laurent<R> {
    fn characteristic(&self) -> u64 {
        self.zero.characteristic()
    }

    fn frobenius(&self) -> Self {
        let p = self.characteristic() as i64;
        let mut coeffs = vec![self.zero.clone(); (self.coeffs.len().max(1) - 1) * p as usize + 1];
        for (k, c) in self.coeffs.iter().enumerate() {
            coeffs[k * p as usize] = c.frobenius();
        }
        let prec = if self.prec == EXACT { EXACT } else { self.prec * p };
        Self::new(self.val * p, coeffs, prec, &self.zero)
    }
}
