//! Rational functions `F_q(x_1, …, x_k)` kept in lowest terms.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use super::mpoly::{MPoly, Monomial};
use crate::algebra::{CharP, Ring, UPoly};
use crate::error::{Error, Result};
use crate::finite_fields::{GFConfig, GFElem};

/// A rational function field over a finite field with named variables.
pub struct FuncField {
    base: Arc<GFConfig>,
    vars: Vec<String>,
}

impl FuncField {
    pub fn new(base: &Arc<GFConfig>, vars: &[&str]) -> Arc<FuncField> {
        Arc::new(FuncField { base: base.clone(), vars: vars.iter().map(|v| v.to_string()).collect() })
    }

    pub fn base(&self) -> &Arc<GFConfig> {
        &self.base
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }
}

impl PartialEq for FuncField {
    fn eq(&self, other: &Self) -> bool {
        self.base.p() == other.base.p() && self.base.degree() == other.base.degree() && self.vars == other.vars
    }
}

impl Eq for FuncField {}

impl fmt::Debug for FuncField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({},{})({})", self.base.p(), self.base.degree(), self.vars.join(","))
    }
}

/// `num/den` with `gcd(num, den) = 1` and `den` graded-lex monic.
#[derive(Clone)]
pub struct RatFunc {
    field: Arc<FuncField>,
    num: MPoly,
    den: MPoly,
}

/// Binary operation selector for [`rf_arith`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RfOp {
    Add,
    Sub,
    Mul,
    Div,
    /// Integer power of the first operand; the second is ignored.
    Pow(i64),
}

impl RatFunc {
    pub fn new(field: &Arc<FuncField>, num: MPoly, den: MPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::normalized(field, num, den))
    }

    /// Scale a fraction already in lowest terms to a monic denominator.
    fn coprime(field: &Arc<FuncField>, num: MPoly, den: MPoly) -> Self {
        if num.is_zero() {
            return RatFunc::zero(field);
        }
        let lc = den.leading_coeff().try_inv().expect("nonzero denominator");
        RatFunc { field: field.clone(), num: num.scale(&lc), den: den.scale(&lc) }
    }

    fn normalized(field: &Arc<FuncField>, num: MPoly, den: MPoly) -> Self {
        let n = field.nvars();
        if num.is_zero() {
            return RatFunc { field: field.clone(), num, den: MPoly::one(&field.base, n) };
        }
        let (num, den) = if den.is_constant() {
            (num, den)
        } else {
            let g = num.gcd(&den);
            if g.is_constant() {
                (num, den)
            } else {
                (num.exact_div(&g).expect("gcd divides"), den.exact_div(&g).expect("gcd divides"))
            }
        };
        let lc = den.leading_coeff().try_inv().expect("nonzero denominator");
        RatFunc { field: field.clone(), num: num.scale(&lc), den: den.scale(&lc) }
    }

    pub fn from_poly(field: &Arc<FuncField>, num: MPoly) -> Self {
        let den = MPoly::one(&field.base, field.nvars());
        RatFunc { field: field.clone(), num, den }
    }

    pub fn zero(field: &Arc<FuncField>) -> Self {
        Self::from_poly(field, MPoly::zero(&field.base, field.nvars()))
    }

    pub fn one(field: &Arc<FuncField>) -> Self {
        Self::from_poly(field, MPoly::one(&field.base, field.nvars()))
    }

    pub fn constant(field: &Arc<FuncField>, c: GFElem) -> Self {
        Self::from_poly(field, MPoly::constant(&field.base, field.nvars(), c))
    }

    pub fn from_int(field: &Arc<FuncField>, k: i64) -> Self {
        Self::constant(field, GFElem::from_int(&field.base, k))
    }

    pub fn var(field: &Arc<FuncField>, v: usize) -> Self {
        Self::from_poly(field, MPoly::var(&field.base, field.nvars(), v))
    }

    /// Univariate polynomial in variable `v`.
    pub fn from_upoly(field: &Arc<FuncField>, u: &UPoly<GFElem>, v: usize) -> Self {
        Self::from_poly(field, MPoly::from_upoly(u, field.nvars(), v))
    }

    pub fn field(&self) -> &Arc<FuncField> {
        &self.field
    }

    pub fn base(&self) -> &Arc<GFConfig> {
        &self.field.base
    }

    pub fn num(&self) -> &MPoly {
        &self.num
    }

    pub fn den(&self) -> &MPoly {
        &self.den
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_constant()
    }

    pub fn is_constant(&self) -> bool {
        self.num.is_constant() && self.den.is_constant()
    }

    pub fn constant_value(&self) -> Option<GFElem> {
        if self.is_constant() {
            Some(Ring::mul(&self.num.constant_value()?, &self.den.constant_value()?.try_inv()?))
        } else {
            None
        }
    }

    /// Variables that actually occur.
    pub fn support_vars(&self) -> Vec<usize> {
        (0..self.field.nvars()).filter(|&v| self.num.degree_in(v).unwrap_or(0) > 0 || self.den.degree_in(v).unwrap_or(0) > 0).collect()
    }

    fn check(&self, other: &RatFunc) -> Result<()> {
        if Arc::ptr_eq(&self.field, &other.field) || *self.field == *other.field {
            Ok(())
        } else {
            Err(Error::ConfigMismatch(format!("{:?} vs {:?}", self.field, other.field)))
        }
    }

    pub fn try_div(&self, other: &RatFunc) -> Result<RatFunc> {
        self.check(other)?;
        if other.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::normalized(&self.field, self.num.mul(&other.den), self.den.mul(&other.num)))
    }

    pub fn inv(&self) -> Result<RatFunc> {
        self.try_inv().ok_or(Error::DivisionByZero)
    }

    pub fn pow_int(&self, n: i64) -> Result<RatFunc> {
        if n >= 0 {
            return Ok(Ring::pow(self, n as u64));
        }
        Ok(Ring::pow(&self.inv()?, n.unsigned_abs()))
    }

    /// Partial derivative with respect to variable `v`.
    pub fn partial(&self, v: usize) -> RatFunc {
        let top = self.num.partial(v).mul(&self.den).sub(&self.num.mul(&self.den.partial(v)));
        Self::normalized(&self.field, top, self.den.mul(&self.den))
    }

    /// Substitute rational functions (over a possibly different field) for the variables.
    pub fn substitute(&self, images: &[RatFunc]) -> Result<RatFunc> {
        assert_eq!(images.len(), self.field.nvars(), "one image per variable");
        let target = images
            .first()
            .map(|r| r.field.clone())
            .ok_or_else(|| Error::InvalidArgument("substitution needs at least one variable".into()))?;
        let eval = |p: &MPoly| -> RatFunc {
            let mut acc = RatFunc::zero(&target);
            for (m, c) in p.terms() {
                let mut t = RatFunc::constant(&target, c.clone());
                for (img, &e) in images.iter().zip(&m.0) {
                    if e > 0 {
                        t = Ring::mul(&t, &Ring::pow(img, e as u64));
                    }
                }
                acc = Ring::add(&acc, &t);
            }
            acc
        };
        eval(&self.num).try_div(&eval(&self.den))
    }

    /// Numerator and denominator as univariate polynomials in the single occurring variable.
    pub fn univariate_parts(&self, v: usize) -> Option<(UPoly<GFElem>, UPoly<GFElem>)> {
        if self.support_vars().iter().any(|&w| w != v) {
            return None;
        }
        Some((self.num.to_upoly(v), self.den.to_upoly(v)))
    }

    pub fn render(&self) -> String {
        let vars = self.field.vars();
        let n = self.num.render(vars);
        if self.den.is_constant() {
            return n;
        }
        let d = self.den.render(vars);
        let n = if n.contains('+') { format!("({n})") } else { n };
        let d = if d.contains('+') || d.contains('*') { format!("({d})") } else { d };
        format!("{n}/{d}")
    }

    /// Total order used to sort symbol entries canonically.
    pub fn cmp_canonical(&self, other: &RatFunc) -> std::cmp::Ordering {
        self.den.cmp_terms(&other.den).then_with(|| self.num.cmp_terms(&other.num))
    }
}

impl Ring for RatFunc {
    fn zero_like(&self) -> Self {
        RatFunc::zero(&self.field)
    }

    fn one_like(&self) -> Self {
        RatFunc::one(&self.field)
    }

    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// `a/b + c/d` through `g = gcd(b, d)`, so only `gcd(top, g)` remains
    /// to be cancelled.
    fn add(&self, rhs: &Self) -> Self {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den == rhs.den {
            return Self::normalized(&self.field, self.num.add(&rhs.num), self.den.clone());
        }
        let g = self.den.gcd(&rhs.den);
        if g.is_constant() {
            let top = self.num.mul(&rhs.den).add(&rhs.num.mul(&self.den));
            return Self::coprime(&self.field, top, self.den.mul(&rhs.den));
        }
        let b = self.den.exact_div(&g).expect("gcd divides");
        let d = rhs.den.exact_div(&g).expect("gcd divides");
        let top = self.num.mul(&d).add(&rhs.num.mul(&b));
        let den = self.den.mul(&d);
        if top.is_zero() {
            return RatFunc::zero(&self.field);
        }
        let h = top.gcd(&g);
        if h.is_constant() {
            return Self::coprime(&self.field, top, den);
        }
        let num = top.exact_div(&h).expect("gcd divides");
        Self::coprime(&self.field, num, den.exact_div(&h).expect("gcd divides"))
    }

    fn sub(&self, rhs: &Self) -> Self {
        Ring::add(self, &Ring::neg(rhs))
    }

    /// `a/b · c/d` with the cross cancellations `gcd(a, d)` and `gcd(c, b)`.
    fn mul(&self, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return RatFunc::zero(&self.field);
        }
        let cancel = |x: &MPoly, y: &MPoly| {
            let g = x.gcd(y);
            if g.is_constant() {
                (x.clone(), y.clone())
            } else {
                (x.exact_div(&g).expect("gcd divides"), y.exact_div(&g).expect("gcd divides"))
            }
        };
        let (a, d) = cancel(&self.num, &rhs.den);
        let (c, b) = cancel(&rhs.num, &self.den);
        Self::coprime(&self.field, a.mul(&c), b.mul(&d))
    }

    fn neg(&self) -> Self {
        RatFunc { field: self.field.clone(), num: self.num.neg(), den: self.den.clone() }
    }

    fn from_int_like(&self, n: i64) -> Self {
        RatFunc::from_int(&self.field, n)
    }

    fn try_inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        Some(Self::normalized(&self.field, self.den.clone(), self.num.clone()))
    }
}

impl CharP for RatFunc {
    fn characteristic(&self) -> u64 {
        self.field.base.p()
    }

    fn frobenius(&self) -> Self {
        RatFunc { field: self.field.clone(), num: self.num.frobenius(), den: self.den.frobenius() }
    }
}

impl PartialEq for RatFunc {
    fn eq(&self, other: &Self) -> bool {
        self.num == other.num && self.den == other.den && self.field.vars == other.field.vars
    }
}

impl Eq for RatFunc {}

impl fmt::Debug for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render())
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render())
    }
}

crate::impl_ring_ops!(RatFunc);

pub fn rf_arith(a: &RatFunc, b: &RatFunc, op: RfOp) -> Result<RatFunc> {
    match op {
        RfOp::Add => {
            a.check(b)?;
            Ok(Ring::add(a, b))
        }
        RfOp::Sub => {
            a.check(b)?;
            Ok(Ring::sub(a, b))
        }
        RfOp::Mul => {
            a.check(b)?;
            Ok(Ring::mul(a, b))
        }
        RfOp::Div => a.try_div(b),
        RfOp::Pow(n) => a.pow_int(n),
    }
}

/// Decompose `f = Σ_e g_e^p x^e` over exponent patterns `e ∈ {0..p-1}^k`.
///
/// Patterns with `g_e = 0` are omitted; the map is keyed by the pattern.
pub fn p_power_decompose(f: &RatFunc) -> BTreeMap<Vec<u32>, RatFunc> {
    let field = f.field.clone();
    let p = field.base.p() as u32;
    let n = field.nvars();
    // f = N D^{p-1} / D^p.
    let top = f.num.mul(&f.den.pow(p as u64 - 1));
    let mut parts: BTreeMap<Vec<u32>, MPoly> = BTreeMap::new();
    for (m, c) in top.terms() {
        let pattern: Vec<u32> = m.0.iter().map(|e| e % p).collect();
        let root = Monomial(m.0.iter().map(|e| e / p).collect());
        let entry = parts.entry(pattern).or_insert_with(|| MPoly::zero(&field.base, n));
        *entry = entry.add(&MPoly::term(&field.base, c.pth_root(), root));
    }
    parts.into_iter().filter(|(_, g)| !g.is_zero()).map(|(e, g)| (e, RatFunc::normalized(&field, g, f.den.clone()))).collect()
}
