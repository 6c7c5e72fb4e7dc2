//! The groups `H_{p^i}^{n+1}(F)` as formal sums of Witt symbols
//! `w ⊗ b_1 ⊗ … ⊗ b_n`, with zero-tests through invariants.
//!
//! Three field classes are supported: finite fields, rational function
//! fields `F_q(x_1, …)` and truncated Laurent fields `F_q((t))`.

mod field_impls;
mod global;
mod local;
mod wp;

use std::fmt;

use crate::algebra::CharP;
use crate::error::{Error, Result};
use crate::function_fields::RatFunc;
use crate::milnor::MilnorElement;
use crate::witt::WittVector;

pub use global::{invariant_places, local_invariant, reciprocity_check, LocalInvariant, Reciprocity};
pub use local::{laurent_invariant, theorem3_decompose, wp_reduce, Decomposition};
pub use wp::{as_solve_univariate, wp_solve_rational};

/// Coefficient fields for which classes can be built and normalized.
pub trait HField: CharP {
    /// Whether two elements live in the same field.
    fn same_field(&self, other: &Self) -> bool;

    /// Slot factorization: `b = c · Π f^m` with the constant `c` dropped
    /// (nonzero constants of a finite field are `p^i`-th powers).
    fn slot_factors(&self) -> Result<Vec<(Self, i64)>>;

    /// `Ok(true)` when `w` is recognized as `℘(v)`. `Ok(false)` means not
    /// recognized, which need not mean not in the image.
    fn detect_wp(w: &WittVector<Self>) -> Result<bool>;

    /// Decide whether a class is zero.
    fn zero_test(c: &HClass<Self>) -> Result<bool>;
}

/// One generator `w ⊗ b_1 ⊗ … ⊗ b_n`.
#[derive(Clone, PartialEq, Debug)]
pub struct HTerm<K: HField> {
    pub w: WittVector<K>,
    pub b: Vec<K>,
}

/// A formal sum of generators of a fixed level and degree.
#[derive(Clone, PartialEq)]
pub struct HClass<K: HField> {
    template: K,
    level: usize,
    degree: usize,
    terms: Vec<HTerm<K>>,
}

impl<K: HField> HClass<K> {
    pub fn zero(template: &K, level: usize, degree: usize) -> Result<Self> {
        WittVector::zero(template, level)?;
        Ok(HClass { template: template.zero_like(), level, degree, terms: Vec::new() })
    }

    /// The single generator `w ⊗ b`, without any normalization.
    pub fn free(w: &WittVector<K>, b: &[K]) -> Self {
        HClass { template: w.template(), level: w.level(), degree: b.len(), terms: vec![HTerm { w: w.clone(), b: b.to_vec() }] }
    }

    pub fn template(&self) -> &K {
        &self.template
    }

    pub fn level(&self) -> usize {
        self.level
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn p(&self) -> u64 {
        self.template.characteristic()
    }

    /// `p^i`.
    pub fn modulus(&self) -> u64 {
        self.p().pow(self.level as u32)
    }

    pub fn terms(&self) -> &[HTerm<K>] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn check(&self, other: &HClass<K>) -> Result<()> {
        if !self.template.same_field(&other.template) {
            return Err(Error::ConfigMismatch("classes over different fields".into()));
        }
        if self.level != other.level {
            return Err(Error::ConfigMismatch(format!("levels {} and {}", self.level, other.level)));
        }
        if self.degree != other.degree {
            return Err(Error::DegreeMismatch(self.degree, other.degree));
        }
        Ok(())
    }

    pub fn try_add(&self, other: &HClass<K>) -> Result<HClass<K>> {
        self.check(other)?;
        let mut terms = self.terms.clone();
        terms.extend(other.terms.iter().cloned());
        normalize(&self.template, self.level, self.degree, terms)
    }

    pub fn neg(&self) -> HClass<K> {
        self.scale_int(-1)
    }

    pub fn try_sub(&self, other: &HClass<K>) -> Result<HClass<K>> {
        self.try_add(&other.neg())
    }

    /// `m · c`, acting on the Witt slot.
    pub fn scale_int(&self, m: i64) -> HClass<K> {
        let terms: Vec<_> = self.terms.iter().map(|t| HTerm { w: t.w.scale_int(m), b: t.b.clone() }).filter(|t| !t.w.is_zero()).collect();
        HClass { terms, ..self.clone() }
    }

    /// Text form `[w | b_1, b_2) + …` with a caller-supplied entry printer.
    pub fn render_with(&self, entry: impl Fn(&K) -> String) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|t| {
                let w: Vec<String> = t.w.coords().iter().map(&entry).collect();
                let b: Vec<String> = t.b.iter().map(&entry).collect();
                format!("[[{}] | {})", w.join(", "), b.join(", "))
            })
            .collect();
        parts.join(" + ")
    }
}

impl<K: HField + fmt::Display> fmt::Display for HClass<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render_with(|x| x.to_string()))
    }
}

impl<K: HField> fmt::Debug for HClass<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("HClass").field("level", &self.level).field("degree", &self.degree).field("terms", &self.terms).finish()
    }
}

fn normalize<K: HField>(template: &K, level: usize, degree: usize, raw: Vec<HTerm<K>>) -> Result<HClass<K>> {
    let mut merged: Vec<HTerm<K>> = Vec::new();
    for term in raw {
        if term.w.is_zero() || relation(&term.w, &term.b) {
            continue;
        }
        let slots = term.b.iter().map(HField::slot_factors).collect::<Result<Vec<_>>>()?;
        let mut partial: Vec<(Vec<K>, i64)> = vec![(Vec::new(), 1)];
        for slot in &slots {
            let mut next = Vec::new();
            for (prefix, k) in &partial {
                for (f, m) in slot {
                    let mut b = prefix.clone();
                    b.push(f.clone());
                    next.push((b, k * m));
                }
            }
            partial = next;
        }
        for (b, m) in partial {
            let w = term.w.scale_int(m);
            match merged.iter_mut().find(|t| t.b == b) {
                Some(t) => t.w = t.w.add(&w),
                None => merged.push(HTerm { w, b }),
            }
        }
    }
    let mut terms = Vec::new();
    for t in merged {
        if t.w.is_zero() || relation(&t.w, &t.b) || K::detect_wp(&t.w).unwrap_or(false) {
            continue;
        }
        terms.push(t);
    }
    Ok(HClass { template: template.zero_like(), level, degree, terms })
}

/// Whether `(w, b)` is syntactically a generator of `J`: a repeated slot,
/// or `(a, 0, …, 0) ⊗ … a …`.
fn relation<K: HField>(w: &WittVector<K>, b: &[K]) -> bool {
    for i in 0..b.len() {
        for j in i + 1..b.len() {
            if b[i] == b[j] {
                return true;
            }
        }
    }
    let c = w.coords();
    c[1..].iter().all(|x| x.is_zero()) && b.iter().any(|x| *x == c[0])
}

/// The generator `w ⊗ b_1 ⊗ … ⊗ b_n`, normalized.
pub fn h_build<K: HField>(w: &WittVector<K>, b: &[K]) -> Result<HClass<K>> {
    let template = w.template();
    for x in b {
        if !x.same_field(&template) {
            return Err(Error::ConfigMismatch("slot entry from a different field".into()));
        }
        if x.is_zero() {
            return Err(Error::InvalidArgument("slot entries must be nonzero".into()));
        }
    }
    normalize(&template, w.level(), b.len(), vec![HTerm { w: w.clone(), b: b.to_vec() }])
}

pub fn h_add<K: HField>(a: &HClass<K>, b: &HClass<K>) -> Result<HClass<K>> {
    a.try_add(b)
}

pub fn h_neg<K: HField>(a: &HClass<K>) -> HClass<K> {
    a.neg()
}

/// `(w, Σ c {b_1, …, b_n}) ↦ Σ c · w ⊗ b_1 ⊗ … ⊗ b_n`.
pub fn pair(w: &WittVector<RatFunc>, s: &MilnorElement) -> Result<HClass<RatFunc>> {
    let template = w.template();
    if **template.field() != **s.field() {
        return Err(Error::ConfigMismatch("Witt vector and symbol over different fields".into()));
    }
    let mut acc = HClass::zero(&template, w.level(), s.degree())?;
    for (entries, c) in s.terms() {
        acc = acc.try_add(&h_build(&w.scale_int(c), &entries)?)?;
    }
    Ok(acc)
}

/// `W_i → W_{i'}` on every Witt slot.
pub fn level_shift<K: HField>(c: &HClass<K>, level: usize) -> Result<HClass<K>> {
    if level < c.level {
        return Err(Error::LevelDecrease { from: c.level, to: level });
    }
    let terms = c.terms.iter().map(|t| Ok(HTerm { w: t.w.shift_to(level)?, b: t.b.clone() })).collect::<Result<Vec<_>>>()?;
    normalize(&c.template, level, c.degree, terms)
}

pub fn h_zero_test<K: HField>(c: &HClass<K>) -> Result<bool> {
    if c.is_zero() {
        return Ok(true);
    }
    K::zero_test(c)
}

/// A class regarded in `H^{n+1} = lim_i H_{p^i}^{n+1}`.
#[derive(Clone, Debug)]
pub struct ColimitClass<K: HField> {
    pub class: HClass<K>,
}

impl<K: HField> ColimitClass<K> {
    pub fn new(class: HClass<K>) -> Self {
        ColimitClass { class }
    }

    pub fn level(&self) -> usize {
        self.class.level
    }
}

/// Shift both classes to the larger level and zero-test the difference.
pub fn colimit_equal<K: HField>(a: &ColimitClass<K>, b: &ColimitClass<K>) -> Result<bool> {
    let level = a.level().max(b.level());
    let x = level_shift(&a.class, level)?;
    let y = level_shift(&b.class, level)?;
    h_zero_test(&x.try_sub(&y)?)
}

/// Restriction of a class over `F` to the Artin–Schreier extension `L`.
pub fn restrict_class(ext: &crate::milnor::ASExtension, c: &HClass<RatFunc>) -> Result<HClass<RatFunc>> {
    let template = RatFunc::zero(ext.ext());
    let mut acc = HClass::zero(&template, c.level, c.degree)?;
    for t in c.terms() {
        let coords = t.w.coords().iter().map(|x| ext.embed(x)).collect::<Result<Vec<_>>>()?;
        let b = t.b.iter().map(|x| ext.embed(x)).collect::<Result<Vec<_>>>()?;
        acc = acc.try_add(&h_build(&WittVector::new(coords)?, &b)?)?;
    }
    Ok(acc)
}
