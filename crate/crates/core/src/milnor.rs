//! Milnor symbols over rational function fields, the differential symbol,
//! and rational Artin–Schreier extensions `F_q(u) / F_q(t)`, `t = u^p - u`.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::algebra::{Ring, UPoly};
use crate::error::{Error, Result};
use crate::finite_fields::GFElem;
use crate::forms::DiffForm;
use crate::function_fields::{factor_univariate, FuncField, MPoly, RatFunc};

/// A symbol entry ordered canonically so symbols can key a map.
#[derive(Clone, PartialEq, Eq)]
pub struct Entry(pub RatFunc);

impl PartialOrd for Entry {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Entry {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.cmp_canonical(&other.0)
    }
}

impl fmt::Debug for Entry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// A formal integer combination of degree-`n` symbols `{a_1, …, a_n}`.
#[derive(Clone, PartialEq)]
pub struct MilnorElement {
    field: Arc<FuncField>,
    degree: usize,
    terms: BTreeMap<Vec<Entry>, i64>,
}

impl MilnorElement {
    pub fn zero(field: &Arc<FuncField>, degree: usize) -> Self {
        MilnorElement { field: field.clone(), degree, terms: BTreeMap::new() }
    }

    /// The single symbol `{a_1, …, a_n}`.
    pub fn symbol(entries: &[RatFunc]) -> Result<Self> {
        let field =
            entries.first().map(|e| e.field().clone()).ok_or_else(|| Error::InvalidArgument("a symbol needs at least one entry".into()))?;
        Self::symbol_in(&field, entries)
    }

    /// Symbol over an explicit field; allows degree 0 (the unit symbol `{}`).
    pub fn symbol_in(field: &Arc<FuncField>, entries: &[RatFunc]) -> Result<Self> {
        if entries.iter().any(Ring::is_zero) {
            return Err(Error::InvalidArgument("symbol entries must be nonzero".into()));
        }
        if entries.iter().any(|e| **e.field() != **field) {
            return Err(Error::ConfigMismatch("symbol entries from different fields".into()));
        }
        let mut out = Self::zero(field, entries.len());
        out.insert(entries.iter().cloned().map(Entry).collect(), 1);
        Ok(out)
    }

    fn insert(&mut self, key: Vec<Entry>, c: i64) {
        if c == 0 {
            return;
        }
        let entry = self.terms.entry(key.clone()).or_insert(0);
        *entry += c;
        if *entry == 0 {
            self.terms.remove(&key);
        }
    }

    pub fn field(&self) -> &Arc<FuncField> {
        &self.field
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn terms(&self) -> impl Iterator<Item = (Vec<RatFunc>, i64)> + '_ {
        self.terms.iter().map(|(k, &c)| (k.iter().map(|e| e.0.clone()).collect(), c))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn check(&self, other: &MilnorElement) -> Result<()> {
        if *self.field != *other.field {
            return Err(Error::ConfigMismatch(format!("{:?} vs {:?}", self.field, other.field)));
        }
        if self.degree != other.degree {
            return Err(Error::DegreeMismatch(self.degree, other.degree));
        }
        Ok(())
    }

    pub fn try_add(&self, other: &MilnorElement) -> Result<MilnorElement> {
        self.check(other)?;
        let mut out = self.clone();
        for (k, &c) in &other.terms {
            out.insert(k.clone(), c);
        }
        Ok(out)
    }

    pub fn scale(&self, k: i64) -> MilnorElement {
        let mut out = Self::zero(&self.field, self.degree);
        for (key, &c) in &self.terms {
            out.insert(key.clone(), c * k);
        }
        out
    }

    pub fn neg(&self) -> MilnorElement {
        self.scale(-1)
    }

    pub fn try_sub(&self, other: &MilnorElement) -> Result<MilnorElement> {
        self.try_add(&other.neg())
    }

    /// Apply a map to every entry (the target field may differ).
    pub fn map_entries(&self, target: &Arc<FuncField>, f: impl Fn(&RatFunc) -> Result<RatFunc>) -> Result<MilnorElement> {
        let mut out = Self::zero(target, self.degree);
        for (key, &c) in &self.terms {
            let mapped = key.iter().map(|e| f(&e.0).map(Entry)).collect::<Result<Vec<_>>>()?;
            out.insert(mapped, c);
        }
        Ok(out)
    }

    /// Text form such as `{t, t+1} - 2*{x, y}`.
    pub fn render(&self) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut out = String::new();
        for (key, &c) in &self.terms {
            let body = format!("{{{}}}", key.iter().map(|e| e.0.render()).collect::<Vec<_>>().join(", "));
            let mag = c.unsigned_abs();
            let piece = if mag == 1 { body } else { format!("{mag}*{body}") };
            if out.is_empty() {
                if c < 0 {
                    out.push('-');
                }
            } else {
                out.push_str(if c < 0 { " - " } else { " + " });
            }
            out.push_str(&piece);
        }
        out
    }
}

impl fmt::Display for MilnorElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render())
    }
}

impl fmt::Debug for MilnorElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render())
    }
}

/// Whether the symbol is killed by the Steinberg relation or has a repeated
/// entry (`{a, a} = {a, -1}` is `p`-divisible).
fn trivially_zero(key: &[Entry]) -> bool {
    for i in 0..key.len() {
        for j in i + 1..key.len() {
            if key[i] == key[j] || Ring::add(&key[i].0, &key[j].0).is_one() {
                return true;
            }
        }
    }
    false
}

/// Split a nonzero entry into `(factor, exponent)` pairs. Univariate entries
/// are factored into a constant and monic irreducibles; entries in several
/// variables are kept whole.
pub fn entry_factors(f: &RatFunc) -> Result<Vec<(RatFunc, i64)>> {
    let field = f.field().clone();
    let support = f.support_vars();
    if support.len() != 1 {
        return Ok(if f.is_one() { Vec::new() } else { vec![(f.clone(), 1)] });
    }
    let v = support[0];
    let (num, den) = f.univariate_parts(v).expect("univariate");
    let fnum = factor_univariate(&num)?;
    let fden = factor_univariate(&den)?;
    let mut out = Vec::new();
    let unit = Ring::mul(&fnum.unit, &fden.unit.try_inv().ok_or(Error::DivisionByZero)?);
    if !unit.is_one() {
        out.push((RatFunc::constant(&field, unit), 1));
    }
    for (g, m) in fnum.factors {
        out.push((RatFunc::from_upoly(&field, &g, v), m as i64));
    }
    for (g, m) in fden.factors {
        out.push((RatFunc::from_upoly(&field, &g, v), -(m as i64)));
    }
    Ok(out)
}

/// Expand by multilinearity along the factorization strategy and drop
/// symbols that vanish by the Steinberg or repeated-entry relations.
pub fn symbol_expand(s: &MilnorElement) -> Result<MilnorElement> {
    let mut out = MilnorElement::zero(&s.field, s.degree);
    for (key, &c) in &s.terms {
        if trivially_zero(key) {
            continue;
        }
        let slots = key.iter().map(|e| entry_factors(&e.0)).collect::<Result<Vec<_>>>()?;
        let mut partial: Vec<(Vec<Entry>, i64)> = vec![(Vec::new(), c)];
        for slot in &slots {
            let mut next = Vec::new();
            for (prefix, k) in &partial {
                for (g, m) in slot {
                    let mut p = prefix.clone();
                    p.push(Entry(g.clone()));
                    next.push((p, k * m));
                }
            }
            partial = next;
        }
        for (k, coeff) in partial {
            if !trivially_zero(&k) {
                out.insert(k, coeff);
            }
        }
    }
    Ok(out)
}

/// `{a_1, …, a_n} ↦ da_1/a_1 ∧ … ∧ da_n/a_n`, extended additively.
pub fn d_symbol(s: &MilnorElement) -> Result<DiffForm> {
    let k = s.field.nvars();
    let mut acc = DiffForm::vanishing(&s.field, s.degree);
    if s.degree > k {
        return Ok(acc);
    }
    for (key, &c) in &s.terms {
        let mut form = DiffForm::function(&RatFunc::one(&s.field));
        for e in key {
            form = form.wedge(&DiffForm::dlog(&e.0)?)?;
        }
        acc = acc.try_add(&form.scale_int(c))?;
    }
    Ok(acc)
}

/// Equality in `K_n(F)/p`, decided by comparing differential symbols.
pub fn kn_equal(a: &MilnorElement, b: &MilnorElement) -> Result<bool> {
    Ok(d_symbol(&a.try_sub(b)?)?.is_zero())
}

/// `L = F_q(u)` over `F = F_q(t)` with `t = u^p - u` and `σ(u) = u + 1`.
pub struct ASExtension {
    base: Arc<FuncField>,
    ext: Arc<FuncField>,
}

/// Selector for [`as_ext_maps`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AsMap {
    OneMinusSigma,
    NormProj,
    Restrict,
}

impl ASExtension {
    pub fn new(base: &Arc<FuncField>, ext: &Arc<FuncField>) -> Result<Self> {
        if base.nvars() != 1 || ext.nvars() != 1 {
            return Err(Error::UnsupportedField("Artin-Schreier extensions need univariate fields".into()));
        }
        if base.base().p() != ext.base().p() || base.base().degree() != ext.base().degree() {
            return Err(Error::ConfigMismatch("constant fields differ".into()));
        }
        if base.vars() == ext.vars() {
            return Err(Error::InvalidArgument("extension variable must differ from the base variable".into()));
        }
        Ok(ASExtension { base: base.clone(), ext: ext.clone() })
    }

    pub fn base(&self) -> &Arc<FuncField> {
        &self.base
    }

    pub fn ext(&self) -> &Arc<FuncField> {
        &self.ext
    }

    pub fn degree(&self) -> u64 {
        self.base.base().p()
    }

    /// `u^p - u`.
    pub fn t_image(&self) -> RatFunc {
        let u = RatFunc::var(&self.ext, 0);
        Ring::sub(&Ring::pow(&u, self.degree()), &u)
    }

    /// The embedding `F → L`.
    pub fn embed(&self, f: &RatFunc) -> Result<RatFunc> {
        if **f.field() != *self.base {
            return Err(Error::ConfigMismatch("element is not in the base field".into()));
        }
        f.substitute(&[self.t_image()])
    }

    /// `σ^c`: `u ↦ u + c`.
    pub fn sigma_pow(&self, g: &RatFunc, c: i64) -> Result<RatFunc> {
        if **g.field() != *self.ext {
            return Err(Error::ConfigMismatch("element is not in the extension field".into()));
        }
        let u = RatFunc::var(&self.ext, 0);
        g.substitute(&[Ring::add(&u, &RatFunc::from_int(&self.ext, c))])
    }

    pub fn sigma(&self, g: &RatFunc) -> Result<RatFunc> {
        self.sigma_pow(g, 1)
    }

    pub fn in_base(&self, g: &RatFunc) -> Result<bool> {
        Ok(self.sigma(g)? == *g)
    }

    /// Preimage in `F` of a `σ`-fixed element.
    pub fn pullback(&self, g: &RatFunc) -> Result<RatFunc> {
        let cfg = self.base.base().clone();
        let t_poly = self.t_image().num().to_upoly(0);
        let expand = |f: &MPoly| -> Result<UPoly<GFElem>> {
            // Digits of f in base t_poly must be constants.
            let mut rest = f.to_upoly(0);
            let mut digits = Vec::new();
            while !rest.is_zero() {
                let (q, r) = rest.div_rem(&t_poly).expect("monic");
                if r.degree().unwrap_or(0) > 0 {
                    return Err(Error::InvalidArgument(format!("{} is not in the base field", g)));
                }
                digits.push(r.coeff(0));
                rest = q;
            }
            Ok(UPoly::new(digits, &GFElem::zero(&cfg)))
        };
        let num = expand(g.num())?;
        let den = expand(g.den())?;
        RatFunc::from_upoly(&self.base, &num, 0).try_div(&RatFunc::from_upoly(&self.base, &den, 0))
    }

    /// `N_{L/F}(g) = Π_{c ∈ F_p} σ^c(g)`, as an element of `F`.
    pub fn norm(&self, g: &RatFunc) -> Result<RatFunc> {
        let mut acc = RatFunc::one(&self.ext);
        for c in 0..self.degree() as i64 {
            acc = Ring::mul(&acc, &self.sigma_pow(g, c)?);
        }
        self.pullback(&acc)
    }

    /// `{a_1, …} ↦ {a_1, …} - {σa_1, …}`; a single-entry symbol is combined
    /// into `{a/σa}`.
    pub fn one_minus_sigma(&self, x: &MilnorElement) -> Result<MilnorElement> {
        let mut out = MilnorElement::zero(&self.ext, x.degree);
        for (key, &c) in &x.terms {
            let moved = key.iter().map(|e| self.sigma(&e.0).map(Entry)).collect::<Result<Vec<_>>>()?;
            if key.len() == 1 {
                let q = key[0].0.try_div(&moved[0].0)?;
                out.insert(vec![Entry(q)], c);
            } else {
                out.insert(key.clone(), c);
                out.insert(moved, -c);
            }
        }
        Ok(out)
    }

    /// Norm in projection-formula shape: at most one entry outside `F`, which
    /// is replaced by its norm; the other entries are pulled back.
    pub fn norm_proj(&self, x: &MilnorElement) -> Result<MilnorElement> {
        let mut out = MilnorElement::zero(&self.base, x.degree);
        for (key, &c) in &x.terms {
            let outside: Vec<usize> = (0..key.len()).filter(|&k| !self.in_base(&key[k].0).unwrap_or(false)).collect();
            if outside.len() > 1 {
                return Err(Error::NormShapeUnsupported);
            }
            let mut entries = Vec::with_capacity(key.len());
            for (k, e) in key.iter().enumerate() {
                if outside.first() == Some(&k) {
                    entries.push(Entry(self.norm(&e.0)?));
                } else {
                    entries.push(Entry(self.pullback(&e.0)?));
                }
            }
            // With every entry in F, N(res a) = a^p on the first slot.
            let mult = if outside.is_empty() && !key.is_empty() { self.degree() as i64 } else { 1 };
            if entries.iter().any(|e| e.0.is_one()) {
                continue;
            }
            out.insert(entries, c * mult);
        }
        Ok(out)
    }

    /// Restriction `K_n(F) → K_n(L)`.
    pub fn restrict(&self, x: &MilnorElement) -> Result<MilnorElement> {
        x.map_entries(&self.ext, |e| self.embed(e))
    }
}

pub fn as_ext_maps(e: &ASExtension, x: &MilnorElement, map: AsMap) -> Result<MilnorElement> {
    match map {
        AsMap::OneMinusSigma => e.one_minus_sigma(x),
        AsMap::NormProj => e.norm_proj(x),
        AsMap::Restrict => e.restrict(x),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finite_fields::gf_make;

    fn field(p: u64, vars: &[&str]) -> (Arc<FuncField>, Vec<RatFunc>) {
        let f = FuncField::new(&gf_make(p, 1).unwrap(), vars);
        let xs = (0..vars.len()).map(|v| RatFunc::var(&f, v)).collect();
        (f, xs)
    }

    #[test]
    fn expansion_examples() {
        let (f, v) = field(3, &["t", "y"]);
        let t = &v[0];
        let one = RatFunc::one(&f);
        let st = MilnorElement::symbol(&[t.clone(), Ring::sub(&one, t)]).unwrap();
        assert!(symbol_expand(&st).unwrap().is_zero());
        let sq = MilnorElement::symbol(&[Ring::mul(t, t), v[1].clone()]).unwrap();
        let expected = MilnorElement::symbol(&[t.clone(), v[1].clone()]).unwrap().scale(2);
        assert_eq!(symbol_expand(&sq).unwrap(), expected);
        let (_, w) = field(2, &["x", "y"]);
        let xx = MilnorElement::symbol(&[w[0].clone(), w[0].clone()]).unwrap();
        assert!(symbol_expand(&xx).unwrap().is_zero());
    }

    #[test]
    fn differential_symbol() {
        let (_, v) = field(2, &["x", "y"]);
        let xy = MilnorElement::symbol(&[v[0].clone(), v[1].clone()]).unwrap();
        let yx = MilnorElement::symbol(&[v[1].clone(), v[0].clone()]).unwrap();
        assert!(kn_equal(&xy, &yx).unwrap());
        assert!(d_symbol(&xy).unwrap().nu_test());
        let (_, v3) = field(3, &["x", "y"]);
        let xy3 = MilnorElement::symbol(&[v3[0].clone(), v3[1].clone()]).unwrap();
        let yx3 = MilnorElement::symbol(&[v3[1].clone(), v3[0].clone()]).unwrap();
        assert!(!kn_equal(&xy3, &yx3).unwrap());
        assert!(kn_equal(&xy3, &xy3.try_add(&xy3.scale(3)).unwrap()).unwrap());
        let (f1, t) = field(2, &["t"]);
        let s = MilnorElement::symbol(&[t[0].clone(), Ring::add(&t[0], &RatFunc::one(&f1))]).unwrap();
        assert!(d_symbol(&s).unwrap().is_zero());
        assert!(matches!(kn_equal(&s, &MilnorElement::zero(&f1, 1)), Err(Error::DegreeMismatch(2, 1))));
    }

    #[test]
    fn artin_schreier_maps() {
        let (base, t) = field(2, &["t"]);
        let (ext, u) = field(2, &["u"]);
        let e = ASExtension::new(&base, &ext).unwrap();
        assert_eq!(e.norm(&u[0]).unwrap(), t[0]);
        let x = MilnorElement::symbol(&[u[0].clone()]).unwrap();
        let oms = e.one_minus_sigma(&x).unwrap();
        let expected = u[0].try_div(&Ring::add(&u[0], &RatFunc::one(&ext))).unwrap();
        assert_eq!(oms, MilnorElement::symbol(&[expected]).unwrap());
        let b = Ring::add(&t[0], &RatFunc::one(&base));
        let ub = MilnorElement::symbol(&[u[0].clone(), e.embed(&b).unwrap()]).unwrap();
        assert_eq!(e.norm_proj(&ub).unwrap(), MilnorElement::symbol(&[t[0].clone(), b]).unwrap());
        let two = MilnorElement::symbol(&[u[0].clone(), Ring::add(&u[0], &u[0].pow(3))]).unwrap();
        assert_eq!(e.norm_proj(&two), Err(Error::NormShapeUnsupported));
    }
}
