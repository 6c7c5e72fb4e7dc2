//! Kähler differentials over `F_q(x_1, …, x_k)` in the basis `dx_I`, with the
//! exterior derivative, the (inverse) Cartier operator and the logarithmic test.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::algebra::{CharP, Ring};
use crate::error::{Error, Result};
use crate::function_fields::{p_power_decompose, FuncField, RatFunc};

/// `Σ_I f_I dx_I` with `|I| = degree`; index sets are strictly increasing.
#[derive(Clone, PartialEq)]
pub struct DiffForm {
    field: Arc<FuncField>,
    degree: usize,
    terms: BTreeMap<Vec<usize>, RatFunc>,
}

/// Sign of the permutation sorting `v`, or `None` if it has repeats.
fn sort_sign(v: &mut [usize]) -> Option<i64> {
    let mut sign = 1;
    for i in 0..v.len() {
        for j in 0..v.len() - 1 - i {
            if v[j] == v[j + 1] {
                return None;
            }
            if v[j] > v[j + 1] {
                v.swap(j, j + 1);
                sign = -sign;
            }
        }
    }
    if v.windows(2).any(|w| w[0] == w[1]) {
        return None;
    }
    Some(sign)
}

impl DiffForm {
    pub fn zero(field: &Arc<FuncField>, degree: usize) -> Result<Self> {
        if degree > field.nvars() {
            return Err(Error::DegreeOverflow(degree, field.nvars()));
        }
        Ok(DiffForm { field: field.clone(), degree, terms: BTreeMap::new() })
    }

    /// The zero form of any degree, including degrees above the number of
    /// variables where `Ω^n` vanishes.
    pub fn vanishing(field: &Arc<FuncField>, degree: usize) -> Self {
        DiffForm { field: field.clone(), degree, terms: BTreeMap::new() }
    }

    /// A degree-0 form.
    pub fn function(f: &RatFunc) -> Self {
        let mut form = DiffForm { field: f.field().clone(), degree: 0, terms: BTreeMap::new() };
        form.insert(Vec::new(), f.clone());
        form
    }

    /// `f dx_I` for an arbitrary (unsorted) list of variable indices.
    pub fn monomial(f: &RatFunc, index: &[usize]) -> Result<Self> {
        let field = f.field().clone();
        if index.len() > field.nvars() {
            return Err(Error::DegreeOverflow(index.len(), field.nvars()));
        }
        if let Some(&v) = index.iter().find(|&&v| v >= field.nvars()) {
            return Err(Error::InvalidArgument(format!("variable index {v} out of range")));
        }
        let mut form = DiffForm::zero(&field, index.len())?;
        let mut idx = index.to_vec();
        if let Some(sign) = sort_sign(&mut idx) {
            form.insert(idx, f.scale_int(sign));
        }
        Ok(form)
    }

    /// `dx_v`.
    pub fn dx(field: &Arc<FuncField>, v: usize) -> Result<Self> {
        Self::monomial(&RatFunc::one(field), &[v])
    }

    fn insert(&mut self, idx: Vec<usize>, f: RatFunc) {
        if f.is_zero() {
            return;
        }
        match self.terms.get_mut(&idx) {
            Some(g) => {
                let s = Ring::add(g, &f);
                if s.is_zero() {
                    self.terms.remove(&idx);
                } else {
                    *g = s;
                }
            }
            None => {
                self.terms.insert(idx, f);
            }
        }
    }

    pub fn field(&self) -> &Arc<FuncField> {
        &self.field
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<usize>, &RatFunc)> {
        self.terms.iter()
    }

    pub fn coeff(&self, index: &[usize]) -> RatFunc {
        self.terms.get(index).cloned().unwrap_or_else(|| RatFunc::zero(&self.field))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn check(&self, other: &DiffForm) -> Result<()> {
        if *self.field != *other.field {
            return Err(Error::ConfigMismatch(format!("{:?} vs {:?}", self.field, other.field)));
        }
        if self.degree != other.degree {
            return Err(Error::DegreeMismatch(self.degree, other.degree));
        }
        Ok(())
    }

    pub fn try_add(&self, other: &DiffForm) -> Result<DiffForm> {
        self.check(other)?;
        let mut out = self.clone();
        for (idx, f) in &other.terms {
            out.insert(idx.clone(), f.clone());
        }
        Ok(out)
    }

    pub fn add(&self, other: &DiffForm) -> DiffForm {
        self.try_add(other).expect("compatible forms")
    }

    pub fn neg(&self) -> DiffForm {
        let terms = self.terms.iter().map(|(i, f)| (i.clone(), Ring::neg(f))).collect();
        DiffForm { field: self.field.clone(), degree: self.degree, terms }
    }

    pub fn sub(&self, other: &DiffForm) -> DiffForm {
        self.add(&other.neg())
    }

    /// Multiply every coefficient by `f`.
    pub fn scale(&self, f: &RatFunc) -> DiffForm {
        let mut out = DiffForm { field: self.field.clone(), degree: self.degree, terms: BTreeMap::new() };
        for (idx, g) in &self.terms {
            out.insert(idx.clone(), Ring::mul(g, f));
        }
        out
    }

    pub fn scale_int(&self, k: i64) -> DiffForm {
        self.scale(&RatFunc::from_int(&self.field, k))
    }

    pub fn wedge(&self, other: &DiffForm) -> Result<DiffForm> {
        if *self.field != *other.field {
            return Err(Error::ConfigMismatch(format!("{:?} vs {:?}", self.field, other.field)));
        }
        let mut out = DiffForm::zero(&self.field, self.degree + other.degree)?;
        for (i, f) in &self.terms {
            for (j, g) in &other.terms {
                let mut idx: Vec<usize> = i.iter().chain(j.iter()).copied().collect();
                if let Some(sign) = sort_sign(&mut idx) {
                    out.insert(idx, Ring::mul(f, g).scale_int(sign));
                }
            }
        }
        Ok(out)
    }

    /// Exterior derivative. Forms of top degree map to the zero form of the
    /// same degree.
    pub fn d(&self) -> DiffForm {
        let k = self.field.nvars();
        if self.degree == k {
            return DiffForm { field: self.field.clone(), degree: self.degree, terms: BTreeMap::new() };
        }
        let mut out = DiffForm { field: self.field.clone(), degree: self.degree + 1, terms: BTreeMap::new() };
        for (idx, f) in &self.terms {
            for v in 0..k {
                if idx.contains(&v) {
                    continue;
                }
                let df = f.partial(v);
                if df.is_zero() {
                    continue;
                }
                let mut new_idx = vec![v];
                new_idx.extend(idx.iter().copied());
                let sign = sort_sign(&mut new_idx).expect("v not in idx");
                out.insert(new_idx, df.scale_int(sign));
            }
        }
        out
    }

    pub fn is_closed(&self) -> bool {
        self.d().is_zero()
    }

    /// `df/f`.
    pub fn dlog(f: &RatFunc) -> Result<DiffForm> {
        if f.is_zero() {
            return Err(Error::DlogOfZero);
        }
        let inv = f.inv()?;
        Ok(DiffForm::function(f).d().scale(&inv))
    }

    /// `f dx_I ↦ f^p x^{(p-1) 1_I} dx_I`, extended additively.
    pub fn cartier_inv(&self) -> DiffForm {
        let p = self.field.base().p();
        let mut out = DiffForm { field: self.field.clone(), degree: self.degree, terms: BTreeMap::new() };
        for (idx, f) in &self.terms {
            let mut g = f.frobenius();
            for &v in idx {
                g = Ring::mul(&g, &Ring::pow(&RatFunc::var(&self.field, v), p - 1));
            }
            out.insert(idx.clone(), g);
        }
        out
    }

    /// The Cartier operator on closed forms.
    pub fn cartier(&self) -> Result<DiffForm> {
        if !self.is_closed() {
            return Err(Error::NotClosed(self.to_string()));
        }
        let p = self.field.base().p() as u32;
        let k = self.field.nvars();
        let mut out = DiffForm { field: self.field.clone(), degree: self.degree, terms: BTreeMap::new() };
        for (idx, f) in &self.terms {
            let pattern: Vec<u32> = (0..k).map(|v| if idx.contains(&v) { p - 1 } else { 0 }).collect();
            if let Some(g) = p_power_decompose(f).remove(&pattern) {
                out.insert(idx.clone(), g);
            }
        }
        Ok(out)
    }

    /// Exact iff closed with vanishing Cartier image.
    pub fn is_exact(&self) -> bool {
        self.is_closed() && self.cartier().map(|c| c.is_zero()).unwrap_or(false)
    }

    /// Membership in `ν_n`: closed and fixed by the Cartier operator.
    pub fn nu_test(&self) -> bool {
        self.is_closed() && self.cartier().map(|c| c == *self).unwrap_or(false)
    }

    /// Text form such as `(1/t) dt` or `x/(y+1) dx^dy`.
    pub fn render(&self) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let vars = self.field.vars();
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(idx, f)| {
                let coef = f.render();
                if idx.is_empty() {
                    return if coef.contains('+') { format!("({coef})") } else { coef };
                }
                let basis: Vec<String> = idx.iter().map(|&v| format!("d{}", vars[v])).collect();
                let basis = basis.join("^");
                if f.is_one() {
                    basis
                } else if coef.contains('+') || coef.contains('/') {
                    format!("({coef}) {basis}")
                } else {
                    format!("{coef} {basis}")
                }
            })
            .collect();
        parts.join(" + ")
    }
}

impl fmt::Display for DiffForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render())
    }
}

impl fmt::Debug for DiffForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render())
    }
}
