//! Places of `F_q(t)`, their residue fields, and residues of `g dt`.

use std::fmt;
use std::sync::Arc;

use super::factor::{factor_univariate, poly_key};
use super::laurent::Laurent;
use super::ratfunc::RatFunc;
use crate::algebra::{Ring, UPoly};
use crate::error::{Error, Result};
use crate::finite_fields::{GFConfig, GFElem};

type Poly = UPoly<GFElem>;

/// A normalized discrete valuation of `F_q(t)` trivial on `F_q`.
#[derive(Clone, PartialEq)]
pub enum Place {
    /// The valuation attached to a monic irreducible polynomial.
    Finite(Poly),
    /// The degree valuation `-deg`.
    Infinity,
}

impl Place {
    pub fn finite(f: Poly) -> Result<Place> {
        match f.degree() {
            None | Some(0) => Err(Error::InvalidArgument("place polynomial must have positive degree".into())),
            _ if !f.is_monic() => Err(Error::InvalidArgument("place polynomial must be monic".into())),
            _ if !super::factor::is_irreducible(&f) => Err(Error::InvalidArgument("place polynomial must be irreducible".into())),
            _ => Ok(Place::Finite(f)),
        }
    }

    /// Degree of the residue field over `F_q`.
    pub fn degree(&self) -> usize {
        match self {
            Place::Finite(f) => f.degree().unwrap_or(0),
            Place::Infinity => 1,
        }
    }

    pub fn residue_field(&self, base: &Arc<GFConfig>) -> Arc<ResidueField> {
        match self {
            Place::Finite(f) => ResidueField::new(f.clone()),
            Place::Infinity => ResidueField::new(Poly::x(&GFElem::zero(base))),
        }
    }

    /// Order of a univariate rational function at this place.
    pub fn order_of(&self, num: &Poly, den: &Poly) -> Option<i64> {
        if num.is_zero() {
            return None;
        }
        match self {
            Place::Finite(f) => Some(multiplicity(num, f) as i64 - multiplicity(den, f) as i64),
            Place::Infinity => Some(den.degree().unwrap_or(0) as i64 - num.degree().unwrap_or(0) as i64),
        }
    }

    pub fn render(&self, var: &str) -> String {
        match self {
            Place::Finite(f) => render_poly(f, var),
            Place::Infinity => "inf".into(),
        }
    }

    /// Ordering: finite places by degree and coefficients, infinity last.
    pub fn sort_key(&self) -> (u8, (usize, Vec<u64>)) {
        match self {
            Place::Finite(f) => (0, poly_key(f)),
            Place::Infinity => (1, (0, Vec::new())),
        }
    }
}

impl fmt::Debug for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render("t"))
    }
}

/// Multiplicity of the irreducible `f` in `g` (`g ≠ 0`).
pub fn multiplicity(g: &Poly, f: &Poly) -> u32 {
    let mut g = g.clone();
    let mut m = 0;
    while !g.is_zero() {
        let (q, r) = g.div_rem(f).expect("monic place polynomial");
        if !r.is_zero() {
            break;
        }
        g = q;
        m += 1;
    }
    m
}

/// Render a univariate polynomial with highest terms first, e.g. `t^2+t+1`.
pub fn render_poly(f: &Poly, var: &str) -> String {
    if f.is_zero() {
        return "0".into();
    }
    let mut parts = Vec::new();
    for (k, c) in f.coeffs().iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let coef = c.to_string();
        let mono = match k {
            0 => String::new(),
            1 => var.to_string(),
            _ => format!("{var}^{k}"),
        };
        parts.push(if mono.is_empty() {
            coef
        } else if c.is_one() {
            mono
        } else if coef.contains('+') {
            format!("({coef})*{mono}")
        } else {
            format!("{coef}*{mono}")
        });
    }
    parts.join("+")
}

/// Finite places where a nonzero univariate function has a zero or a pole,
/// sorted, without infinity.
pub fn finite_support(num: &Poly, den: &Poly) -> Result<Vec<Place>> {
    let mut places: Vec<Place> = Vec::new();
    for f in [num, den] {
        if f.degree().unwrap_or(0) == 0 {
            continue;
        }
        for (g, _) in factor_univariate(f)?.factors {
            let place = Place::Finite(g);
            if !places.contains(&place) {
                places.push(place);
            }
        }
    }
    places.sort_by_key(Place::sort_key);
    Ok(places)
}

/// `F_q[s]/(f)` for a monic irreducible `f`.
pub struct ResidueField {
    modulus: Poly,
}

impl ResidueField {
    pub fn new(modulus: Poly) -> Arc<ResidueField> {
        Arc::new(ResidueField { modulus })
    }

    pub fn modulus(&self) -> &Poly {
        &self.modulus
    }

    pub fn base(&self) -> &Arc<GFConfig> {
        self.modulus.template().config()
    }

    pub fn degree(&self) -> usize {
        self.modulus.degree().unwrap_or(0)
    }
}

#[derive(Clone)]
pub struct ResidueElem {
    field: Arc<ResidueField>,
    r: Poly,
}

impl ResidueElem {
    pub fn new(field: &Arc<ResidueField>, r: &Poly) -> Self {
        ResidueElem { field: field.clone(), r: r.rem(&field.modulus).expect("monic modulus") }
    }

    pub fn from_base(field: &Arc<ResidueField>, c: GFElem) -> Self {
        Self::new(field, &Poly::constant(c))
    }

    /// The class of the variable.
    pub fn generator(field: &Arc<ResidueField>) -> Self {
        Self::new(field, &Poly::x(field.modulus.template()))
    }

    pub fn field(&self) -> &Arc<ResidueField> {
        &self.field
    }

    pub fn poly(&self) -> &Poly {
        &self.r
    }

    /// `Tr_{k(v)/F_q}` as the trace of multiplication on `1, s, …, s^{d-1}`.
    pub fn trace_to_base(&self) -> GFElem {
        let d = self.field.degree();
        let mut acc = GFElem::zero(self.field.base());
        let mut basis = Poly::one(self.field.modulus.template());
        let s = Poly::x(self.field.modulus.template());
        for k in 0..d {
            let prod = self.r.mul_mod(&basis, &self.field.modulus).expect("monic modulus");
            acc = Ring::add(&acc, &prod.coeff(k));
            basis = basis.mul_mod(&s, &self.field.modulus).expect("monic modulus");
        }
        acc
    }

    /// `Tr_{k(v)/F_p}` as an integer in `[0, p)`.
    pub fn trace_to_prime(&self) -> u64 {
        self.trace_to_base().trace_int()
    }

    pub fn render(&self, var: &str) -> String {
        render_poly(&self.r, var)
    }
}

impl Ring for ResidueElem {
    fn zero_like(&self) -> Self {
        ResidueElem { field: self.field.clone(), r: Poly::zero(self.field.modulus.template()) }
    }

    fn one_like(&self) -> Self {
        ResidueElem::new(&self.field, &Poly::one(self.field.modulus.template()))
    }

    fn is_zero(&self) -> bool {
        self.r.is_zero()
    }

    fn add(&self, rhs: &Self) -> Self {
        ResidueElem { field: self.field.clone(), r: self.r.add(&rhs.r) }
    }

    fn sub(&self, rhs: &Self) -> Self {
        ResidueElem { field: self.field.clone(), r: self.r.sub(&rhs.r) }
    }

    fn mul(&self, rhs: &Self) -> Self {
        ResidueElem { field: self.field.clone(), r: self.r.mul_mod(&rhs.r, &self.field.modulus).expect("monic") }
    }

    fn neg(&self) -> Self {
        ResidueElem { field: self.field.clone(), r: self.r.neg() }
    }

    fn from_int_like(&self, n: i64) -> Self {
        ResidueElem::from_base(&self.field, GFElem::from_int(self.field.base(), n))
    }

    fn try_inv(&self) -> Option<Self> {
        let inv = self.r.inv_mod(&self.field.modulus)?;
        Some(ResidueElem { field: self.field.clone(), r: inv })
    }
}

impl PartialEq for ResidueElem {
    fn eq(&self, other: &Self) -> bool {
        self.r == other.r && (Arc::ptr_eq(&self.field, &other.field) || self.field.modulus == other.field.modulus)
    }
}

impl fmt::Debug for ResidueElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render("s"))
    }
}

impl fmt::Display for ResidueElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render("s"))
    }
}

crate::impl_ring_ops!(ResidueElem);

fn univariate(g: &RatFunc) -> Result<(Poly, Poly)> {
    if g.field().nvars() != 1 {
        return Err(Error::UnsupportedField("residues need a function field in one variable".into()));
    }
    Ok(g.univariate_parts(0).expect("one variable"))
}

/// `Res_v(g dt)` in the residue field of `v`.
///
/// At a finite place `f` with root `α = s mod f`, `g(α + s)` is expanded as a
/// Laurent series in `s` over `k(v)`; at infinity the substitution `t = 1/s`
/// is used.
pub fn residue_at(g: &RatFunc, place: &Place) -> Result<ResidueElem> {
    let (num, den) = univariate(g)?;
    let kv = place.residue_field(g.base());
    let zero = ResidueElem::new(&kv, &Poly::zero(&GFElem::zero(g.base())));
    if num.is_zero() {
        return Ok(zero);
    }
    match place {
        Place::Finite(f) => {
            let m = multiplicity(&den, f);
            if m == 0 {
                return Ok(zero);
            }
            let lift = |c: &GFElem| ResidueElem::from_base(&kv, c.clone());
            let shift = UPoly::new(vec![ResidueElem::generator(&kv), zero.one_like()], &zero);
            let n = num.map(&zero, lift).compose(&shift);
            let d = den.map(&zero, lift).compose(&shift);
            let series = Laurent::from_fraction(&n, &d, 0)?;
            series.residue()
        }
        Place::Infinity => {
            let dn = num.degree().unwrap_or(0) as i64;
            let dd = den.degree().unwrap_or(0) as i64;
            // g(1/s) (-1/s^2) = -s^{dd-dn-2} rev(num)/rev(den).
            let target = dn - dd + 1;
            if target < 0 {
                return Ok(zero);
            }
            let rev = |f: &Poly| {
                let mut c = f.coeffs().to_vec();
                c.reverse();
                UPoly::new(c.iter().map(|x| ResidueElem::from_base(&kv, x.clone())).collect(), &zero)
            };
            let series = Laurent::from_fraction(&rev(&num), &rev(&den), target + 1)?;
            let c = series.coeff(target).expect("precision covers target");
            Ok(c.neg())
        }
    }
}

/// Every place where `g dt` can have a nonzero residue: poles of `g`, plus infinity.
pub fn residue_places(g: &RatFunc) -> Result<Vec<Place>> {
    let (_, den) = univariate(g)?;
    let one = Poly::one(&GFElem::zero(g.base()));
    let mut places = finite_support(&one, &den)?;
    places.push(Place::Infinity);
    Ok(places)
}
