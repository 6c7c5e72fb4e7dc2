//! Place-wise invariants of classes `(w | b)` over `F_q(t)`.
//!
//! Everything is lifted to `GR(p^i, e)(T)`: with `ŵ_j`, `b̂` lifts, the
//! invariant at `v` is `Tr Res_v(X · db̂/b̂)` with
//! `X = Σ_j p^j ŵ_j^{p^{i-1-j}}`, the last ghost component. Denominators are
//! lifted as products of lifted place polynomials, so residues at a place
//! only see that place's factor.

use std::sync::Arc;

use super::{HClass, HTerm};
use crate::algebra::{Ring, UPoly};
use crate::error::{Error, Result};
use crate::finite_fields::{GFConfig, GFElem};
use crate::function_fields::{factor_univariate, residue::multiplicity, Place, RatFunc};
use crate::galois_ring::{gr_make, GrConfig, GrElem};

type Poly = UPoly<GFElem>;
type GPoly = UPoly<GrElem>;

/// An invariant in `Z/p^i` at a place.
#[derive(Clone, Debug, PartialEq)]
pub struct LocalInvariant {
    pub place: Place,
    pub value: u64,
    pub modulus: u64,
}

/// The invariant table of a global class and whether it sums to zero.
#[derive(Clone, Debug, PartialEq)]
pub struct Reciprocity {
    pub holds: bool,
    pub sum: u64,
    pub modulus: u64,
    pub table: Vec<LocalInvariant>,
}

/// A lifted rational function `num / Π ĝ_k^{exps[k]}`.
#[derive(Clone)]
struct Lifted {
    num: GPoly,
    exps: Vec<u32>,
}

struct LiftCtx {
    zero: GrElem,
    places: Vec<Poly>,
    lifted: Vec<GPoly>,
}

impl LiftCtx {
    fn new(base: &Arc<GFConfig>, level: u32, places: Vec<Poly>) -> Result<Self> {
        let gr: Arc<GrConfig> = gr_make(base, level)?;
        let zero = GrElem::zero(&gr);
        let lifted = places.iter().map(|g| lift_poly(&zero, g)).collect();
        Ok(LiftCtx { zero, places, lifted })
    }

    fn constant(&self, k: i64) -> Lifted {
        Lifted { num: GPoly::constant(self.zero.from_int_like(k)), exps: vec![0; self.places.len()] }
    }

    /// Lift `num/den` (monic `den` supported on the context's places).
    fn lift(&self, num: &Poly, den: &Poly) -> Lifted {
        let exps: Vec<u32> = self.places.iter().map(|g| multiplicity(den, g)).collect();
        debug_assert_eq!(den.degree(), Some(exps.iter().zip(&self.places).map(|(m, g)| *m as usize * g.degree().unwrap()).sum()));
        Lifted { num: lift_poly(&self.zero, num), exps }
    }

    fn den_power(&self, exps: &[u32], skip: Option<usize>) -> GPoly {
        let mut acc = GPoly::one(&self.zero);
        for (k, &m) in exps.iter().enumerate() {
            if Some(k) != skip && m > 0 {
                acc = acc.mul(&self.lifted[k].pow(m as u64));
            }
        }
        acc
    }

    fn add(&self, a: &Lifted, b: &Lifted) -> Lifted {
        let exps: Vec<u32> = a.exps.iter().zip(&b.exps).map(|(x, y)| *x.max(y)).collect();
        let raise = |f: &Lifted| {
            let extra: Vec<u32> = exps.iter().zip(&f.exps).map(|(x, y)| x - y).collect();
            f.num.mul(&self.den_power(&extra, None))
        };
        Lifted { num: raise(a).add(&raise(b)), exps }
    }

    fn mul(&self, a: &Lifted, b: &Lifted) -> Lifted {
        Lifted { num: a.num.mul(&b.num), exps: a.exps.iter().zip(&b.exps).map(|(x, y)| x + y).collect() }
    }

    fn pow(&self, a: &Lifted, k: u64) -> Lifted {
        Lifted { num: a.num.pow(k), exps: a.exps.iter().map(|x| x * k as u32).collect() }
    }

    fn scale_int(&self, a: &Lifted, k: i64) -> Lifted {
        Lifted { num: a.num.scale(&self.zero.from_int_like(k)), exps: a.exps.clone() }
    }

    /// `db̂/b̂ = Σ m_k ĝ_k'/ĝ_k` for `b = c Π g_k^{m_k}`.
    fn dlog(&self, num: &Poly, den: &Poly) -> Lifted {
        let mut acc = self.constant(0);
        for (k, g) in self.places.iter().enumerate() {
            let m = multiplicity(num, g) as i64 - multiplicity(den, g) as i64;
            if m != 0 {
                let mut exps = vec![0; self.places.len()];
                exps[k] = 1;
                let term = Lifted { num: self.lifted[k].derivative().scale(&self.zero.from_int_like(m)), exps };
                acc = self.add(&acc, &term);
            }
        }
        acc
    }

    /// Sum of the residues at the roots of `ĝ_k`.
    fn residue_at(&self, f: &Lifted, k: usize) -> GrElem {
        let e = f.exps[k];
        if e == 0 || f.num.is_zero() {
            return self.zero.clone();
        }
        let modulus = self.lifted[k].pow(e as u64);
        let c = self.den_power(&f.exps, Some(k));
        let c_inv = inverse_mod(&c, &modulus);
        let r = f.num.mul_mod(&c_inv, &modulus).expect("monic modulus");
        r.coeff(e as usize * self.places[k].degree().unwrap() - 1)
    }

    /// `Res_∞ = -(coefficient of T^{-1})`.
    fn residue_at_infinity(&self, f: &Lifted) -> GrElem {
        let den = self.den_power(&f.exps, None);
        let d = den.degree().unwrap_or(0);
        if d == 0 {
            return self.zero.clone();
        }
        let r = f.num.rem(&den).expect("monic denominator");
        r.coeff(d - 1).neg()
    }
}

fn lift_poly(zero: &GrElem, f: &Poly) -> GPoly {
    let cfg = zero.config().clone();
    f.map(zero, |c| GrElem::lift(&cfg, c))
}

/// Inverse of `c` modulo the monic `m` over a Galois ring, from the inverse
/// mod `p` by Newton iteration.
fn inverse_mod(c: &GPoly, m: &GPoly) -> GPoly {
    let cfg = m.template().config().clone();
    let base_zero = GFElem::zero(cfg.residue_field());
    let red = |f: &GPoly| f.map(&base_zero, GrElem::reduce);
    let inv0 = red(c).inv_mod(&red(m)).expect("coprime modulo p");
    let mut x = lift_poly(m.template(), &inv0);
    let two = GPoly::constant(m.template().from_int_like(2));
    let mut prec = 1;
    while prec < cfg.level() {
        let cx = c.mul_mod(&x, m).expect("monic");
        x = x.mul_mod(&two.sub(&cx), m).expect("monic");
        prec *= 2;
    }
    x
}

fn univariate(f: &RatFunc) -> Result<(Poly, Poly)> {
    if f.field().nvars() != 1 {
        return Err(Error::UnsupportedField("local invariants need a function field in one variable".into()));
    }
    Ok(f.univariate_parts(0).expect("one variable"))
}

fn push_places(out: &mut Vec<Poly>, f: &Poly) -> Result<()> {
    if f.degree().unwrap_or(0) == 0 {
        return Ok(());
    }
    for (g, _) in factor_univariate(f)?.factors {
        if !out.contains(&g) {
            out.push(g);
        }
    }
    Ok(())
}

fn term_places(t: &HTerm<RatFunc>) -> Result<Vec<Poly>> {
    let mut places = Vec::new();
    for c in t.w.coords() {
        push_places(&mut places, &univariate(c)?.1)?;
    }
    for b in &t.b {
        let (num, den) = univariate(b)?;
        push_places(&mut places, &num)?;
        push_places(&mut places, &den)?;
    }
    Ok(places)
}

fn check_degree(c: &HClass<RatFunc>) -> Result<()> {
    if c.template().field().nvars() != 1 {
        return Err(Error::UnsupportedField("local invariants need a function field in one variable".into()));
    }
    if c.degree() != 1 {
        return Err(Error::UnsupportedDegree(format!("local invariants need degree 1, got {}", c.degree())));
    }
    Ok(())
}

fn term_invariant(t: &HTerm<RatFunc>, level: usize, place: &Place) -> Result<u64> {
    let places = term_places(t)?;
    let index = match place {
        Place::Finite(g) => match places.iter().position(|h| h == g) {
            Some(k) => Some(k),
            // `w` integral and `b` a unit here.
            None => return Ok(0),
        },
        Place::Infinity => None,
    };
    let base = t.w.template().base().clone();
    let ctx = LiftCtx::new(&base, level as u32, places)?;
    let p = base.p();
    let mut x = ctx.constant(0);
    for (j, c) in t.w.coords().iter().enumerate() {
        let (num, den) = univariate(c)?;
        let lifted = ctx.lift(&num, &den);
        let power = ctx.pow(&lifted, p.pow((level - 1 - j) as u32));
        x = ctx.add(&x, &ctx.scale_int(&power, p.pow(j as u32) as i64));
    }
    let (bn, bd) = univariate(&t.b[0])?;
    let omega = ctx.mul(&x, &ctx.dlog(&bn, &bd));
    let res = match index {
        Some(k) => ctx.residue_at(&omega, k),
        None => ctx.residue_at_infinity(&omega),
    };
    Ok(res.trace())
}

/// The invariant of a degree-1 class over `F_q(t)` at `place`, in `Z/p^i`.
pub fn local_invariant(c: &HClass<RatFunc>, place: &Place) -> Result<LocalInvariant> {
    check_degree(c)?;
    let modulus = c.modulus();
    let mut value = 0;
    for t in c.terms() {
        value = (value + term_invariant(t, c.level(), place)?) % modulus;
    }
    Ok(LocalInvariant { place: place.clone(), value, modulus })
}

/// Finite places where some Witt coordinate has a pole or some slot entry a
/// zero or pole, sorted, followed by infinity.
pub fn invariant_places(c: &HClass<RatFunc>) -> Result<Vec<Place>> {
    check_degree(c)?;
    let mut polys = Vec::new();
    for t in c.terms() {
        for g in term_places(t)? {
            if !polys.contains(&g) {
                polys.push(g);
            }
        }
    }
    let mut places: Vec<Place> = polys.into_iter().map(Place::Finite).collect();
    places.sort_by_key(Place::sort_key);
    places.push(Place::Infinity);
    Ok(places)
}

/// Invariants at every place that can contribute, and whether they sum to zero.
pub fn reciprocity_check(c: &HClass<RatFunc>) -> Result<Reciprocity> {
    let modulus = c.modulus();
    let table = invariant_places(c)?.iter().map(|v| local_invariant(c, v)).collect::<Result<Vec<_>>>()?;
    let sum = table.iter().fold(0, |acc, inv| (acc + inv.value) % modulus);
    Ok(Reciprocity { holds: sum == 0, sum, modulus, table })
}
