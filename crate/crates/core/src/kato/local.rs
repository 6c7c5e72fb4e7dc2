//! Classes over `F_q((t))`: standard-form reduction, the invariant, and the
//! splitting into a specialization and a residue component.

use super::global::LocalInvariant;
use super::{h_build, HClass, HField};
use crate::algebra::{Ring, UPoly};
use crate::error::{Error, Result};
use crate::finite_fields::GFElem;
use crate::function_fields::{Laurent, Place};
use crate::galois_ring::{gr_make, GrElem};
use crate::witt::{witt_trace, WittVector};

type Series = Laurent<GFElem>;

fn need<T>(x: Option<T>, what: &str) -> Result<T> {
    x.ok_or_else(|| Error::PrecisionExhausted(format!("not enough precision for {what}")))
}

/// `b = t^j · u` with `u` a unit.
pub(crate) fn split_unit(b: &Series) -> Result<(i64, Series)> {
    let j = need(b.valuation(), "the valuation of a slot entry")?;
    let one = b.template().one_like();
    Ok((j, b.mul(&Laurent::monomial(one, -j))))
}

fn is_integral(x: &Series) -> bool {
    x.valuation().map_or(true, |v| v >= 0)
}

/// Remove every pole term of order divisible by `p` from each coordinate by
/// subtracting `℘(V^j [c^{1/p} t^{-k/p}])`, working up the coordinates.
pub fn wp_reduce(w: &WittVector<Series>) -> Result<WittVector<Series>> {
    let p = w.p() as i64;
    let i = w.level();
    let zero = w.template();
    let mut w = w.clone();
    for j in 0..i {
        loop {
            let pole = w.coords()[j].terms().find(|(e, _)| *e < 0 && e % p == 0).map(|(e, c)| (e, c.clone()));
            let Some((e, a)) = pole else { break };
            let mut coords = vec![zero.clone(); i];
            coords[j] = Laurent::monomial(a.pth_root(), e / p);
            let z = WittVector::new(coords)?;
            w = w.sub(&z.wp());
        }
    }
    Ok(w)
}

/// Reduce and require an integral result; returns `w̄(0) ∈ W_i(F_q)`.
fn integral_constant(w: &WittVector<Series>) -> Result<WittVector<GFElem>> {
    let r = wp_reduce(w)?;
    if !r.coords().iter().all(is_integral) {
        let shown: Vec<String> = r.coords().iter().map(|c| c.render("t")).collect();
        return Err(Error::WildClass(format!("[{}]", shown.join(", "))));
    }
    let coords =
        r.coords().iter().map(|c| need(c.coeff(0), "the constant term of a reduced Witt coordinate")).collect::<Result<Vec<_>>>()?;
    WittVector::new(coords)
}

/// Whether `w ∈ ℘ W_i(F_q((t)))`.
pub(crate) fn is_wp(w: &WittVector<Series>) -> Result<bool> {
    match integral_constant(w) {
        Ok(c) => Ok(witt_trace(&c).value == 0),
        Err(Error::WildClass(_)) => Ok(false),
        Err(e) => Err(e),
    }
}

/// The invariant of a degree-1 class over `F_q((t))`:
/// `Tr(m · X_0 + Res(X · dû/û))` for `b = t^m u`, `X` the last ghost
/// component of a lift of `w`.
pub fn laurent_invariant(c: &HClass<Series>) -> Result<LocalInvariant> {
    if c.degree() != 1 {
        return Err(Error::UnsupportedDegree(format!("local invariants need degree 1, got {}", c.degree())));
    }
    let cfg = c.template().template().config().clone();
    let p = cfg.p();
    let n = c.level();
    let gr = gr_make(&cfg, n as u32)?;
    let gz = GrElem::zero(&gr);
    let lift = |x: &Series| x.map(&gz, |a| GrElem::lift(&gr, a));
    let modulus = c.modulus();
    let mut value = 0;
    for term in c.terms() {
        let mut x = Laurent::zero_like(&Laurent::constant(gz.clone()));
        for (j, wj) in term.w.coords().iter().enumerate() {
            let power = Ring::pow(&lift(wj), p.pow((n - 1 - j) as u32));
            x = x.add(&power.scale_int(p.pow(j as u32) as i64));
        }
        let (m, u) = split_unit(&term.b[0])?;
        let mut u_hat = lift(&u);
        if u_hat.is_exact() {
            let pole = x.valuation().map_or(0, |v| (-v).max(0));
            u_hat = u_hat.truncated(pole + 1);
        }
        let dlog = u_hat.derivative().try_div(&u_hat)?;
        let res = x.mul(&dlog).residue()?;
        let x0 = need(x.coeff(0), "the constant term of the ghost component")?;
        let total = Ring::add(&x0.scale_int(m), &res);
        value = (value + total.trace()) % modulus;
    }
    let t = UPoly::x(&GFElem::zero(&cfg));
    Ok(LocalInvariant { place: Place::Finite(t), value, modulus })
}

/// Components of a class over `F_q((t))` in `H^{n+1}(F_q) ⊕ H^n(F_q)`.
#[derive(Clone, Debug)]
pub struct Decomposition {
    pub specialization: HClass<GFElem>,
    /// Absent for degree 0.
    pub residue: Option<HClass<GFElem>>,
}

impl Decomposition {
    /// The residue component read in `Z/p^i` through the Witt trace.
    pub fn residue_value(&self) -> Option<u64> {
        let r = self.residue.as_ref()?;
        let zero = r.template().clone();
        let mut acc = WittVector::zero(&zero, r.level()).ok()?;
        for t in r.terms() {
            acc = acc.add(&t.w);
        }
        Some(witt_trace(&acc).value)
    }
}

/// Split a class of degree `n ≤ 1` over `F_q((t))`: after reduction each
/// term is `(w | t^j u)` with `w` integral, contributing `(w̄(0) | ū(0))`
/// to the specialization and `j · w̄(0)` to the residue.
pub fn theorem3_decompose(c: &HClass<Series>) -> Result<Decomposition> {
    let cfg = c.template().template().config().clone();
    let k0 = GFElem::zero(&cfg);
    let n = c.degree();
    if n > 1 {
        return Err(Error::UnsupportedDegree(format!("decomposition needs degree at most 1, got {n}")));
    }
    let mut spec = HClass::zero(&k0, c.level(), n)?;
    let mut res = HClass::zero(&k0, c.level(), 0)?;
    for term in c.terms() {
        let w0 = integral_constant(&term.w)?;
        if n == 0 {
            spec = spec.try_add(&h_build(&w0, &[])?)?;
            continue;
        }
        let (j, u) = split_unit(&term.b[0])?;
        let u0 = need(u.coeff(0), "the constant term of a unit")?;
        spec = spec.try_add(&h_build(&w0, &[u0])?)?;
        res = res.try_add(&h_build(&w0.scale_int(j), &[])?)?;
    }
    Ok(Decomposition { specialization: spec, residue: (n == 1).then_some(res) })
}

pub(crate) fn laurent_zero_test(c: &HClass<Series>) -> Result<bool> {
    match c.degree() {
        0 => {
            let mut acc = WittVector::zero(c.template(), c.level())?;
            for t in c.terms() {
                acc = acc.add(&t.w);
            }
            is_wp(&acc)
        }
        1 => Ok(laurent_invariant(c)?.value == 0),
        n => Err(Error::UnsupportedDegree(format!("zero-test over F_q((t)) needs degree at most 1, got {n}"))),
    }
}

impl HField for Series {
    fn same_field(&self, other: &Self) -> bool {
        let (a, b) = (self.template().config(), other.template().config());
        a.p() == b.p() && a.degree() == b.degree()
    }

    fn slot_factors(&self) -> Result<Vec<(Self, i64)>> {
        let (j, u) = split_unit(self)?;
        let u0 = need(u.coeff(0), "the constant term of a unit")?;
        let u1 = u.scale(&u0.try_inv().ok_or(Error::DivisionByZero)?);
        let mut out = Vec::new();
        if j != 0 {
            out.push((Laurent::monomial(u0.one_like(), 1), j));
        }
        if !u1.is_one() {
            out.push((u1, 1));
        }
        Ok(out)
    }

    fn detect_wp(w: &WittVector<Self>) -> Result<bool> {
        is_wp(w)
    }

    fn zero_test(c: &HClass<Self>) -> Result<bool> {
        laurent_zero_test(c)
    }
}
