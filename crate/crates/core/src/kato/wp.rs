//! Solving `℘(y) = w` in `W_i(F_q(t))`.

use crate::algebra::{Ring, UPoly};
use crate::error::{Error, Result};
use crate::finite_fields::GFElem;
use crate::function_fields::RatFunc;
use crate::witt::WittVector;

type Poly = UPoly<GFElem>;

/// A solution of `y^p - y = w` for `w` in one variable, if one exists.
///
/// Writing `y = M/E` in lowest terms forces `den(w) = E^p`, so `E` is read
/// off from the denominator and `M^p - M E^{p-1} = num(w)` is solved as an
/// `F_p`-linear system in the coefficients of `M`.
pub fn as_solve_univariate(w: &RatFunc) -> Result<Option<RatFunc>> {
    let field = w.field().clone();
    let support = w.support_vars();
    if support.len() > 1 {
        return Err(Error::UnsupportedField("Artin-Schreier solving needs one variable".into()));
    }
    if w.is_zero() {
        return Ok(Some(w.clone()));
    }
    let v = support.first().copied().unwrap_or(0);
    let (num, den) = w.univariate_parts(v).expect("one variable");
    let cfg = w.base().clone();
    let p = cfg.p();
    let e = cfg.degree();
    let zero = GFElem::zero(&cfg);

    let dd = den.degree().unwrap_or(0);
    if dd % p as usize != 0 {
        return Ok(None);
    }
    let mut root = Vec::new();
    for (k, c) in den.coeffs().iter().enumerate() {
        if k % p as usize != 0 {
            if !c.is_zero() {
                return Ok(None);
            }
        } else {
            root.push(c.pth_root());
        }
    }
    let big_e = Poly::new(root, &zero);
    let deg_e = big_e.degree().unwrap_or(0);
    let deg_w = num.degree().unwrap_or(0) as i64 - dd as i64;
    let extra = if deg_w > 0 {
        if deg_w % p as i64 != 0 {
            return Ok(None);
        }
        (deg_w / p as i64) as usize
    } else {
        0
    };
    let bound = deg_e + extra;
    let e_pow = big_e.pow(p - 1);
    let top = (p as usize * bound).max(bound + e_pow.degree().unwrap_or(0)).max(num.degree().unwrap_or(0));

    let basis: Vec<GFElem> = (0..e)
        .map(|r| {
            let mut c = vec![0i64; e];
            c[r] = 1;
            GFElem::from_coeffs(&cfg, &c).expect("degree matches")
        })
        .collect();
    let flatten = |f: &Poly| -> Vec<u64> {
        let mut out = Vec::with_capacity((top + 1) * e);
        for k in 0..=top {
            out.extend(f.coeff(k).coeffs());
        }
        out
    };
    let mut columns = Vec::new();
    for k in 0..=bound {
        for b in &basis {
            let m = Poly::monomial(b.clone(), k);
            let image = m.pow(p).sub(&m.mul(&e_pow));
            columns.push(flatten(&image));
        }
    }
    let Some(x) = solve_fp(p, &columns, &flatten(&num)) else {
        return Ok(None);
    };
    let mut m_coeffs = vec![zero.clone(); bound + 1];
    for k in 0..=bound {
        for (r, b) in basis.iter().enumerate() {
            let c = x[k * e + r];
            if c != 0 {
                m_coeffs[k] = Ring::add(&m_coeffs[k], &b.scale_int(c as i64));
            }
        }
    }
    let m = Poly::new(m_coeffs, &zero);
    let y = RatFunc::from_upoly(&field, &m, v).try_div(&RatFunc::from_upoly(&field, &big_e, v))?;
    debug_assert_eq!(Ring::sub(&Ring::pow(&y, p), &y), *w);
    Ok(Some(y))
}

/// Solve `A x = b` over `F_p`; `columns[j]` is the `j`-th column of `A`.
fn solve_fp(p: u64, columns: &[Vec<u64>], rhs: &[u64]) -> Option<Vec<u64>> {
    let rows = rhs.len();
    let cols = columns.len();
    let mut a: Vec<Vec<u64>> = (0..rows)
        .map(|r| {
            let mut row: Vec<u64> = columns.iter().map(|c| c[r] % p).collect();
            row.push(rhs[r] % p);
            row
        })
        .collect();
    let inv = |x: u64| -> u64 {
        let mut acc = 1u64;
        for _ in 0..p - 2 {
            acc = acc * x % p;
        }
        acc
    };
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(pr) = (r..rows).find(|&k| a[k][c] != 0) else {
            continue;
        };
        a.swap(r, pr);
        let s = inv(a[r][c]);
        for x in a[r].iter_mut() {
            *x = *x * s % p;
        }
        for k in 0..rows {
            if k != r && a[k][c] != 0 {
                let f = a[k][c];
                for j in 0..=cols {
                    a[k][j] = (a[k][j] + (p - f) * a[r][j]) % p;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows {
            break;
        }
    }
    if a[r..].iter().any(|row| row[cols] != 0) {
        return None;
    }
    let mut x = vec![0u64; cols];
    for (k, &c) in pivots.iter().enumerate() {
        x[c] = a[k][cols];
    }
    Some(x)
}

/// A preimage of `w` under `℘` in `W_i(F_q(t))`, lifting along the
/// `V`-filtration one coordinate at a time.
pub fn wp_solve_rational(w: &WittVector<RatFunc>) -> Result<Option<WittVector<RatFunc>>> {
    let i = w.level();
    let Some(y0) = as_solve_univariate(&w.coords()[0])? else {
        return Ok(None);
    };
    let t = WittVector::teichmuller(&y0, i)?;
    if i == 1 {
        return Ok(Some(t));
    }
    let r = w.sub(&t.wp());
    let rest = WittVector::new(r.coords()[1..].to_vec())?;
    let Some(y) = wp_solve_rational(&rest)? else {
        return Ok(None);
    };
    Ok(Some(t.add(&y.shift_to(i)?)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finite_fields::gf_make;
    use crate::function_fields::FuncField;

    #[test]
    fn artin_schreier_rational() {
        for (p, e) in [(2, 1), (3, 1), (2, 2)] {
            let f = FuncField::new(&gf_make(p, e).unwrap(), &["t"]);
            let t = RatFunc::var(&f, 0);
            let one = RatFunc::one(&f);
            let y = Ring::add(&t.inv().unwrap(), &Ring::mul(&t, &t));
            let w = Ring::sub(&Ring::pow(&y, p), &y);
            let s = as_solve_univariate(&w).unwrap().unwrap();
            assert_eq!(Ring::sub(&Ring::pow(&s, p), &s), w);
            assert_eq!(as_solve_univariate(&t.inv().unwrap()).unwrap(), None);
            assert_eq!(as_solve_univariate(&t).unwrap(), None);
            let _ = one;
        }
    }

    #[test]
    fn witt_level_two() {
        let f = FuncField::new(&gf_make(2, 1).unwrap(), &["t"]);
        let t = RatFunc::var(&f, 0);
        let v = WittVector::new(vec![t.inv().unwrap(), Ring::add(&t, &RatFunc::one(&f))]).unwrap();
        let w = v.wp();
        let y = wp_solve_rational(&w).unwrap().unwrap();
        assert_eq!(y.wp(), w);
        let bad = WittVector::new(vec![RatFunc::zero(&f), t.inv().unwrap()]).unwrap();
        assert!(wp_solve_rational(&bad).unwrap().is_none());
    }
}
