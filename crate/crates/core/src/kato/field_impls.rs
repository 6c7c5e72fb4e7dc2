use super::global::{invariant_places, local_invariant};
use super::wp::wp_solve_rational;
use super::{HClass, HField};
use crate::error::{Error, Result};
use crate::finite_fields::GFElem;
use crate::function_fields::RatFunc;
use crate::milnor::entry_factors;
use crate::witt::{witt_trace, WittVector};

fn sum_witt<K: HField>(c: &HClass<K>) -> Result<WittVector<K>> {
    let mut acc = WittVector::zero(c.template(), c.level())?;
    for t in c.terms() {
        acc = acc.add(&t.w);
    }
    Ok(acc)
}

impl HField for GFElem {
    fn same_field(&self, other: &Self) -> bool {
        self.config().p() == other.config().p() && self.config().degree() == other.config().degree()
    }

    fn slot_factors(&self) -> Result<Vec<(Self, i64)>> {
        Ok(Vec::new())
    }

    fn detect_wp(w: &WittVector<Self>) -> Result<bool> {
        Ok(witt_trace(w).value == 0)
    }

    fn zero_test(c: &HClass<Self>) -> Result<bool> {
        if c.degree() >= 1 {
            return Ok(true);
        }
        Ok(witt_trace(&sum_witt(c)?).value == 0)
    }
}

impl HField for RatFunc {
    fn same_field(&self, other: &Self) -> bool {
        **self.field() == **other.field()
    }

    fn slot_factors(&self) -> Result<Vec<(Self, i64)>> {
        Ok(entry_factors(self)?.into_iter().filter(|(f, _)| !f.is_constant()).collect())
    }

    fn detect_wp(w: &WittVector<Self>) -> Result<bool> {
        Ok(wp_solve_rational(w)?.is_some())
    }

    fn zero_test(c: &HClass<Self>) -> Result<bool> {
        if c.template().field().nvars() != 1 {
            return Err(Error::UnsupportedField("zero-tests over rational function fields need one variable".into()));
        }
        match c.degree() {
            0 => Ok(wp_solve_rational(&sum_witt(c)?)?.is_some()),
            1 => {
                for v in invariant_places(c)? {
                    if local_invariant(c, &v)?.value != 0 {
                        return Ok(false);
                    }
                }
                Ok(true)
            }
            n => Err(Error::UnsupportedDegree(format!("zero-test over F_q(t) supports degree 0 and 1, got {n}"))),
        }
    }
}
