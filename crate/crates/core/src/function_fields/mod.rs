//! Rational function fields over finite fields, truncated Laurent series,
//! univariate factorization, places and residues.

pub mod factor;
pub mod laurent;
pub mod mpoly;
pub mod ratfunc;
pub mod residue;

pub use factor::{factor_univariate, Factorization};
pub use laurent::Laurent;
pub use mpoly::{MPoly, Monomial};
pub use ratfunc::{p_power_decompose, rf_arith, FuncField, RatFunc, RfOp};
pub use residue::{residue_at, Place, ResidueElem, ResidueField};
