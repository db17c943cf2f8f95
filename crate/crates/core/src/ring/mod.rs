//! Exact arithmetic in `ℚ[P]` and its fraction field.

mod laurent;
mod ratfunc;

pub use laurent::LaurentPoly;
pub use ratfunc::RatFunc;

pub(crate) use laurent::PolyAcc;
pub(crate) use ratfunc::merge_factors;
