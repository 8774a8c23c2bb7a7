//! Symmetric tensor fields with density weight, in polynomial
//! representation.

mod fiber;
mod field;

pub use fiber::FiberPoly;
pub use field::{full_pair, interior, interior_dual, vee, SymField, Variance};
