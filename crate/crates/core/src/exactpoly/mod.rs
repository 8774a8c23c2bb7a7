//! Exact rational arithmetic and multivariate polynomials.

mod mono;
mod parse;
mod poly;
mod rat;
mod ratfunc;

pub use mono::{Mono, MAX_VARS};
pub use parse::{parse_poly, PolyParseError};
pub use poly::{poly_add, poly_eval, poly_eval_f64, poly_mul, poly_partial, Poly};
pub use rat::{ParseRatError, Rat};
pub use ratfunc::RatFunc;
