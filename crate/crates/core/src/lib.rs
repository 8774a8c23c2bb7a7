pub mod cli;
pub mod equivariance;
pub mod error;
pub mod exactpoly;
pub mod geometry;
pub mod liftcalc;
pub mod quantize;
pub mod symalg;

pub use error::{Error, Result};
