use thiserror::Error;

use crate::exactpoly::Rat;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("index {index} out of range for dimension {dim}")]
    IndexOutOfRange { index: usize, dim: usize },

    #[error("unsupported dimension {0}: need 2 <= m <= {max}", max = crate::exactpoly::MAX_VARS - 1)]
    InvalidDimension(usize),

    #[error("variance mismatch")]
    VarianceMismatch,

    #[error("degree mismatch: {0}")]
    DegreeMismatch(String),

    #[error("weight mismatch: {left} vs {right}")]
    WeightMismatch { left: Box<Rat>, right: Box<Rat> },

    #[error("connection is not torsion-free: Gamma^{upper}_({i},{j}) != Gamma^{upper}_({j},{i})")]
    Torsion { upper: usize, i: usize, j: usize },

    #[error("lift parameter a must be nonzero")]
    ZeroLiftParameter,

    #[error("resonant weight c = {c}: denominator vanishes at j = {j}")]
    ResonantWeight { j: usize, c: Rat },

    #[error("symmetric part of the Ricci tensor does not vanish")]
    NotRicciFlat,

    #[error("singular linear map")]
    Singular,

    #[error("density factor |det L|^{weight} with det L = {det} is not rational")]
    IrrationalDensityFactor { det: Box<Rat>, weight: Box<Rat> },

    #[error("inconsistent operator table: {0}")]
    InconsistentOperator(String),

    #[error("non-finite value during integration at step {0}")]
    NonFinite(usize),

    #[error("not a projective vector field: {0}")]
    NotProjective(String),

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("unknown suite `{0}`")]
    UnknownSuite(String),

    #[error("scenario error: {0}")]
    Scenario(String),
}
