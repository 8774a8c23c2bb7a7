//! Calculus on the density bundle in the frame `(e_1^h, ..., e_m^h, E)`:
//! the natural lifted connections, their divergence and symmetric
//! differential, and the divergence-free lift of symbols.
//!
//! Total-space fields are stored through their vertical grading
//! ([`GradedSymbol`], [`GradedCoform`]); no total-space coordinates are used.

mod graded;
mod lift;
mod lifted;
pub mod oracle;
mod params;

pub use graded::{GradedCoform, GradedSymbol};
pub use lift::{check_resonance, graded_pair, lift_density, lift_symbol, lift_symbol_closed, lift_symbol_generic};
pub use lifted::{
    graded_cov_coform, graded_cov_symbol, graded_div, graded_symdiff, graded_symdiff_pow, LiftedConnection,
};
pub use params::{b_bar, m_bar, projective_lift_params, LiftParams};
