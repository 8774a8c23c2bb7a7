//! Connections on a chart, curvature, projective shifts, the symmetric
//! differential and divergence, standard and Weyl orderings, geodesics and
//! affine changes of chart.

mod affine;
mod calculus;
mod connection;
mod frame;
mod geodesic;
mod metric;
mod operator;

pub use affine::{pullback_affine, pullback_field, AffineMap};
pub use calculus::{
    cov_derivative, divergence, divergence_pow, neumaier, rho_standard, rho_standard_sum, rho_weyl, sym_diff_d,
    sym_diff_pow,
};
pub use connection::{curvature_shift_predict, projective_shift, Connection, OneForm, ShiftPrediction};
pub use frame::{frame_cov, frame_div, frame_symdiff, FrameCalculus};
pub use geodesic::{chord_lengths, geodesic_trace, image_distance};
pub use metric::MetricChart;
pub use operator::{rho_standard_inverse, DiffOperator};
