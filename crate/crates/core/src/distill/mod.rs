//! Distillation overhead analysis.

mod asymptotic;
mod output_error;
mod overhead;
mod scan;

pub use asymptotic::{
    asymptotic_gamma, binary_entropy, golden_section_min, optimize_p, AsymptoticPoint, P_BRACKET,
};
pub use output_error::{
    exact_output_error, mc_output_error, output_error_from_enumerators, z_weight_enumerators,
    McEstimate, OutputError, WeightEnumerators,
};
pub use overhead::{
    concat_trace, gamma, overhead_scaling_exponent, ConcatenationTrace, Level, OverheadModel,
};
pub use scan::{scan, ScanConstraint, ScanRow};

pub(crate) use overhead::least_squares_slope;

/// Log-log slope of `ε_block` against `ε` over the given points.
pub fn loglog_slope(points: &[(f64, f64)]) -> f64 {
    let logged: Vec<(f64, f64)> = points.iter().map(|&(x, y)| (x.ln(), y.ln())).collect();
    least_squares_slope(&logged)
}
