//! Fourier approximation of target functions in a form that can be loaded
//! as amplitudes: every oscillating term becomes `c·cos²(ωx + φ)`, which a
//! single `Ry` rotation prepares exactly.

mod compile;
mod series;

pub use compile::{
    build_weighted_series, compile_series, compile_series_with_cap, weighted_expectation,
    AffineReadout, CompiledSeries, SplitEvaluation, MAX_TERMS, NEGLIGIBLE_TERM,
};
pub use series::{
    fourier_coefficients, fourier_coefficients_with_nodes, gearbox_inverse_success,
    gearbox_target_series, normalization_constant, split_series, to_cos_squared, CosSquaredSeries,
    CosSquaredTerm, FourierSeries, SplitSeries, DEFAULT_NODES,
};
