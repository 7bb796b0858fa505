//! Exponential sums `sum e(f(n))`: direct evaluation, the stationary-phase
//! transform to a dual sum, Kusmin–Landau checks, and mean-value integrals of
//! bilinear sums.
//!
//! Everything here is floating point. The transform carries an error budget
//! whose implied constant is not known, so comparisons elsewhere treat it as
//! a scale rather than a guarantee.

mod calibration;
mod meanvalue;
mod phase;
mod transform;

pub use calibration::{
    calibrate_coefficients, calibrate_count_vs_integral, calibrate_shortening, default_grid,
    exact_pair_count, Calibration, CalibrationFile, GridEntry, GridPoint, COEFFICIENTS,
    COUNT_VS_INTEGRAL, SHORTENING,
};
pub use meanvalue::{mean_value_integral, mean_value_quadrature, BilinearPhase, MeanValueSpec, Quadrature};
pub use phase::{e, FnPhase, GenericPhase, MonomialPhase, Monotonicity, PhaseFunction, PhaseSpec, QuadraticPhase};
pub use transform::{
    direct_monomial_sum, direct_sum_closed, direct_sum_open, kusmin_landau_check, stationary_phase_generic,
    vdc_transform_sum, KusminLandauReport, TransformResult,
};
