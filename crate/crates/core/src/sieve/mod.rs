//! Large-sieve constants for power moduli.
//!
//! The constant `Delta_k(N, M)` is the squared operator norm of the matrix
//! `E[(a,n), m] = e(a m / n^k)`. It is computed on the window side as the
//! top eigenvalue of `E^* E`, which is `M x M` and shares its nonzero
//! spectrum with the `P x P` side.

mod bounds;
mod problem;
mod spectral;

pub use bounds::{classical_bounds, sieve_sweep, sweep_csv, BoundReport, SweepRow};
pub use problem::{SieveProblem, DEFAULT_MAX_ENTRIES};
pub use spectral::{
    aligned_coefficients, dual_quadratic_form, duality_check, l1_sieve_sum, random_unimodular, random_unit_vector, row_sums,
    sieve_gram_eigenvalue, sieve_gram_eigenvalue_report, Coefficients, DualityCheck, EigenReport, GramMatrix,
    BLOCK_SIZE, DEFAULT_MAX_ITERATIONS, POWER_SEED,
};
