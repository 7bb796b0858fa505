//! Exact counting of near-pairs, windows, coverage, and exceptional sets.
//!
//! Near-pair counts use the line metric on values in `(0, 1]` and range over
//! tuples, so equal values from different `(u, n)` are separate solutions.
//! Window counts and coverage profiles use the circle metric. Every boundary
//! case `distance == 1/Y` is counted.

mod coverage;
mod pairs;
mod study;
mod sweep;

pub use coverage::{coverage_profile, exceptional_measure, CoverageProfile};
pub use pairs::{
    compare_block_counts, count_multiplicative_near, count_pairs_block, count_pairs_interval,
    count_pairs_reciprocal, count_pairs_rect, count_pairs_with, decompose_count, window_count, BlockComparison,
    CountDecomposition, CountMethod, DyadicBlockQuery, Metric, MultiplicativeNearQuery,
    MultiplicativeNearReport, PairQuery, RangeConvention, ReciprocalPairQuery, DEFAULT_MAX_POINTS,
};
pub use study::{sharpness_study, SharpnessRow};
