//! Spacing statistics of fractions with power denominators, the exponential
//! sums that control them, and large-sieve constants for power moduli.
//!
//! * [`fraccore`]: exact fractions `u/n^k`, rationals, sorted enumeration.
//! * [`paircount`]: near-pair counts, window counts, coverage profiles and
//!   exceptional-set measures, all in exact arithmetic.
//! * [`expsum`]: direct exponential sums, the stationary-phase transform,
//!   Kusmin–Landau checks and mean-value integrals.
//! * [`sieve`]: the large-sieve constant as a Gram eigenvalue, the
//!   `l1 -> l2` sum, the dual quadratic form, and baseline bounds.
//! * [`cli`]: the `powfrac` command-line front end.

pub mod error;
pub mod fraccore;
pub mod paircount;
pub mod expsum;
pub mod sieve;
pub mod cli;

pub use error::{Error, Result};
