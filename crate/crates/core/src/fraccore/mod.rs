//! Exact power-denominator fractions `u / n^k` and rationals.
//!
//! Every order or threshold decision made anywhere in the crate goes through
//! the integer cross-multiplications defined here.

mod enumerate;
mod fraction;
mod rational;

pub use enumerate::{enumerate_tuples, euler_phi, sorted_tuples, EnumerationSpec, IntegerBudget, TupleStream};
pub use fraction::{checked_power, compare_fractions, make_fraction, PowerFraction};
pub use rational::{circle_distance, ExactRational};

pub(crate) use rational::cmp_ratio_u128;
