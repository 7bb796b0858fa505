use thiserror::Error;

/// Errors raised across the library.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// An argument is outside its admissible range.
    #[error("range error: {0}")]
    Range(String),

    #[error("coprimality error: gcd({u}, {n}) = {gcd} > 1")]
    Coprimality { u: u64, n: u64, gcd: u64 },

    /// Fixed-width arithmetic was requested but the products would not fit.
    #[error("integer budget exceeded: {0}")]
    OverflowPolicy(String),

    /// The predicted work exceeds a configured cap.
    #[error("resource cap exceeded: {requested} > {cap} ({what})")]
    Resource {
        what: &'static str,
        requested: u128,
        cap: u128,
    },

    #[error("dimension mismatch: expected {expected}, got {got}")]
    Dimension { expected: usize, got: usize },

    /// A coefficient was supplied for a pair outside the row set.
    #[error("index ({a}, {n}) is not a row of the sieve problem")]
    Index { a: u64, n: u64 },

    #[error("no convergence after {iterations} iterations: {detail}")]
    Convergence { iterations: usize, detail: String },

    #[error("root bracketing failed: {0}")]
    RootBracket(String),

    /// A caller-asserted hypothesis failed on sampled points.
    #[error("hypothesis violated: {0}")]
    Assertion(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
