use num_complex::Complex64;
use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::expsum::e;
use crate::fraccore::{checked_power, euler_phi};

/// Default cap on `P * M`, the number of matrix entries.
pub const DEFAULT_MAX_ENTRIES: u128 = 16_000_000;

/// The quadratic forms of `e(a m / n^k)` for `1 <= n <= N`, `(a, n) = 1`,
/// `1 <= a <= n^k`, and `K < m <= K + M`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SieveProblem {
    pub k: u32,
    pub n: u64,
    pub m: u64,
    /// Window offset.
    #[serde(rename = "k_offset")]
    pub offset: u64,
    pub max_entries: u128,
}

impl SieveProblem {
    pub fn new(k: u32, n: u64, m: u64) -> Self {
        Self {
            k,
            n,
            m,
            offset: 0,
            max_entries: DEFAULT_MAX_ENTRIES,
        }
    }

    pub fn with_offset(mut self, offset: u64) -> Self {
        self.offset = offset;
        self
    }

    pub fn with_max_entries(mut self, cap: u128) -> Self {
        self.max_entries = cap;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.k < 1 || self.n < 1 || self.m < 1 {
            return Err(Error::Range(format!(
                "k, N and M must be >= 1 (got k={}, N={}, M={})",
                self.k, self.n, self.m
            )));
        }
        if checked_power(self.n, self.k).is_none() {
            return Err(Error::OverflowPolicy(format!("{}^{} does not fit in 64 bits", self.n, self.k)));
        }
        if self.offset.checked_add(self.m).is_none() {
            return Err(Error::Range("K + M overflows".into()));
        }
        Ok(())
    }

    /// `P = sum_{n <= N} n^(k-1) phi(n)`.
    pub fn row_count(&self) -> u128 {
        (1..=self.n)
            .map(|n| {
                let nk = checked_power(n, self.k).expect("validated") as u128;
                nk / n as u128 * euler_phi(n) as u128
            })
            .sum()
    }

    pub(crate) fn check_resources(&self) -> Result<()> {
        self.validate()?;
        let entries = self.row_count() * self.m as u128;
        if entries > self.max_entries {
            return Err(Error::Resource {
                what: "sieve matrix entries P*M",
                requested: entries,
                cap: self.max_entries,
            });
        }
        Ok(())
    }

    /// The rows `(a, n)`, ordered by `n` then `a`.
    pub fn rows(&self) -> impl Iterator<Item = (u64, u64)> + '_ {
        let k = self.k;
        (1..=self.n).flat_map(move |n| {
            let nk = checked_power(n, k).expect("validated");
            (1..=nk).filter(move |a| a.gcd(&n) == 1).map(move |a| (a, n))
        })
    }

    pub fn is_row(&self, a: u64, n: u64) -> bool {
        if n < 1 || n > self.n || a < 1 || a.gcd(&n) != 1 {
            return false;
        }
        checked_power(n, self.k).is_some_and(|nk| a <= nk)
    }

    /// The window `K+1, ..., K+M`.
    pub fn window(&self) -> std::ops::RangeInclusive<u64> {
        self.offset + 1..=self.offset + self.m
    }

    /// `e(a m / n^k)` with `a m` reduced modulo `n^k` in integers first.
    pub fn phase(&self, a: u64, n: u64, m: u64) -> Complex64 {
        let q = checked_power(n, self.k).expect("validated") as u128;
        let r = (a as u128 * m as u128) % q;
        e(r as f64 / q as f64)
    }

    /// Row-major `P x M` matrix `E[(a,n), m] = e(a m / n^k)`.
    pub fn matrix(&self) -> Result<Vec<Vec<Complex64>>> {
        self.check_resources()?;
        Ok(self
            .rows()
            .map(|(a, n)| self.window().map(|m| self.phase(a, n, m)).collect())
            .collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn row_counts() {
        assert_eq!(SieveProblem::new(2, 2, 1).row_count(), 3);
        assert_eq!(SieveProblem::new(5, 1, 1).row_count(), 1);
        let p = SieveProblem::new(2, 6, 1);
        assert_eq!(p.rows().count() as u128, p.row_count());
        let p = SieveProblem::new(3, 4, 1);
        assert_eq!(p.rows().count() as u128, p.row_count());
    }

    #[test]
    fn phases_reduce_exactly() {
        let p = SieveProblem::new(2, 3, 1);
        // 10^12 + 3 = 4 mod 9
        let big = p.phase(5, 3, 1_000_000_000_003);
        let small = p.phase(5, 3, 4);
        assert!((big - small).norm() < 1e-12);
    }

    #[test]
    fn resource_cap() {
        let p = SieveProblem::new(2, 10, 1000).with_max_entries(10);
        assert!(matches!(p.matrix(), Err(Error::Resource { .. })));
    }

    #[test]
    fn membership() {
        let p = SieveProblem::new(2, 2, 3);
        assert!(p.is_row(1, 1) && p.is_row(3, 2) && p.is_row(1, 2));
        assert!(!p.is_row(2, 2) && !p.is_row(5, 2) && !p.is_row(1, 3) && !p.is_row(0, 1));
    }
}
