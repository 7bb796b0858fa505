use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use super::rational::{cmp_ratio_u128, ExactRational};
use crate::error::{Error, Result};

/// `n^k`, or `None` when it does not fit in 64 bits.
pub fn checked_power(n: u64, k: u32) -> Option<u64> {
    n.checked_pow(k)
}

/// A fraction `u / n^k` with `1 <= u <= n^k`.
///
/// Equality and hashing are structural (on the tuple); use
/// [`compare_fractions`] for value order. `4/2^2` and `1/1^2` are different
/// tuples with the same value.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawFraction", into = "RawFraction")]
pub struct PowerFraction {
    u: u64,
    n: u64,
    k: u32,
    den: u64,
}

#[derive(Serialize, Deserialize)]
struct RawFraction {
    u: u64,
    n: u64,
    k: u32,
}

impl TryFrom<RawFraction> for PowerFraction {
    type Error = Error;
    fn try_from(r: RawFraction) -> Result<Self> {
        PowerFraction::new(r.u, r.n, r.k, false)
    }
}

impl From<PowerFraction> for RawFraction {
    fn from(f: PowerFraction) -> Self {
        RawFraction { u: f.u, n: f.n, k: f.k }
    }
}

impl PowerFraction {
    pub fn new(u: u64, n: u64, k: u32, coprime: bool) -> Result<Self> {
        if u < 1 || n < 1 || k < 1 {
            return Err(Error::Range(format!(
                "u, n, k must be >= 1 (got u={u}, n={n}, k={k})"
            )));
        }
        let den = checked_power(n, k)
            .ok_or_else(|| Error::Range(format!("{n}^{k} does not fit in 64 bits")))?;
        if u > den {
            return Err(Error::Range(format!("u = {u} exceeds {n}^{k} = {den}")));
        }
        if coprime {
            let g = u.gcd(&n);
            if g > 1 {
                return Err(Error::Coprimality { u, n, gcd: g });
            }
        }
        Ok(Self { u, n, k, den })
    }

    /// Construction without validation, for enumerators that already
    /// guarantee the invariants.
    pub(crate) fn from_parts(u: u64, n: u64, k: u32, den: u64) -> Self {
        debug_assert!(u >= 1 && u <= den && den == n.pow(k));
        Self { u, n, k, den }
    }

    pub fn u(&self) -> u64 {
        self.u
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    /// `n^k`.
    pub fn denominator(&self) -> u64 {
        self.den
    }

    pub fn is_coprime(&self) -> bool {
        self.u.gcd(&self.n) == 1
    }

    /// The value `u / n^k` in lowest terms.
    pub fn value(&self) -> ExactRational {
        ExactRational::new(self.u, self.den).expect("denominator is positive")
    }

    /// Position on the circle `R/Z`, i.e. the value reduced into `[0, 1)`.
    /// Only `u = n^k` changes (to `0`).
    pub fn circle_position(&self) -> (u64, u64) {
        (self.u % self.den, self.den)
    }

    pub fn to_f64(&self) -> f64 {
        self.u as f64 / self.den as f64
    }

    /// Value comparison, then `(n, u)` as a tie-break. This is the order of
    /// sorted enumeration.
    pub fn cmp_value_then_tuple(&self, other: &Self) -> Ordering {
        compare_fractions(self, other).then_with(|| (self.n, self.u).cmp(&(other.n, other.u)))
    }
}

/// Validated constructor.
pub fn make_fraction(u: u64, n: u64, k: u32, coprime_mode: bool) -> Result<PowerFraction> {
    PowerFraction::new(u, n, k, coprime_mode)
}

/// Orders two fractions by value by comparing `u_a n_b^{k_b}` with
/// `u_b n_a^{k_a}` in exact integers.
pub fn compare_fractions(a: &PowerFraction, b: &PowerFraction) -> Ordering {
    // Every factor fits in 64 bits, so the products fit in 128.
    cmp_ratio_u128(a.u as u128, a.den as u128, b.u as u128, b.den as u128)
}

impl fmt::Display for PowerFraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}^{}", self.u, self.n, self.k)
    }
}

impl FromStr for PowerFraction {
    type Err = Error;

    /// Parses `"u/n^k"` without a coprimality requirement.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("expected \"u/n^k\", got {s:?}"));
        let (u, rest) = s.trim().split_once('/').ok_or_else(bad)?;
        let (n, k) = rest.split_once('^').ok_or_else(bad)?;
        let u = u.trim().parse().map_err(|_| bad())?;
        let n = n.trim().parse().map_err(|_| bad())?;
        let k = k.trim().parse().map_err(|_| bad())?;
        PowerFraction::new(u, n, k, false)
    }
}
