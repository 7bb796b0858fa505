use std::cmp::{Ordering, Reverse};
use std::collections::BinaryHeap;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use super::fraction::{checked_power, PowerFraction};
use crate::error::{Error, Result};

/// How cross-products are evaluated during sorted enumeration.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum IntegerBudget {
    /// 128-bit products with a big-integer fallback. Always exact.
    #[default]
    Arbitrary,
    /// 64-bit products only; refused unless `n_max^(2k)` fits in 64 bits.
    Fixed64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EnumerationSpec {
    pub k: u32,
    pub n_max: u64,
    pub coprime: bool,
    pub sorted: bool,
    #[serde(default)]
    pub budget: IntegerBudget,
}

impl EnumerationSpec {
    pub fn new(k: u32, n_max: u64, coprime: bool, sorted: bool) -> Self {
        Self {
            k,
            n_max,
            coprime,
            sorted,
            budget: IntegerBudget::Arbitrary,
        }
    }

    /// Exact number of tuples the stream will yield: `sum n^k`, or
    /// `sum n^(k-1) phi(n)` in coprime mode.
    pub fn predicted_count(&self) -> u128 {
        (1..=self.n_max)
            .map(|n| {
                let nk = (n as u128).pow(self.k);
                if self.coprime {
                    nk / n as u128 * euler_phi(n) as u128
                } else {
                    nk
                }
            })
            .sum()
    }

    fn validate(&self) -> Result<()> {
        if self.k < 1 || self.n_max < 1 {
            return Err(Error::Range(format!(
                "k and n_max must be >= 1 (got k={}, n_max={})",
                self.k, self.n_max
            )));
        }
        if checked_power(self.n_max, self.k).is_none() {
            return Err(Error::OverflowPolicy(format!(
                "{}^{} does not fit in 64 bits",
                self.n_max, self.k
            )));
        }
        if self.budget == IntegerBudget::Fixed64
            && self.k.checked_mul(2).and_then(|e| checked_power(self.n_max, e)).is_none()
        {
            return Err(Error::OverflowPolicy(format!(
                "{}^{} exceeds the 64-bit budget and arbitrary precision is disabled",
                self.n_max,
                2 * self.k
            )));
        }
        Ok(())
    }
}

/// Euler's totient by trial division.
pub fn euler_phi(mut n: u64) -> u64 {
    let mut result = n;
    let mut p = 2u64;
    while p * p <= n {
        if n % p == 0 {
            while n % p == 0 {
                n /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result
}

/// Streams every tuple `(u, n)` with `1 <= n <= n_max` and `1 <= u <= n^k`.
///
/// Unsorted streams go by `n` then `u`. Sorted streams are a k-way merge of
/// the per-denominator progressions, which keeps one cursor per `n` alive.
pub fn enumerate_tuples(spec: EnumerationSpec) -> Result<TupleStream> {
    spec.validate()?;
    let inner = if spec.sorted {
        let fits64 = spec.budget == IntegerBudget::Fixed64
            || checked_power(spec.n_max, 2 * spec.k).is_some();
        let mut heap = BinaryHeap::with_capacity(spec.n_max as usize);
        for n in 1..=spec.n_max {
            let den = n.pow(spec.k);
            if let Some(u) = next_numerator(0, n, den, spec.coprime) {
                heap.push(Reverse(Cursor { u, n, den, fits64 }));
            }
        }
        Inner::Sorted(heap)
    } else {
        Inner::Unsorted { n: 1, u: 0 }
    };
    Ok(TupleStream { spec, inner })
}

fn next_numerator(after: u64, n: u64, den: u64, coprime: bool) -> Option<u64> {
    let mut u = after + 1;
    while u <= den {
        if !coprime || u.gcd(&n) == 1 {
            return Some(u);
        }
        u += 1;
    }
    None
}

#[derive(Debug)]
pub struct TupleStream {
    spec: EnumerationSpec,
    inner: Inner,
}

#[derive(Debug)]
enum Inner {
    Unsorted { n: u64, u: u64 },
    Sorted(BinaryHeap<Reverse<Cursor>>),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct Cursor {
    u: u64,
    n: u64,
    den: u64,
    fits64: bool,
}

impl Ord for Cursor {
    fn cmp(&self, other: &Self) -> Ordering {
        let by_value = if self.fits64 {
            (self.u * other.den).cmp(&(other.u * self.den))
        } else {
            (self.u as u128 * other.den as u128).cmp(&(other.u as u128 * self.den as u128))
        };
        by_value.then_with(|| (self.n, self.u).cmp(&(other.n, other.u)))
    }
}

impl PartialOrd for Cursor {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl TupleStream {
    pub fn spec(&self) -> &EnumerationSpec {
        &self.spec
    }
}

impl Iterator for TupleStream {
    type Item = PowerFraction;

    fn next(&mut self) -> Option<PowerFraction> {
        let k = self.spec.k;
        let coprime = self.spec.coprime;
        match &mut self.inner {
            Inner::Unsorted { n, u } => loop {
                if *n > self.spec.n_max {
                    return None;
                }
                let den = n.pow(k);
                match next_numerator(*u, *n, den, coprime) {
                    Some(next) => {
                        *u = next;
                        return Some(PowerFraction::from_parts(next, *n, k, den));
                    }
                    None => {
                        *n += 1;
                        *u = 0;
                    }
                }
            },
            Inner::Sorted(heap) => {
                let Reverse(c) = heap.pop()?;
                if let Some(u) = next_numerator(c.u, c.n, c.den, coprime) {
                    heap.push(Reverse(Cursor { u, ..c }));
                }
                Some(PowerFraction::from_parts(c.u, c.n, k, c.den))
            }
        }
    }
}

/// Collects the sorted tuple list, refusing when it would exceed `cap` points.
pub fn sorted_tuples(k: u32, n_max: u64, coprime: bool, cap: u128) -> Result<Vec<PowerFraction>> {
    let spec = EnumerationSpec::new(k, n_max, coprime, true);
    let predicted = spec.predicted_count();
    if predicted > cap {
        return Err(Error::Resource {
            what: "points",
            requested: predicted,
            cap,
        });
    }
    Ok(enumerate_tuples(spec)?.collect())
}
