//! Two-pointer counting over exactly sorted non-negative rationals.

use std::cmp::Ordering;

use num_bigint::BigUint;

use crate::error::{Error, Result};
use crate::fraccore::{cmp_ratio_u128, ExactRational};

/// A non-negative rational `num/den` kept in 128-bit parts, not necessarily
/// reduced.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) struct Ratio {
    pub num: u128,
    pub den: u128,
}

impl Ratio {
    pub fn new(num: u128, den: u128) -> Self {
        debug_assert!(den > 0);
        Self { num, den }
    }

    pub fn cmp_value(&self, other: &Self) -> Ordering {
        cmp_ratio_u128(self.num, self.den, other.num, other.den)
    }

    /// `self + 1`, used to unroll the circle.
    pub fn shifted(&self) -> Option<Self> {
        Some(Self::new(self.num.checked_add(self.den)?, self.den))
    }
}

pub(crate) fn sort_exact(points: &mut [Ratio]) {
    points.sort_by(|a, b| a.cmp_value(b));
}

/// A positive radius `num/den`.
#[derive(Clone, Debug)]
pub(crate) struct Radius {
    num: BigUint,
    den: BigUint,
    small: Option<(u128, u128)>,
}

impl Radius {
    /// The radius `1/y` for a positive threshold scale `y`.
    pub fn reciprocal_of(y: &ExactRational) -> Result<Self> {
        if !y.is_positive() {
            return Err(Error::Range(format!("threshold scale must be positive, got {y}")));
        }
        let (p, q) = y.numer_denom_unsigned().expect("positive");
        Ok(Self::from_parts(q, p))
    }

    pub fn from_parts(num: BigUint, den: BigUint) -> Self {
        let small = u128::try_from(&num).ok().zip(u128::try_from(&den).ok());
        Self { num, den, small }
    }

    pub fn as_exact(&self) -> ExactRational {
        ExactRational::new(
            num_bigint::BigInt::from(self.num.clone()),
            num_bigint::BigInt::from(self.den.clone()),
        )
        .expect("positive")
    }

    /// Whether `hi - lo <= radius`, given `hi >= lo`.
    pub fn covers_gap(&self, hi: &Ratio, lo: &Ratio) -> bool {
        if let Some((rn, rd)) = self.small {
            let fast = (|| {
                let l = hi.num.checked_mul(lo.den)?;
                let r = lo.num.checked_mul(hi.den)?;
                let diff = l.checked_sub(r)?;
                let lhs = diff.checked_mul(rd)?;
                let rhs = rn.checked_mul(hi.den)?.checked_mul(lo.den)?;
                Some(lhs <= rhs)
            })();
            if let Some(b) = fast {
                return b;
            }
        }
        let l = BigUint::from(hi.num) * BigUint::from(lo.den);
        let r = BigUint::from(lo.num) * BigUint::from(hi.den);
        debug_assert!(l >= r);
        let diff = l - r;
        diff * &self.den <= &self.num * BigUint::from(hi.den) * BigUint::from(lo.den)
    }

    /// Whether `|a - b| <= radius`.
    #[cfg(test)]
    pub fn covers(&self, a: &Ratio, b: &Ratio) -> bool {
        match a.cmp_value(b) {
            Ordering::Less => self.covers_gap(b, a),
            _ => self.covers_gap(a, b),
        }
    }

    /// Whether the radius is at least `1/2`.
    pub fn at_least_half(&self) -> bool {
        &self.num * 2u32 >= self.den
    }
}

/// Number of unordered pairs `i < j` of a sorted list within `radius`.
pub(crate) fn count_close_unordered(sorted: &[Ratio], radius: &Radius) -> u64 {
    let mut j = 0usize;
    let mut total = 0u64;
    for i in 0..sorted.len() {
        if j < i {
            j = i;
        }
        while j + 1 < sorted.len() && radius.covers_gap(&sorted[j + 1], &sorted[i]) {
            j += 1;
        }
        total += (j - i) as u64;
    }
    total
}

/// Ordered pairs (diagonal included) of a sorted list within `radius`.
pub(crate) fn count_close_ordered(sorted: &[Ratio], radius: &Radius) -> u64 {
    sorted.len() as u64 + 2 * count_close_unordered(sorted, radius)
}

/// Ordered pairs `(a, b)` from two sorted lists with `|a - b| <= radius`.
pub(crate) fn count_close_cross(a: &[Ratio], b: &[Ratio], radius: &Radius) -> u64 {
    let mut lo = 0usize;
    let mut hi = 0usize;
    let mut total = 0u64;
    for x in a {
        while lo < b.len()
            && b[lo].cmp_value(x) == Ordering::Less
            && !radius.covers_gap(x, &b[lo])
        {
            lo += 1;
        }
        if hi < lo {
            hi = lo;
        }
        while hi < b.len()
            && (b[hi].cmp_value(x) != Ordering::Greater || radius.covers_gap(&b[hi], x))
        {
            hi += 1;
        }
        total += (hi - lo) as u64;
    }
    total
}

/// Unordered pairs of points on `R/Z` (positions in `[0, 1)`, sorted) whose
/// circle distance is at most `radius`.
pub(crate) fn count_close_unordered_circle(sorted: &[Ratio], radius: &Radius) -> Result<u64> {
    let p = sorted.len() as u64;
    if radius.at_least_half() {
        return Ok(p * p.saturating_sub(1) / 2);
    }
    let mut doubled = Vec::with_capacity(sorted.len() * 2);
    doubled.extend_from_slice(sorted);
    for r in sorted {
        doubled.push(
            r.shifted()
                .ok_or_else(|| Error::OverflowPolicy("circle unrolling overflowed".into()))?,
        );
    }
    let n = sorted.len();
    let mut j = 0usize;
    let mut total = 0u64;
    for i in 0..n {
        if j < i {
            j = i;
        }
        while j + 1 < i + n && radius.covers_gap(&doubled[j + 1], &doubled[i]) {
            j += 1;
        }
        total += (j - i) as u64;
    }
    Ok(total)
}
