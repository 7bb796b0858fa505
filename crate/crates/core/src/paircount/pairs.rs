use serde::{Deserialize, Serialize};

use super::sweep::{
    count_close_cross, count_close_ordered, count_close_unordered_circle, sort_exact, Ratio, Radius,
};
use crate::error::{Error, Result};
use crate::fraccore::{
    circle_distance, enumerate_tuples, EnumerationSpec, ExactRational, PowerFraction,
};

/// Default cap on the number of points a single count may materialize.
pub const DEFAULT_MAX_POINTS: u128 = 20_000_000;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Metric {
    /// `|a - b|` on the real line.
    #[default]
    Line,
    /// `‖a - b‖`, distance to the nearest integer.
    Circle,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CountMethod {
    /// Sorted two-pointer sweep.
    #[default]
    Sweep,
    /// Quadratic comparison of every pair.
    Oracle,
}

/// Ordered near-pairs `(n1,u1,n2,u2)` with `|u1/n1^k - u2/n2^k| <= 1/Y`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairQuery {
    pub k: u32,
    pub n_max: u64,
    pub y: ExactRational,
    pub coprime: bool,
    pub metric: Metric,
    #[serde(skip, default = "default_cap")]
    pub max_points: u128,
}

fn default_cap() -> u128 {
    DEFAULT_MAX_POINTS
}

impl PairQuery {
    /// Line metric over all tuples (no coprimality filter).
    pub fn new(k: u32, n_max: u64, y: ExactRational) -> Self {
        Self {
            k,
            n_max,
            y,
            coprime: false,
            metric: Metric::Line,
            max_points: DEFAULT_MAX_POINTS,
        }
    }

    pub fn coprime(mut self, coprime: bool) -> Self {
        self.coprime = coprime;
        self
    }

    pub fn metric(mut self, metric: Metric) -> Self {
        self.metric = metric;
        self
    }

    pub fn max_points(mut self, cap: u128) -> Self {
        self.max_points = cap;
        self
    }

    pub fn predicted_points(&self) -> u128 {
        EnumerationSpec::new(self.k, self.n_max, self.coprime, true).predicted_count()
    }

    fn check(&self) -> Result<()> {
        if self.n_max < 1 || self.k < 1 {
            return Err(Error::Range("k and n_max must be >= 1".into()));
        }
        if !self.y.is_positive() {
            return Err(Error::Range(format!("Y must be positive, got {}", self.y)));
        }
        let predicted = self.predicted_points();
        if predicted > self.max_points {
            return Err(Error::Resource {
                what: "points",
                requested: predicted,
                cap: self.max_points,
            });
        }
        Ok(())
    }
}

fn fraction_ratio(f: &PowerFraction) -> Ratio {
    Ratio::new(f.u() as u128, f.denominator() as u128)
}

fn circle_ratio(f: &PowerFraction) -> Ratio {
    let (p, q) = f.circle_position();
    Ratio::new(p as u128, q as u128)
}

/// Exact near-pair count by sorted sweep.
pub fn count_pairs_interval(q: &PairQuery) -> Result<u64> {
    count_pairs_with(q, CountMethod::Sweep)
}

pub fn count_pairs_with(q: &PairQuery, method: CountMethod) -> Result<u64> {
    q.check()?;
    let radius = Radius::reciprocal_of(&q.y)?;
    match method {
        CountMethod::Sweep => {
            let spec = EnumerationSpec::new(q.k, q.n_max, q.coprime, true);
            let stream = enumerate_tuples(spec)?;
            match q.metric {
                Metric::Line => {
                    let points: Vec<Ratio> = stream.map(|f| fraction_ratio(&f)).collect();
                    Ok(count_close_ordered(&points, &radius))
                }
                Metric::Circle => {
                    let mut points: Vec<Ratio> = stream.map(|f| circle_ratio(&f)).collect();
                    sort_exact(&mut points);
                    let p = points.len() as u64;
                    Ok(p + 2 * count_close_unordered_circle(&points, &radius)?)
                }
            }
        }
        CountMethod::Oracle => {
            let spec = EnumerationSpec::new(q.k, q.n_max, q.coprime, false);
            let values: Vec<ExactRational> = enumerate_tuples(spec)?.map(|f| f.value()).collect();
            let r = radius.as_exact();
            let mut count = 0u64;
            for a in &values {
                for b in &values {
                    let d = match q.metric {
                        Metric::Line => (a - b).abs(),
                        Metric::Circle => circle_distance(a, b),
                    };
                    if d <= r {
                        count += 1;
                    }
                }
            }
            Ok(count)
        }
    }
}

/// Whether dyadic ranges are `[X, 2X)` or `[X, 2X]`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RangeConvention {
    #[default]
    HalfOpen,
    Closed,
}

impl RangeConvention {
    fn upper(self, start: u64) -> u64 {
        match self {
            RangeConvention::HalfOpen => 2 * start - 1,
            RangeConvention::Closed => 2 * start,
        }
    }
}

/// Near-pairs restricted to two boxes `U_i <= u_i < 2U_i`, `N_i <= n_i < 2N_i`.
///
/// Numerators are not clipped to `n^k`, so values above 1 occur.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DyadicBlockQuery {
    pub u1: u64,
    pub n1: u64,
    pub u2: u64,
    pub n2: u64,
    pub k: u32,
    pub y: ExactRational,
    #[serde(default)]
    pub convention: RangeConvention,
}

impl DyadicBlockQuery {
    pub fn new(u1: u64, n1: u64, u2: u64, n2: u64, k: u32, y: ExactRational) -> Self {
        Self {
            u1,
            n1,
            u2,
            n2,
            k,
            y,
            convention: RangeConvention::HalfOpen,
        }
    }

    /// The query with both boxes equal to the first one.
    pub fn diagonal_first(&self) -> Self {
        Self {
            u2: self.u1,
            n2: self.n1,
            ..self.clone()
        }
    }

    pub fn diagonal_second(&self) -> Self {
        Self {
            u1: self.u2,
            n1: self.n2,
            ..self.clone()
        }
    }

    pub fn swapped(&self) -> Self {
        Self {
            u1: self.u2,
            n1: self.n2,
            u2: self.u1,
            n2: self.n1,
            ..self.clone()
        }
    }
}

fn box_points(u: u64, n: u64, k: u32, conv: RangeConvention) -> Result<Vec<Ratio>> {
    if u < 1 || n < 1 {
        return Err(Error::Range("block starts must be >= 1".into()));
    }
    rect_points(k, (n, conv.upper(n)), (u, conv.upper(u)))
}

fn rect_points(k: u32, (n, n_hi): (u64, u64), (u, u_hi): (u64, u64)) -> Result<Vec<Ratio>> {
    if n < 1 || k < 1 || n > n_hi || u > u_hi {
        return Err(Error::Range(format!(
            "need 1 <= n range, non-empty ranges and k >= 1 (n=[{n},{n_hi}], u=[{u},{u_hi}], k={k})"
        )));
    }
    let mut pts = Vec::with_capacity(((u_hi - u + 1) * (n_hi - n + 1)) as usize);
    for nn in n..=n_hi {
        let den = (nn as u128)
            .checked_pow(k)
            .ok_or_else(|| Error::Range(format!("{nn}^{k} overflows 128 bits")))?;
        for uu in u..=u_hi {
            pts.push(Ratio::new(uu as u128, den));
        }
    }
    sort_exact(&mut pts);
    Ok(pts)
}

/// Exact `J_k(U1, N1, U2, N2, Y)`.
pub fn count_pairs_block(q: &DyadicBlockQuery) -> Result<u64> {
    let radius = Radius::reciprocal_of(&q.y)?;
    let a = box_points(q.u1, q.n1, q.k, q.convention)?;
    if q.u1 == q.u2 && q.n1 == q.n2 {
        return Ok(count_close_ordered(&a, &radius));
    }
    let b = box_points(q.u2, q.n2, q.k, q.convention)?;
    Ok(count_close_cross(&a, &b, &radius))
}

/// Ordered near-pairs `|u1/n1^k - u2/n2^k| <= 1/Y` with both `n_i` in the
/// inclusive range `n_range` and both `u_i` in `u_range`, without clipping
/// `u` to `n^k`.
pub fn count_pairs_rect(
    k: u32,
    n_range: (u64, u64),
    u_range: (u64, u64),
    y: &ExactRational,
) -> Result<u64> {
    let radius = Radius::reciprocal_of(y)?;
    let pts = rect_points(k, n_range, u_range)?;
    Ok(count_close_ordered(&pts, &radius))
}

/// The mixed block count against its two diagonal counts.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BlockComparison {
    pub mixed: u64,
    pub first: u64,
    pub second: u64,
    /// `3 * sqrt(first * second)`.
    pub bound: f64,
    /// `mixed^2 <= 9 * first * second`, decided in integers.
    pub holds: bool,
}

/// Compares `J_k(U1,N1,U2,N2,Y)` with `3 (J_k(U1,N1,Y) J_k(U2,N2,Y))^(1/2)`.
///
/// The constant 3 comes from bucketing values into cells of width `1/Y`:
/// a near-pair lands in equal or adjacent cells, and Cauchy–Schwarz over the
/// three cell offsets gives the factor.
pub fn compare_block_counts(q: &DyadicBlockQuery) -> Result<BlockComparison> {
    let mixed = count_pairs_block(q)?;
    let first = count_pairs_block(&q.diagonal_first())?;
    let second = count_pairs_block(&q.diagonal_second())?;
    let lhs = (mixed as u128) * (mixed as u128);
    let rhs = 9u128 * first as u128 * second as u128;
    Ok(BlockComparison {
        mixed,
        first,
        second,
        bound: 3.0 * ((first as f64) * (second as f64)).sqrt(),
        holds: lhs <= rhs,
    })
}

/// Exact `I_{k,N}(x, Y)`: tuples whose value lies within circle distance
/// `1/Y` of `x`.
pub fn window_count(
    k: u32,
    n_max: u64,
    x: &ExactRational,
    y: &ExactRational,
    coprime: bool,
) -> Result<u64> {
    let radius = Radius::reciprocal_of(y)?.as_exact();
    let spec = EnumerationSpec::new(k, n_max, coprime, false);
    Ok(enumerate_tuples(spec)?
        .filter(|f| circle_distance(&f.value(), x) <= radius)
        .count() as u64)
}

/// Tuples with `|(n1/M)^k (U/u1) - (n2/M)^k (U/u2)| <= 1/Z` over
/// `M <= n_i <= 2M`, `U <= u_i <= 2U`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReciprocalPairQuery {
    pub m: u64,
    pub u: u64,
    pub k: u32,
    pub z: ExactRational,
    #[serde(default = "closed")]
    pub convention: RangeConvention,
}

fn closed() -> RangeConvention {
    RangeConvention::Closed
}

impl ReciprocalPairQuery {
    pub fn new(m: u64, u: u64, k: u32, z: ExactRational) -> Self {
        Self {
            m,
            u,
            k,
            z,
            convention: RangeConvention::Closed,
        }
    }
}

pub fn count_pairs_reciprocal(q: &ReciprocalPairQuery) -> Result<u64> {
    if q.m < 1 || q.u < 1 || q.k < 1 {
        return Err(Error::Range("M, U and k must be >= 1".into()));
    }
    let radius = Radius::reciprocal_of(&q.z)?;
    let overflow = || Error::Range("reciprocal-pair values overflow 128 bits".to_string());
    let mk = (q.m as u128).checked_pow(q.k).ok_or_else(overflow)?;
    let mut pts = Vec::new();
    for n in q.m..=q.convention.upper(q.m) {
        let nk = (n as u128).checked_pow(q.k).ok_or_else(overflow)?;
        let num = nk.checked_mul(q.u as u128).ok_or_else(overflow)?;
        for u in q.u..=q.convention.upper(q.u) {
            let den = mk.checked_mul(u as u128).ok_or_else(overflow)?;
            pts.push(Ratio::new(num, den));
        }
    }
    sort_exact(&mut pts);
    Ok(count_close_ordered(&pts, &radius))
}

/// Tuples with `|n1^k v1 - n2^k v2| <= H` over `n in [M, 2M]`, `v in [V, 2V]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MultiplicativeNearQuery {
    pub k: u32,
    pub m: u64,
    pub v: u64,
    pub h: u64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MultiplicativeNearReport {
    pub count: u64,
    /// `(M + 1)(V + 1)`, the number of `(n, v)` choices.
    pub tuples: u64,
    /// Largest divisor count among the products `n^k v`.
    pub max_divisor_count: u64,
    /// `tuples * (2H + 1) * max_divisor_count`: each `(n1, v1)` sees at most
    /// `2H + 1` target values, and each target `t` has at most `d(t)`
    /// representations `n2^k v2`.
    pub divisor_cap: u128,
    /// `tuples * (1 + H)`, the shape of the divisor-function estimate.
    pub shape_cap: f64,
}

fn divisor_count(mut t: u128) -> u64 {
    let mut count = 1u64;
    let mut p = 2u128;
    while p * p <= t {
        let mut e = 0;
        while t % p == 0 {
            t /= p;
            e += 1;
        }
        count *= e + 1;
        p += 1;
    }
    if t > 1 {
        count *= 2;
    }
    count
}

pub fn count_multiplicative_near(q: &MultiplicativeNearQuery) -> Result<MultiplicativeNearReport> {
    if q.m < 1 || q.v < 1 || q.k < 1 {
        return Err(Error::Range("M, V and k must be >= 1".into()));
    }
    let overflow = || Error::Range("products overflow 128 bits".to_string());
    let mut products = Vec::new();
    for n in q.m..=2 * q.m {
        let nk = (n as u128).checked_pow(q.k).ok_or_else(overflow)?;
        for v in q.v..=2 * q.v {
            products.push(nk.checked_mul(v as u128).ok_or_else(overflow)?);
        }
    }
    products.sort_unstable();
    let h = q.h as u128;
    let mut j = 0usize;
    let mut unordered = 0u64;
    for i in 0..products.len() {
        if j < i {
            j = i;
        }
        while j + 1 < products.len() && products[j + 1] - products[i] <= h {
            j += 1;
        }
        unordered += (j - i) as u64;
    }
    let tuples = products.len() as u64;
    let mut max_divisor_count = 0;
    let mut last = None;
    for &p in &products {
        if last != Some(p) {
            max_divisor_count = max_divisor_count.max(divisor_count(p));
            last = Some(p);
        }
    }
    Ok(MultiplicativeNearReport {
        count: tuples + 2 * unordered,
        tuples,
        max_divisor_count,
        divisor_cap: tuples as u128 * (2 * h + 1) * max_divisor_count as u128,
        shape_cap: tuples as f64 * (1.0 + q.h as f64),
    })
}

/// `count = D + 2F`, with `D` the number of tuples and `F` the unordered
/// off-diagonal near-pairs.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CountDecomposition {
    pub diagonal: u64,
    pub off_diagonal_unordered: u64,
}

pub fn decompose_count(q: &PairQuery) -> Result<CountDecomposition> {
    let total = count_pairs_interval(q)?;
    let diagonal = q.predicted_points() as u64;
    debug_assert!(total >= diagonal && (total - diagonal) % 2 == 0);
    Ok(CountDecomposition {
        diagonal,
        off_diagonal_unordered: (total - diagonal) / 2,
    })
}
