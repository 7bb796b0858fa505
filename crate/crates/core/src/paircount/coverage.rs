use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use super::sweep::Radius;
use crate::error::{Error, Result};
use crate::fraccore::{enumerate_tuples, EnumerationSpec, ExactRational};

/// The step function `x -> I_{k,N}(x, Y)` on `R/Z`.
///
/// `depths[i]` is the coverage on the open interval from `breakpoints[i]` to
/// the next breakpoint (the last interval wraps past 1). `point_depths[i]`
/// is the coverage exactly at `breakpoints[i]`, where closed arcs that end
/// and closed arcs that start are both counted.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoverageProfile {
    pub breakpoints: Vec<ExactRational>,
    pub depths: Vec<u64>,
    pub point_depths: Vec<u64>,
    pub radius: ExactRational,
    pub point_count: u64,
}

/// Sweeps the `2|S|` arc endpoints of the closed arcs `[z - 1/Y, z + 1/Y]`.
pub fn coverage_profile(k: u32, n_max: u64, y: &ExactRational, coprime: bool) -> Result<CoverageProfile> {
    let radius_r = Radius::reciprocal_of(y)?;
    let radius = radius_r.as_exact();
    let centers: Vec<ExactRational> = enumerate_tuples(EnumerationSpec::new(k, n_max, coprime, false))?
        .map(|f| {
            let (p, q) = f.circle_position();
            ExactRational::new(p, q).expect("positive")
        })
        .collect();
    let point_count = centers.len() as u64;

    if radius_r.at_least_half() || centers.is_empty() {
        return Ok(CoverageProfile {
            breakpoints: vec![ExactRational::zero()],
            depths: vec![point_count],
            point_depths: vec![point_count],
            radius,
            point_count,
        });
    }

    let zero = ExactRational::zero();
    let one = ExactRational::one();
    // (starts, ends) at each position in [0, 1)
    let mut events: BTreeMap<ExactRational, (u64, u64)> = BTreeMap::new();
    let mut initial = 0u64;
    for c in &centers {
        let lo = c - &radius;
        let hi = c + &radius;
        // arcs covering a right-neighbourhood of 0
        if lo <= zero || hi > one {
            initial += 1;
        }
        events.entry(lo.fract_positive()).or_default().0 += 1;
        events.entry(hi.fract_positive()).or_default().1 += 1;
    }

    let mut breakpoints = Vec::with_capacity(events.len());
    let mut depths = Vec::with_capacity(events.len());
    let mut point_depths = Vec::with_capacity(events.len());
    let mut run = initial as i64;
    let mut zero_starts = None;
    for (pos, (starts, ends)) in events {
        if pos.is_zero() {
            zero_starts = Some(starts);
            point_depths.push(0); // patched below
        } else {
            point_depths.push((run + starts as i64) as u64);
            run += starts as i64 - ends as i64;
        }
        breakpoints.push(pos);
        depths.push(run as u64);
    }
    debug_assert_eq!(run, initial as i64, "coverage must be periodic");
    if let Some(starts) = zero_starts {
        point_depths[0] = *depths.last().expect("non-empty") + starts;
    }

    Ok(CoverageProfile {
        breakpoints,
        depths,
        point_depths,
        radius,
        point_count,
    })
}

impl CoverageProfile {
    /// Length of interval `i`.
    pub fn interval_length(&self, i: usize) -> ExactRational {
        let n = self.breakpoints.len();
        if i + 1 < n {
            &self.breakpoints[i + 1] - &self.breakpoints[i]
        } else {
            ExactRational::one() + (&self.breakpoints[0] - &self.breakpoints[n - 1])
        }
    }

    /// Exact number of arcs containing `x`.
    pub fn depth_at(&self, x: &ExactRational) -> u64 {
        let x = x.fract_positive();
        match self.breakpoints.binary_search(&x) {
            Ok(i) => self.point_depths[i],
            Err(0) => *self.depths.last().expect("non-empty"),
            Err(i) => self.depths[i - 1],
        }
    }

    /// `∫_0^1 depth(x) dx`.
    pub fn integral(&self) -> ExactRational {
        (0..self.breakpoints.len()).fold(ExactRational::zero(), |acc, i| {
            acc + self.interval_length(i) * ExactRational::from(self.depths[i])
        })
    }

    /// `|S| min(2r, 1)`, the value the integral must take.
    pub fn expected_integral(&self) -> ExactRational {
        let two_r = ExactRational::from(2u64) * self.radius.clone();
        ExactRational::from(self.point_count) * two_r.min(ExactRational::one())
    }

    pub fn max_depth(&self) -> u64 {
        self.point_depths
            .iter()
            .chain(&self.depths)
            .copied()
            .max()
            .unwrap_or(0)
    }

    /// Rows `breakpoint_p,breakpoint_q,depth` with a header line.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("breakpoint_p,breakpoint_q,depth\n");
        for (b, d) in self.breakpoints.iter().zip(&self.depths) {
            let _ = writeln!(out, "{},{},{}", b.numer(), b.denom(), d);
        }
        out
    }
}

/// Exact Lebesgue measure of `{x in [0, 1) : depth(x) >= t}`.
pub fn exceptional_measure(profile: &CoverageProfile, t: u64) -> Result<ExactRational> {
    if t < 1 {
        return Err(Error::Range("threshold T must be >= 1".into()));
    }
    Ok((0..profile.breakpoints.len())
        .filter(|&i| profile.depths[i] >= t)
        .fold(ExactRational::zero(), |acc, i| acc + profile.interval_length(i)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::paircount::window_count;

    fn r(p: i64, q: i64) -> ExactRational {
        ExactRational::new(p, q).unwrap()
    }

    #[test]
    fn two_arcs_tile_the_circle() {
        let p = coverage_profile(1, 2, &r(4, 1), true).unwrap();
        assert_eq!(p.breakpoints, vec![r(1, 4), r(3, 4)]);
        assert_eq!(p.depths, vec![1, 1]);
        assert_eq!(p.point_depths, vec![2, 2]);
        assert_eq!(p.integral(), r(1, 1));
        assert_eq!(p.integral(), p.expected_integral());
        assert_eq!(exceptional_measure(&p, 1).unwrap(), r(1, 1));
        assert_eq!(exceptional_measure(&p, 2).unwrap(), r(0, 1));
        assert_eq!(exceptional_measure(&p, 3).unwrap(), r(0, 1));
    }

    #[test]
    fn full_circle_clamp() {
        let p = coverage_profile(1, 2, &r(1, 1), true).unwrap();
        assert_eq!(p.depths, vec![2]);
        assert_eq!(p.integral(), r(2, 1));
        assert_eq!(p.depth_at(&r(1, 7)), 2);
    }

    #[test]
    fn depth_matches_window_count_at_breakpoints() {
        let y = r(27, 1);
        let p = coverage_profile(2, 4, &y, true).unwrap();
        for b in p.breakpoints.clone() {
            assert_eq!(p.depth_at(&b), window_count(2, 4, &b, &y, true).unwrap(), "x={b}");
        }
        assert_eq!(p.integral(), p.expected_integral());
    }

    #[test]
    fn zero_threshold_rejected() {
        let p = coverage_profile(1, 2, &r(4, 1), true).unwrap();
        assert!(exceptional_measure(&p, 0).is_err());
    }

    #[test]
    fn csv_layout() {
        let p = coverage_profile(1, 2, &r(4, 1), true).unwrap();
        assert_eq!(p.to_csv(), "breakpoint_p,breakpoint_q,depth\n1,4,1\n3,4,1\n");
    }
}
