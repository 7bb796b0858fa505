//! Measured stand-ins for the unspecified implied constants relating pair
//! counts and mean-value integrals.
//!
//! Each calibration records every grid point with its ratio and takes the
//! maximum as the constant, so rerunning on the same grid reproduces the
//! file byte for byte.

use std::path::Path;

use num_complex::Complex64;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::meanvalue::{mean_value_integral, BilinearPhase, MeanValueSpec};
use crate::error::{Error, Result};
use crate::fraccore::ExactRational;
use crate::paircount::count_pairs_rect;

/// A point of the `phi = u/n^k` calibration grid.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GridPoint {
    pub k: u32,
    pub i1: (i64, i64),
    pub i2: (i64, i64),
    pub y: f64,
}

impl GridPoint {
    fn spec(&self) -> MeanValueSpec {
        MeanValueSpec::new(BilinearPhase::PowerFraction { k: self.k }, self.i1, self.i2, self.y)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GridEntry {
    #[serde(flatten)]
    pub point: GridPoint,
    /// Shorter length for the shortening comparison.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub z: Option<f64>,
    pub lhs: f64,
    pub rhs: f64,
    pub ratio: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Calibration {
    pub lemma_id: String,
    pub grid: Vec<GridEntry>,
    pub measured_constant: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CalibrationFile {
    pub schema: u32,
    pub calibrations: Vec<Calibration>,
}

pub const COUNT_VS_INTEGRAL: &str = "count_le_mean_value";
pub const SHORTENING: &str = "mean_value_shortening";
pub const COEFFICIENTS: &str = "coefficient_removal";

/// `k in {1, 2}`, `n` and `u` ranges of length at most 8, `Y in {4, 16}`.
pub fn default_grid() -> Vec<GridPoint> {
    let n_ranges = [(1, 4), (3, 6), (1, 8)];
    let u_ranges = [(1, 4), (5, 8), (1, 8)];
    let mut grid = Vec::new();
    for k in [1, 2] {
        for &i1 in &n_ranges {
            for &i2 in &u_ranges {
                for y in [4.0, 16.0] {
                    grid.push(GridPoint { k, i1, i2, y });
                }
            }
        }
    }
    grid
}

fn finish(lemma_id: &str, grid: Vec<GridEntry>) -> Calibration {
    let measured_constant = grid.iter().fold(0.0f64, |m, g| m.max(g.ratio));
    Calibration {
        lemma_id: lemma_id.to_string(),
        grid,
        measured_constant,
    }
}

/// Exact pair count `J` over `n in I1`, `u in I2` with `|u1/n1^k - u2/n2^k| <= 1/Y`.
pub fn exact_pair_count(p: &GridPoint) -> Result<u64> {
    if p.i1.0 < 1 || p.i2.0 < 1 {
        return Err(Error::Range("grid ranges must start at 1 or above".into()));
    }
    let y = BigRational::from_float(p.y)
        .ok_or_else(|| Error::Range(format!("Y = {} is not finite", p.y)))?;
    count_pairs_rect(
        p.k,
        (p.i1.0 as u64, p.i1.1 as u64),
        (p.i2.0 as u64, p.i2.1 as u64),
        &ExactRational::from(y),
    )
}

/// Ratios `J / mean-value` on the grid.
pub fn calibrate_count_vs_integral(grid: &[GridPoint]) -> Result<Calibration> {
    let mut entries = Vec::with_capacity(grid.len());
    for p in grid {
        let j = exact_pair_count(p)? as f64;
        let mv = mean_value_integral(&p.spec())?;
        entries.push(GridEntry {
            point: p.clone(),
            z: None,
            lhs: j,
            rhs: mv,
            ratio: j / mv,
        });
    }
    Ok(finish(COUNT_VS_INTEGRAL, entries))
}

/// Ratios of the mean value over `[-Y, Y]` to the one over `[-Z, Z]` for
/// each `Z = Y * f`, `f` in `z_fractions` (all `<= 1`).
pub fn calibrate_shortening(grid: &[GridPoint], z_fractions: &[f64]) -> Result<Calibration> {
    let mut entries = Vec::new();
    for p in grid {
        let spec = p.spec();
        let long = mean_value_integral(&spec)?;
        for &f in z_fractions {
            if !(f > 0.0 && f <= 1.0) {
                return Err(Error::Range(format!("Z/Y must lie in (0, 1], got {f}")));
            }
            let z = p.y * f;
            let short = mean_value_integral(&spec.with_y(z))?;
            entries.push(GridEntry {
                point: p.clone(),
                z: Some(z),
                lhs: long,
                rhs: short,
                ratio: long / short,
            });
        }
    }
    Ok(finish(SHORTENING, entries))
}

/// Ratios of the mean value with random unimodular-or-smaller coefficients
/// to the one with all coefficients 1; `draws` draws per grid point.
pub fn calibrate_coefficients(grid: &[GridPoint], draws: usize, seed: u64) -> Result<Calibration> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut entries = Vec::new();
    for p in grid {
        let spec = p.spec();
        let plain = mean_value_integral(&spec)?;
        let mut worst = 0.0f64;
        for _ in 0..draws {
            let theta: Vec<Complex64> = (0..spec.term_count())
                .map(|_| Complex64::from_polar(rng.gen::<f64>(), std::f64::consts::TAU * rng.gen::<f64>()))
                .collect();
            worst = worst.max(mean_value_integral(&spec.clone().with_theta(theta))?);
        }
        entries.push(GridEntry {
            point: p.clone(),
            z: None,
            lhs: worst,
            rhs: plain,
            ratio: worst / plain,
        });
    }
    Ok(finish(COEFFICIENTS, entries))
}

impl CalibrationFile {
    pub fn new(calibrations: Vec<Calibration>) -> Self {
        Self {
            schema: 1,
            calibrations,
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("serializable");
        s.push('\n');
        s
    }

    pub fn constant(&self, lemma_id: &str) -> Option<f64> {
        self.calibrations
            .iter()
            .find(|c| c.lemma_id == lemma_id)
            .map(|c| c.measured_constant)
    }

    pub fn write(&self, path: &Path) -> std::io::Result<()> {
        std::fs::write(path, self.to_json())
    }

    pub fn read(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
        serde_json::from_str(&text).map_err(|e| Error::Parse(e.to_string()))
    }
}
