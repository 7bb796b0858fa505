use serde::{Deserialize, Serialize};

use super::pairs::{count_pairs_interval, PairQuery};
use crate::error::Result;
use crate::fraccore::ExactRational;

/// One row of the near-pair trend table at `Y = N^(k+1)`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SharpnessRow {
    pub n: u64,
    pub count: u64,
    /// `I_k(N, N^(k+1)) / N^(k+1)`.
    pub ratio: f64,
    /// `log ratio / log N`.
    pub slope_from_origin: f64,
    /// Log-slope of the ratio against the previous row; `None` on the first.
    pub local_slope: Option<f64>,
}

/// Near-pair counts at the critical scale `Y = N^(k+1)`, where the bound
/// `N^(2k+2)/Y + N^(k+1)` balances, for each `N` in `ns`.
pub fn sharpness_study(k: u32, ns: &[u64], max_points: u128) -> Result<Vec<SharpnessRow>> {
    let mut rows: Vec<SharpnessRow> = Vec::with_capacity(ns.len());
    for &n in ns {
        let scale = (n as u128).pow(k + 1);
        let y = ExactRational::from_integer(scale);
        let count = count_pairs_interval(&PairQuery::new(k, n, y).max_points(max_points))?;
        let ratio = count as f64 / scale as f64;
        let log_n = (n as f64).ln();
        let local_slope = rows.last().map(|prev: &SharpnessRow| {
            (ratio.ln() - prev.ratio.ln()) / (log_n - (prev.n as f64).ln())
        });
        rows.push(SharpnessRow {
            n,
            count,
            ratio,
            slope_from_origin: if n > 1 { ratio.ln() / log_n } else { f64::NAN },
            local_slope,
        });
    }
    Ok(rows)
}
