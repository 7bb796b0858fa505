use std::fmt::Write as _;

use num_bigint::BigUint;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use super::problem::SieveProblem;
use super::spectral::sieve_gram_eigenvalue;
use crate::error::{Error, Result};

/// Baseline sizes for the large-sieve constant.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BoundReport {
    pub k: u32,
    pub n: u64,
    pub m: u64,
    /// `M + N^(2k)`.
    pub classical_1: BigUint,
    /// `N M + N^(k+1)`.
    pub classical_2: BigUint,
    /// `N^(k+1) + M`.
    pub conjecture: BigUint,
    /// `N^(k+1) + M^(1/2) N^((k+1)/2)`.
    pub cor2_rhs: f64,
    /// `cor2_rhs` exactly, when `M N^(k+1)` is a perfect square.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cor2_rhs_exact: Option<BigUint>,
}

pub fn classical_bounds(k: u32, n: u64, m: u64) -> Result<BoundReport> {
    if k < 1 || n < 1 || m < 1 {
        return Err(Error::Range(format!("k, N, M must be >= 1 (got {k}, {n}, {m})")));
    }
    let nb = BigUint::from(n);
    let mb = BigUint::from(m);
    let n_k1 = nb.pow(k + 1);
    let classical_1 = &mb + nb.pow(2 * k);
    let classical_2 = &nb * &mb + &n_k1;
    let conjecture = &n_k1 + &mb;
    let radicand = &mb * &n_k1;
    let root = radicand.sqrt();
    let cor2_rhs_exact = (&root * &root == radicand).then(|| &n_k1 + &root);
    let cor2_rhs = match &cor2_rhs_exact {
        Some(v) => v.to_f64().unwrap_or(f64::INFINITY),
        None => {
            n_k1.to_f64().unwrap_or(f64::INFINITY)
                + (m as f64).sqrt() * (n as f64).powf((k + 1) as f64 / 2.0)
        }
    };
    Ok(BoundReport {
        k,
        n,
        m,
        classical_1,
        classical_2,
        conjecture,
        cor2_rhs,
        cor2_rhs_exact,
    })
}

impl BoundReport {
    /// `min(classical_1, classical_2)`.
    pub fn classical_min(&self) -> &BigUint {
        std::cmp::min(&self.classical_1, &self.classical_2)
    }

    pub fn csv_header() -> &'static str {
        "classical_1,classical_2,conjecture,cor2_rhs"
    }

    pub fn csv_row(&self) -> String {
        let rhs = match &self.cor2_rhs_exact {
            Some(v) => v.to_string(),
            None => format!("{}", self.cor2_rhs),
        };
        format!("{},{},{},{}", self.classical_1, self.classical_2, self.conjecture, rhs)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    pub problem: SieveProblem,
    pub p: u128,
    pub delta: f64,
    pub bounds: BoundReport,
}

impl SweepRow {
    pub fn ratio_delta_over_conjecture(&self) -> f64 {
        self.delta / self.bounds.conjecture.to_f64().unwrap_or(f64::INFINITY)
    }
}

/// `Delta` and the baselines for each problem.
pub fn sieve_sweep(problems: &[SieveProblem], tol: f64) -> Result<Vec<SweepRow>> {
    problems
        .iter()
        .map(|p| {
            Ok(SweepRow {
                problem: *p,
                p: p.row_count(),
                delta: sieve_gram_eigenvalue(p, tol)?,
                bounds: classical_bounds(p.k, p.n, p.m)?,
            })
        })
        .collect()
}

pub fn sweep_csv(rows: &[SweepRow]) -> String {
    let mut out = String::from(
        "k,N,M,K,P,delta,classical_1,classical_2,conjecture,cor2_rhs,ratio_delta_over_conjecture\n",
    );
    for r in rows {
        let _ = writeln!(
            out,
            "{},{},{},{},{},{},{},{}",
            r.problem.k,
            r.problem.n,
            r.problem.m,
            r.problem.offset,
            r.p,
            r.delta,
            r.bounds.csv_row(),
            r.ratio_delta_over_conjecture()
        );
    }
    out
}
