use std::collections::BTreeMap;

use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::problem::SieveProblem;
use crate::error::{Error, Result};

/// Seed of the power-iteration start block.
pub const POWER_SEED: u64 = 42;
pub const DEFAULT_MAX_ITERATIONS: usize = 20_000;

/// The `M x M` Gram matrix `T = E^* E`, so
/// `T[m, m'] = sum_{(a,n)} e(a (m' - m) / n^k)`.
///
/// The row set is closed under `a -> n^k - a`, so `T` is real symmetric;
/// the imaginary parts left over from floating point are dropped after
/// assembly and their size is kept in `max_imaginary`.
#[derive(Clone, Debug)]
pub struct GramMatrix {
    pub size: usize,
    /// Row-major entries.
    pub entries: Vec<f64>,
    pub max_imaginary: f64,
}

impl GramMatrix {
    pub fn build(p: &SieveProblem) -> Result<Self> {
        let e = p.matrix()?;
        let size = p.m as usize;
        let mut full = vec![Complex64::new(0.0, 0.0); size * size];
        for row in &e {
            for i in 0..size {
                let ci = row[i].conj();
                let out = &mut full[i * size..(i + 1) * size];
                for (o, x) in out.iter_mut().zip(row) {
                    *o += ci * x;
                }
            }
        }
        let max_imaginary = full.iter().fold(0.0f64, |m, z| m.max(z.im.abs()));
        Ok(Self {
            size,
            entries: full.iter().map(|z| z.re).collect(),
            max_imaginary,
        })
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.entries[i * self.size + j]
    }

    pub fn apply(&self, v: &[f64], out: &mut [f64]) {
        for (i, o) in out.iter_mut().enumerate() {
            let row = &self.entries[i * self.size..(i + 1) * self.size];
            *o = row.iter().zip(v).map(|(a, b)| a * b).sum();
        }
    }
}

fn norm(v: &[Complex64]) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}



#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct EigenReport {
    pub value: f64,
    pub iterations: usize,
    /// `||T v - value v||` at the returned unit vector.
    pub residual: f64,
}

/// Number of vectors iterated together.
pub const BLOCK_SIZE: usize = 8;

/// Largest eigenvalue of the Gram matrix by block power iteration.
///
/// A block of `BLOCK_SIZE` vectors is multiplied by `T` and re-orthonormalized
/// each step; Rayleigh–Ritz on the block gives the estimate. Iteration stops
/// once the residual `||T x - theta x||` of the top Ritz pair falls below
/// `tol * theta`, which places an eigenvalue of `T` within `tol * theta`.
///
/// A single vector is not enough here: the top eigenvalues of these
/// matrices often come in near-degenerate pairs, and one vector then either
/// stalls or settles on the second eigenvalue. The block converges at the
/// rate `lambda_{b+1} / lambda_1` regardless of gaps inside it.
pub fn sieve_gram_eigenvalue_report(p: &SieveProblem, tol: f64, max_iterations: usize) -> Result<EigenReport> {
    if !(tol > 0.0 && tol.is_finite()) {
        return Err(Error::Range(format!("tol must be positive, got {tol}")));
    }
    let t = GramMatrix::build(p)?;
    let size = t.size;
    let t = DMatrix::from_row_slice(size, size, &t.entries);
    let block = BLOCK_SIZE.min(size);
    let mut rng = ChaCha8Rng::seed_from_u64(POWER_SEED);
    let start = DMatrix::from_fn(size, block, |_, _| rng.gen::<f64>() - 0.5);
    let mut q = start.qr().q();
    let mut last = (0.0, f64::INFINITY);
    for it in 1..=max_iterations {
        let z = &t * &q;
        let h = q.transpose() * &z;
        let h = (&h + h.transpose()) * 0.5;
        let eig = SymmetricEigen::new(h);
        let top = eig.eigenvalues.imax();
        let theta = eig.eigenvalues[top];
        let y = eig.eigenvectors.column(top);
        let residual = (&z * y - (&q * y) * theta).norm();
        last = (theta, residual);
        if residual <= tol * theta.abs() {
            return Ok(EigenReport {
                value: theta,
                iterations: it,
                residual,
            });
        }
        if z.norm() == 0.0 {
            return Err(Error::Convergence {
                iterations: it,
                detail: "iterate collapsed to zero".into(),
            });
        }
        q = z.qr().q();
    }
    Err(Error::Convergence {
        iterations: max_iterations,
        detail: format!("residual {} with Ritz value {}", last.1, last.0),
    })
}

/// `Delta_k(N, M)` for the window of `p`.
pub fn sieve_gram_eigenvalue(p: &SieveProblem, tol: f64) -> Result<f64> {
    sieve_gram_eigenvalue_report(p, tol, DEFAULT_MAX_ITERATIONS).map(|r| r.value)
}

fn check_len(p: &SieveProblem, alpha: &[Complex64]) -> Result<()> {
    if alpha.len() as u64 != p.m {
        return Err(Error::Dimension {
            expected: p.m as usize,
            got: alpha.len(),
        });
    }
    Ok(())
}

/// The inner sums `sum_m alpha_m e(a m / n^k)`, one per row.
pub fn row_sums(p: &SieveProblem, alpha: &[Complex64]) -> Result<Vec<Complex64>> {
    p.check_resources()?;
    check_len(p, alpha)?;
    Ok(p
        .rows()
        .map(|(a, n)| p.window().zip(alpha).map(|(m, al)| al * p.phase(a, n, m)).sum())
        .collect())
}

/// `sum_{(a,n)} |sum_{K < m <= K+M} alpha_m e(a m / n^k)|`.
pub fn l1_sieve_sum(p: &SieveProblem, alpha: &[Complex64]) -> Result<f64> {
    Ok(row_sums(p, alpha)?.iter().map(|z| z.norm()).sum())
}

/// Coefficients indexed by row `(a, n)`; absent rows are zero.
pub type Coefficients = BTreeMap<(u64, u64), Complex64>;

/// `sum_{K < m <= K+M} |sum_{(a,n)} c(a,n) e(a m / n^k)|^2`.
pub fn dual_quadratic_form(p: &SieveProblem, coeffs: &Coefficients) -> Result<f64> {
    p.check_resources()?;
    if let Some(&(a, n)) = coeffs.keys().find(|&&(a, n)| !p.is_row(a, n)) {
        return Err(Error::Index { a, n });
    }
    Ok(p.window()
        .map(|m| {
            coeffs
                .iter()
                .map(|(&(a, n), c)| c * p.phase(a, n, m))
                .sum::<Complex64>()
                .norm_sqr()
        })
        .sum())
}

/// The unimodular coefficients aligned with the row sums of `alpha`, for
/// which `l1_sieve_sum(alpha) = <c, E alpha>`.
pub fn aligned_coefficients(p: &SieveProblem, alpha: &[Complex64]) -> Result<Coefficients> {
    let sums = row_sums(p, alpha)?;
    Ok(p.rows()
        .zip(sums)
        .map(|(row, s)| {
            let c = if s.norm() > 0.0 { s / s.norm() } else { Complex64::new(1.0, 0.0) };
            // the dual form conjugates nothing, so pair with conj(c)
            (row, c.conj())
        })
        .collect())
}

/// A random complex vector of unit `l2` norm, with real and imaginary parts
/// drawn uniformly from `[-1, 1]` before normalizing.
pub fn random_unit_vector(len: usize, rng: &mut impl Rng) -> Vec<Complex64> {
    loop {
        let v: Vec<Complex64> = (0..len)
            .map(|_| Complex64::new(rng.gen_range(-1.0..=1.0), rng.gen_range(-1.0..=1.0)))
            .collect();
        let n = norm(&v);
        if n > 0.0 {
            return v.into_iter().map(|z| z / n).collect();
        }
    }
}

/// Random unimodular coefficients on every row.
pub fn random_unimodular(p: &SieveProblem, rng: &mut impl Rng) -> Coefficients {
    p.rows()
        .map(|row| (row, Complex64::from_polar(1.0, std::f64::consts::TAU * rng.gen::<f64>())))
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct DualityCheck {
    pub l1: f64,
    /// Best dual form over the random draws alone.
    pub random_sup: f64,
    /// Dual form at the coefficients aligned with `alpha`.
    pub aligned: f64,
    /// `max(random_sup, aligned)`, a lower estimate of the supremum.
    pub sup_estimate: f64,
    pub holds: bool,
}

/// Compares `l1_sieve_sum(alpha)` with `sqrt(sup_c dual(c)) ||alpha||` where
/// the supremum over unimodular `c` is estimated from below by `draws`
/// random tables together with the aligned table.
pub fn duality_check(p: &SieveProblem, alpha: &[Complex64], draws: usize, rng: &mut impl Rng) -> Result<DualityCheck> {
    let l1 = l1_sieve_sum(p, alpha)?;
    let mut random_sup = 0.0f64;
    for _ in 0..draws {
        random_sup = random_sup.max(dual_quadratic_form(p, &random_unimodular(p, rng))?);
    }
    let aligned = dual_quadratic_form(p, &aligned_coefficients(p, alpha)?)?;
    let sup_estimate = random_sup.max(aligned);
    let alpha_norm = norm(alpha);
    Ok(DualityCheck {
        l1,
        random_sup,
        aligned,
        sup_estimate,
        holds: l1 <= sup_estimate.sqrt() * alpha_norm * (1.0 + 1e-6),
    })
}
