use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::phase::e;
use crate::error::{Error, Result};

/// Phases `phi(n, u)` of two integer variables.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum BilinearPhase {
    Zero,
    /// `u / n^k`.
    PowerFraction { k: u32 },
    /// `(n/M)^k (U/u)`.
    Reciprocal { k: u32, m: f64, u: f64 },
    /// `(u/U)^alpha (n/N)^gamma`.
    Monomial {
        alpha: f64,
        gamma: f64,
        u_scale: f64,
        n_scale: f64,
    },
}

impl BilinearPhase {
    pub fn eval(&self, n: i64, u: i64) -> f64 {
        let (n, u) = (n as f64, u as f64);
        match *self {
            BilinearPhase::Zero => 0.0,
            BilinearPhase::PowerFraction { k } => u / n.powi(k as i32),
            BilinearPhase::Reciprocal { k, m, u: us } => (n / m).powi(k as i32) * (us / u),
            BilinearPhase::Monomial {
                alpha,
                gamma,
                u_scale,
                n_scale,
            } => (u / u_scale).powf(alpha) * (n / n_scale).powf(gamma),
        }
    }
}

/// `(1/Y) ∫_{-Y}^{Y} |sum_{n in I1} sum_{u in I2} theta(n,u) e(y phi(n,u))|^2 dy`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MeanValueSpec {
    pub phase: BilinearPhase,
    /// Inclusive range of `n`.
    pub i1: (i64, i64),
    /// Inclusive range of `u`.
    pub i2: (i64, i64),
    pub y: f64,
    /// Coefficients in row-major `(n, u)` order; all ones when absent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub theta: Option<Vec<Complex64>>,
    pub rel_tol: f64,
    pub max_refinements: u32,
}

impl MeanValueSpec {
    pub fn new(phase: BilinearPhase, i1: (i64, i64), i2: (i64, i64), y: f64) -> Self {
        Self {
            phase,
            i1,
            i2,
            y,
            theta: None,
            rel_tol: 1e-4,
            max_refinements: 14,
        }
    }

    pub fn with_theta(mut self, theta: Vec<Complex64>) -> Self {
        self.theta = Some(theta);
        self
    }

    pub fn with_y(&self, y: f64) -> Self {
        Self { y, ..self.clone() }
    }

    pub fn term_count(&self) -> usize {
        let w1 = (self.i1.1 - self.i1.0 + 1).max(0) as usize;
        let w2 = (self.i2.1 - self.i2.0 + 1).max(0) as usize;
        w1 * w2
    }

    /// Phase values and weights, in row-major order.
    pub fn terms(&self) -> Result<Vec<(f64, Complex64)>> {
        if self.i1.0 > self.i1.1 || self.i2.0 > self.i2.1 {
            return Err(Error::Range("empty summation interval".into()));
        }
        let count = self.term_count();
        if let Some(t) = &self.theta {
            if t.len() != count {
                return Err(Error::Dimension {
                    expected: count,
                    got: t.len(),
                });
            }
            if let Some(bad) = t.iter().find(|c| c.norm() > 1.0 + 1e-12) {
                return Err(Error::Range(format!("|theta| must be <= 1, found {}", bad.norm())));
            }
        }
        let mut out = Vec::with_capacity(count);
        for n in self.i1.0..=self.i1.1 {
            for u in self.i2.0..=self.i2.1 {
                let w = self
                    .theta
                    .as_ref()
                    .map_or(Complex64::new(1.0, 0.0), |t| t[out.len()]);
                out.push((self.phase.eval(n, u), w));
            }
        }
        Ok(out)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Quadrature {
    pub value: f64,
    pub nodes: usize,
    pub refinements: u32,
}

/// Composite Simpson on `[-Y, Y]`, starting from a step `h` with
/// `h max|phi| <= 0.1` and halving until two successive estimates agree to
/// `rel_tol`.
pub fn mean_value_quadrature(s: &MeanValueSpec) -> Result<Quadrature> {
    if !(s.y > 0.0 && s.y.is_finite()) {
        return Err(Error::Range(format!("Y must be positive, got {}", s.y)));
    }
    let terms = s.terms()?;
    let max_phase = terms.iter().fold(0.0f64, |m, t| m.max(t.0.abs()));
    let integrand = |y: f64| -> f64 {
        let sum: Complex64 = terms.iter().map(|&(phi, w)| w * e(y * phi)).sum();
        sum.norm_sqr()
    };

    let (a, b) = (-s.y, s.y);
    let length = b - a;
    let mut intervals = if max_phase > 0.0 {
        ((length * max_phase / 0.1).ceil() as usize).max(2)
    } else {
        2
    };
    let mut h = length / intervals as f64;
    let mut nodes = intervals + 1;
    let mut trap_sum = 0.5 * (integrand(a) + integrand(b))
        + (1..intervals).map(|i| integrand(a + h * i as f64)).sum::<f64>();
    let mut trap = h * trap_sum;
    let mut simpson_prev: Option<f64> = None;

    for refinement in 0..=s.max_refinements {
        // add midpoints
        let mid: f64 = (0..intervals).map(|i| integrand(a + h * (i as f64 + 0.5))).sum();
        nodes += intervals;
        trap_sum += mid;
        intervals *= 2;
        h *= 0.5;
        let trap_new = h * trap_sum;
        let simpson = (4.0 * trap_new - trap) / 3.0;
        trap = trap_new;
        if let Some(prev) = simpson_prev {
            if (simpson - prev).abs() <= s.rel_tol * simpson.abs() {
                return Ok(Quadrature {
                    value: (simpson / s.y).max(0.0),
                    nodes,
                    refinements: refinement,
                });
            }
        }
        simpson_prev = Some(simpson);
    }
    Err(Error::Convergence {
        iterations: s.max_refinements as usize,
        detail: format!("mean-value quadrature did not reach relative {}", s.rel_tol),
    })
}

pub fn mean_value_integral(s: &MeanValueSpec) -> Result<f64> {
    mean_value_quadrature(s).map(|q| q.value)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_phase_constant() {
        for p0 in [1i64, 2, 3, 5] {
            let s = MeanValueSpec::new(BilinearPhase::Zero, (1, p0), (1, p0), 7.5);
            let v = mean_value_integral(&s).unwrap();
            let expected = 2.0 * (p0 as f64).powi(4);
            assert!((v - expected).abs() <= 1e-10 * expected, "{v} vs {expected}");
        }
    }

    #[test]
    fn theta_validation() {
        let s = MeanValueSpec::new(BilinearPhase::PowerFraction { k: 1 }, (1, 2), (1, 2), 4.0);
        assert!(matches!(
            mean_value_integral(&s.clone().with_theta(vec![Complex64::new(1.0, 0.0); 3])),
            Err(Error::Dimension { expected: 4, got: 3 })
        ));
        assert!(mean_value_integral(&s.clone().with_theta(vec![Complex64::new(1.5, 0.0); 4])).is_err());
        let zero = mean_value_integral(&s.with_theta(vec![Complex64::new(0.0, 0.0); 4])).unwrap();
        assert_eq!(zero, 0.0);
    }

    #[test]
    fn refinement_cap() {
        let mut s = MeanValueSpec::new(BilinearPhase::PowerFraction { k: 1 }, (1, 3), (1, 5), 16.0);
        s.rel_tol = 0.0;
        s.max_refinements = 2;
        assert!(matches!(mean_value_integral(&s), Err(Error::Convergence { .. })));
    }

    #[test]
    fn halving_the_step_is_stable() {
        let s = MeanValueSpec::new(BilinearPhase::PowerFraction { k: 2 }, (1, 4), (1, 8), 16.0);
        let coarse = mean_value_quadrature(&s).unwrap();
        let mut fine = s.clone();
        fine.rel_tol = 1e-8;
        let fine = mean_value_quadrature(&fine).unwrap();
        assert!((coarse.value - fine.value).abs() < 1e-4 * fine.value);
    }
}
