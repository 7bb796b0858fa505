use std::f64::consts::TAU;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// `e(x) = exp(2 pi i x)`, reducing `x` modulo 1 first.
#[inline]
pub fn e(x: f64) -> Complex64 {
    let r = x - x.round();
    let (s, c) = (TAU * r).sin_cos();
    Complex64::new(c, s)
}

/// The monomial phase `f(x) = (y/alpha) (x/N)^alpha` on `(N, eta N)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct PhaseSpec {
    pub alpha: f64,
    /// Amplitude `y >= 0`.
    pub y: f64,
    /// Scale `N > 0`.
    pub n: f64,
    /// Interval ratio `eta > 1`.
    pub eta: f64,
}

impl PhaseSpec {
    pub fn new(alpha: f64, y: f64, n: f64, eta: f64) -> Self {
        Self { alpha, y, n, eta }
    }

    pub(crate) fn validate(&self) -> Result<()> {
        let finite = [self.alpha, self.y, self.n, self.eta].iter().all(|v| v.is_finite());
        if !finite {
            return Err(Error::Range("phase parameters must be finite".into()));
        }
        if self.alpha == 0.0 {
            return Err(Error::Range("alpha must be nonzero".into()));
        }
        if self.eta <= 1.0 || self.n <= 0.0 || self.y < 0.0 {
            return Err(Error::Range(format!(
                "need eta > 1, N > 0, y >= 0 (got eta={}, N={}, y={})",
                self.eta, self.n, self.y
            )));
        }
        Ok(())
    }

    /// `M = y / N`, the size of `f'` on the interval.
    pub fn dual_scale(&self) -> f64 {
        self.y / self.n
    }

    /// `beta` with `1/alpha + 1/beta = 1`.
    pub fn beta(&self) -> f64 {
        self.alpha / (self.alpha - 1.0)
    }

    pub fn alpha_is_natural(&self) -> bool {
        self.alpha >= 1.0 && self.alpha.fract() == 0.0
    }

    /// Integers strictly inside `(N, eta N)`, as an inclusive range.
    pub fn integer_range(&self) -> (i64, i64) {
        strict_integer_range(self.n, self.eta * self.n)
    }

    pub fn term_count(&self) -> u64 {
        let (lo, hi) = self.integer_range();
        (hi - lo + 1).max(0) as u64
    }

    pub fn as_phase(&self) -> MonomialPhase {
        MonomialPhase {
            coeff: self.y / self.alpha,
            alpha: self.alpha,
            scale: self.n,
        }
    }
}

/// Integers `m` with `lo < m < hi`, as `(first, last)`; empty when
/// `first > last`.
pub(crate) fn strict_integer_range(lo: f64, hi: f64) -> (i64, i64) {
    (lo.floor() as i64 + 1, hi.ceil() as i64 - 1)
}

/// A real phase with four derivatives.
pub trait PhaseFunction {
    fn value(&self, x: f64) -> f64;
    fn d1(&self, x: f64) -> f64;
    fn d2(&self, x: f64) -> f64;
    fn d3(&self, x: f64) -> f64;
    fn d4(&self, x: f64) -> f64;
}

/// `coeff * (x/scale)^alpha`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MonomialPhase {
    pub coeff: f64,
    pub alpha: f64,
    pub scale: f64,
}

impl MonomialPhase {
    fn deriv(&self, x: f64, order: i32) -> f64 {
        let mut c = self.coeff;
        for j in 0..order {
            c *= self.alpha - j as f64;
        }
        c / self.scale.powi(order) * (x / self.scale).powf(self.alpha - order as f64)
    }
}

impl PhaseFunction for MonomialPhase {
    fn value(&self, x: f64) -> f64 {
        self.deriv(x, 0)
    }
    fn d1(&self, x: f64) -> f64 {
        self.deriv(x, 1)
    }
    fn d2(&self, x: f64) -> f64 {
        self.deriv(x, 2)
    }
    fn d3(&self, x: f64) -> f64 {
        self.deriv(x, 3)
    }
    fn d4(&self, x: f64) -> f64 {
        self.deriv(x, 4)
    }
}

/// `a x^2 + b x`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct QuadraticPhase {
    pub a: f64,
    pub b: f64,
}

impl PhaseFunction for QuadraticPhase {
    fn value(&self, x: f64) -> f64 {
        self.a * x * x + self.b * x
    }
    fn d1(&self, x: f64) -> f64 {
        2.0 * self.a * x + self.b
    }
    fn d2(&self, _: f64) -> f64 {
        2.0 * self.a
    }
    fn d3(&self, _: f64) -> f64 {
        0.0
    }
    fn d4(&self, _: f64) -> f64 {
        0.0
    }
}

/// Phase from closures, mostly for tests and one-off experiments.
pub struct FnPhase<F> {
    pub derivatives: [F; 5],
}

impl<F: Fn(f64) -> f64> PhaseFunction for FnPhase<F> {
    fn value(&self, x: f64) -> f64 {
        (self.derivatives[0])(x)
    }
    fn d1(&self, x: f64) -> f64 {
        (self.derivatives[1])(x)
    }
    fn d2(&self, x: f64) -> f64 {
        (self.derivatives[2])(x)
    }
    fn d3(&self, x: f64) -> f64 {
        (self.derivatives[3])(x)
    }
    fn d4(&self, x: f64) -> f64 {
        (self.derivatives[4])(x)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Monotonicity {
    Increasing,
    Decreasing,
}

/// A phase on `[a, b]` together with the envelope scales `T`, `M` of
/// `f'' ≍ T/M^2`, `|f'''| ≪ T/M^3`, `|f''''| ≤ T/M^4`, and the direction in
/// which `f'` moves.
pub struct GenericPhase<F> {
    pub func: F,
    pub a: f64,
    pub b: f64,
    pub t_scale: f64,
    pub m_scale: f64,
    pub monotone: Monotonicity,
}

impl<F: PhaseFunction> GenericPhase<F> {
    pub fn new(func: F, a: f64, b: f64, t_scale: f64, m_scale: f64, monotone: Monotonicity) -> Self {
        Self {
            func,
            a,
            b,
            t_scale,
            m_scale,
            monotone,
        }
    }

    pub(crate) fn validate_interval(&self) -> Result<()> {
        if !(self.a.is_finite() && self.b.is_finite() && self.a < self.b) {
            return Err(Error::Range(format!("need a < b, got [{}, {}]", self.a, self.b)));
        }
        Ok(())
    }

    /// Evenly spaced sample points including both endpoints.
    pub(crate) fn samples(&self, count: usize) -> impl Iterator<Item = f64> + '_ {
        let step = (self.b - self.a) / (count - 1) as f64;
        (0..count).map(move |i| if i + 1 == count { self.b } else { self.a + step * i as f64 })
    }

    /// Confirms each supplied derivative against a central difference of the
    /// previous one, to relative `rel_tol`.
    pub fn check_derivatives(&self, samples: usize, rel_tol: f64) -> Result<()> {
        self.validate_interval()?;
        let f = &self.func;
        let chain: [(&dyn Fn(f64) -> f64, &dyn Fn(f64) -> f64, &str); 4] = [
            (&|x| f.value(x), &|x| f.d1(x), "f'"),
            (&|x| f.d1(x), &|x| f.d2(x), "f''"),
            (&|x| f.d2(x), &|x| f.d3(x), "f'''"),
            (&|x| f.d3(x), &|x| f.d4(x), "f''''"),
        ];
        for x in self.samples(samples.max(2)) {
            for (lower, upper, name) in &chain {
                let h = 1e-4 * x.abs().max(1.0);
                let fd = (lower(x + h) - lower(x - h)) / (2.0 * h);
                let exact = upper(x);
                // truncation is relative; cancellation in the difference is absolute
                let allowed = rel_tol * exact.abs().max(fd.abs())
                    + 1e3 * f64::EPSILON * lower(x).abs() / h;
                if (fd - exact).abs() > allowed {
                    return Err(Error::Assertion(format!(
                        "{name} at x={x}: supplied {exact}, finite difference {fd}"
                    )));
                }
            }
        }
        Ok(())
    }

    /// Checks the declared direction of `f'` on sampled points.
    pub(crate) fn check_monotone(&self, samples: usize) -> Result<()> {
        let mut prev: Option<f64> = None;
        for x in self.samples(samples.max(2)) {
            let d = self.func.d1(x);
            if let Some(p) = prev {
                let wrong = match self.monotone {
                    Monotonicity::Increasing => d < p,
                    Monotonicity::Decreasing => d > p,
                };
                if wrong {
                    return Err(Error::RootBracket(format!(
                        "f' is not {:?} near x={x} ({p} then {d})",
                        self.monotone
                    )));
                }
            }
            prev = Some(d);
        }
        Ok(())
    }
}

impl GenericPhase<MonomialPhase> {
    /// The monomial phase of `spec` on `[N, eta N]` with `T = y`, `M = N`.
    pub fn from_spec(spec: &PhaseSpec) -> Self {
        // f' = (y/N)(x/N)^(alpha-1) grows exactly when alpha > 1
        let monotone = if spec.alpha > 1.0 {
            Monotonicity::Increasing
        } else {
            Monotonicity::Decreasing
        };
        Self::new(spec.as_phase(), spec.n, spec.eta * spec.n, spec.y, spec.n, monotone)
    }
}
