use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::phase::{e, strict_integer_range, GenericPhase, Monotonicity, PhaseFunction, PhaseSpec};
use crate::error::{Error, Result};

/// Output of a stationary-phase transform.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct TransformResult {
    pub value: Complex64,
    /// Size of the error term with unit implied constant.
    pub budget: f64,
    pub dual_terms: u64,
    /// Dual range bounds `(lo, hi)`; `m` runs strictly between them.
    pub dual_range: (f64, f64),
    /// The dual range held no integers, so `value` is 0.
    pub degenerate: bool,
}

/// `sum_{N < n < eta N} e(f(n))` for the monomial phase, in increasing `n`.
pub fn direct_monomial_sum(p: &PhaseSpec) -> Result<Complex64> {
    p.validate()?;
    let phase = p.as_phase();
    let (lo, hi) = p.integer_range();
    Ok((lo..=hi).map(|n| e(phase.value(n as f64))).sum())
}

/// The dual sum
/// `|(beta-1) y|^(1/2) sum_{c1 M < m < c2 M} (1/m)(m/M)^(beta/2) e(s/8 - (y/beta)(m/M)^beta)`,
/// with `c1, c2` the endpoint values of `f'/M`, i.e. `1` and `eta^(alpha-1)`,
/// and `s` the sign of `f''`.
///
/// For `alpha > 1` this is the classical form with `+1/8`; for `alpha < 1`
/// the phase is concave and the offset flips to `-1/8`.
pub fn vdc_transform_sum(p: &PhaseSpec) -> Result<TransformResult> {
    p.validate()?;
    if p.alpha_is_natural() {
        return Err(Error::Range(format!(
            "alpha must not be a natural number (got {})",
            p.alpha
        )));
    }
    let m_scale = p.dual_scale();
    let budget = p.n / p.y.sqrt() + p.y.max(2.0).ln();
    if m_scale <= 0.0 {
        return Ok(TransformResult {
            value: Complex64::new(0.0, 0.0),
            budget: f64::INFINITY,
            dual_terms: 0,
            dual_range: (0.0, 0.0),
            degenerate: true,
        });
    }
    let beta = p.beta();
    let w = p.eta.powf(p.alpha - 1.0);
    let (c1, c2) = (w.min(1.0), w.max(1.0));
    let (lo, hi) = (c1 * m_scale, c2 * m_scale);
    let (first, last) = strict_integer_range(lo, hi);
    let offset = if p.alpha > 1.0 { 0.125 } else { -0.125 };
    let amplitude = ((beta - 1.0) * p.y).abs().sqrt();
    let mut value = Complex64::new(0.0, 0.0);
    for m in first..=last {
        let t = m as f64 / m_scale;
        let weight = amplitude / m as f64 * t.powf(beta / 2.0);
        value += weight * e(offset - p.y / beta * t.powf(beta));
    }
    let dual_terms = (last - first + 1).max(0) as u64;
    Ok(TransformResult {
        value,
        budget,
        dual_terms,
        dual_range: (lo, hi),
        degenerate: dual_terms == 0,
    })
}

/// `sum_{a < n < b} e(f(n))`.
pub fn direct_sum_open<F: PhaseFunction>(g: &GenericPhase<F>) -> Complex64 {
    let (lo, hi) = strict_integer_range(g.a, g.b);
    (lo..=hi).map(|n| e(g.func.value(n as f64))).sum()
}

/// `sum_{a <= n <= b} e(f(n))`.
pub fn direct_sum_closed<F: PhaseFunction>(g: &GenericPhase<F>) -> Complex64 {
    let (lo, hi) = (g.a.ceil() as i64, g.b.floor() as i64);
    (lo..=hi).map(|n| e(g.func.value(n as f64))).sum()
}

const ROOT_TOL: f64 = 1e-12;

/// Solves `f'(x) = m` on `[a, b]` by bisection followed by one Newton step.
fn stationary_point<F: PhaseFunction>(g: &GenericPhase<F>, m: f64) -> Result<f64> {
    let sign = match g.monotone {
        Monotonicity::Increasing => 1.0,
        Monotonicity::Decreasing => -1.0,
    };
    let h = |x: f64| sign * (g.func.d1(x) - m);
    let (mut lo, mut hi) = (g.a, g.b);
    if h(lo) > 0.0 || h(hi) < 0.0 {
        return Err(Error::RootBracket(format!(
            "f' - {m} does not change sign on [{}, {}]",
            g.a, g.b
        )));
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if h(mid) > 0.0 {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    let mut x = 0.5 * (lo + hi);
    let d2 = g.func.d2(x);
    if d2 != 0.0 {
        let polished = x - (g.func.d1(x) - m) / d2;
        if polished >= g.a && polished <= g.b && (g.func.d1(polished) - m).abs() <= (g.func.d1(x) - m).abs() {
            x = polished;
        }
    }
    let resid = (g.func.d1(x) - m).abs();
    if resid > ROOT_TOL * m.abs().max(1.0) {
        return Err(Error::RootBracket(format!(
            "|f'(x) - {m}| = {resid:e} at x = {x} after polishing"
        )));
    }
    Ok(x)
}

/// `sum_m |f''(x_m)|^(-1/2) e(f(x_m) - m x_m + s/8)` over integers `m`
/// strictly between `f'(a)` and `f'(b)`, where `s` is the sign of `f''`.
///
/// The budget is `M/T^(1/2) + log(|f'(b) - f'(a)| + 2)`.
pub fn stationary_phase_generic<F: PhaseFunction>(g: &GenericPhase<F>) -> Result<TransformResult> {
    g.validate_interval()?;
    g.check_monotone(65)?;
    let (da, db) = (g.func.d1(g.a), g.func.d1(g.b));
    let (lo, hi) = (da.min(db), da.max(db));
    let (first, last) = strict_integer_range(lo, hi);
    let mut value = Complex64::new(0.0, 0.0);
    for m in first..=last {
        let mf = m as f64;
        let x = stationary_point(g, mf)?;
        let d2 = g.func.d2(x);
        let offset = if d2 > 0.0 { 0.125 } else { -0.125 };
        // reduce both pieces of the phase before combining them
        let fx = g.func.value(x);
        let mx = mf * x;
        let phase = (fx - fx.round()) - (mx - mx.round()) + offset;
        value += e(phase) / d2.abs().sqrt();
    }
    let dual_terms = (last - first + 1).max(0) as u64;
    Ok(TransformResult {
        value,
        budget: g.m_scale / g.t_scale.sqrt() + ((db - da).abs() + 2.0).ln(),
        dual_terms,
        dual_range: (lo, hi),
        degenerate: dual_terms == 0,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct KusminLandauReport {
    pub sum_magnitude: f64,
    /// `cot(pi lambda / 2)`.
    pub bound: f64,
    pub pass: bool,
}

/// Compares `|sum_{a <= n <= b} e(f(n))|` with `cot(pi lambda / 2)` after
/// confirming on samples that `f'` is monotone and, from its endpoint values,
/// that `‖f'‖ >= lambda` on the whole interval.
pub fn kusmin_landau_check<F: PhaseFunction>(g: &GenericPhase<F>, lambda: f64) -> Result<KusminLandauReport> {
    g.validate_interval()?;
    if !(lambda > 0.0 && lambda <= 0.5) {
        return Err(Error::Range(format!("lambda must lie in (0, 1/2], got {lambda}")));
    }
    g.check_monotone(257).map_err(|e| Error::Assertion(e.to_string()))?;
    // with f' monotone its range is the segment between the endpoint values,
    // which must sit inside [j + lambda, j + 1 - lambda] for a single j
    let (da, db) = (g.func.d1(g.a), g.func.d1(g.b));
    let (lo, hi) = (da.min(db), da.max(db));
    let j = lo.floor();
    let slack = 1e-12 * lambda;
    if lo < j + lambda - slack || hi > j + 1.0 - lambda + slack {
        return Err(Error::Assertion(format!(
            "f' ranges over [{lo}, {hi}], closer than lambda = {lambda} to an integer"
        )));
    }
    let sum_magnitude = direct_sum_closed(g).norm();
    let bound = 1.0 / (std::f64::consts::FRAC_PI_2 * lambda).tan();
    Ok(KusminLandauReport {
        sum_magnitude,
        bound,
        pass: sum_magnitude <= bound,
    })
}

#[cfg(test)]
mod tests {
    use super::super::phase::{MonomialPhase, QuadraticPhase};
    use super::*;

    #[test]
    fn direct_examples() {
        let s = direct_monomial_sum(&PhaseSpec::new(2.5, 0.0, 10.0, 2.0)).unwrap();
        assert_eq!(s, Complex64::new(9.0, 0.0));
        let s = direct_monomial_sum(&PhaseSpec::new(1.0, 2.0, 4.0, 2.0)).unwrap();
        assert!((s - Complex64::new(-1.0, 0.0)).norm() < 1e-12);
        let s = direct_monomial_sum(&PhaseSpec::new(1.5, 100.0, 1.2, 1.3)).unwrap();
        assert_eq!(s, Complex64::new(0.0, 0.0));
        assert!(direct_monomial_sum(&PhaseSpec::new(1.5, 1.0, 1.0, 1.0)).is_err());
    }

    #[test]
    fn transform_rejects_natural_alpha() {
        assert!(vdc_transform_sum(&PhaseSpec::new(2.0, 100.0, 10.0, 2.0)).is_err());
        assert!(vdc_transform_sum(&PhaseSpec::new(1.0, 100.0, 10.0, 2.0)).is_err());
    }

    #[test]
    fn transform_examples() {
        for (alpha, y, n) in [(-1.0, 400.0, 10.0), (1.5, 1e4, 100.0)] {
            let p = PhaseSpec::new(alpha, y, n, 2.0);
            let d = direct_monomial_sum(&p).unwrap();
            let t = vdc_transform_sum(&p).unwrap();
            assert!((d - t.value).norm() <= 10.0 * t.budget, "alpha={alpha}");
        }
        for alpha in [-1.0, 0.5, 1.5, 2.5] {
            let p = PhaseSpec::new(alpha, 100.0, 1.2, 1.3);
            let t = vdc_transform_sum(&p).unwrap();
            assert!(t.value.norm() <= t.budget, "alpha={alpha} |v|={}", t.value.norm());
        }
    }

    #[test]
    fn generic_matches_closed_form() {
        for alpha in [-1.0, 0.5, 1.5, 2.5] {
            let p = PhaseSpec::new(alpha, 1e4, 50.0, 2.0);
            let closed = vdc_transform_sum(&p).unwrap();
            let generic = stationary_phase_generic(&GenericPhase::from_spec(&p)).unwrap();
            assert_eq!(closed.dual_terms, generic.dual_terms);
            let rel = (closed.value - generic.value).norm() / closed.value.norm();
            assert!(rel < 1e-9, "alpha={alpha} rel={rel}");
        }
    }

    #[test]
    fn quadratic_phase() {
        let q = 50.0;
        let g = GenericPhase::new(
            QuadraticPhase { a: 1.0 / (2.0 * q), b: 0.0 },
            q,
            2.0 * q,
            q,
            q,
            Monotonicity::Increasing,
        );
        let t = stationary_phase_generic(&g).unwrap();
        assert!(t.degenerate);
        assert!((direct_sum_open(&g) - t.value).norm() <= 10.0 * t.budget);
    }

    #[test]
    fn rejects_wrong_monotonicity() {
        let p = PhaseSpec::new(2.5, 1e3, 20.0, 2.0);
        let mut g = GenericPhase::from_spec(&p);
        g.monotone = Monotonicity::Decreasing;
        assert!(matches!(stationary_phase_generic(&g), Err(Error::RootBracket(_))));
    }

    fn linear(slope: f64, a: f64, b: f64) -> GenericPhase<QuadraticPhase> {
        GenericPhase::new(QuadraticPhase { a: 0.0, b: slope }, a, b, 1.0, 1.0, Monotonicity::Increasing)
    }

    #[test]
    fn kusmin_landau_examples() {
        let r = kusmin_landau_check(&linear(1.0 / 3.0, 1.0, 100.0), 1.0 / 3.0).unwrap();
        assert!((r.sum_magnitude - 1.0).abs() < 1e-9);
        assert!((r.bound - 3f64.sqrt()).abs() < 1e-12);
        assert!(r.pass);

        let r = kusmin_landau_check(&linear(0.5, 1.0, 10.0), 0.5).unwrap();
        assert!(r.sum_magnitude < 1e-12);
        assert!((r.bound - 1.0).abs() < 1e-12);

        let r = kusmin_landau_check(&linear(0.3, 1.0, 7.0), 0.3).unwrap();
        let closed = (0.1 * std::f64::consts::PI).sin() / (0.3 * std::f64::consts::PI).sin();
        assert!((r.sum_magnitude - closed).abs() < 1e-12);
        assert!((r.sum_magnitude - 0.3820).abs() < 1e-4);
        assert!((r.bound - 1.9626).abs() < 1e-4);
        assert!(r.pass);
    }

    #[test]
    fn kusmin_landau_rejects_small_distance() {
        assert!(matches!(
            kusmin_landau_check(&linear(0.3, 1.0, 7.0), 0.31),
            Err(Error::Assertion(_))
        ));
        let g = GenericPhase::new(
            MonomialPhase { coeff: 1.0, alpha: 2.0, scale: 1.0 },
            1.0,
            3.0,
            1.0,
            1.0,
            Monotonicity::Increasing,
        );
        // f' = 2x passes through integers
        assert!(kusmin_landau_check(&g, 0.1).is_err());
    }
}
