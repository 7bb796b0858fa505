//! Acceptance suite: one line per criterion, nonzero exit if any fails.
//!
//! Run with `cargo test --test acceptance`. Oracles here are written
//! independently of the library: integer brute-force pair counters, a
//! Toeplitz Gram matrix assembled from cosines, and a dense eigensolver.

use std::time::Instant;

use nalgebra::DMatrix;
use num_integer::Integer;
use num_traits::ToPrimitive;
use powfrac::expsum::{
    calibrate_coefficients, calibrate_count_vs_integral, calibrate_shortening, default_grid, direct_monomial_sum,
    kusmin_landau_check, vdc_transform_sum, CalibrationFile, GenericPhase, PhaseSpec, COUNT_VS_INTEGRAL, SHORTENING,
};
use powfrac::fraccore::ExactRational;
use powfrac::paircount::{
    compare_block_counts, count_pairs_interval, coverage_profile, exceptional_measure, DyadicBlockQuery, PairQuery,
    RangeConvention,
};
use powfrac::sieve::{
    classical_bounds, l1_sieve_sum, random_unit_vector, sieve_gram_eigenvalue, SieveProblem,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

fn pow(n: u64, k: u32) -> i128 {
    (n as i128).pow(k)
}

/// All tuples `(u, n)` with `1 <= u <= n^k`, optionally coprime, as
/// numerator/denominator pairs.
fn tuples(k: u32, n_max: u64, coprime: bool) -> Vec<(i128, i128)> {
    let mut out = Vec::new();
    for n in 1..=n_max {
        let d = pow(n, k);
        for u in 1..=d {
            if !coprime || (u as u64).gcd(&n) == 1 {
                out.push((u, d));
            }
        }
    }
    out
}

/// Ordered pairs with `|a/b - c/d| <= q/p`, by cross-multiplication.
fn brute_pairs(points: &[(i128, i128)], p: i128, q: i128) -> u64 {
    let mut count = 0;
    for &(a, b) in points {
        for &(c, d) in points {
            if (a * d - c * b).abs() * p <= b * d * q {
                count += 1;
            }
        }
    }
    count
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let mut checked = 0;
    let mut mismatches = Vec::new();
    for k in 1..=3u32 {
        for n in 1..=6u64 {
            let scale = pow(n, k + 1) as i64;
            for i in 0..20 {
                // alternate generic rationals with integer Y that sit exactly on fraction gaps
                let (p, q) = if i % 2 == 0 {
                    (rng.gen_range(1..=4 * scale), rng.gen_range(1..=9i64))
                } else {
                    let d1 = pow(rng.gen_range(1..=n), k) as i64;
                    let d2 = pow(rng.gen_range(1..=n), k) as i64;
                    (d1 * d2 * rng.gen_range(1..=3i64), 1)
                };
                let y = ExactRational::new(p, q).unwrap();
                for coprime in [false, true] {
                    let fast = count_pairs_interval(&PairQuery::new(k, n, y.clone()).coprime(coprime)).unwrap();
                    let slow = brute_pairs(&tuples(k, n, coprime), p as i128, q as i128);
                    checked += 1;
                    if fast != slow {
                        mismatches.push(format!("k={k} N={n} Y={p}/{q} coprime={coprime}: {fast} vs {slow}"));
                    }
                }
            }
        }
    }
    let secs = start.elapsed().as_secs_f64();
    outcome(
        mismatches.is_empty() && secs < 60.0,
        format!(
            "{checked} (k, N, Y, coprime) cases, {} mismatches, {secs:.1} s{}",
            mismatches.len(),
            mismatches.first().map(|m| format!("; first: {m}")).unwrap_or_default()
        ),
    )
}

fn criterion_2() -> Outcome {
    let start = Instant::now();
    let k = 2;
    let ns = [8u64, 12, 16, 20, 24];
    let mut ratios = Vec::new();
    for &n in &ns {
        let scale = pow(n, k + 1);
        let count = count_pairs_interval(&PairQuery::new(k, n, ExactRational::from_integer(scale))).unwrap();
        ratios.push(count as f64 / scale as f64);
    }
    let c0 = ratios[0] / 8f64.sqrt();
    // equality holds at N = 8 by construction, so allow rounding there
    let within = ns
        .iter()
        .zip(&ratios)
        .all(|(&n, &r)| r <= c0 * (n as f64).sqrt() * (1.0 + 1e-12));
    let slopes: Vec<String> = ns
        .iter()
        .zip(&ratios)
        .map(|(&n, &r)| format!("{:.3}", r.ln() / (n as f64).ln()))
        .collect();
    let secs = start.elapsed().as_secs_f64();
    outcome(
        within && secs < 300.0,
        format!(
            "r(N) = [{}], C0 = {c0:.4}, log r / log N = [{}], {secs:.1} s",
            ratios.iter().map(|r| format!("{r:.4}")).collect::<Vec<_>>().join(", "),
            slopes.join(", ")
        ),
    )
}

/// Mixed block count by brute force.
fn brute_block(k: u32, b1: ((u64, u64), (u64, u64)), b2: ((u64, u64), (u64, u64)), p: i128, q: i128) -> u64 {
    let pts = |((u_lo, u_hi), (n_lo, n_hi)): ((u64, u64), (u64, u64))| {
        let mut v = Vec::new();
        for n in n_lo..=n_hi {
            for u in u_lo..=u_hi {
                v.push((u as i128, pow(n, k)));
            }
        }
        v
    };
    let (a, b) = (pts(b1), pts(b2));
    let mut count = 0;
    for &(x, dx) in &a {
        for &(y, dy) in &b {
            if (x * dy - y * dx).abs() * p <= dx * dy * q {
                count += 1;
            }
        }
    }
    count
}

fn criterion_3() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut failures = Vec::new();
    let mut tightest = f64::INFINITY;
    for _ in 0..50 {
        let k = rng.gen_range(1..=3u32);
        let closed = rng.gen_bool(0.5);
        let starts = [1u64, 2, 4];
        let n1 = starts[rng.gen_range(0..3)];
        let n2 = starts[rng.gen_range(0..3)];
        let u1 = rng.gen_range(1..=32u64);
        let u2 = rng.gen_range(1..=32u64);
        let (p, q) = (rng.gen_range(1..=2000i64), rng.gen_range(1..=5i64));
        let mut query = DyadicBlockQuery::new(u1, n1, u2, n2, k, ExactRational::new(p, q).unwrap());
        query.convention = if closed { RangeConvention::Closed } else { RangeConvention::HalfOpen };
        let top = |s: u64| if closed { 2 * s } else { 2 * s - 1 };
        let c = compare_block_counts(&query).unwrap();
        let box1 = ((u1, top(u1)), (n1, top(n1)));
        let box2 = ((u2, top(u2)), (n2, top(n2)));
        let oracle = (
            brute_block(k, box1, box2, p as i128, q as i128),
            brute_block(k, box1, box1, p as i128, q as i128),
            brute_block(k, box2, box2, p as i128, q as i128),
        );
        let exact_holds = (oracle.0 as u128).pow(2) <= 9 * oracle.1 as u128 * oracle.2 as u128;
        if (c.mixed, c.first, c.second) != oracle || !c.holds || !exact_holds {
            failures.push(format!("{query:?}: {c:?} vs oracle {oracle:?}"));
        }
        if c.bound > 0.0 {
            tightest = tightest.min(c.bound / c.mixed.max(1) as f64);
        }
    }
    outcome(
        failures.is_empty(),
        format!(
            "50 instances, {} failures, smallest 3 sqrt(J1 J2) / J = {tightest:.3}{}",
            failures.len(),
            failures.first().map(|m| format!("; first: {m}")).unwrap_or_default()
        ),
    )
}

fn criterion_4() -> Outcome {
    let mut failures = Vec::new();
    let mut cases = 0;
    for k in 1..=2u32 {
        for n in 1..=10u64 {
            let y = ExactRational::from_integer(pow(n, k + 1));
            let profile = coverage_profile(k, n, &y, true).unwrap();
            let size = tuples(k, n, true).len() as u64;
            let two_over_y = ExactRational::new(2, pow(n, k + 1)).unwrap();
            let expected = ExactRational::from(size) * two_over_y.min(ExactRational::one());
            let integral = profile.integral();
            if profile.point_count != size || integral != expected {
                failures.push(format!("k={k} N={n}: integral {integral} vs {expected}"));
            }
            for t in 1..=size {
                let mu = exceptional_measure(&profile, t).unwrap();
                if ExactRational::from(t) * mu > integral {
                    failures.push(format!("k={k} N={n} T={t}: Chebyshev fails"));
                }
                cases += 1;
            }
        }
    }
    outcome(
        failures.is_empty(),
        format!("{cases} (k, N, T) cases, exact rationals, {} failures", failures.len()),
    )
}

fn criterion_5() -> Outcome {
    let k = 2;
    let mut ok = true;
    let mut trend_ok = true;
    let mut shown = Vec::new();
    for n in 8..=24u64 {
        let scale = pow(n, k + 1);
        let y = ExactRational::from_integer(scale);
        let profile = coverage_profile(k, n, &y, true).unwrap();
        let t = (n as f64).sqrt().ceil() as u64;
        let mu = exceptional_measure(&profile, t).unwrap();
        let bound = ExactRational::new(2 * profile.point_count as i128, t as i128 * scale).unwrap();
        ok &= mu <= bound;
        let trend = (n as f64).powf(-0.5 + 0.4);
        trend_ok &= mu.to_f64() <= trend;
        if n % 4 == 0 {
            shown.push(format!("N={n}: {:.3e}", mu.to_f64()));
        }
    }
    outcome(
        ok && trend_ok,
        format!(
            "mu <= 2|S|/(T N^3) exactly: {ok}; mu <= N^-0.1: {trend_ok}; {}",
            shown.join(", ")
        ),
    )
}

fn criterion_6() -> Outcome {
    let start = Instant::now();
    let mut worst: f64 = 0.0;
    let mut worst_at = String::new();
    let mut points = 0;
    for alpha in [-1.0, 0.5, 1.5, 2.5] {
        for y in [1e2, 1e3, 1e4] {
            for n in [20.0, 50.0] {
                let spec = PhaseSpec::new(alpha, y, n, 2.0);
                let direct = direct_monomial_sum(&spec).unwrap();
                let t = vdc_transform_sum(&spec).unwrap();
                let allowed = n / y.sqrt() + y.ln();
                let ratio = (direct - t.value).norm() / allowed;
                if ratio > worst {
                    worst = ratio;
                    worst_at = format!("alpha={alpha} y={y} N={n}");
                }
                points += 1;
            }
        }
    }
    let secs = start.elapsed().as_secs_f64();
    outcome(
        worst <= 10.0 && secs < 120.0,
        format!("{points} grid points, worst |direct - dual| / (N/y^(1/2) + log y) = {worst:.3} at {worst_at}, allowed 10, {secs:.2} s"),
    )
}

fn criterion_7() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut failures = 0;
    let mut worst = 0.0f64;
    let mut made = 0;
    while made < 100 {
        let alpha = loop {
            let a: f64 = rng.gen_range(-2.0..3.0);
            if (a - 1.0).abs() > 0.05 && a.abs() > 0.05 {
                break a;
            }
        };
        let lambda: f64 = rng.gen_range(0.02..0.45);
        let j = rng.gen_range(0..4) as f64;
        let n: f64 = rng.gen_range(3.0..60.0);
        // f' runs between y/N and (y/N) eta^(alpha-1); fit that range inside [j + lambda, j + 1 - lambda]
        let (lo, hi) = (j + lambda, j + 1.0 - lambda);
        let from: f64 = rng.gen_range(lo..hi);
        let to: f64 = rng.gen_range(lo..hi);
        let (start_slope, end_slope) = if alpha > 1.0 { (from.min(to), from.max(to)) } else { (from.max(to), from.min(to)) };
        if start_slope <= 0.0 || (end_slope / start_slope - 1.0).abs() < 1e-6 {
            continue;
        }
        let eta = (end_slope / start_slope).powf(1.0 / (alpha - 1.0));
        if !(eta > 1.0 && eta.is_finite() && eta < 50.0) {
            continue;
        }
        let spec = PhaseSpec::new(alpha, start_slope * n, n, eta);
        let g = GenericPhase::from_spec(&spec);
        let r = kusmin_landau_check(&g, lambda).unwrap();
        worst = worst.max(r.sum_magnitude / r.bound);
        if !r.pass {
            failures += 1;
        }
        made += 1;
    }
    outcome(
        failures == 0,
        format!("100 phases, {failures} failures, largest |sum| / cot(pi lambda / 2) = {worst:.3}"),
    )
}

/// Largest eigenvalue of `T[i][j] = sum cos(2 pi a (j - i) / n^k)`, built from
/// the row set directly and handed to a dense symmetric eigensolver.
fn dense_delta(k: u32, n_max: u64, m: usize) -> f64 {
    let mut t = vec![0.0f64; m];
    for n in 1..=n_max {
        let q = pow(n, k);
        for a in 1..=q {
            if (a as u64).gcd(&n) != 1 {
                continue;
            }
            for (d, slot) in t.iter_mut().enumerate() {
                let r = (a * d as i128) % q;
                *slot += (std::f64::consts::TAU * r as f64 / q as f64).cos();
            }
        }
    }
    let mat = DMatrix::from_fn(m, m, |i, j| t[i.abs_diff(j)]);
    mat.symmetric_eigenvalues().max()
}

fn criterion_8() -> Outcome {
    let start = Instant::now();
    let mut instances = 0;
    let mut worst_rel = 0.0f64;
    let mut worst_at = String::new();
    let mut bound_failures = Vec::new();
    let mut offset_drift = 0.0f64;
    // N = 1 is the same all-ones row for every k, and N >= 2 needs k <= 8 to keep P <= 200
    for k in 1..=8u32 {
        for n in 1u64.. {
            if n == 1 && k > 1 {
                continue;
            }
            let rows = SieveProblem::new(k, n, 1).row_count();
            if rows > 200 {
                break;
            }
            for m in 1..=200u64 {
                let p = SieveProblem::new(k, n, m);
                let delta = sieve_gram_eigenvalue(&p, 1e-6).unwrap();
                let oracle = dense_delta(k, n, m as usize);
                let rel = (delta - oracle).abs() / oracle;
                if rel > worst_rel {
                    worst_rel = rel;
                    worst_at = format!("k={k} N={n} M={m}");
                }
                let b = classical_bounds(k, n, m).unwrap();
                let cap = 2.0 * b.classical_min().to_f64().unwrap();
                if delta < (m as f64).max(rows as f64) - 1e-6 || delta > cap {
                    bound_failures.push(format!("k={k} N={n} M={m}: {delta}"));
                }
                if m % 64 == 1 || m == 200 {
                    for offset in [17u64, 1_000_000] {
                        let shifted = sieve_gram_eigenvalue(&p.with_offset(offset), 1e-6).unwrap();
                        offset_drift = offset_drift.max((shifted - delta).abs() / delta);
                    }
                }
                instances += 1;
            }
        }
    }
    let secs = start.elapsed().as_secs_f64();
    outcome(
        worst_rel <= 1e-6 && bound_failures.is_empty() && offset_drift <= 1e-6,
        format!(
            "{instances} (k, N, M) with P, M <= 200: worst relative gap to dense oracle {worst_rel:.2e} ({worst_at}); \
             {} bound violations; K in {{0, 17, 10^6}} drift {offset_drift:.2e}; {secs:.0} s",
            bound_failures.len()
        ),
    )
}

fn criterion_9() -> Outcome {
    let k = 2;
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let mut table = Vec::new();
    let mut cs_failures = 0;
    for n in 2..=6u64 {
        for m in [10u64, 100] {
            let p = SieveProblem::new(k, n, m);
            let delta = sieve_gram_eigenvalue(&p, 1e-9).unwrap();
            let cs = (p.row_count() as f64 * delta).sqrt();
            let rhs = classical_bounds(k, n, m).unwrap().cor2_rhs;
            let mut values = Vec::with_capacity(100);
            for _ in 0..100 {
                let alpha = random_unit_vector(m as usize, &mut rng);
                let l1 = l1_sieve_sum(&p, &alpha).unwrap();
                if l1 > cs * (1.0 + 1e-9) {
                    cs_failures += 1;
                }
                values.push(l1);
            }
            table.push((n, m, rhs, values));
        }
    }
    let c_cal = table
        .iter()
        .find(|(n, m, _, _)| *n == 2 && *m == 10)
        .map(|(_, _, rhs, v)| v.iter().cloned().fold(0.0, f64::max) / rhs)
        .unwrap();
    let mut strict_failures = 0;
    let mut constants = Vec::new();
    for (n, m, rhs, values) in &table {
        strict_failures += values.iter().filter(|&&v| v > c_cal * rhs).count();
        constants.push((*n, *m, values.iter().cloned().fold(0.0, f64::max) / rhs));
    }
    let stable = constants.iter().all(|&(_, _, c)| c <= 4.0 * c_cal && c >= c_cal / 4.0);
    let hi = constants.iter().map(|c| c.2).fold(0.0f64, f64::max) / c_cal;
    let lo = constants.iter().map(|c| c.2).fold(f64::INFINITY, f64::min) / c_cal;
    outcome(
        stable && cs_failures == 0,
        format!(
            "C_cal = {c_cal:.4} at (N=2, M=10); per-point constants span [{lo:.3}, {hi:.3}] x C_cal \
             (limit [0.25, 4]); {strict_failures} of 1000 draws exceed C_cal * rhs; {cs_failures} exceed sqrt(P Delta)"
        ),
    )
}

fn criterion_10() -> Outcome {
    let start = Instant::now();
    let build = || {
        let grid = default_grid();
        CalibrationFile::new(vec![
            calibrate_count_vs_integral(&grid).unwrap(),
            calibrate_shortening(&grid, &[0.5, 0.25]).unwrap(),
            calibrate_coefficients(&grid, 4, 42).unwrap(),
        ])
    };
    let first = build();
    let path = std::path::Path::new(env!("CARGO_TARGET_TMPDIR")).join("calibration.json");
    first.write(&path).unwrap();
    let second = build();
    let on_disk = std::fs::read_to_string(&path).unwrap();
    let same_bytes = on_disk == second.to_json();
    let same_values = CalibrationFile::read(&path).unwrap() == second;
    let identical = same_bytes && same_values;
    let c_count = first.constant(COUNT_VS_INTEGRAL).unwrap();
    let c_short = first.constant(SHORTENING).unwrap();
    let c_coef = first.calibrations[2].measured_constant;
    let secs = start.elapsed().as_secs_f64();
    outcome(
        c_count <= 16.0 && c_short.is_finite() && identical,
        format!(
            "J <= {c_count:.3} x mean value (limit 16); shortening constant {c_short:.3}; \
             coefficient constant {c_coef:.3}; rerun byte-identical: {same_bytes}; reread equal: {same_values}; {}; {secs:.1} s",
            path.display()
        ),
    )
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("sweep count equals brute force", criterion_1),
        ("near-pair sharpness at Y = N^3", criterion_2),
        ("dyadic block constant 3", criterion_3),
        ("coverage integral and Chebyshev", criterion_4),
        ("exceptional-set measure", criterion_5),
        ("stationary-phase transform", criterion_6),
        ("Kusmin-Landau bound", criterion_7),
        ("large-sieve constant", criterion_8),
        ("l1 sieve sum", criterion_9),
        ("mean-value calibration", criterion_10),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let o = run();
        if !o.pass {
            failed += 1;
        }
        println!("[{}] {:>2} {name}: {}", if o.pass { "PASS" } else { "FAIL" }, i + 1, o.detail);
    }
    println!("{} of {} criteria pass", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
