use num_traits::ToPrimitive;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use super::report::Report;
use super::{Command, Common, PhaseArgs, SieveArgs};
use crate::error::{Error, Result};
use crate::expsum::{
    direct_monomial_sum, exact_pair_count, kusmin_landau_check, mean_value_quadrature, vdc_transform_sum,
    BilinearPhase, GenericPhase, GridPoint, MeanValueSpec, PhaseSpec,
};
use crate::fraccore::{enumerate_tuples, EnumerationSpec, ExactRational};
use crate::paircount::{
    compare_block_counts, count_pairs_with, coverage_profile, exceptional_measure, sharpness_study, window_count,
    DyadicBlockQuery, PairQuery,
};
use crate::sieve::{
    classical_bounds, dual_quadratic_form, l1_sieve_sum, random_unimodular, random_unit_vector,
    sieve_gram_eigenvalue_report, sweep_csv, SieveProblem, SweepRow, DEFAULT_MAX_ITERATIONS,
};

fn check_points(predicted: u128, cap: u128) -> Result<()> {
    if predicted > cap {
        return Err(Error::Resource {
            what: "points to enumerate",
            requested: predicted,
            cap,
        });
    }
    Ok(())
}

fn phase_spec(p: &PhaseArgs) -> PhaseSpec {
    PhaseSpec::new(p.alpha, p.y, p.n, p.eta)
}

fn phase_query(p: &PhaseArgs) -> serde_json::Value {
    json!({ "alpha": p.alpha, "y": p.y, "n": p.n, "eta": p.eta })
}

fn sieve_problem(s: &SieveArgs, c: &Common) -> Result<SieveProblem> {
    let p = SieveProblem::new(s.k, s.n, s.m)
        .with_offset(s.offset)
        .with_max_entries(c.max_points);
    p.validate()?;
    Ok(p)
}

fn sieve_query(s: &SieveArgs) -> serde_json::Value {
    json!({ "k": s.k, "n": s.n, "m": s.m, "offset": s.offset })
}

fn delta_of(p: &SieveProblem, tol: f64) -> Result<f64> {
    sieve_gram_eigenvalue_report(p, tol, DEFAULT_MAX_ITERATIONS).map(|r| r.value)
}

pub(super) fn dispatch(cmd: &Command, c: &Common) -> Result<Report> {
    let name = cmd.name();
    match cmd {
        Command::Enumerate { k, n_max, coprime, sorted } => {
            let spec = EnumerationSpec::new(*k, *n_max, *coprime, *sorted);
            check_points(spec.predicted_count(), c.max_points)?;
            let fractions: Vec<_> = enumerate_tuples(spec)?.collect();
            let rows = fractions.iter().map(|f| {
                let v = f.value();
                format!("{},{},{},{},{}", f.u(), f.n(), f.k(), v.numer(), v.denom())
            });
            let csv_rows: Vec<String> = rows.collect();
            Ok(Report::new(name, json!({ "k": k, "n_max": n_max, "coprime": coprime, "sorted": sorted }))
                .field("count", fractions.len())
                .field("fractions", &fractions)
                .csv("u,n,k,value_p,value_q", csv_rows)
                .summary(format!("{} fractions", fractions.len())))
        }
        Command::Pairs { k, n_max, y, coprime, metric, method } => {
            let q = PairQuery::new(*k, *n_max, y.0.clone())
                .coprime(*coprime)
                .metric((*metric).into())
                .max_points(c.max_points);
            let count = count_pairs_with(&q, (*method).into())?;
            let method_name = format!("{method:?}").to_lowercase();
            let metric_name = format!("{metric:?}").to_lowercase();
            Ok(Report::new(
                name,
                json!({ "k": k, "n_max": n_max, "y": y.0, "coprime": coprime, "metric": metric_name }),
            )
            .field("count", count)
            .field("method", &method_name)
            .csv(
                "k,n_max,y,coprime,metric,method,count",
                [format!("{k},{n_max},{},{coprime},{metric_name},{method_name},{count}", y.0)],
            )
            .summary(format!("count = {count}")))
        }
        Command::Blocks { k, u1, n1, u2, n2, y, convention } => {
            let mut q = DyadicBlockQuery::new(*u1, *n1, *u2, *n2, *k, y.0.clone());
            q.convention = (*convention).into();
            let b = compare_block_counts(&q)?;
            Ok(Report::new(name, &q)
                .field("mixed", b.mixed)
                .field("first", b.first)
                .field("second", b.second)
                .field("bound", b.bound)
                .field("holds", b.holds)
                .csv(
                    "mixed,first,second,bound,holds",
                    [format!("{},{},{},{},{}", b.mixed, b.first, b.second, b.bound, b.holds)],
                )
                .summary(format!("J = {} vs 3 sqrt(J1 J2) = {:.4}: {}", b.mixed, b.bound, verdict(b.holds))))
        }
        Command::Window { k, n_max, x, y, coprime } => {
            check_points(EnumerationSpec::new(*k, *n_max, *coprime, false).predicted_count(), c.max_points)?;
            let count = window_count(*k, *n_max, &x.0, &y.0, *coprime)?;
            Ok(
                Report::new(name, json!({ "k": k, "n_max": n_max, "x": x.0, "y": y.0, "coprime": coprime }))
                    .field("count", count)
                    .csv("k,n_max,x,y,coprime,count", [format!("{k},{n_max},{},{},{coprime},{count}", x.0, y.0)])
                    .summary(format!("count = {count}")),
            )
        }
        Command::Measure { k, n_max, y, t, coprime } => {
            check_points(EnumerationSpec::new(*k, *n_max, *coprime, false).predicted_count(), c.max_points)?;
            let profile = coverage_profile(*k, *n_max, &y.0, *coprime)?;
            let measure = exceptional_measure(&profile, *t)?;
            let integral = profile.integral();
            let chebyshev = &integral * &ExactRational::new(1, *t).expect("t >= 1");
            Ok(Report::new(name, json!({ "k": k, "n_max": n_max, "y": y.0, "t": t, "coprime": coprime }))
                .field("point_count", profile.point_count)
                .field("breakpoints", profile.breakpoints.len())
                .field("max_depth", profile.max_depth())
                .field("integral", &integral)
                .field("expected_integral", profile.expected_integral())
                .field("measure", &measure)
                .field("measure_f64", measure.to_f64())
                .field("chebyshev_bound", &chebyshev)
                .summary(format!("measure{{depth >= {t}}} = {measure} (~{:.6e})", measure.to_f64()))
                .with_csv_text(profile.to_csv()))
        }
        Command::ExpsumDirect { phase } => {
            let spec = phase_spec(phase);
            let s = direct_monomial_sum(&spec)?;
            Ok(Report::new(name, phase_query(phase))
                .field("direct_re", s.re)
                .field("direct_im", s.im)
                .field("magnitude", s.norm())
                .field("terms", spec.term_count())
                .csv(
                    "alpha,y,n,eta,direct_re,direct_im",
                    [format!("{},{},{},{},{},{}", phase.alpha, phase.y, phase.n, phase.eta, s.re, s.im)],
                )
                .summary(format!("|sum| = {:.6} over {} terms", s.norm(), spec.term_count())))
        }
        Command::ExpsumVdc { phase } => {
            let spec = phase_spec(phase);
            let direct = direct_monomial_sum(&spec)?;
            let t = vdc_transform_sum(&spec)?;
            let abs_err = (direct - t.value).norm();
            let ratio = abs_err / t.budget;
            Ok(Report::new(name, phase_query(phase))
                .field("direct_re", direct.re)
                .field("direct_im", direct.im)
                .field("transform_re", t.value.re)
                .field("transform_im", t.value.im)
                .field("abs_err", abs_err)
                .field("budget", t.budget)
                .field("ratio", ratio)
                .field("dual_terms", t.dual_terms)
                .field("dual_range", t.dual_range)
                .field("degenerate", t.degenerate)
                .csv(
                    "alpha,y,n,eta,direct_re,direct_im,transform_re,transform_im,abs_err,budget,ratio",
                    [format!(
                        "{},{},{},{},{},{},{},{},{},{},{}",
                        phase.alpha,
                        phase.y,
                        phase.n,
                        phase.eta,
                        direct.re,
                        direct.im,
                        t.value.re,
                        t.value.im,
                        abs_err,
                        t.budget,
                        ratio
                    )],
                )
                .summary(format!("|direct - dual| = {abs_err:.4} = {ratio:.4} x budget")))
        }
        Command::Kusmin { phase, lambda } => {
            let spec = phase_spec(phase);
            spec.validate()?;
            let g = GenericPhase::from_spec(&spec);
            let r = kusmin_landau_check(&g, *lambda)?;
            let mut query = phase_query(phase);
            query["lambda"] = json!(lambda);
            Ok(Report::new(name, query)
                .field("sum_magnitude", r.sum_magnitude)
                .field("bound", r.bound)
                .field("pass", r.pass)
                .csv(
                    "alpha,y,n,eta,lambda,sum_magnitude,bound,pass",
                    [format!(
                        "{},{},{},{},{},{},{},{}",
                        phase.alpha, phase.y, phase.n, phase.eta, lambda, r.sum_magnitude, r.bound, r.pass
                    )],
                )
                .summary(format!("|sum| = {:.6} vs cot = {:.6}: {}", r.sum_magnitude, r.bound, verdict(r.pass))))
        }
        Command::Meanvalue { k, n_lo, n_hi, u_lo, u_hi, y, rel_tol } => {
            let to_i64 = |v: u64| i64::try_from(v).map_err(|_| Error::Range(format!("{v} is too large")));
            let (i1, i2) = ((to_i64(*n_lo)?, to_i64(*n_hi)?), (to_i64(*u_lo)?, to_i64(*u_hi)?));
            let mut spec = MeanValueSpec::new(BilinearPhase::PowerFraction { k: *k }, i1, i2, *y);
            spec.rel_tol = *rel_tol;
            let q = mean_value_quadrature(&spec)?;
            let count = exact_pair_count(&GridPoint { k: *k, i1, i2, y: *y })?;
            let ratio = count as f64 / q.value;
            Ok(Report::new(
                name,
                json!({ "k": k, "n_lo": n_lo, "n_hi": n_hi, "u_lo": u_lo, "u_hi": u_hi, "y": y, "rel_tol": rel_tol }),
            )
            .field("integral", q.value)
            .field("nodes", q.nodes)
            .field("refinements", q.refinements)
            .field("pair_count", count)
            .field("ratio", ratio)
            .csv(
                "k,n_lo,n_hi,u_lo,u_hi,y,integral,pair_count,ratio",
                [format!("{k},{n_lo},{n_hi},{u_lo},{u_hi},{y},{},{count},{ratio}", q.value)],
            )
            .summary(format!("J = {count}, mean value = {:.6}, ratio {ratio:.4}", q.value)))
        }
        Command::SieveDelta { sieve, tol } => {
            let p = sieve_problem(sieve, c)?;
            let r = sieve_gram_eigenvalue_report(&p, *tol, DEFAULT_MAX_ITERATIONS)?;
            let bounds = classical_bounds(p.k, p.n, p.m)?;
            let rows = p.row_count();
            let lower = (p.m as f64).max(rows as f64);
            let upper = 2.0 * bounds.classical_min().to_f64().unwrap_or(f64::INFINITY);
            let row = SweepRow {
                problem: p,
                p: rows,
                delta: r.value,
                bounds: bounds.clone(),
            };
            let lower_ok = r.value >= lower * (1.0 - 1e-6);
            let upper_ok = r.value <= upper;
            let csv = sweep_csv(std::slice::from_ref(&row));
            Ok(Report::new(name, sieve_query(sieve))
                .field("p", rows)
                .field("delta", r.value)
                .field("iterations", r.iterations)
                .field("residual", r.residual)
                .field("bounds", &bounds)
                .field("ratio_delta_over_conjecture", row.ratio_delta_over_conjecture())
                .field("lower_bound_ok", lower_ok)
                .field("upper_bound_ok", upper_ok)
                .with_csv_text(csv)
                .summary(format!("Delta = {:.6} (P = {rows}, {} iterations)", r.value, r.iterations)))
        }
        Command::SieveL1 { sieve, trials, tol } => {
            let p = sieve_problem(sieve, c)?;
            let delta = delta_of(&p, *tol)?;
            let rows = p.row_count() as f64;
            let cs_bound = (rows * delta).sqrt();
            let bounds = classical_bounds(p.k, p.n, p.m)?;
            let mut rng = ChaCha8Rng::seed_from_u64(c.seed);
            let mut values = Vec::with_capacity(*trials);
            for _ in 0..*trials {
                let alpha = random_unit_vector(p.m as usize, &mut rng);
                values.push(l1_sieve_sum(&p, &alpha)?);
            }
            let max_l1 = values.iter().cloned().fold(0.0f64, f64::max);
            let all_hold = values.iter().all(|v| *v <= cs_bound * (1.0 + 1e-9));
            let csv_rows = values
                .iter()
                .enumerate()
                .map(|(i, v)| format!("{i},{v},{cs_bound},{}", *v <= cs_bound * (1.0 + 1e-9)));
            Ok(Report::new(name, sieve_query(sieve))
                .field("seed", c.seed)
                .field("trials", trials)
                .field("delta", delta)
                .field("cs_bound", cs_bound)
                .field("max_l1", max_l1)
                .field("all_within_cs_bound", all_hold)
                .field("cor2_rhs", bounds.cor2_rhs)
                .field("max_l1_over_cor2_rhs", max_l1 / bounds.cor2_rhs)
                .field("l1", &values)
                .csv("trial,l1,cs_bound,holds", csv_rows)
                .summary(format!("max l1 = {max_l1:.6} vs sqrt(P Delta) = {cs_bound:.6}: {}", verdict(all_hold))))
        }
        Command::SieveDual { sieve, draws, tol } => {
            let p = sieve_problem(sieve, c)?;
            let delta = delta_of(&p, *tol)?;
            let rows = p.row_count() as f64;
            let bound = delta * rows;
            let mut rng = ChaCha8Rng::seed_from_u64(c.seed);
            let mut values = Vec::with_capacity(*draws);
            for _ in 0..*draws {
                values.push(dual_quadratic_form(&p, &random_unimodular(&p, &mut rng))?);
            }
            let best = values.iter().cloned().fold(0.0f64, f64::max);
            let holds = values.iter().all(|v| *v <= bound * (1.0 + 1e-9));
            let csv_rows = values.iter().enumerate().map(|(i, v)| format!("{i},{v},{bound}"));
            Ok(Report::new(name, sieve_query(sieve))
                .field("seed", c.seed)
                .field("draws", draws)
                .field("delta", delta)
                .field("delta_times_p", bound)
                .field("sup_lower_estimate", best)
                .field("all_within_bound", holds)
                .csv("draw,dual_form,delta_times_p", csv_rows)
                .summary(format!("best dual form = {best:.6} vs Delta P = {bound:.6}: {}", verdict(holds))))
        }
        Command::Bounds { k, n, m } => {
            let b = classical_bounds(*k, *n, *m)?;
            Ok(Report::new(name, json!({ "k": k, "n": n, "m": m }))
                .field("classical_1", &b.classical_1)
                .field("classical_2", &b.classical_2)
                .field("conjecture", &b.conjecture)
                .field("cor2_rhs", b.cor2_rhs)
                .field("cor2_rhs_exact", &b.cor2_rhs_exact)
                .csv(crate::sieve::BoundReport::csv_header(), [b.csv_row()])
                .summary(b.csv_row()))
        }
        Command::SharpnessStudy { k, n } => {
            let rows = sharpness_study(*k, n, c.max_points)?;
            let csv_rows = rows.iter().map(|r| {
                let slope = r.local_slope.map(|s| s.to_string()).unwrap_or_default();
                format!("{},{},{},{}", r.n, r.count, r.ratio, slope)
            });
            let csv_rows: Vec<String> = csv_rows.collect();
            let last = rows.last().map(|r| r.ratio).unwrap_or(f64::NAN);
            Ok(Report::new(name, json!({ "k": k, "n": n }))
                .field("rows", &rows)
                .csv("N,count,ratio,local_slope", csv_rows)
                .summary(format!("{} rows, last ratio {last:.4}", rows.len())))
        }
    }
}

fn verdict(ok: bool) -> &'static str {
    if ok {
        "holds"
    } else {
        "FAILS"
    }
}

impl Report {
    fn with_csv_text(mut self, csv: String) -> Self {
        self.csv = csv;
        self
    }
}
