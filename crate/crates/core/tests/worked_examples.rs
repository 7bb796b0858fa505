//! Hand-checkable cases exercised through the public API only.

use std::cmp::Ordering;

use num_complex::Complex64;
use powfrac::expsum::{direct_monomial_sum, mean_value_integral, BilinearPhase, MeanValueSpec, PhaseSpec};
use powfrac::fraccore::{
    circle_distance, compare_fractions, enumerate_tuples, make_fraction, sorted_tuples, EnumerationSpec,
    ExactRational,
};
use powfrac::paircount::{
    count_multiplicative_near, count_pairs_block, count_pairs_interval, count_pairs_reciprocal, coverage_profile,
    exceptional_measure, window_count, DyadicBlockQuery, MultiplicativeNearQuery, PairQuery, ReciprocalPairQuery,
};
use powfrac::sieve::{classical_bounds, dual_quadratic_form, l1_sieve_sum, sieve_gram_eigenvalue, SieveProblem};
use powfrac::Error;

fn q(p: i64, d: i64) -> ExactRational {
    ExactRational::new(p, d).unwrap()
}

#[test]
fn fractions() {
    assert_eq!(make_fraction(1, 2, 2, false).unwrap().value(), q(1, 4));
    assert!(matches!(make_fraction(5, 2, 2, false), Err(Error::Range(_))));
    assert!(matches!(make_fraction(2, 2, 1, true), Err(Error::Coprimality { .. })));

    let f = |u, n, k| make_fraction(u, n, k, false).unwrap();
    assert_eq!(compare_fractions(&f(1, 2, 2), &f(1, 3, 2)), Ordering::Greater);
    assert_eq!(compare_fractions(&f(4, 2, 2), &f(1, 1, 2)), Ordering::Equal);
    assert_eq!(compare_fractions(&f(3, 2, 3), &f(10, 3, 3)), Ordering::Greater);

    assert_eq!(enumerate_tuples(EnumerationSpec::new(2, 2, false, false)).unwrap().count(), 5);
    let halves: Vec<_> = enumerate_tuples(EnumerationSpec::new(1, 2, true, true))
        .unwrap()
        .map(|f| f.value())
        .collect();
    assert_eq!(halves, vec![q(1, 2), q(1, 1)]);
    let first = &sorted_tuples(2, 3, true, 1 << 20).unwrap()[0];
    assert_eq!((first.u(), first.n()), (1, 3));

    assert_eq!(circle_distance(&q(1, 1), &q(0, 1)), q(0, 1));
    assert_eq!(circle_distance(&q(1, 2), &q(0, 1)), q(1, 2));
    assert_eq!(circle_distance(&q(3, 4), &q(0, 1)), q(1, 4));
}

#[test]
fn pair_counts() {
    let count = |k, n, y| count_pairs_interval(&PairQuery::new(k, n, ExactRational::from_integer(y))).unwrap();
    assert_eq!(count(1, 2, 10), 5);
    assert_eq!(count(2, 2, 2), 21);
    assert_eq!(count(2, 2, 1), 25);

    let one = DyadicBlockQuery::new(1, 1, 1, 1, 1, ExactRational::from_integer(10));
    assert_eq!(count_pairs_block(&one).unwrap(), 1);
    let b = DyadicBlockQuery::new(4, 2, 1, 1, 2, ExactRational::from_integer(8));
    assert_eq!(count_pairs_block(&b).unwrap(), 1);
    assert_eq!(count_pairs_block(&b.swapped()).unwrap(), 1);

    let w = |x, y| window_count(1, 2, &x, &ExactRational::from_integer(y), true).unwrap();
    assert_eq!(w(q(0, 1), 4), 1);
    assert_eq!(w(q(1, 2), 4), 1);
    assert_eq!(w(q(1, 3), 2), 2);

    let r = |z| count_pairs_reciprocal(&ReciprocalPairQuery::new(1, 1, 1, ExactRational::from_integer(z))).unwrap();
    assert_eq!(r(1), 14);
    assert_eq!(r(1_000_000), 6);

    let m = |k, h| count_multiplicative_near(&MultiplicativeNearQuery { k, m: 1, v: 1, h }).unwrap().count;
    assert_eq!(m(1, 0), 6);
    assert_eq!(m(1, 4), 16);
    assert_eq!(m(2, 1), 6);
}

#[test]
fn coverage() {
    let p = coverage_profile(1, 2, &ExactRational::from_integer(4), true).unwrap();
    // the closed arcs meet only at 1/4 and 3/4, so every open interval has depth 1
    assert!(p.depths.iter().all(|&d| d == 1));
    assert_eq!(p.integral(), q(1, 1));
    assert_eq!(exceptional_measure(&p, 1).unwrap(), q(1, 1));
    assert_eq!(exceptional_measure(&p, 2).unwrap(), q(0, 1));
    assert_eq!(exceptional_measure(&p, 3).unwrap(), q(0, 1));

    let wide = coverage_profile(1, 2, &ExactRational::from_integer(1), true).unwrap();
    assert!(wide.depths.iter().all(|&d| d == 2));
}

#[test]
fn exponential_sums() {
    assert_eq!(direct_monomial_sum(&PhaseSpec::new(1.5, 0.0, 10.0, 2.0)).unwrap(), Complex64::new(9.0, 0.0));
    let s = direct_monomial_sum(&PhaseSpec::new(1.0, 2.0, 4.0, 2.0)).unwrap();
    assert!((s + 1.0).norm() < 1e-12);

    // constant integrand 4 over [-Y, Y] with the 1/Y normalisation
    let zero = MeanValueSpec::new(BilinearPhase::Zero, (1, 2), (1, 2), 10.0);
    assert!((mean_value_integral(&zero).unwrap() - 2.0 * 16.0).abs() < 1e-9);
}

#[test]
fn sieve() {
    assert!((sieve_gram_eigenvalue(&SieveProblem::new(3, 1, 10), 1e-12).unwrap() - 10.0).abs() < 1e-9);
    assert!((sieve_gram_eigenvalue(&SieveProblem::new(2, 2, 1), 1e-12).unwrap() - 3.0).abs() < 1e-9);
    assert!(sieve_gram_eigenvalue(&SieveProblem::new(2, 2, 3), 1e-9).unwrap() >= 3.0 - 1e-9);

    let p = SieveProblem::new(2, 2, 5);
    let mut basis = vec![Complex64::new(0.0, 0.0); 5];
    basis[2] = Complex64::new(1.0, 0.0);
    assert!((l1_sieve_sum(&p, &basis).unwrap() - 3.0).abs() < 1e-12);
    assert_eq!(l1_sieve_sum(&p, &[Complex64::new(0.0, 0.0); 5]).unwrap(), 0.0);

    let single = SieveProblem::new(2, 1, 10);
    let coeffs = [((1, 1), Complex64::new(1.0, 0.0))].into_iter().collect();
    assert!((dual_quadratic_form(&single, &coeffs).unwrap() - 10.0).abs() < 1e-9);

    let b = classical_bounds(2, 10, 1000).unwrap();
    assert_eq!(b.csv_row(), "11000,11000,2000,2000");
    assert_eq!(classical_bounds(1, 5, 100).unwrap().classical_1, 125u32.into());
    assert_eq!(classical_bounds(1, 4, 16).unwrap().cor2_rhs, 32.0);
}
