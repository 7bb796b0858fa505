//! Large-sieve constants for the rows a/n^2 against the classical bounds.

use powfrac::sieve::{l1_sieve_sum, random_unit_vector, sieve_sweep, sweep_csv, SieveProblem};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> powfrac::Result<()> {
    let problems: Vec<_> = [(4, 10), (4, 100), (6, 50), (8, 200)]
        .into_iter()
        .map(|(n, m)| SieveProblem::new(2, n, m))
        .collect();
    let rows = sieve_sweep(&problems, 1e-9)?;
    print!("{}", sweep_csv(&rows));

    let p = SieveProblem::new(2, 5, 64);
    let mut rng = ChaCha8Rng::seed_from_u64(42);
    let best = (0..50)
        .map(|_| l1_sieve_sum(&p, &random_unit_vector(64, &mut rng)))
        .collect::<powfrac::Result<Vec<_>>>()?
        .into_iter()
        .fold(0.0, f64::max);
    println!("largest l1 sum over 50 random unit vectors (N=5, M=64): {best:.3}");
    Ok(())
}
