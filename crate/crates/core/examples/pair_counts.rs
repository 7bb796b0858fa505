//! Near-pair counts at the critical scale Y = N^3 for k = 2.

use powfrac::fraccore::ExactRational;
use powfrac::paircount::{compare_block_counts, count_pairs_interval, sharpness_study, DyadicBlockQuery, PairQuery};

fn main() -> powfrac::Result<()> {
    let y = ExactRational::from_integer(1000);
    let plain = count_pairs_interval(&PairQuery::new(2, 10, y.clone()))?;
    let coprime = count_pairs_interval(&PairQuery::new(2, 10, y).coprime(true))?;
    println!("N = 10, Y = 1000: {plain} pairs, {coprime} among reduced fractions");

    println!("N      count    count / N^3   local slope");
    for row in sharpness_study(2, &[8, 12, 16, 20], 1 << 24)? {
        let slope = row.local_slope.map(|s| format!("{s:.3}")).unwrap_or_else(|| "-".into());
        println!("{:<6} {:<8} {:<13.4} {slope}", row.n, row.count, row.ratio);
    }

    let q = DyadicBlockQuery::new(16, 4, 8, 2, 2, ExactRational::from_integer(600));
    let c = compare_block_counts(&q)?;
    println!(
        "blocks (16, 4) x (8, 2): mixed {} <= 3 sqrt({} * {}) = {:.1}",
        c.mixed, c.first, c.second, c.bound
    );
    Ok(())
}
