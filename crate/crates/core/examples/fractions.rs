//! Lists S_2(4) in increasing order and shows the smallest gaps.

use powfrac::fraccore::{sorted_tuples, ExactRational};

fn main() -> powfrac::Result<()> {
    let points = sorted_tuples(2, 4, true, 1 << 20)?;
    println!("{} coprime fractions u/n^2 with n <= 4", points.len());
    for f in &points {
        print!("{}/{} ", f.u(), f.denominator());
    }
    println!();

    let mut gaps: Vec<(ExactRational, String)> = points
        .windows(2)
        .map(|w| {
            let gap = w[1].value() - w[0].value();
            (gap, format!("{}/{} .. {}/{}", w[0].u(), w[0].denominator(), w[1].u(), w[1].denominator()))
        })
        .collect();
    gaps.sort();
    for (gap, between) in gaps.iter().take(3) {
        println!("gap {gap} between {between}");
    }
    Ok(())
}
