//! The window-count step function on the circle and its exceptional set.

use powfrac::fraccore::ExactRational;
use powfrac::paircount::{coverage_profile, exceptional_measure, window_count};

fn main() -> powfrac::Result<()> {
    let (k, n) = (2, 12);
    let y = ExactRational::from_integer(12i64.pow(3));
    let profile = coverage_profile(k, n, &y, true)?;
    println!(
        "{} points, {} breakpoints, deepest window {}",
        profile.point_count,
        profile.breakpoints.len(),
        profile.max_depth()
    );
    println!("integral {} (expected {})", profile.integral(), profile.expected_integral());

    let x = ExactRational::new(1, 3)?;
    println!(
        "depth at 1/3: profile {}, direct count {}",
        profile.depth_at(&x),
        window_count(k, n, &x, &y, true)?
    );
    for t in 1..=profile.max_depth() + 1 {
        println!("measure of depth >= {t}: {}", exceptional_measure(&profile, t)?);
    }
    Ok(())
}
