//! Direct monomial sums against their stationary-phase duals, plus one
//! Kusmin-Landau check.

use powfrac::expsum::{direct_monomial_sum, kusmin_landau_check, vdc_transform_sum, GenericPhase, PhaseSpec};

fn main() -> powfrac::Result<()> {
    println!("alpha  y       N    |direct|   |dual|     |diff|    budget");
    for alpha in [-1.0, 0.5, 1.5, 2.5] {
        for y in [1e3, 1e4] {
            let spec = PhaseSpec::new(alpha, y, 50.0, 2.0);
            let direct = direct_monomial_sum(&spec)?;
            let dual = vdc_transform_sum(&spec)?;
            println!(
                "{alpha:<6} {y:<7} {:<4} {:<10.4} {:<10.4} {:<9.4} {:.3}",
                spec.n,
                direct.norm(),
                dual.value.norm(),
                (direct - dual.value).norm(),
                dual.budget
            );
        }
    }

    // f' runs from 0.2 to about 0.283 on [40, 80], well clear of the integers
    let spec = PhaseSpec::new(1.5, 8.0, 40.0, 2.0);
    let r = kusmin_landau_check(&GenericPhase::from_spec(&spec), 0.2)?;
    println!("Kusmin-Landau: |sum| = {:.4} <= {:.4}: {}", r.sum_magnitude, r.bound, r.pass);
    Ok(())
}
