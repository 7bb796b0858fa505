//! Compares exact pair counts with the smoothed mean value and writes the
//! calibration file for the default grid.

use powfrac::expsum::{
    calibrate_coefficients, calibrate_count_vs_integral, calibrate_shortening, default_grid, CalibrationFile,
};

fn main() -> powfrac::Result<()> {
    let grid = default_grid();
    let count = calibrate_count_vs_integral(&grid)?;
    for entry in count.grid.iter().take(6) {
        println!(
            "k={} I1={:?} I2={:?} Y={}: J = {}, mean value {:.3}",
            entry.point.k, entry.point.i1, entry.point.i2, entry.point.y, entry.lhs, entry.rhs
        );
    }
    let file = CalibrationFile::new(vec![
        count,
        calibrate_shortening(&grid, &[0.5, 0.25])?,
        calibrate_coefficients(&grid, 4, 42)?,
    ]);
    for c in &file.calibrations {
        println!("{}: {:.4}", c.lemma_id, c.measured_constant);
    }
    let path = std::env::temp_dir().join("powfrac-calibration.json");
    file.write(&path).map_err(|e| powfrac::Error::Parse(e.to_string()))?;
    println!("wrote {}", path.display());
    Ok(())
}
