//! Depth budget for a preparation that reaches the exact ground state, as a
//! function of the reference overlap.
//!
//! Run with `cargo run --example max_depth_curve`.

use gspgate::fixtures;
use gspgate::scenario::{max_depth_curve, run_table, TableOutput};
use gspgate::{max_depth_strict, Warning};

fn main() -> gspgate::Result<()> {
    // Bundled case study: 1.8e7 T gates of GSEE.
    match run_table(fixtures::JELLIUM)? {
        TableOutput::Curve(curve) => print!("{}", curve.to_csv()),
        TableOutput::Report(_) => unreachable!("jellium fixture is a curve"),
    }

    // The same curve on a finer grid, computed directly.
    let grid: Vec<f64> = (1..=19).map(|k| f64::from(k) * 0.05).collect();
    let curve = max_depth_curve(1.0, 1.8e7, &grid);
    let halfway = curve.points.iter().find(|p| p.gamma0 == 0.5).map(|p| p.d_max);
    println!(
        "\nfine grid: {} points, D_max(0.5) = {halfway:?}",
        curve.points.len()
    );

    // A preparation that lowers the overlap gets no depth at all.
    let bound = max_depth_strict(0.7, 0.8, 1e6)?;
    println!("gamma below gamma0: D_max = {}", bound.value);
    for w in &bound.warnings {
        if let Warning::NoAcceptableDepth { .. } = w {
            println!("  {w}");
        }
    }
    Ok(())
}
