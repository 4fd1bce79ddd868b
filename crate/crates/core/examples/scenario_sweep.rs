//! Scenario tables and parameter sweeps.
//!
//! Run with `cargo run --example scenario_sweep`.

use gspgate::fixtures;
use gspgate::scenario::{
    run_scenarios, run_table, sweep, ScenarioRecord, SweepSpec, SweepVariable, TableOutput,
};

fn main() -> gspgate::Result<()> {
    // Overlap ratios along a bond-dissociation curve.
    if let TableOutput::Report(report) = run_table(fixtures::H2_SWEEP)? {
        print!("{}", report.to_csv());
    }

    // Plain scenario tables, one candidate per row.
    let table = "name,alpha,beta,epsilon,gamma,gamma0,depth,p_succ,unit\n\
                 shallow,0,1,1e-3,0.85,0.72,3,1,circuit-layers\n\
                 deep,0,1,1e-3,0.85,0.72,400,1,circuit-layers\n\
                 broken,0,1,1e-3,1.3,0.72,3,1,circuit-layers\n";
    let report = run_scenarios(table)?;
    print!("\n{}", report.to_csv());
    for e in &report.errors {
        println!("skipped: {e}");
    }

    // How far can the reference overlap rise before the candidate stops paying off?
    let base = ScenarioRecord {
        name: Some("spa".into()),
        alpha: Some(0.0),
        beta: Some(1.0),
        epsilon: Some(1e-3),
        gamma: Some(0.85),
        depth: Some(50.0),
        ..ScenarioRecord::default()
    };
    let grid = vec![0.70, 0.75, 0.80, 0.82, 0.84];
    let report = sweep(&SweepSpec::values(SweepVariable::Gamma0, grid, base))?;
    print!("\n{}", report.to_csv());
    print!("\n{}", report.to_plot());
    Ok(())
}
