//! Accept or reject a preparation method under each criterion.
//!
//! Run with `cargo run --example acceptability_verdicts`.

use gspgate::criteria::{verdict_with_gsee_depth, DEFAULT_NEGLIGIBILITY};
use gspgate::{
    verdict_general, verdict_simplified, verdict_with_reps, Accuracy, DepthUnit, GseeModel, GspCandidate,
    Reference, Verdict,
};

fn show(label: &str, v: &Verdict) {
    println!(
        "{label:<28} {:<9} lhs {:>10.6}  rhs {:>10.6}  margin {:>+10.6}  [{}]",
        if v.accepted { "accepted" } else { "rejected" },
        v.lhs,
        v.rhs,
        v.margin,
        v.regime.as_str()
    );
    for w in &v.warnings {
        println!("{:<28} warning: {w}", "");
    }
}

fn main() -> gspgate::Result<()> {
    let lt20 = GseeModel::lt20();
    let acc = Accuracy::new(1e-3)?;
    let hf = Reference::new(0.72)?;

    // Shallow circuit raising the overlap from 0.72 to 0.85.
    let spa = GspCandidate::new("spa", 3.0, 0.85, DepthUnit::CircuitLayers)?;
    show("spa, general", &verdict_general(&lt20, &spa, &hf, &acc)?);
    show(
        "spa, simplified",
        &verdict_simplified(&lt20, &spa, &hf, &acc, DEFAULT_NEGLIGIBILITY)?,
    );

    // Deeper probabilistic preparation with a known GSEE depth.
    let unit = DepthUnit::ControlledEvolutions;
    let booster = GspCandidate::new("booster", 1000.0, 1.0, unit.clone())?.with_p_succ(0.5)?;
    let lt20_evol = GseeModel::lt20().with_unit(unit.clone());
    show(
        "booster, D_gsee = 2e4",
        &verdict_with_gsee_depth(&lt20_evol, &booster, &hf, 2e4)?,
    );

    // Same state, but paid for with a depth the GSEE stage cannot absorb.
    let too_deep = booster.clone().with_depth(2e4)?;
    show(
        "booster, 20x deeper",
        &verdict_with_gsee_depth(&lt20_evol, &too_deep, &hf, 2e4)?,
    );

    // Overlap below the reference: rejected whatever the depth.
    let worse = GspCandidate::new("worse", 0.0, 0.6, DepthUnit::CircuitLayers)?;
    let qpe = GseeModel::qpe();
    show(
        "overlap below reference",
        &verdict_with_reps(&qpe, &worse, &hf, &acc)?,
    );
    Ok(())
}
