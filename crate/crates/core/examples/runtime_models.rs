//! Runtime of GSEE with and without a state-preparation stage.
//!
//! Run with `cargo run --example runtime_models`.

use gspgate::runtime_model::{gsee_depth, repetitions};
use gspgate::{
    catalog, runtime_reference, runtime_total, runtime_with_reps, Accuracy, DepthUnit, GspCandidate,
    Reference,
};

fn main() -> gspgate::Result<()> {
    let acc = Accuracy::new(5e-5)?;
    let reference = Reference::new(0.72)?;
    let cand = GspCandidate::new("spa", 400.0, 0.95, DepthUnit::CircuitLayers)?.with_p_succ(0.8)?;

    for model in catalog() {
        println!(
            "{} (alpha = {}, beta = {})",
            model.name(),
            model.alpha(),
            model.beta()
        );
        println!(
            "  repetitions at gamma     {:>12.4}",
            repetitions(&model, cand.gamma())?
        );
        println!(
            "  GSEE depth at gamma      {:>12.1}",
            gsee_depth(&model, &acc, cand.gamma())?
        );
        println!(
            "  T  (candidate)           {:>12.1}",
            runtime_total(&model, &cand, &acc)?
        );
        println!(
            "  T  (with failed attempts){:>12.1}",
            runtime_with_reps(&model, &cand, &acc)?
        );
        println!(
            "  T0 (reference state)     {:>12.1}",
            runtime_reference(&model, &reference, &acc)?
        );
    }
    Ok(())
}
