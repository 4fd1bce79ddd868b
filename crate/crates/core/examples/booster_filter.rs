//! Boost a reference state with a spectral filter, then ask whether the
//! boosted overlap justifies the filter's depth.
//!
//! Run with `cargo run --example booster_filter`.

use gspgate::spectral::{
    boost_filter_repeated, ground_state, parse_hamiltonian, reference_overlap, FilterSpec, SpectralConfig,
    StateVector,
};
use gspgate::{
    booster_depth_model, verdict_with_reps, Accuracy, BoosterGspModel, DepthUnit, GseeModel, Reference,
};

const HAMILTONIAN: &str = include_str!("../data/spectral/two_site.pauli");

fn main() -> gspgate::Result<()> {
    let cfg = SpectralConfig::default();
    let h = parse_hamiltonian(HAMILTONIAN, cfg.max_dim)?;
    let spec = ground_state(&h, &cfg)?;
    let start = StateVector::basis(h.dim(), 0)?;

    let filters = [
        FilterSpec::exponential(0.0, 1.0)?,
        FilterSpec::gaussian(spec.e0, 0.5)?,
        FilterSpec::step(spec.e0 + 0.5 * spec.gap)?,
    ];
    for filter in &filters {
        for repeat in [1, 4] {
            let res = boost_filter_repeated(&h, &start, filter, repeat, &cfg)?;
            println!(
                "{:<12} x{repeat}: gamma {:.6} -> {:.6}",
                filter.kind(),
                res.gamma_before,
                res.gamma_after
            );
        }
    }

    // Gap-based booster depth, checked against QPE and LT20.
    let gamma0 = reference_overlap(&h, 0, &cfg)?;
    let booster = BoosterGspModel::new(spec.gap, gamma0)?;
    let unit = DepthUnit::ControlledEvolutions;
    let cand = booster.candidate(1.0, unit.clone())?;
    println!(
        "\nbooster depth 1/(gap gamma0) = {:.4}",
        booster_depth_model(&booster)
    );
    let acc = Accuracy::new(1e-3)?;
    let reference = Reference::new(gamma0)?;
    for model in [GseeModel::qpe(), GseeModel::lt20()] {
        let v = verdict_with_reps(&model.clone().with_unit(unit.clone()), &cand, &reference, &acc)?;
        println!(
            "{:<5} accepted = {} (lhs {:.6}, rhs {:.6})",
            model.name(),
            v.accepted,
            v.lhs,
            v.rhs
        );
    }
    Ok(())
}
