//! Which GSEE algorithm is harder to please?
//!
//! Larger exponents reward overlap more, so a preparation accepted under
//! the low-exponent model is also accepted under QPE.
//!
//! Run with `cargo run --example strictness_comparison`.

use gspgate::criteria::Stricter;
use gspgate::{strictness_order, Accuracy, DepthUnit, GseeModel, GspCandidate, Reference};

fn main() -> gspgate::Result<()> {
    let qpe = GseeModel::qpe();
    let lt20 = GseeModel::lt20();
    let acc = Accuracy::new(1e-3)?;
    let hf = Reference::new(0.6)?;

    println!(
        "{:>8} {:>6}  {:>9} {:>9}  stricter",
        "depth", "gamma", "qpe", "lt20"
    );
    for &(depth, gamma) in &[
        (10.0, 0.7),
        (400.0, 0.7),
        (3000.0, 0.9),
        (3000.0, 0.55),
        (20000.0, 0.99),
    ] {
        let cand = GspCandidate::new("gsp", depth, gamma, DepthUnit::CircuitLayers)?;
        let report = strictness_order(&qpe, &lt20, &cand, &hf, &acc)?;
        let stricter = match report.stricter {
            Some(Stricter::A) => report.a.model.as_str(),
            Some(Stricter::B) => report.b.model.as_str(),
            Some(Stricter::Equal) => "equal",
            None => "neither",
        };
        let word = |ok: bool| if ok { "accept" } else { "reject" };
        println!(
            "{depth:>8} {gamma:>6}  {:>9} {:>9}  {stricter}",
            word(report.a.accepted),
            word(report.b.accepted)
        );
    }
    Ok(())
}
