//! Ground state, gap and reference overlap of a small qubit Hamiltonian,
//! solved densely and iteratively.
//!
//! Run with `cargo run --example spectral_overlap`.

use gspgate::spectral::{
    ground_state, overlap, pauli_to_hamiltonian, reference_overlap, PauliTerm, SolverKind, SpectralConfig,
    StateVector,
};

/// Open transverse-field Ising chain `-J sum Z_i Z_{i+1} - h sum X_i`.
fn ising(n: usize, j: f64, h: f64) -> Vec<PauliTerm> {
    let mut terms = Vec::new();
    for q in 0..n - 1 {
        terms.push(PauliTerm::new(-j, vec![('Z', q), ('Z', q + 1)]));
    }
    for q in 0..n {
        terms.push(PauliTerm::new(-h, vec![('X', q)]));
    }
    terms
}

fn main() -> gspgate::Result<()> {
    let n = 10;
    let h = pauli_to_hamiltonian(n, &ising(n, 1.0, 0.7), "hartree")?;
    println!("dimension {}", h.dim());

    for solver in [SolverKind::Dense, SolverKind::Iterative] {
        let cfg = SpectralConfig::default().with_solver(solver);
        let spec = ground_state(&h, &cfg)?;
        // All-zeros product state plays the mean-field reference.
        let gamma0 = reference_overlap(&h, 0, &cfg)?;
        println!(
            "{solver:?}: E0 = {:.10}, gap = {:.10}, degeneracy = {}, gamma0 = {:.8}",
            spec.e0,
            spec.gap,
            spec.degeneracy(),
            gamma0
        );
    }

    // Uniform superposition, the ground state of the field term alone.
    let spec = ground_state(&h, &SpectralConfig::default())?;
    let amp = 1.0 / (h.dim() as f64).sqrt();
    let plus = StateVector::new(vec![amp.into(); h.dim()].into())?;
    let ov = overlap(&plus, &spec)?;
    println!("|+...+>: gamma = {:.8}, eta = {:.8}", ov.gamma, ov.eta);
    Ok(())
}
