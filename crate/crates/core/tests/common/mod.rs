//! Random instances shared by the integration test targets.

#![allow(dead_code)]

use gspgate::spectral::{pauli_to_hamiltonian, Hamiltonian, PauliTerm, StateVector};
use nalgebra::DVector;
use num_complex::Complex64;
use rand::Rng;

pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// Dense complex Hermitian matrix with uniform entries in [-1, 1].
pub fn dense_hermitian<R: Rng>(rng: &mut R, dim: usize) -> Hamiltonian {
    let mut entries = Vec::with_capacity(dim * (dim + 1) / 2);
    for r in 0..dim {
        entries.push((r, r, c(rng.random_range(-1.0..1.0), 0.0)));
        for col in r + 1..dim {
            entries.push((
                r,
                col,
                c(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)),
            ));
        }
    }
    Hamiltonian::from_entries(dim, entries, "hartree").expect("valid by construction")
}

/// Sparse real symmetric matrix with a few couplings per row.
pub fn sparse_real<R: Rng>(rng: &mut R, dim: usize) -> Hamiltonian {
    let mut entries = Vec::new();
    for r in 0..dim {
        entries.push((r, r, c(rng.random_range(-2.0..2.0), 0.0)));
    }
    let mut seen = std::collections::HashSet::new();
    for _ in 0..3 * dim {
        let a = rng.random_range(0..dim);
        let b = rng.random_range(0..dim);
        let (r, col) = (a.min(b), a.max(b));
        if r != col && seen.insert((r, col)) {
            entries.push((r, col, c(rng.random_range(-1.0..1.0), 0.0)));
        }
    }
    Hamiltonian::from_entries(dim, entries, "hartree").expect("valid by construction")
}

/// Random sum of Pauli strings on `qubits` qubits; may have degenerate
/// ground spaces.
pub fn pauli_sum<R: Rng>(rng: &mut R, qubits: usize) -> Hamiltonian {
    let ops = ['X', 'Y', 'Z'];
    let n_terms = rng.random_range(2..=3 * qubits);
    let mut terms = Vec::with_capacity(n_terms);
    for _ in 0..n_terms {
        let mut factors = Vec::new();
        for q in 0..qubits {
            if rng.random_bool(0.4) {
                factors.push((ops[rng.random_range(0..3)], q));
            }
        }
        terms.push(PauliTerm::new(rng.random_range(-1.0..1.0), factors));
    }
    pauli_to_hamiltonian(qubits, &terms, "hartree").expect("valid by construction")
}

/// One of the three families above, with dimension at most `max_dim`.
pub fn random_hamiltonian<R: Rng>(rng: &mut R, max_dim: usize) -> Hamiltonian {
    let kind = rng.random_range(0..3);
    let dim = rng.random_range(2..=max_dim);
    let qubits = rng.random_range(1..=max_dim.ilog2() as usize);
    match kind {
        0 => dense_hermitian(rng, dim),
        1 => sparse_real(rng, dim),
        _ => pauli_sum(rng, qubits),
    }
}

/// Haar-like random state (normalized complex Gaussian-ish amplitudes).
pub fn random_state<R: Rng>(rng: &mut R, dim: usize) -> StateVector {
    let v = DVector::from_fn(dim, |_, _| {
        c(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))
    });
    StateVector::normalize(v).expect("nonzero with probability 1").0
}
