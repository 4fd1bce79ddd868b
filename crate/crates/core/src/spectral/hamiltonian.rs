use std::collections::HashSet;

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::error::{Error, Result};

/// Sparse Hermitian operator stored as its upper triangle.
///
/// The lower triangle is never stored; it is always the conjugate of the
/// upper one, so the assembled matrix is Hermitian exactly.
#[derive(Debug, Clone, PartialEq)]
pub struct Hamiltonian {
    dim: usize,
    entries: Vec<(usize, usize, Complex64)>,
    energy_unit: String,
    // Full (both triangles) CSR for matrix-vector products.
    row_ptr: Vec<usize>,
    col_idx: Vec<usize>,
    values: Vec<Complex64>,
}

impl Hamiltonian {
    /// Builds from `(row, col, value)` triples with `row <= col`.
    ///
    /// Diagonal values must be real. Entry positions must be unique.
    pub fn from_entries(
        dim: usize,
        entries: Vec<(usize, usize, Complex64)>,
        energy_unit: impl Into<String>,
    ) -> Result<Self> {
        if dim == 0 {
            return Err(Error::domain("dim", 0.0, "must be positive"));
        }
        let mut seen = HashSet::with_capacity(entries.len());
        for (i, &(r, c, v)) in entries.iter().enumerate() {
            check_entry(dim, r, c, v).map_err(|e| e.at_line(i + 1))?;
            if !seen.insert((r, c)) {
                return Err(Error::Parse {
                    line: i + 1,
                    message: format!("duplicate entry ({r}, {c})"),
                });
            }
        }
        let mut entries = entries;
        entries.sort_by_key(|&(r, c, _)| (r, c));
        Ok(Self::assemble(dim, entries, energy_unit.into()))
    }

    // Entries already validated and sorted.
    fn assemble(dim: usize, entries: Vec<(usize, usize, Complex64)>, energy_unit: String) -> Self {
        let mut rows: Vec<Vec<(usize, Complex64)>> = vec![Vec::new(); dim];
        for &(r, c, v) in &entries {
            rows[r].push((c, v));
            if r != c {
                rows[c].push((r, v.conj()));
            }
        }
        let mut row_ptr = Vec::with_capacity(dim + 1);
        let mut col_idx = Vec::new();
        let mut values = Vec::new();
        row_ptr.push(0);
        for mut row in rows {
            row.sort_by_key(|&(c, _)| c);
            for (c, v) in row {
                col_idx.push(c);
                values.push(v);
            }
            row_ptr.push(col_idx.len());
        }
        Hamiltonian {
            dim,
            entries,
            energy_unit,
            row_ptr,
            col_idx,
            values,
        }
    }

    /// Upper-triangular Hermitian from a dense matrix; the lower triangle
    /// is ignored.
    pub fn from_dense_upper(m: &DMatrix<Complex64>, energy_unit: impl Into<String>) -> Result<Self> {
        if m.nrows() != m.ncols() {
            return Err(Error::DimensionMismatch {
                expected: m.nrows(),
                found: m.ncols(),
            });
        }
        let mut entries = Vec::new();
        for r in 0..m.nrows() {
            for c in r..m.ncols() {
                let mut v = m[(r, c)];
                if r == c {
                    v.im = 0.0;
                }
                if v != Complex64::new(0.0, 0.0) {
                    entries.push((r, c, v));
                }
            }
        }
        Self::from_entries(m.nrows(), entries, energy_unit)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn energy_unit(&self) -> &str {
        &self.energy_unit
    }

    /// Upper-triangle entries sorted by `(row, col)`.
    pub fn entries(&self) -> &[(usize, usize, Complex64)] {
        &self.entries
    }

    pub fn is_real(&self) -> bool {
        self.entries.iter().all(|(_, _, v)| v.im == 0.0)
    }

    pub fn matvec(&self, x: &DVector<Complex64>) -> DVector<Complex64> {
        debug_assert_eq!(x.len(), self.dim);
        DVector::from_fn(self.dim, |r, _| {
            let (lo, hi) = (self.row_ptr[r], self.row_ptr[r + 1]);
            self.col_idx[lo..hi]
                .iter()
                .zip(&self.values[lo..hi])
                .map(|(&c, &v)| v * x[c])
                .sum()
        })
    }

    pub fn to_dense(&self) -> DMatrix<Complex64> {
        let mut m = DMatrix::zeros(self.dim, self.dim);
        for &(r, c, v) in &self.entries {
            m[(r, c)] = v;
            m[(c, r)] = v.conj();
        }
        m
    }

    /// Maximum absolute row sum, an upper bound on the spectral norm.
    pub fn norm_bound(&self) -> f64 {
        (0..self.dim)
            .map(|r| {
                self.values[self.row_ptr[r]..self.row_ptr[r + 1]]
                    .iter()
                    .map(|v| v.norm())
                    .sum::<f64>()
            })
            .fold(0.0, f64::max)
    }
}

fn check_entry(dim: usize, r: usize, c: usize, v: Complex64) -> Result<()> {
    if r >= dim {
        return Err(Error::IndexOutOfRange { index: r, dim });
    }
    if c >= dim {
        return Err(Error::IndexOutOfRange { index: c, dim });
    }
    if r > c {
        return Err(Error::Hermiticity(format!(
            "lower-triangle entry ({r}, {c}); only row <= col may be given"
        )));
    }
    if r == c && v.im != 0.0 {
        return Err(Error::Hermiticity(format!(
            "diagonal entry ({r}, {r}) has imaginary part {}",
            v.im
        )));
    }
    if !(v.re.is_finite() && v.im.is_finite()) {
        return Err(Error::domain("entry", v.re, "must be finite"));
    }
    Ok(())
}

/// A normalized state vector.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    amplitudes: DVector<Complex64>,
}

/// Tolerance on `| ||psi|| - 1 |` accepted by [`StateVector::new`].
pub const NORM_TOL: f64 = 1e-10;

impl StateVector {
    /// Wraps amplitudes that are already normalized.
    pub fn new(amplitudes: DVector<Complex64>) -> Result<Self> {
        if amplitudes.is_empty() {
            return Err(Error::domain("dim", 0.0, "must be positive"));
        }
        let norm = amplitudes.norm();
        if (norm - 1.0).abs() > NORM_TOL {
            return Err(Error::domain("norm", norm, "state must be normalized"));
        }
        Ok(StateVector { amplitudes })
    }

    /// Rescales to unit norm and returns the original norm.
    pub fn normalize(amplitudes: DVector<Complex64>) -> Result<(Self, f64)> {
        if amplitudes.is_empty() {
            return Err(Error::domain("dim", 0.0, "must be positive"));
        }
        let norm = amplitudes.norm();
        if norm == 0.0 || !norm.is_finite() {
            return Err(Error::ZeroNorm);
        }
        Ok((
            StateVector {
                amplitudes: amplitudes / Complex64::new(norm, 0.0),
            },
            norm,
        ))
    }

    /// Computational basis state `|index>`.
    pub fn basis(dim: usize, index: usize) -> Result<Self> {
        if index >= dim {
            return Err(Error::IndexOutOfRange { index, dim });
        }
        let mut v = DVector::zeros(dim);
        v[index] = Complex64::new(1.0, 0.0);
        Ok(StateVector { amplitudes: v })
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &DVector<Complex64> {
        &self.amplitudes
    }
}
