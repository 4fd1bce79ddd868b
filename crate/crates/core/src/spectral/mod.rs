//! Exact spectral oracle for small Hamiltonians: ground energy, gap,
//! ground-space overlaps and spectral-filter boosting.

mod filter;
mod hamiltonian;
pub mod io;
pub mod solver;

use nalgebra::DVector;
use num_complex::Complex64;

pub use filter::{boost_filter, boost_filter_repeated, BoostResult, FilterSpec, MIN_GROUND_WEIGHT};
pub use hamiltonian::{Hamiltonian, StateVector, NORM_TOL};
pub use io::{parse_hamiltonian, parse_state, pauli_to_hamiltonian, write_hamx, write_state, PauliTerm};
pub use solver::LanczosOptions;

use crate::error::{Error, Result};
use solver::{dense_eigen, lanczos_ground};

/// Environment variable overriding [`DEFAULT_MAX_DIM`].
pub const MAX_DIM_ENV: &str = "GSPGATE_MAX_DIM";
pub const DEFAULT_MAX_DIM: usize = 1 << 14;
/// Largest dimension solved densely under [`SolverKind::Auto`].
pub const DEFAULT_DENSE_LIMIT: usize = 1024;
pub const DEFAULT_DEGENERACY_TOL: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum SolverKind {
    /// Dense up to `dense_limit`, iterative above.
    #[default]
    Auto,
    Dense,
    Iterative,
}

impl std::str::FromStr for SolverKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "auto" => Ok(SolverKind::Auto),
            "dense" => Ok(SolverKind::Dense),
            "iterative" => Ok(SolverKind::Iterative),
            _ => Err(Error::parse(0, format!("unknown solver `{s}`"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SpectralConfig {
    pub max_dim: usize,
    pub dense_limit: usize,
    pub degeneracy_tol: f64,
    pub solver: SolverKind,
    pub lanczos: LanczosOptions,
}

impl Default for SpectralConfig {
    fn default() -> Self {
        SpectralConfig {
            max_dim: DEFAULT_MAX_DIM,
            dense_limit: DEFAULT_DENSE_LIMIT,
            degeneracy_tol: DEFAULT_DEGENERACY_TOL,
            solver: SolverKind::Auto,
            lanczos: LanczosOptions::default(),
        }
    }
}

impl SpectralConfig {
    /// Defaults with `max_dim` taken from `GSPGATE_MAX_DIM` when set.
    pub fn from_env() -> Result<Self> {
        let mut cfg = SpectralConfig::default();
        if let Ok(raw) = std::env::var(MAX_DIM_ENV) {
            cfg.max_dim = raw
                .trim()
                .parse()
                .map_err(|_| Error::Io(format!("{MAX_DIM_ENV}={raw} is not a positive integer")))?;
        }
        Ok(cfg)
    }

    pub fn with_solver(mut self, solver: SolverKind) -> Self {
        self.solver = solver;
        self
    }

    pub fn with_degeneracy_tol(mut self, tol: f64) -> Self {
        self.degeneracy_tol = tol;
        self
    }

    fn check_dim(&self, dim: usize) -> Result<()> {
        if dim > self.max_dim {
            Err(Error::Resource {
                dim,
                limit: self.max_dim,
            })
        } else {
            Ok(())
        }
    }

    pub(crate) fn check_dense(&self, dim: usize) -> Result<()> {
        self.check_dim(dim)?;
        if dim > self.dense_limit {
            Err(Error::Resource {
                dim,
                limit: self.dense_limit,
            })
        } else {
            Ok(())
        }
    }

    fn use_dense(&self, dim: usize) -> bool {
        match self.solver {
            SolverKind::Dense => true,
            SolverKind::Iterative => false,
            SolverKind::Auto => dim <= self.dense_limit,
        }
    }
}

/// Ground energy, gap and an orthonormal basis of the ground space.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralResult {
    pub e0: f64,
    /// `E1 - E0` where `E1` is the lowest eigenvalue outside the ground
    /// space; 0 when the ground space is the whole space.
    pub gap: f64,
    pub ground_subspace: Vec<DVector<Complex64>>,
    pub degeneracy_tol: f64,
    pub dense: bool,
}

impl SpectralResult {
    pub fn dim(&self) -> usize {
        self.ground_subspace.first().map_or(0, |v| v.len())
    }

    pub fn degeneracy(&self) -> usize {
        self.ground_subspace.len()
    }
}

pub fn ground_state(h: &Hamiltonian, config: &SpectralConfig) -> Result<SpectralResult> {
    config.check_dim(h.dim())?;
    let tol = config.degeneracy_tol;
    if !(tol.is_finite() && tol >= 0.0) {
        return Err(Error::domain("degeneracy_tol", tol, "must be finite and >= 0"));
    }
    if config.use_dense(h.dim()) {
        let eig = dense_eigen(h);
        let e0 = eig.values[0];
        let k = eig.values.iter().take_while(|&&e| e < e0 + tol).count().max(1);
        let gap = eig.values.get(k).map_or(0.0, |e1| e1 - e0);
        Ok(SpectralResult {
            e0,
            gap,
            ground_subspace: (0..k).map(|i| eig.vectors.column(i).into_owned()).collect(),
            degeneracy_tol: tol,
            dense: true,
        })
    } else {
        let res = lanczos_ground(h, tol, &config.lanczos)?;
        let e0 = res.ground.iter().map(|(e, _)| *e).fold(f64::INFINITY, f64::min);
        let gap = res.next.map_or(0.0, |e1| (e1 - e0).max(0.0));
        Ok(SpectralResult {
            e0,
            gap,
            ground_subspace: res.ground.into_iter().map(|(_, v)| v).collect(),
            degeneracy_tol: tol,
            dense: false,
        })
    }
}

/// Overlap amplitude and probability of `prepared` with the ground space.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Overlap {
    pub gamma: f64,
    pub eta: f64,
}

pub fn overlap(prepared: &StateVector, spec: &SpectralResult) -> Result<Overlap> {
    if prepared.dim() != spec.dim() {
        return Err(Error::DimensionMismatch {
            expected: spec.dim(),
            found: prepared.dim(),
        });
    }
    let weight: f64 = spec
        .ground_subspace
        .iter()
        .map(|v| v.dotc(prepared.amplitudes()).norm_sqr())
        .sum();
    let gamma = weight.sqrt().min(1.0);
    Ok(Overlap {
        gamma,
        eta: gamma * gamma,
    })
}

/// Overlap of the computational basis state `|basis_index>` with the
/// ground space of `h`.
pub fn reference_overlap(h: &Hamiltonian, basis_index: usize, config: &SpectralConfig) -> Result<f64> {
    let state = StateVector::basis(h.dim(), basis_index)?;
    let spec = ground_state(h, config)?;
    Ok(overlap(&state, &spec)?.gamma)
}
