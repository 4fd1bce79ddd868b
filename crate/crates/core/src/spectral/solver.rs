//! Ground-state eigensolvers.
//!
//! The dense path diagonalizes the full matrix. The iterative path runs
//! Lanczos with full reorthogonalization and explicit restarts, touching the
//! Hamiltonian only through matrix-vector products. Degenerate ground
//! spaces are found by locking converged vectors and re-running Lanczos on
//! their orthogonal complement until an eigenvalue above the degeneracy
//! window appears.

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::hamiltonian::Hamiltonian;
use crate::error::{Error, Result};

/// Full eigendecomposition, eigenvalues ascending, eigenvectors as columns.
pub struct DenseEigen {
    pub values: Vec<f64>,
    pub vectors: DMatrix<Complex64>,
}

pub fn dense_eigen(h: &Hamiltonian) -> DenseEigen {
    let n = h.dim();
    let (values, vectors) = if h.is_real() {
        let mut m = DMatrix::<f64>::zeros(n, n);
        for &(r, c, v) in h.entries() {
            m[(r, c)] = v.re;
            m[(c, r)] = v.re;
        }
        let eig = SymmetricEigen::new(m);
        (eig.eigenvalues, eig.eigenvectors.map(|x| Complex64::new(x, 0.0)))
    } else {
        let eig = SymmetricEigen::new(h.to_dense());
        (eig.eigenvalues, eig.eigenvectors)
    };
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| values[a].total_cmp(&values[b]));
    DenseEigen {
        values: order.iter().map(|&i| values[i]).collect(),
        vectors: DMatrix::from_fn(n, n, |r, c| vectors[(r, order[c])]),
    }
}

/// Tuning for the iterative path.
#[derive(Debug, Clone, PartialEq)]
pub struct LanczosOptions {
    /// Krylov subspace size per restart cycle.
    pub krylov_dim: usize,
    /// Residual tolerance relative to the norm bound of H.
    pub tol: f64,
    pub max_restarts: usize,
    /// Seed of the start vector.
    pub seed: u64,
}

impl Default for LanczosOptions {
    fn default() -> Self {
        LanczosOptions {
            krylov_dim: 120,
            tol: 1e-11,
            max_restarts: 500,
            seed: 0x5eed,
        }
    }
}

fn inner(a: &DVector<Complex64>, b: &DVector<Complex64>) -> Complex64 {
    a.dotc(b)
}

fn project_out(w: &mut DVector<Complex64>, basis: &[DVector<Complex64>]) {
    for v in basis {
        let c = inner(v, w);
        w.axpy(-c, v, Complex64::new(1.0, 0.0));
    }
}

struct Ritz {
    value: f64,
    vector: DVector<Complex64>,
}

/// Lowest eigenpair of H restricted to the complement of `locked`.
fn lowest_eigenpair(
    h: &Hamiltonian,
    locked: &[DVector<Complex64>],
    start: DVector<Complex64>,
    opts: &LanczosOptions,
    norm: f64,
) -> Result<Ritz> {
    let n = h.dim();
    let free = n - locked.len();
    let m = opts.krylov_dim.max(2).min(free);
    let tol = opts.tol * norm;
    let breakdown = 1e-14 * norm.max(f64::MIN_POSITIVE);
    let one = Complex64::new(1.0, 0.0);

    let apply = |x: &DVector<Complex64>| {
        let mut y = h.matvec(x);
        project_out(&mut y, locked);
        y
    };

    let mut start = start;
    let mut residual = f64::INFINITY;
    for _ in 0..=opts.max_restarts {
        project_out(&mut start, locked);
        project_out(&mut start, locked);
        let s_norm = start.norm();
        if s_norm == 0.0 {
            return Err(Error::NonConvergence {
                restarts: 0,
                residual: f64::NAN,
            });
        }
        let mut basis: Vec<DVector<Complex64>> = vec![start.unscale(s_norm)];
        let mut alphas: Vec<f64> = Vec::with_capacity(m);
        let mut betas: Vec<f64> = Vec::with_capacity(m);
        let mut exhausted = false;

        for j in 0..m {
            let mut w = apply(&basis[j]);
            let a = inner(&basis[j], &w).re;
            alphas.push(a);
            w.axpy(Complex64::new(-a, 0.0), &basis[j], one);
            if j > 0 {
                w.axpy(Complex64::new(-betas[j - 1], 0.0), &basis[j - 1], one);
            }
            // Two passes of classical Gram-Schmidt against everything kept.
            for _ in 0..2 {
                project_out(&mut w, &basis);
                project_out(&mut w, locked);
            }
            let b = w.norm();
            if j + 1 == m {
                break;
            }
            if b < breakdown {
                exhausted = true;
                break;
            }
            betas.push(b);
            basis.push(w.unscale(b));
        }

        let k = alphas.len();
        let t = DMatrix::<f64>::from_fn(k, k, |r, c| {
            if r == c {
                alphas[r]
            } else if r + 1 == c {
                betas[r]
            } else if c + 1 == r {
                betas[c]
            } else {
                0.0
            }
        });
        let eig = SymmetricEigen::new(t);
        let idx = (0..k)
            .min_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]))
            .unwrap_or(0);
        let theta = eig.eigenvalues[idx];
        let y = eig.eigenvectors.column(idx);
        let mut x = DVector::<Complex64>::zeros(n);
        for (i, v) in basis.iter().take(k).enumerate() {
            x.axpy(Complex64::new(y[i], 0.0), v, one);
        }
        project_out(&mut x, locked);
        let x_norm = x.norm();
        x.unscale_mut(x_norm);

        let mut r = apply(&x);
        r.axpy(Complex64::new(-theta, 0.0), &x, one);
        residual = r.norm();
        if residual <= tol || exhausted || k == free {
            return Ok(Ritz {
                value: theta,
                vector: x,
            });
        }
        start = x;
    }
    Err(Error::NonConvergence {
        restarts: opts.max_restarts,
        residual,
    })
}

/// Eigenpairs found by the iterative path: every vector in the degeneracy
/// window plus the first eigenvalue above it (when one exists).
pub struct IterativeResult {
    pub ground: Vec<(f64, DVector<Complex64>)>,
    pub next: Option<f64>,
}

pub fn lanczos_ground(
    h: &Hamiltonian,
    degeneracy_tol: f64,
    opts: &LanczosOptions,
) -> Result<IterativeResult> {
    let n = h.dim();
    let norm = h.norm_bound();
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut random_start = || {
        DVector::from_fn(n, |_, _| {
            Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))
        })
    };

    let mut found: Vec<(f64, DVector<Complex64>)> = Vec::new();
    let mut locked: Vec<DVector<Complex64>> = Vec::new();
    loop {
        if locked.len() == n {
            break;
        }
        let ritz = lowest_eigenpair(h, &locked, random_start(), opts, norm)?;
        let e0 = found.iter().map(|(e, _)| *e).fold(ritz.value, f64::min);
        locked.push(ritz.vector.clone());
        found.push((ritz.value, ritz.vector));
        if ritz.value >= e0 + degeneracy_tol {
            break;
        }
    }

    let e0 = found.iter().map(|(e, _)| *e).fold(f64::INFINITY, f64::min);
    let (ground, above): (Vec<_>, Vec<_>) = found.into_iter().partition(|(e, _)| *e < e0 + degeneracy_tol);
    let next = above.iter().map(|(e, _)| *e).reduce(f64::min);
    Ok(IterativeResult { ground, next })
}
