use nalgebra::DVector;
use num_complex::Complex64;

use super::hamiltonian::{Hamiltonian, StateVector};
use super::solver::dense_eigen;
use super::SpectralConfig;
use crate::error::{Error, Result};

/// Below this ground-space weight a filter cannot boost the state.
pub const MIN_GROUND_WEIGHT: f64 = 1e-12;

/// A positive, non-increasing function of energy applied as `f(H)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum FilterSpec {
    /// `exp(-(E - center)^2 / (2 width^2))`; non-increasing above `center`.
    Gaussian { center: f64, width: f64 },
    /// `exp(-rate (E - pivot))`.
    Exponential { pivot: f64, rate: f64 },
    /// 1 below `cutoff`, 0 at or above.
    Step { cutoff: f64 },
}

impl FilterSpec {
    pub fn gaussian(center: f64, width: f64) -> Result<Self> {
        finite("center", center)?;
        if !(width.is_finite() && width > 0.0) {
            return Err(Error::InvalidFilter(format!(
                "gaussian width must be > 0, got {width}"
            )));
        }
        Ok(FilterSpec::Gaussian { center, width })
    }

    pub fn exponential(pivot: f64, rate: f64) -> Result<Self> {
        finite("pivot", pivot)?;
        if !(rate.is_finite() && rate > 0.0) {
            return Err(Error::InvalidFilter(format!(
                "exponential rate must be > 0, got {rate}"
            )));
        }
        Ok(FilterSpec::Exponential { pivot, rate })
    }

    pub fn step(cutoff: f64) -> Result<Self> {
        finite("cutoff", cutoff)?;
        Ok(FilterSpec::Step { cutoff })
    }

    pub fn kind(&self) -> &'static str {
        match self {
            FilterSpec::Gaussian { .. } => "gaussian",
            FilterSpec::Exponential { .. } => "exponential",
            FilterSpec::Step { .. } => "step",
        }
    }

    /// `ln f(e)`; `-inf` where the filter vanishes.
    pub fn log_value(&self, e: f64) -> f64 {
        match *self {
            FilterSpec::Gaussian { center, width } => -(e - center).powi(2) / (2.0 * width * width),
            FilterSpec::Exponential { pivot, rate } => -rate * (e - pivot),
            FilterSpec::Step { cutoff } => {
                if e < cutoff {
                    0.0
                } else {
                    f64::NEG_INFINITY
                }
            }
        }
    }

    /// Checks monotonicity and positivity on `[e0, e_max]`.
    pub fn validate_on(&self, e0: f64) -> Result<()> {
        match *self {
            FilterSpec::Gaussian { center, .. } if center > e0 => Err(Error::InvalidFilter(format!(
                "gaussian center {center} lies above the ground energy {e0}; the filter would not be monotone"
            ))),
            FilterSpec::Step { cutoff } if cutoff <= e0 => Err(Error::InvalidFilter(format!(
                "step cutoff {cutoff} does not exceed the ground energy {e0}"
            ))),
            _ => Ok(()),
        }
    }
}

fn finite(name: &str, v: f64) -> Result<()> {
    if v.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidFilter(format!("{name} must be finite, got {v}")))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BoostResult {
    pub boosted: StateVector,
    pub gamma_before: f64,
    pub gamma_after: f64,
    pub e0: f64,
}

/// `normalize(f(H)^repeat |prepared>)`, computed in the eigenbasis of H.
///
/// Weights are taken relative to the ground energy, and the whole
/// (near-)degenerate ground space is given weight 1, so `gamma_after >=
/// gamma_before` for any valid filter.
pub fn boost_filter_repeated(
    h: &Hamiltonian,
    prepared: &StateVector,
    filter: &FilterSpec,
    repeat: u32,
    config: &SpectralConfig,
) -> Result<BoostResult> {
    if prepared.dim() != h.dim() {
        return Err(Error::DimensionMismatch {
            expected: h.dim(),
            found: prepared.dim(),
        });
    }
    if repeat == 0 {
        return Err(Error::InvalidFilter("repeat count must be at least 1".into()));
    }
    config.check_dense(h.dim())?;
    let eig = dense_eigen(h);
    let e0 = eig.values[0];
    filter.validate_on(e0)?;

    let coeffs = eig.vectors.ad_mul(prepared.amplitudes());
    let log0 = filter.log_value(e0);
    let in_ground: Vec<bool> = eig
        .values
        .iter()
        .map(|&e| e < e0 + config.degeneracy_tol)
        .collect();

    let ground_weight: f64 = coeffs
        .iter()
        .zip(&in_ground)
        .filter(|(_, &g)| g)
        .map(|(c, _)| c.norm_sqr())
        .sum();
    let gamma_before = ground_weight.sqrt().min(1.0);
    if gamma_before <= MIN_GROUND_WEIGHT {
        return Err(Error::ZeroProjection { gamma: gamma_before });
    }

    let scaled: DVector<Complex64> = DVector::from_fn(coeffs.len(), |k, _| {
        if in_ground[k] {
            coeffs[k]
        } else {
            let w = (f64::from(repeat) * (filter.log_value(eig.values[k]) - log0)).exp();
            coeffs[k] * w
        }
    });
    let total: f64 = scaled.norm_squared();
    let gamma_after = (ground_weight / total).sqrt().min(1.0);

    let boosted = &eig.vectors * scaled;
    let (boosted, _) = StateVector::normalize(boosted)?;
    Ok(BoostResult {
        boosted,
        gamma_before,
        gamma_after,
        e0,
    })
}

/// Single application of the filter.
pub fn boost_filter(
    h: &Hamiltonian,
    prepared: &StateVector,
    filter: &FilterSpec,
    config: &SpectralConfig,
) -> Result<BoostResult> {
    boost_filter_repeated(h, prepared, filter, 1, config)
}
