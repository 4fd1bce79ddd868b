//! Decide whether a ground-state preparation (GSP) method is worth its
//! circuit depth for ground-state energy estimation (GSEE), compared with a
//! zero-depth reference state such as Hartree-Fock.
//!
//! - [`runtime_model`]: GSEE runtime models and the algorithm catalog.
//! - [`criteria`]: acceptability verdicts and maximum acceptable depths.
//! - [`spectral`]: exact ground states, overlaps and spectral filters for
//!   small Hamiltonians.
//! - [`scenario`]: scenario tables, sweeps and report output.
//! - [`cli`]: the `gspgate` command-line front end.
//!
//! ```
//! use gspgate::{verdict_with_reps, Accuracy, DepthUnit, GseeModel, GspCandidate, Reference};
//!
//! let cand = GspCandidate::new("spa", 3.0, 0.85, DepthUnit::CircuitLayers)?;
//! let v = verdict_with_reps(&GseeModel::lt20(), &cand, &Reference::new(0.72)?, &Accuracy::new(1e-3)?)?;
//! assert!(v.accepted && v.lhs < v.rhs);
//! # Ok::<(), gspgate::Error>(())
//! ```

pub mod cli;
pub mod criteria;
pub mod error;
pub mod fixtures;
pub mod format;
pub mod runtime_model;
pub mod scenario;
pub mod spectral;
mod warning;

pub use criteria::{
    booster_depth_model, max_depth, max_depth_strict, strictness_order, verdict_general, verdict_simplified,
    verdict_with_reps, BoosterGspModel, DepthBound, Regime, Verdict,
};
pub use error::{Error, Result};
pub use runtime_model::{
    catalog, runtime_reference, runtime_total, runtime_with_reps, Accuracy, DepthUnit, GseeModel,
    GspCandidate, Reference,
};
pub use warning::Warning;
