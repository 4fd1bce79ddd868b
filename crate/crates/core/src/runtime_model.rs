//! Runtime models for ground-state energy estimation (GSEE).
//!
//! A GSEE algorithm is characterised by two exponents: `alpha` governs how
//! many repetitions a low overlap forces (`1/gamma^alpha`), `beta` governs
//! the depth of each run (`1/(eps * gamma^beta)`). Constant factors and
//! logarithms are dropped; [`GseeModel::prefactor`] exists so a calibrated
//! constant can be attached later without changing any criterion, since it
//! cancels in every ratio.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};

/// Unit in which GSP and GSEE depths are counted. Both sides of a
/// comparison must use the same unit.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub enum DepthUnit {
    #[default]
    CircuitLayers,
    ControlledEvolutions,
    TCount,
    Custom(String),
}

impl DepthUnit {
    pub fn as_str(&self) -> &str {
        match self {
            DepthUnit::CircuitLayers => "circuit-layers",
            DepthUnit::ControlledEvolutions => "controlled-evolutions",
            DepthUnit::TCount => "t-count",
            DepthUnit::Custom(tag) => tag,
        }
    }
}

impl fmt::Display for DepthUnit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DepthUnit::Custom(tag) => write!(f, "custom:{tag}"),
            other => f.write_str(other.as_str()),
        }
    }
}

impl FromStr for DepthUnit {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        match s {
            "circuit-layers" => Ok(DepthUnit::CircuitLayers),
            "controlled-evolutions" => Ok(DepthUnit::ControlledEvolutions),
            "t-count" => Ok(DepthUnit::TCount),
            _ => match s.strip_prefix("custom:") {
                Some(tag) if !tag.is_empty() => Ok(DepthUnit::Custom(tag.to_string())),
                _ => Err(Error::UnknownUnit(s.to_string())),
            },
        }
    }
}

impl Serialize for DepthUnit {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Exponents and depth unit of a GSEE algorithm.
#[derive(Debug, Clone, PartialEq)]
pub struct GseeModel {
    name: String,
    alpha: f64,
    beta: f64,
    depth_unit: DepthUnit,
    prefactor: f64,
}

impl GseeModel {
    /// User-defined model. Any finite `alpha, beta >= 0` is allowed.
    pub fn new(name: impl Into<String>, alpha: f64, beta: f64, depth_unit: DepthUnit) -> Result<Self> {
        check_exponent("alpha", alpha)?;
        check_exponent("beta", beta)?;
        Ok(GseeModel {
            name: name.into(),
            alpha,
            beta,
            depth_unit,
            prefactor: 1.0,
        })
    }

    /// Semi-classical quantum phase estimation, `alpha = beta = 2`.
    pub fn qpe() -> Self {
        GseeModel {
            name: "qpe".into(),
            alpha: 2.0,
            beta: 2.0,
            depth_unit: DepthUnit::CircuitLayers,
            prefactor: 1.0,
        }
    }

    /// Lin-Tong early fault-tolerant estimator, `alpha = 0, beta = 1`.
    pub fn lt20() -> Self {
        GseeModel {
            name: "lt20".into(),
            alpha: 0.0,
            beta: 1.0,
            depth_unit: DepthUnit::CircuitLayers,
            prefactor: 1.0,
        }
    }

    /// Looks up a catalog entry by (case-insensitive) name.
    pub fn from_catalog(name: &str) -> Result<Self> {
        catalog()
            .into_iter()
            .find(|m| m.name.eq_ignore_ascii_case(name.trim()))
            .ok_or_else(|| Error::UnknownModel(name.to_string()))
    }

    pub fn with_unit(mut self, unit: DepthUnit) -> Self {
        self.depth_unit = unit;
        self
    }

    pub fn with_prefactor(mut self, prefactor: f64) -> Result<Self> {
        if !(prefactor.is_finite() && prefactor > 0.0) {
            return Err(Error::domain("prefactor", prefactor, "must be finite and > 0"));
        }
        self.prefactor = prefactor;
        Ok(self)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub fn exponent_sum(&self) -> f64 {
        self.alpha + self.beta
    }

    pub fn depth_unit(&self) -> &DepthUnit {
        &self.depth_unit
    }

    pub fn prefactor(&self) -> f64 {
        self.prefactor
    }
}

fn check_exponent(name: &'static str, v: f64) -> Result<()> {
    if v.is_finite() && v >= 0.0 {
        Ok(())
    } else {
        Err(Error::domain(name, v, "must be finite and >= 0"))
    }
}

/// Built-in GSEE algorithms.
pub fn catalog() -> Vec<GseeModel> {
    vec![GseeModel::qpe(), GseeModel::lt20()]
}

/// A ground-state preparation method: its depth, achieved overlap
/// amplitude and success probability.
#[derive(Debug, Clone, PartialEq)]
pub struct GspCandidate {
    name: String,
    depth: f64,
    gamma: f64,
    p_succ: f64,
    depth_unit: DepthUnit,
    depth_inferred: bool,
}

impl GspCandidate {
    pub fn new(name: impl Into<String>, depth: f64, gamma: f64, depth_unit: DepthUnit) -> Result<Self> {
        if !(depth.is_finite() && depth >= 0.0) {
            return Err(Error::domain("depth", depth, "must be finite and >= 0"));
        }
        check_overlap("gamma", gamma)?;
        Ok(GspCandidate {
            name: name.into(),
            depth,
            gamma,
            p_succ: 1.0,
            depth_unit,
            depth_inferred: false,
        })
    }

    /// Marks the depth as model-derived rather than measured; verdicts on
    /// this candidate carry an `inferred-booster-depth` warning.
    pub fn with_inferred_depth(mut self) -> Self {
        self.depth_inferred = true;
        self
    }

    pub fn with_p_succ(mut self, p_succ: f64) -> Result<Self> {
        check_probability("p_succ", p_succ)?;
        self.p_succ = p_succ;
        Ok(self)
    }

    pub fn with_depth(mut self, depth: f64) -> Result<Self> {
        if !(depth.is_finite() && depth >= 0.0) {
            return Err(Error::domain("depth", depth, "must be finite and >= 0"));
        }
        self.depth = depth;
        self.depth_inferred = false;
        Ok(self)
    }

    pub fn with_gamma(mut self, gamma: f64) -> Result<Self> {
        check_overlap("gamma", gamma)?;
        self.gamma = gamma;
        Ok(self)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn depth(&self) -> f64 {
        self.depth
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    pub fn p_succ(&self) -> f64 {
        self.p_succ
    }

    pub fn depth_unit(&self) -> &DepthUnit {
        &self.depth_unit
    }

    pub fn depth_inferred(&self) -> bool {
        self.depth_inferred
    }
}

/// Zero-depth reference preparation (e.g. Hartree-Fock) with overlap `gamma0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Reference {
    gamma0: f64,
}

impl Reference {
    pub fn new(gamma0: f64) -> Result<Self> {
        check_overlap("gamma0", gamma0)?;
        Ok(Reference { gamma0 })
    }

    pub fn gamma0(&self) -> f64 {
        self.gamma0
    }

    /// Always zero.
    pub fn depth(&self) -> f64 {
        0.0
    }
}

/// Target energy accuracy.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Accuracy {
    epsilon: f64,
}

impl Accuracy {
    pub fn new(epsilon: f64) -> Result<Self> {
        if !(epsilon.is_finite() && epsilon > 0.0) {
            return Err(Error::domain("epsilon", epsilon, "must be finite and > 0"));
        }
        Ok(Accuracy { epsilon })
    }

    pub fn epsilon(&self) -> f64 {
        self.epsilon
    }
}

pub(crate) fn check_overlap(name: &'static str, v: f64) -> Result<()> {
    if v > 0.0 && v <= 1.0 {
        Ok(())
    } else {
        Err(Error::domain(name, v, "must lie in (0, 1]"))
    }
}

pub(crate) fn check_probability(name: &'static str, v: f64) -> Result<()> {
    if v > 0.0 && v <= 1.0 {
        Ok(())
    } else {
        Err(Error::domain(name, v, "must lie in (0, 1]"))
    }
}

pub(crate) fn check_units(model: &GseeModel, cand: &GspCandidate) -> Result<()> {
    if model.depth_unit == cand.depth_unit {
        Ok(())
    } else {
        Err(Error::UnitMismatch {
            gsee: model.depth_unit.to_string(),
            gsp: cand.depth_unit.to_string(),
        })
    }
}

/// Depth of one GSEE run, `1/(eps * gamma^beta)`.
pub fn gsee_depth(model: &GseeModel, acc: &Accuracy, gamma: f64) -> Result<f64> {
    check_overlap("gamma", gamma)?;
    Ok(1.0 / (acc.epsilon * gamma.powf(model.beta)))
}

/// Number of GSEE repetitions forced by the overlap, `1/gamma^alpha`.
pub fn repetitions(model: &GseeModel, gamma: f64) -> Result<f64> {
    check_overlap("gamma", gamma)?;
    Ok(1.0 / gamma.powf(model.alpha))
}

// Shared by every runtime so that the reference and the D = 0 candidate at
// gamma = gamma0 go through the same floating-point operations.
fn runtime_core(model: &GseeModel, acc: &Accuracy, gamma: f64, gsp_cost: f64) -> Result<f64> {
    let reps = repetitions(model, gamma)?;
    let per_run = gsp_cost + gsee_depth(model, acc, gamma)?;
    Ok(model.prefactor * reps * per_run)
}

/// `(1/gamma^alpha) * (D + 1/(eps * gamma^beta))`; GSP repetitions ignored.
pub fn runtime_total(model: &GseeModel, cand: &GspCandidate, acc: &Accuracy) -> Result<f64> {
    check_units(model, cand)?;
    runtime_core(model, acc, cand.gamma, cand.depth)
}

/// `1/(eps * gamma0^(alpha+beta))`.
pub fn runtime_reference(model: &GseeModel, reference: &Reference, acc: &Accuracy) -> Result<f64> {
    runtime_core(model, acc, reference.gamma0, 0.0)
}

/// `(1/gamma^alpha) * (D/P_succ + 1/(eps * gamma^beta))`.
pub fn runtime_with_reps(model: &GseeModel, cand: &GspCandidate, acc: &Accuracy) -> Result<f64> {
    check_units(model, cand)?;
    runtime_core(model, acc, cand.gamma, cand.depth / cand.p_succ)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn model(alpha: f64, beta: f64) -> GseeModel {
        GseeModel::new("m", alpha, beta, DepthUnit::CircuitLayers).unwrap()
    }

    fn cand(depth: f64, gamma: f64) -> GspCandidate {
        GspCandidate::new("c", depth, gamma, DepthUnit::CircuitLayers).unwrap()
    }

    fn acc(eps: f64) -> Accuracy {
        Accuracy::new(eps).unwrap()
    }

    #[test]
    fn gsee_depth_examples() {
        assert_eq!(gsee_depth(&model(0.0, 1.0), &acc(1e-3), 1.0).unwrap(), 1000.0);
        assert_relative_eq!(
            gsee_depth(&model(0.0, 0.0), &acc(0.0016), 0.3).unwrap(),
            625.0,
            max_relative = 1e-12
        );
        // 1 / (1e-3 * 0.25)
        assert_relative_eq!(
            gsee_depth(&model(0.0, 2.0), &acc(1e-3), 0.5).unwrap(),
            4000.0,
            max_relative = 1e-12
        );
    }

    #[test]
    fn repetitions_examples() {
        assert_eq!(repetitions(&model(2.0, 0.0), 0.5).unwrap(), 4.0);
        assert_eq!(repetitions(&model(0.0, 0.0), 0.3).unwrap(), 1.0);
        // 1 / 0.72^4 = 1 / 0.26873856
        assert_relative_eq!(
            repetitions(&model(4.0, 0.0), 0.72).unwrap(),
            3.721089,
            max_relative = 1e-6
        );
    }

    #[test]
    fn runtime_total_examples() {
        assert_eq!(
            runtime_total(&model(0.0, 1.0), &cand(0.0, 1.0), &acc(1e-3)).unwrap(),
            1000.0
        );
        // (1/0.5184) * (1000 + 1/(1e-3 * 0.5184))
        let expected = (1000.0 + 1929.012345679) / 0.5184;
        assert_relative_eq!(
            runtime_total(&model(2.0, 2.0), &cand(1e3, 0.72), &acc(1e-3)).unwrap(),
            expected,
            max_relative = 1e-9
        );
        assert_relative_eq!(expected, 5650.3, max_relative = 1e-4);
        assert_relative_eq!(
            runtime_total(&model(0.0, 1.0), &cand(1e3, 1.0), &acc(5e-5)).unwrap(),
            21000.0,
            max_relative = 1e-12
        );
    }

    #[test]
    fn runtime_reference_examples() {
        let r = |g0| Reference::new(g0).unwrap();
        assert_eq!(
            runtime_reference(&model(0.0, 1.0), &r(1.0), &acc(1e-3)).unwrap(),
            1000.0
        );
        assert_relative_eq!(
            runtime_reference(&model(2.0, 2.0), &r(0.5), &acc(1e-3)).unwrap(),
            16000.0,
            max_relative = 1e-12
        );
        assert_relative_eq!(
            runtime_reference(&model(0.0, 1.0), &r(0.72), &acc(5e-5)).unwrap(),
            27777.777777,
            max_relative = 1e-9
        );
    }

    #[test]
    fn runtime_with_reps_examples() {
        let m = model(0.0, 1.0);
        let c = cand(1e3, 1.0).with_p_succ(0.5).unwrap();
        assert_relative_eq!(
            runtime_with_reps(&m, &c, &acc(5e-5)).unwrap(),
            22000.0,
            max_relative = 1e-12
        );

        let c = cand(100.0, 0.5).with_p_succ(0.25).unwrap();
        assert_relative_eq!(
            runtime_with_reps(&model(2.0, 1.0), &c, &acc(1e-2)).unwrap(),
            2400.0,
            max_relative = 1e-12
        );

        let c = cand(123.0, 0.61);
        assert_eq!(
            runtime_with_reps(&model(2.0, 1.0), &c, &acc(1e-3)).unwrap(),
            runtime_total(&model(2.0, 1.0), &c, &acc(1e-3)).unwrap()
        );
    }

    #[test]
    fn rejects_bad_inputs() {
        assert!(matches!(
            Accuracy::new(0.0),
            Err(Error::Domain { name: "epsilon", .. })
        ));
        assert!(Reference::new(0.0).is_err());
        assert!(Reference::new(1.5).is_err());
        assert!(GspCandidate::new("x", -1.0, 0.5, DepthUnit::TCount).is_err());
        assert!(cand(1.0, 0.5).with_p_succ(0.0).is_err());
        assert!(GseeModel::new("x", -1.0, 0.0, DepthUnit::TCount).is_err());
        assert!(gsee_depth(&model(0.0, 1.0), &acc(1e-3), 0.0).is_err());
        assert!(repetitions(&model(2.0, 1.0), -0.1).is_err());
    }

    #[test]
    fn unit_mismatch() {
        let m = model(0.0, 1.0).with_unit(DepthUnit::TCount);
        let err = runtime_total(&m, &cand(1.0, 1.0), &acc(1e-3)).unwrap_err();
        assert!(matches!(err, Error::UnitMismatch { .. }));
    }

    #[test]
    fn unit_parsing() {
        assert_eq!("t-count".parse::<DepthUnit>().unwrap(), DepthUnit::TCount);
        let custom: DepthUnit = "custom:toffoli".parse().unwrap();
        assert_eq!(custom.to_string(), "custom:toffoli");
        assert_eq!(custom.to_string().parse::<DepthUnit>().unwrap(), custom);
        assert!("layers".parse::<DepthUnit>().is_err());
        assert!("custom:".parse::<DepthUnit>().is_err());
    }

    #[test]
    fn catalog_lookup() {
        let qpe = GseeModel::from_catalog("QPE").unwrap();
        assert_eq!((qpe.alpha(), qpe.beta()), (2.0, 2.0));
        let lt20 = GseeModel::from_catalog("lt20").unwrap();
        assert_eq!((lt20.alpha(), lt20.beta()), (0.0, 1.0));
        assert!(matches!(
            GseeModel::from_catalog("vqe"),
            Err(Error::UnknownModel(_))
        ));
    }

    #[test]
    fn prefactor_scales_both_runtimes() {
        let m = model(2.0, 1.0).with_prefactor(3.0).unwrap();
        let base = runtime_total(&model(2.0, 1.0), &cand(10.0, 0.8), &acc(1e-3)).unwrap();
        assert_relative_eq!(
            runtime_total(&m, &cand(10.0, 0.8), &acc(1e-3)).unwrap(),
            3.0 * base,
            max_relative = 1e-14
        );
    }
}
