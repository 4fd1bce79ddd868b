//! Acceptability criteria: when does a GSP beat the zero-depth reference?
//!
//! Every verdict is reported in ratio form,
//!
//! ```text
//!   lhs = (D/P_succ + D_gsee) / D_gsee      rhs = (gamma/gamma0)^(alpha+beta)
//! ```
//!
//! with `D_gsee = 1/(eps * gamma^beta)` unless given directly, and
//! `accepted <=> lhs < rhs`. The runtime form `T < T0` is carried alongside
//! in [`VerdictDetail`] when it can be computed.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::runtime_model::{
    check_overlap, check_probability, check_units, gsee_depth, runtime_reference, runtime_with_reps,
    Accuracy, DepthUnit, GseeModel, GspCandidate, Reference,
};
use crate::warning::Warning;

/// Default threshold for "GSP depth is negligible next to GSEE depth".
pub const DEFAULT_NEGLIGIBILITY: f64 = 0.01;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Regime {
    General,
    Simplified,
    WithRepetitions,
}

impl Regime {
    pub fn as_str(&self) -> &'static str {
        match self {
            Regime::General => "general",
            Regime::Simplified => "simplified",
            Regime::WithRepetitions => "with-repetitions",
        }
    }
}

/// Quantities behind a verdict besides the ratio-form sides.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct VerdictDetail {
    /// GSP cost per GSEE run, `D / P_succ`.
    pub gsp_cost: f64,
    /// Depth of one GSEE run.
    pub gsee_depth: f64,
    /// `T` with the candidate, when computable.
    pub runtime: Option<f64>,
    /// `T0` with the reference, when computable.
    pub runtime_ref: Option<f64>,
}

impl VerdictDetail {
    /// Acceptance in runtime form, `T < T0`.
    pub fn runtime_accepts(&self) -> Option<bool> {
        Some(self.runtime? < self.runtime_ref?)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Verdict {
    pub accepted: bool,
    pub lhs: f64,
    pub rhs: f64,
    pub margin: f64,
    pub regime: Regime,
    pub warnings: Vec<Warning>,
    pub detail: VerdictDetail,
}

impl Verdict {
    fn new(lhs: f64, rhs: f64, regime: Regime, exponent_sum: f64, detail: VerdictDetail) -> Self {
        let mut warnings = Vec::new();
        if exponent_sum == 0.0 {
            warnings.push(Warning::ZeroExponentSum);
        }
        Verdict {
            accepted: lhs < rhs,
            lhs,
            rhs,
            margin: rhs - lhs,
            regime,
            warnings,
            detail,
        }
    }

    fn flag_inferred(mut self, cand: &GspCandidate) -> Self {
        if cand.depth_inferred() {
            self.warnings.push(Warning::InferredBoosterDepth);
        }
        self
    }
}

/// An upper bound on acceptable GSP depth. Zero (with a warning) when no
/// positive depth is acceptable.
#[derive(Debug, Clone, PartialEq)]
pub struct DepthBound {
    pub value: f64,
    pub warnings: Vec<Warning>,
}

fn overlap_gain(exponent_sum: f64, gamma: f64, gamma0: f64) -> f64 {
    (gamma / gamma0).powf(exponent_sum)
}

fn ratio_verdict(
    model: &GseeModel,
    cand: &GspCandidate,
    reference: &Reference,
    d_gsee: f64,
    regime: Regime,
) -> Verdict {
    let gsp_cost = cand.depth() / cand.p_succ();
    let lhs = (gsp_cost + d_gsee) / d_gsee;
    let rhs = overlap_gain(model.exponent_sum(), cand.gamma(), reference.gamma0());
    let detail = VerdictDetail {
        gsp_cost,
        gsee_depth: d_gsee,
        runtime: None,
        runtime_ref: None,
    };
    Verdict::new(lhs, rhs, regime, model.exponent_sum(), detail).flag_inferred(cand)
}

/// `T(D, gamma; eps) < T0(gamma0; eps)` with `P_succ` ignored.
pub fn verdict_general(
    model: &GseeModel,
    cand: &GspCandidate,
    reference: &Reference,
    acc: &Accuracy,
) -> Result<Verdict> {
    let cand = cand.clone().with_p_succ(1.0)?;
    evaluate(model, &cand, reference, acc, Regime::General)
}

/// Repetition-aware criterion: failed GSP attempts are repeated, so the
/// GSP cost per run is `D / P_succ`. Identical to [`verdict_general`]
/// when `P_succ = 1`.
pub fn verdict_with_reps(
    model: &GseeModel,
    cand: &GspCandidate,
    reference: &Reference,
    acc: &Accuracy,
) -> Result<Verdict> {
    if cand.p_succ() == 1.0 {
        return evaluate(model, cand, reference, acc, Regime::General);
    }
    evaluate(model, cand, reference, acc, Regime::WithRepetitions)
}

fn evaluate(
    model: &GseeModel,
    cand: &GspCandidate,
    reference: &Reference,
    acc: &Accuracy,
    regime: Regime,
) -> Result<Verdict> {
    check_units(model, cand)?;
    let d_gsee = gsee_depth(model, acc, cand.gamma())?;
    let mut verdict = ratio_verdict(model, cand, reference, d_gsee, regime);
    verdict.detail.runtime = Some(runtime_with_reps(model, cand, acc)?);
    verdict.detail.runtime_ref = Some(runtime_reference(model, reference, acc)?);
    Ok(verdict)
}

/// Same criterion with the GSEE depth supplied directly instead of derived
/// from `eps`. Runtimes are expressed through `1/eps = d_gsee * gamma^beta`.
pub fn verdict_with_gsee_depth(
    model: &GseeModel,
    cand: &GspCandidate,
    reference: &Reference,
    d_gsee: f64,
) -> Result<Verdict> {
    check_units(model, cand)?;
    if !(d_gsee.is_finite() && d_gsee > 0.0) {
        return Err(Error::domain("d_gsee", d_gsee, "must be finite and > 0"));
    }
    let regime = if cand.p_succ() == 1.0 {
        Regime::General
    } else {
        Regime::WithRepetitions
    };
    let mut verdict = ratio_verdict(model, cand, reference, d_gsee, regime);
    let inv_eps = d_gsee * cand.gamma().powf(model.beta());
    let reps = 1.0 / cand.gamma().powf(model.alpha());
    verdict.detail.runtime = Some(model.prefactor() * reps * (verdict.detail.gsp_cost + d_gsee));
    verdict.detail.runtime_ref =
        Some(model.prefactor() * inv_eps / reference.gamma0().powf(model.exponent_sum()));
    Ok(verdict)
}

/// Small-depth criterion `1 < (gamma/gamma0)^(alpha+beta)`. Refuses when
/// `D * gamma^beta * eps` (GSP depth over GSEE depth) exceeds `negligibility`.
pub fn verdict_simplified(
    model: &GseeModel,
    cand: &GspCandidate,
    reference: &Reference,
    acc: &Accuracy,
    negligibility: f64,
) -> Result<Verdict> {
    check_units(model, cand)?;
    check_negligibility(negligibility)?;
    let d_gsee = gsee_depth(model, acc, cand.gamma())?;
    let ratio = cand.depth() / d_gsee;
    if ratio > negligibility {
        return Err(Error::Regime {
            ratio,
            threshold: negligibility,
        });
    }
    let rhs = overlap_gain(model.exponent_sum(), cand.gamma(), reference.gamma0());
    let detail = VerdictDetail {
        gsp_cost: cand.depth(),
        gsee_depth: d_gsee,
        runtime: None,
        runtime_ref: None,
    };
    Ok(Verdict::new(1.0, rhs, Regime::Simplified, model.exponent_sum(), detail).flag_inferred(cand))
}

/// Simplified criterion when only the overlap ratio `gamma/gamma0` is known.
/// `depth_ratio` is an upper bound on GSP depth over GSEE depth; with
/// `gamma <= 1` the bound `D * eps` always qualifies.
pub fn verdict_simplified_from_ratio(
    model: &GseeModel,
    overlap_ratio: f64,
    depth_ratio: f64,
    negligibility: f64,
) -> Result<Verdict> {
    check_negligibility(negligibility)?;
    if !(overlap_ratio.is_finite() && overlap_ratio > 0.0) {
        return Err(Error::domain("ratio", overlap_ratio, "must be finite and > 0"));
    }
    if depth_ratio > negligibility {
        return Err(Error::Regime {
            ratio: depth_ratio,
            threshold: negligibility,
        });
    }
    let rhs = overlap_ratio.powf(model.exponent_sum());
    Ok(Verdict::new(
        1.0,
        rhs,
        Regime::Simplified,
        model.exponent_sum(),
        VerdictDetail::default(),
    ))
}

fn check_negligibility(v: f64) -> Result<()> {
    if v.is_finite() && v >= 0.0 {
        Ok(())
    } else {
        Err(Error::domain("negligibility", v, "must be finite and >= 0"))
    }
}

/// Supremum of acceptable depth,
/// `P_succ * (1/(eps*gamma^beta)) * ((gamma/gamma0)^(alpha+beta) - 1)`.
pub fn max_depth(
    model: &GseeModel,
    gamma: f64,
    reference: &Reference,
    acc: &Accuracy,
    p_succ: f64,
) -> Result<DepthBound> {
    check_probability("p_succ", p_succ)?;
    let d_gsee = gsee_depth(model, acc, gamma)?;
    Ok(bound_from_gsee_depth(
        model.exponent_sum(),
        gamma,
        reference.gamma0(),
        d_gsee,
        p_succ,
    ))
}

/// As [`max_depth`] with the GSEE depth given directly.
pub fn max_depth_for_gsee_depth(
    model: &GseeModel,
    gamma: f64,
    reference: &Reference,
    d_gsee: f64,
    p_succ: f64,
) -> Result<DepthBound> {
    check_overlap("gamma", gamma)?;
    check_probability("p_succ", p_succ)?;
    check_gsee_depth(d_gsee)?;
    Ok(bound_from_gsee_depth(
        model.exponent_sum(),
        gamma,
        reference.gamma0(),
        d_gsee,
        p_succ,
    ))
}

fn bound_from_gsee_depth(exponent_sum: f64, gamma: f64, gamma0: f64, d_gsee: f64, p_succ: f64) -> DepthBound {
    if gamma < gamma0 {
        return no_depth(gamma, gamma0);
    }
    let mut warnings = Vec::new();
    if exponent_sum == 0.0 {
        warnings.push(Warning::ZeroExponentSum);
    }
    let value = p_succ * d_gsee * (overlap_gain(exponent_sum, gamma, gamma0) - 1.0);
    DepthBound {
        value: value.max(0.0),
        warnings,
    }
}

/// `((gamma - gamma0)/gamma0) * D_gsee`, the bound for `alpha + beta = 1`.
pub fn max_depth_strict(gamma: f64, gamma0: f64, d_gsee: f64) -> Result<DepthBound> {
    check_overlap("gamma", gamma)?;
    check_overlap("gamma0", gamma0)?;
    check_gsee_depth(d_gsee)?;
    if gamma < gamma0 {
        return Ok(no_depth(gamma, gamma0));
    }
    Ok(DepthBound {
        value: (gamma - gamma0) / gamma0 * d_gsee,
        warnings: Vec::new(),
    })
}

fn check_gsee_depth(d_gsee: f64) -> Result<()> {
    if d_gsee.is_finite() && d_gsee >= 0.0 {
        Ok(())
    } else {
        Err(Error::domain("d_gsee", d_gsee, "must be finite and >= 0"))
    }
}

fn no_depth(gamma: f64, gamma0: f64) -> DepthBound {
    DepthBound {
        value: 0.0,
        warnings: vec![Warning::NoAcceptableDepth { gamma, gamma0 }],
    }
}

/// Gap-dependent booster preparation. Its depth `1/(delta * gamma0)` is
/// inferred: it is the value that turns the generic criterion into the
/// gap-dependent QPE and LT20 inequalities.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoosterGspModel {
    delta: f64,
    gamma0: f64,
}

impl BoosterGspModel {
    pub fn new(delta: f64, gamma0: f64) -> Result<Self> {
        if !(delta.is_finite() && delta > 0.0) {
            return Err(Error::domain("delta", delta, "must be finite and > 0"));
        }
        check_overlap("gamma0", gamma0)?;
        Ok(BoosterGspModel { delta, gamma0 })
    }

    pub fn delta(&self) -> f64 {
        self.delta
    }

    pub fn gamma0(&self) -> f64 {
        self.gamma0
    }

    /// Candidate reaching overlap `gamma` at the inferred depth.
    pub fn candidate(&self, gamma: f64, unit: DepthUnit) -> Result<GspCandidate> {
        Ok(GspCandidate::new("booster", booster_depth_model(self), gamma, unit)?.with_inferred_depth())
    }
}

pub fn booster_depth_model(b: &BoosterGspModel) -> f64 {
    1.0 / (b.delta * b.gamma0)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ModelOutcome {
    pub model: String,
    pub lhs: f64,
    pub rhs: f64,
    pub accepted: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Stricter {
    A,
    B,
    Equal,
}

/// Side-by-side comparison of two GSEE models on one candidate.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StrictnessReport {
    pub a: ModelOutcome,
    pub b: ModelOutcome,
    /// Which model's criterion dominates (larger lhs and smaller rhs);
    /// `None` when neither does.
    pub stricter: Option<Stricter>,
    /// Acceptance under the stricter model implies acceptance under the
    /// other. `None` when there is no dominance.
    pub implication_holds: Option<bool>,
}

pub fn strictness_order(
    model_a: &GseeModel,
    model_b: &GseeModel,
    cand: &GspCandidate,
    reference: &Reference,
    acc: &Accuracy,
) -> Result<StrictnessReport> {
    let va = verdict_with_reps(model_a, cand, reference, acc)?;
    let vb = verdict_with_reps(model_b, cand, reference, acc)?;
    let outcome = |m: &GseeModel, v: &Verdict| ModelOutcome {
        model: m.name().to_string(),
        lhs: v.lhs,
        rhs: v.rhs,
        accepted: v.accepted,
    };
    let a = outcome(model_a, &va);
    let b = outcome(model_b, &vb);

    let stricter = if a.lhs == b.lhs && a.rhs == b.rhs {
        Some(Stricter::Equal)
    } else if a.lhs >= b.lhs && a.rhs <= b.rhs {
        Some(Stricter::A)
    } else if b.lhs >= a.lhs && b.rhs <= a.rhs {
        Some(Stricter::B)
    } else {
        None
    };
    let implication_holds = stricter.map(|s| match s {
        Stricter::A => !a.accepted || b.accepted,
        Stricter::B => !b.accepted || a.accepted,
        Stricter::Equal => a.accepted == b.accepted,
    });
    Ok(StrictnessReport {
        a,
        b,
        stricter,
        implication_holds,
    })
}
