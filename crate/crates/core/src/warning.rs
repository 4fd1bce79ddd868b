use std::fmt;

use serde::Serialize;

/// Non-fatal flags attached to verdicts, bounds and loaded files.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub enum Warning {
    /// alpha + beta = 0: the reference cannot be beaten by any D > 0.
    ZeroExponentSum,
    /// gamma < gamma0, so no positive depth is acceptable.
    NoAcceptableDepth { gamma: f64, gamma0: f64 },
    /// GSP depth taken from the booster model D = 1/(delta * gamma0).
    InferredBoosterDepth,
    /// A loaded state was rescaled to unit norm.
    Renormalized { norm: f64 },
}

impl Warning {
    /// Short stable code used in CSV output.
    pub fn code(&self) -> &'static str {
        match self {
            Warning::ZeroExponentSum => "zero-exponent-sum",
            Warning::NoAcceptableDepth { .. } => "no-acceptable-depth",
            Warning::InferredBoosterDepth => "inferred-booster-depth",
            Warning::Renormalized { .. } => "renormalized",
        }
    }
}

impl fmt::Display for Warning {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Warning::ZeroExponentSum => write!(
                f,
                "alpha + beta = 0: the reference runtime is unbeatable by any GSP with D > 0"
            ),
            Warning::NoAcceptableDepth { gamma, gamma0 } => write!(
                f,
                "gamma = {gamma} is below gamma0 = {gamma0}; no positive GSP depth is acceptable"
            ),
            Warning::InferredBoosterDepth => {
                write!(f, "GSP depth inferred from the booster model 1/(delta*gamma0)")
            }
            Warning::Renormalized { norm } => {
                write!(f, "state norm was {norm}; renormalized to 1")
            }
        }
    }
}

pub(crate) fn join_codes(warnings: &[Warning]) -> String {
    warnings.iter().map(Warning::code).collect::<Vec<_>>().join(";")
}
