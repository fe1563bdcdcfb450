//! Strict JSON input specs.

use serde::{Deserialize, Serialize};

use crate::discrimination::OptimizationInput;
use crate::ensembles::{build_d_state, build_two_state, Ensemble, ProtocolState};
use crate::error::{Error, Result};
use crate::matrixcore::states::bell_phi_plus;
use crate::{DensityMatrix, C64};

/// Complex number as `{"re": …, "im": …}`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Complex {
    pub re: f64,
    pub im: f64,
}

impl From<Complex> for C64 {
    fn from(c: Complex) -> Self {
        C64::new(c.re, c.im)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Fixture {
    BellPhiPlus,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum InputSpec {
    TwoState { p_plus: f64, p_minus: f64, alpha: Complex, alpha_plus: Complex },
    DState { priors: Vec<f64>, alphas: Vec<Complex> },
    /// Known reference state with no ensemble behind it.
    Fixture { name: Fixture },
    /// Priors and overlaps `⟨ψ₁|ψ_j⟩`, `j ≥ 2`, for the optimum.
    Overlaps { priors: Vec<f64>, overlaps: Vec<Complex> },
}

/// What an input resolves to.
pub enum Subject {
    Protocol(ProtocolState),
    State(DensityMatrix),
    Overlaps(OptimizationInput),
}

fn complexes(v: &[Complex]) -> Vec<C64> {
    v.iter().map(|&c| c.into()).collect()
}

impl InputSpec {
    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::InvalidInput(format!("input JSON: {e}")))
    }

    pub fn resolve(&self) -> Result<Subject> {
        Ok(match self {
            InputSpec::TwoState { p_plus, p_minus, alpha, alpha_plus } => {
                Subject::Protocol(build_two_state(*p_plus, *p_minus, (*alpha).into(), (*alpha_plus).into())?)
            }
            InputSpec::DState { priors, alphas } => Subject::Protocol(build_d_state(priors.clone(), complexes(alphas))?),
            InputSpec::Fixture { name: Fixture::BellPhiPlus } => Subject::State(bell_phi_plus()),
            InputSpec::Overlaps { priors, overlaps } => {
                Subject::Overlaps(OptimizationInput::new(priors.clone(), complexes(overlaps))?)
            }
        })
    }

    pub fn kind(&self) -> &'static str {
        match self {
            InputSpec::TwoState { .. } => "two_state",
            InputSpec::DState { .. } => "d_state",
            InputSpec::Fixture { .. } => "fixture",
            InputSpec::Overlaps { .. } => "overlaps",
        }
    }
}

impl Subject {
    pub fn protocol(self, command: &str) -> Result<ProtocolState> {
        match self {
            Subject::Protocol(p) => Ok(p),
            _ => Err(Error::InvalidInput(format!("{command} needs a two_state or d_state input"))),
        }
    }

    pub fn state(&self) -> Option<&DensityMatrix> {
        match self {
            Subject::Protocol(p) => Some(&p.rho),
            Subject::State(s) => Some(s),
            Subject::Overlaps(_) => None,
        }
    }

    pub fn ensemble(&self) -> Option<&Ensemble> {
        match self {
            Subject::Protocol(p) => Some(&p.ensemble),
            _ => None,
        }
    }

    pub fn optimization_input(&self) -> Option<OptimizationInput> {
        match self {
            Subject::Protocol(p) => Some(OptimizationInput::from_ensemble(&p.ensemble)),
            Subject::Overlaps(o) => Some(o.clone()),
            Subject::State(_) => None,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_all_kinds() {
        let two = r#"{"kind":"two_state","p_plus":0.5,"p_minus":0.5,"alpha":{"re":0.25,"im":0},"alpha_plus":{"re":0.5,"im":0}}"#;
        assert_eq!(InputSpec::parse(two).unwrap().kind(), "two_state");
        let d = r#"{"kind":"d_state","priors":[0.5,0.5],"alphas":[{"re":0.3,"im":0},{"re":0.3,"im":0.1}]}"#;
        assert!(matches!(InputSpec::parse(d).unwrap().resolve().unwrap(), Subject::Protocol(_)));
        let f = r#"{"kind":"fixture","name":"bell_phi_plus"}"#;
        assert!(matches!(InputSpec::parse(f).unwrap().resolve().unwrap(), Subject::State(_)));
        let o = r#"{"kind":"overlaps","priors":[0.5,0.5],"overlaps":[{"re":0.2,"im":0}]}"#;
        assert!(matches!(InputSpec::parse(o).unwrap().resolve().unwrap(), Subject::Overlaps(_)));
    }

    #[test]
    fn rejects_unknown_fields() {
        let extra = r#"{"kind":"d_state","priors":[0.5,0.5],"alphas":[{"re":0.3,"im":0},{"re":0.3,"im":0}],"x":1}"#;
        assert!(InputSpec::parse(extra).is_err());
        let extra_complex = r#"{"kind":"d_state","priors":[0.5,0.5],"alphas":[{"re":0.3,"im":0,"abs":0.3},{"re":0.3,"im":0}]}"#;
        assert!(InputSpec::parse(extra_complex).is_err());
        assert!(InputSpec::parse(r#"{"kind":"nope"}"#).is_err());
        assert!(InputSpec::parse(r#"{"kind":"fixture","name":"ghz"}"#).is_err());
    }

    #[test]
    fn round_trips() {
        let spec = InputSpec::Overlaps { priors: vec![0.25, 0.75], overlaps: vec![Complex { re: 0.1, im: -0.2 }] };
        let text = serde_json::to_string(&spec).unwrap();
        assert_eq!(InputSpec::parse(&text).unwrap(), spec);
    }
}
