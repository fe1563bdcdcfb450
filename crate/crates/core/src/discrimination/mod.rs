//! Success probabilities, the one-variable optimum over `|α₁|`, and a seeded
//! Monte Carlo run of the full protocol.
//!
//! Only moduli of amplitudes and overlaps enter any probability; complex
//! inputs are accepted and their phases ignored.

mod montecarlo;

use serde::{Deserialize, Serialize};

use crate::ensembles::{validate_priors, Ensemble};
use crate::error::{Error, Result};
use crate::C64;

pub use montecarlo::{run_monte_carlo, TrialStats, RNG_ALGORITHM};

/// `P = 1 − p₋|α|²/|α₊|² − p₊|α₊|²`.
pub fn success_probability_two(p_plus: f64, p_minus: f64, alpha_mod: f64, alpha_plus_mod: f64) -> Result<f64> {
    validate_priors(&[p_plus, p_minus])?;
    if !(alpha_mod >= 0.0 && alpha_mod < alpha_plus_mod && alpha_plus_mod <= 1.0) {
        return Err(Error::Infeasible(format!(
            "need 0 <= |alpha| < |alpha_plus| <= 1, got |alpha| = {alpha_mod}, |alpha_plus| = {alpha_plus_mod}"
        )));
    }
    let a2 = alpha_plus_mod * alpha_plus_mod;
    Ok(1.0 - p_minus * alpha_mod * alpha_mod / a2 - p_plus * a2)
}

/// `P = 1 − Σ p_i |α_i|²`.
pub fn success_probability_d(ensemble: &Ensemble) -> f64 {
    1.0 - ensemble.failure_weight()
}

/// Priors plus the fixed overlaps `α_1j = ⟨ψ₁|ψ_j⟩`, `j = 2…d`.
#[derive(Debug, Clone, PartialEq)]
pub struct OptimizationInput {
    priors: Vec<f64>,
    overlaps: Vec<C64>,
}

impl OptimizationInput {
    pub fn new(priors: Vec<f64>, overlaps: Vec<C64>) -> Result<Self> {
        if priors.len() < 2 {
            return Err(Error::InvalidInput(format!("need at least 2 states, got {}", priors.len())));
        }
        if overlaps.len() + 1 != priors.len() {
            return Err(Error::DimensionMismatch(format!(
                "{} priors need {} overlaps, got {}",
                priors.len(),
                priors.len() - 1,
                overlaps.len()
            )));
        }
        validate_priors(&priors)?;
        if let Some(o) = overlaps.iter().find(|o| o.norm().is_nan() || o.norm() > 1.0) {
            return Err(Error::InvalidInput(format!("overlap modulus {} exceeds 1", o.norm())));
        }
        Ok(Self { priors, overlaps })
    }

    /// Equal priors `1/d` and all overlaps `|γ|²`.
    pub fn equal(d: usize, gamma_mod: f64) -> Result<Self> {
        if d < 2 || !(0.0..=1.0).contains(&gamma_mod) {
            return Err(Error::InvalidInput(format!("need d >= 2 and 0 <= |gamma| <= 1, got d = {d}, |gamma| = {gamma_mod}")));
        }
        let g2 = gamma_mod * gamma_mod;
        Ok(Self { priors: vec![1.0 / d as f64; d], overlaps: vec![C64::new(g2, 0.0); d - 1] })
    }

    /// From an ensemble: `α_1j = α₁* α_j`.
    pub fn from_ensemble(ensemble: &Ensemble) -> Self {
        let overlaps = (1..ensemble.d()).map(|j| ensemble.overlap(0, j)).collect();
        Self { priors: ensemble.priors().to_vec(), overlaps }
    }

    pub fn d(&self) -> usize {
        self.priors.len()
    }

    pub fn priors(&self) -> &[f64] {
        &self.priors
    }

    pub fn overlaps(&self) -> &[C64] {
        &self.overlaps
    }

    /// `max_j |α_1j|`, the lower end of the feasible interval.
    pub fn max_overlap(&self) -> f64 {
        self.overlaps.iter().map(|o| o.norm()).fold(0.0, f64::max)
    }

    /// `Σ_{j≥2} p_j |α_1j|²`.
    pub fn weighted_overlap(&self) -> f64 {
        self.priors[1..].iter().zip(&self.overlaps).map(|(p, o)| p * o.norm_sqr()).sum()
    }

    /// Whether `|α₁|` keeps every derived `|α_j| = |α_1j|/|α₁|` below 1.
    pub fn is_feasible(&self, alpha1_mod: f64) -> bool {
        alpha1_mod > self.max_overlap() && alpha1_mod <= 1.0
    }
}

/// `P(|α₁|) = 1 − p₁|α₁|² − Σ_{j≥2} p_j|α_1j|² / |α₁|²`.
pub fn success_probability_parameterized(alpha1_mod: f64, input: &OptimizationInput) -> Result<f64> {
    if !input.is_feasible(alpha1_mod) {
        return Err(Error::Infeasible(format!(
            "|alpha_1| = {alpha1_mod} outside ({}, 1]",
            input.max_overlap()
        )));
    }
    Ok(probability_at(alpha1_mod, input))
}

fn probability_at(x: f64, input: &OptimizationInput) -> f64 {
    1.0 - input.priors[0] * x * x - input.weighted_overlap() / (x * x)
}

/// `ᾱ = (Σ_{j≥2} p_j|α_1j|² / p₁)^{1/4}`, the stationary point of `P`.
pub fn alpha_bar(input: &OptimizationInput) -> f64 {
    (input.weighted_overlap() / input.priors[0]).powf(0.25)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Region {
    /// `max|α_1j| ≤ ᾱ ≤ 1`.
    Interior,
    /// `ᾱ < max|α_1j|`: optimum at the lower end.
    ClampedLow,
    /// `ᾱ > 1`: optimum at `|α₁| = 1`.
    ClampedHigh,
}

impl Region {
    pub fn as_str(self) -> &'static str {
        match self {
            Region::Interior => "interior",
            Region::ClampedLow => "clamped_low",
            Region::ClampedHigh => "clamped_high",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OptimumReport {
    pub region: Region,
    pub argmax: f64,
    pub p_opt: f64,
    pub alpha_bar: f64,
}

/// Maximum of `P(|α₁|)` over `[max|α_1j|, 1]`.
///
/// `P` increases below `ᾱ` and decreases above it, so the optimum is `ᾱ`
/// clamped into the interval. Boundary ties resolve to the interior branch.
pub fn optimal_probability(input: &OptimizationInput) -> OptimumReport {
    let bar = alpha_bar(input);
    let m = input.max_overlap();
    let s = input.weighted_overlap();
    let p1 = input.priors[0];
    if m <= bar && bar <= 1.0 {
        OptimumReport { region: Region::Interior, argmax: bar, p_opt: 1.0 - 2.0 * p1.sqrt() * s.sqrt(), alpha_bar: bar }
    } else if bar < m {
        let m2 = m * m;
        OptimumReport { region: Region::ClampedLow, argmax: m, p_opt: 1.0 - p1 * m2 - s / m2, alpha_bar: bar }
    } else {
        OptimumReport { region: Region::ClampedHigh, argmax: 1.0, p_opt: 1.0 - p1 - s, alpha_bar: bar }
    }
}

/// `|γ|` where the two branches of the equal-overlap optimum meet.
pub fn equal_overlap_boundary(d: usize) -> f64 {
    ((d - 1) as f64).powf(-0.25)
}

/// Optimum for equal priors and equal overlaps `|γ|²`:
///
/// ```text
/// P = 1 − 2√(d−1)/d · |γ|²      for |γ| ≤ (d−1)^{−1/4}
/// P = (d−1)/d · (1 − |γ|⁴)      otherwise
/// ```
pub fn equal_overlap_optimal(d: usize, gamma_mod: f64) -> Result<f64> {
    if d < 2 || !(0.0..=1.0).contains(&gamma_mod) {
        return Err(Error::InvalidInput(format!("need d >= 2 and 0 <= |gamma| <= 1, got d = {d}, |gamma| = {gamma_mod}")));
    }
    let df = d as f64;
    let g2 = gamma_mod * gamma_mod;
    if gamma_mod <= equal_overlap_boundary(d) {
        Ok(1.0 - 2.0 * (df - 1.0).sqrt() / df * g2)
    } else {
        Ok((df - 1.0) / df * (1.0 - g2 * g2))
    }
}

/// One row of the `P_opt` versus `|γ|` curve.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GammaSweepRow {
    pub d: usize,
    pub gamma: f64,
    pub region: Region,
    pub alpha1_opt: f64,
    pub p_opt: f64,
}

pub fn sweep_gamma(d: usize, gammas: &[f64]) -> Result<Vec<GammaSweepRow>> {
    gammas
        .iter()
        .map(|&g| {
            let opt = optimal_probability(&OptimizationInput::equal(d, g)?);
            Ok(GammaSweepRow { d, gamma: g, region: opt.region, alpha1_opt: opt.argmax, p_opt: opt.p_opt })
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Alpha1SweepRow {
    pub alpha1: f64,
    /// `None` outside the feasible interval.
    pub probability: Option<f64>,
}

pub fn sweep_alpha1(input: &OptimizationInput, alphas: &[f64]) -> Vec<Alpha1SweepRow> {
    alphas
        .iter()
        .map(|&a| Alpha1SweepRow { alpha1: a, probability: success_probability_parameterized(a, input).ok() })
        .collect()
}

/// Evenly spaced points `start, …, stop` (inclusive).
pub fn linspace(start: f64, stop: f64, count: usize) -> Vec<f64> {
    match count {
        0 => vec![],
        1 => vec![start],
        _ => (0..count).map(|i| start + (stop - start) * i as f64 / (count - 1) as f64).collect(),
    }
}
