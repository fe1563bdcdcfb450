//! PPT test, closed-form separability conditions and explicit separable
//! decompositions for the protocol family.
//!
//! With `s_i = √(1−|α_i|²)`, the protocol state is separable iff the
//! complex numbers `c_i = p_i α_i s_i` are all equal. When they are, with
//! `W = Σ p_i |α_i|²`, `|f⟩` the failure branch and `|e_i⟩` the success
//! branches,
//!
//! ```text
//! ρ = (Σ p_i s_i² |e_i⟩⟨e_i| − t |f⟩⟨f|) ⊗ |0⟩⟨0|
//!   + |f⟩⟨f| ⊗ (t |0⟩⟨0| + √d c* |0⟩⟨1| + √d c |1⟩⟨0| + W |1⟩⟨1|),   t = d|c|²/W
//! ```
//!
//! and both factors of each term are rank-one-deficient positive operators.
//! Setting `t = 0` gives the familiar two-term form, whose ancilla factor
//! has a vanishing `|0⟩⟨0|` entry next to a nonzero coherence and so is not
//! positive; moving the weight `t` between the terms fixes that.

use serde::{Deserialize, Serialize};

use crate::ensembles::{Construction, Ensemble, ProtocolState};
use crate::error::{Error, Result};
use crate::matrixcore::{
    basis_ket, hermitian_spectrum, kron, partial_transpose, ComplexMatrix, DensityMatrix, Subsystem, C64,
};
use crate::tolerances::Tolerances;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PptResult {
    pub ppt: bool,
    pub min_eigenvalue: f64,
}

/// Positivity of the partial transpose on the system factor.
pub fn ppt_test(rho: &DensityMatrix) -> PptResult {
    ppt_test_tol(rho, &Tolerances::default())
}

pub fn ppt_test_tol(rho: &DensityMatrix, tol: &Tolerances) -> PptResult {
    let pt = partial_transpose(rho, Subsystem::System);
    let min = hermitian_spectrum(&pt).expect("partial transpose of a Hermitian matrix is Hermitian").min();
    PptResult { ppt: min >= -tol.psd, min_eigenvalue: min }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ConditionCheck {
    pub holds: bool,
    /// Largest pairwise deviation.
    pub residual: f64,
}

fn max_pairwise(values: &[C64]) -> f64 {
    let mut worst = 0.0f64;
    for i in 0..values.len() {
        for j in (i + 1)..values.len() {
            worst = worst.max((values[i] - values[j]).norm());
        }
    }
    worst
}

fn keep_amplitude(a: C64) -> f64 {
    (1.0 - a.norm_sqr()).sqrt()
}

/// `c_i = p_i α_i √(1−|α_i|²)`.
pub fn separability_products(ensemble: &Ensemble) -> Vec<C64> {
    ensemble.priors().iter().zip(ensemble.alphas()).map(|(&p, &a)| a * (p * keep_amplitude(a))).collect()
}

/// `p₊ √((1−|α₊|²)/2) α₊ = p₋ √((1−|α₋|²)/2) α₋`.
pub fn two_state_condition(ensemble: &Ensemble) -> Result<ConditionCheck> {
    two_state_condition_tol(ensemble, &Tolerances::default())
}

pub fn two_state_condition_tol(ensemble: &Ensemble, tol: &Tolerances) -> Result<ConditionCheck> {
    if ensemble.d() != 2 {
        return Err(Error::DimensionMismatch(format!("two-state condition needs 2 states, got {}", ensemble.d())));
    }
    let side = |k: usize| {
        let a = ensemble.alphas()[k];
        a * (ensemble.priors()[k] * ((1.0 - a.norm_sqr()) / 2.0).sqrt())
    };
    let residual = (side(0) - side(1)).norm();
    Ok(ConditionCheck { holds: residual <= tol.condition, residual })
}

/// All `p_i α_i √(1−|α_i|²)` equal.
pub fn d_state_condition(ensemble: &Ensemble) -> ConditionCheck {
    d_state_condition_tol(ensemble, &Tolerances::default())
}

pub fn d_state_condition_tol(ensemble: &Ensemble, tol: &Tolerances) -> ConditionCheck {
    let residual = max_pairwise(&separability_products(ensemble));
    ConditionCheck { holds: residual <= tol.condition, residual }
}

fn check_pair(ensemble: &Ensemble, i: usize, j: usize) -> Result<()> {
    if i >= j || j >= ensemble.d() {
        return Err(Error::IndexOutOfRange(format!(
            "need i < j < {} (0-based), got i = {i}, j = {j}",
            ensemble.d()
        )));
    }
    Ok(())
}

/// The 4×4 principal minor of `ρ^{T_S}` on rows/columns
/// `|i,0⟩, |i,1⟩, |j,0⟩, |j,1⟩` (0-based `i < j`), for the d-state construction.
pub fn minor_matrix(ensemble: &Ensemble, i: usize, j: usize) -> Result<ComplexMatrix> {
    check_pair(ensemble, i, j)?;
    let d = ensemble.d() as f64;
    let p = ensemble.priors();
    let a = ensemble.alphas();
    let w = ensemble.failure_weight() / d;
    let q = |k: usize| C64::new(p[k] * (1.0 - a[k].norm_sqr()), 0.0);
    // p_k α_k √((1−|α_k|²)/d)
    let x = |k: usize| a[k] * (p[k] * ((1.0 - a[k].norm_sqr()) / d).sqrt());
    let z = C64::new(0.0, 0.0);
    let wc = C64::new(w, 0.0);
    ComplexMatrix::new(
        4,
        vec![
            q(i), x(i).conj(), z, x(j).conj(),
            x(i), wc, x(i), wc,
            z, x(i).conj(), q(j), x(j).conj(),
            x(j), wc, x(j), wc,
        ],
    )
}

/// `D_ij = −(1/d²)(p_i(1−|α_i|²) + p_j(1−|α_j|²)) W |c_i − c_j|²`.
pub fn minor_determinant_closed_form(ensemble: &Ensemble, i: usize, j: usize) -> Result<f64> {
    check_pair(ensemble, i, j)?;
    let d = ensemble.d() as f64;
    let p = ensemble.priors();
    let a = ensemble.alphas();
    let c = separability_products(ensemble);
    let success = p[i] * (1.0 - a[i].norm_sqr()) + p[j] * (1.0 - a[j].norm_sqr());
    Ok(-success * ensemble.failure_weight() * (c[i] - c[j]).norm_sqr() / (d * d))
}

#[derive(Debug, Clone, Serialize)]
pub struct SeparableTerm {
    pub weight: f64,
    #[serde(skip)]
    pub system: ComplexMatrix,
    #[serde(skip)]
    pub ancilla: ComplexMatrix,
}

#[derive(Debug, Clone, Serialize)]
pub struct SeparableDecomposition {
    pub terms: Vec<SeparableTerm>,
    /// Factors have unit trace and the weights carry the mass.
    pub normalized: bool,
    pub reconstruction_residual: f64,
    pub min_factor_eigenvalue: f64,
}

impl SeparableDecomposition {
    pub fn reconstruct(&self) -> ComplexMatrix {
        let ds = self.terms[0].system.dim();
        let da = self.terms[0].ancilla.dim();
        self.terms.iter().fold(ComplexMatrix::zeros(ds * da), |acc, t| {
            &acc + &kron(&t.system, &t.ancilla).scale_re(t.weight)
        })
    }

    /// Rescales every factor to unit trace, moving the mass into the weights.
    pub fn normalize(&self) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|t| {
                let ts = t.system.trace().re;
                let ta = t.ancilla.trace().re;
                SeparableTerm {
                    weight: t.weight * ts * ta,
                    system: t.system.scale_re(1.0 / ts),
                    ancilla: t.ancilla.scale_re(1.0 / ta),
                }
            })
            .collect();
        Self { terms, normalized: true, ..self.clone() }
    }
}

fn min_eig(m: &ComplexMatrix) -> f64 {
    hermitian_spectrum(m).map(|s| s.min()).unwrap_or(f64::NEG_INFINITY)
}

/// Explicit two-term separable decomposition of a protocol state.
pub fn build_decomposition(state: &ProtocolState) -> Result<SeparableDecomposition> {
    build_decomposition_tol(state, &Tolerances::default())
}

pub fn build_decomposition_tol(state: &ProtocolState, tol: &Tolerances) -> Result<SeparableDecomposition> {
    let ensemble = &state.ensemble;
    let cond = d_state_condition_tol(ensemble, tol);
    if !cond.holds {
        return Err(Error::ConditionNotMet(cond.residual));
    }
    let d = ensemble.d();
    let products = separability_products(ensemble);
    let c = products.iter().sum::<C64>() / d as f64;
    let w = ensemble.failure_weight();
    let t = d as f64 * c.norm_sqr() / w;

    let (success, failure) = branch_kets(state.construction, d);
    let mut system = ComplexMatrix::zeros(d);
    for ((&p, &a), e) in ensemble.priors().iter().zip(ensemble.alphas()).zip(&success) {
        system = &system + &ComplexMatrix::outer(e).scale_re(p * (1.0 - a.norm_sqr()));
    }
    let fail_proj = ComplexMatrix::outer(&failure);
    let system = &system - &fail_proj.scale_re(t);
    let anc0 = ComplexMatrix::outer(&basis_ket(2, 0));

    let g = (d as f64).sqrt();
    let ancilla = ComplexMatrix::new(2, vec![C64::new(t, 0.0), c.conj() * g, c * g, C64::new(w, 0.0)])?;

    let mut dec = SeparableDecomposition {
        terms: vec![
            SeparableTerm { weight: 1.0, system, ancilla: anc0 },
            SeparableTerm { weight: 1.0, system: fail_proj, ancilla },
        ],
        normalized: false,
        reconstruction_residual: 0.0,
        min_factor_eigenvalue: 0.0,
    };
    dec.reconstruction_residual = dec.reconstruct().max_abs_diff(state.rho.mat());
    dec.min_factor_eigenvalue =
        dec.terms.iter().flat_map(|t| [min_eig(&t.system), min_eig(&t.ancilla)]).fold(f64::INFINITY, f64::min);
    if dec.reconstruction_residual > tol.reconstruction {
        return Err(Error::ReconstructionFailure(dec.reconstruction_residual));
    }
    if dec.min_factor_eigenvalue < -tol.psd {
        return Err(Error::NotPsd(dec.min_factor_eigenvalue));
    }
    Ok(dec)
}

/// Success kets `|e_i⟩` and the failure ket `|f⟩` of a construction.
fn branch_kets(construction: Construction, d: usize) -> (Vec<Vec<C64>>, Vec<C64>) {
    match construction {
        Construction::TwoState => {
            (vec![crate::ensembles::plus_ket(), crate::ensembles::minus_ket()], basis_ket(2, 0))
        }
        Construction::DState => ((0..d).map(|i| basis_ket(d, i)).collect(), crate::ensembles::uniform_ket(d)),
    }
}

/// PPT verdict, closed-form condition and, when it holds, the decomposition.
#[derive(Debug, Clone, Serialize)]
pub struct SeparabilityVerdict {
    pub ppt: bool,
    pub min_pt_eigenvalue: f64,
    pub closed_form_condition: bool,
    pub condition_residual: f64,
    pub decomposition: Option<SeparableDecomposition>,
    /// False when the closed-form condition holds but the state fails PPT.
    pub consistent: bool,
}

pub fn verdict(state: &ProtocolState) -> SeparabilityVerdict {
    verdict_tol(state, &Tolerances::default())
}

pub fn verdict_tol(state: &ProtocolState, tol: &Tolerances) -> SeparabilityVerdict {
    let ppt = ppt_test_tol(&state.rho, tol);
    let cond = d_state_condition_tol(&state.ensemble, tol);
    let decomposition = if cond.holds { build_decomposition_tol(state, tol).ok() } else { None };
    SeparabilityVerdict {
        ppt: ppt.ppt,
        min_pt_eigenvalue: ppt.min_eigenvalue,
        closed_form_condition: cond.holds,
        condition_residual: cond.residual,
        consistent: !cond.holds || (ppt.ppt && decomposition.is_some()),
        decomposition,
    }
}
