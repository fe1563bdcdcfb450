//! Discrimination ensembles and the joint system–ancilla states they produce.
//!
//! The embedding unitary is never built. Each input state `|ψ_i⟩` is mapped
//! straight to its output branch
//!
//! ```text
//! |out_i⟩ = √(1−|α_i|²) |s_i⟩|0⟩_a + α_i |f⟩|1⟩_a
//! ```
//!
//! where `|s_i⟩` is the distinguishable success state and `|f⟩` the common
//! failure state. For the two-state construction `|s_±⟩ = |±⟩` and
//! `|f⟩ = |0⟩`; for the d-state construction `|s_i⟩ = |i⟩` and
//! `|f⟩ = (|1⟩+…+|d⟩)/√d`. Such a unitary exists iff the output Gram matrix
//! equals the input one, i.e. `⟨ψ_i|ψ_j⟩ = α_i* α_j`.

use std::f64::consts::FRAC_1_SQRT_2;

use nalgebra::Cholesky;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrixcore::{basis_ket, hermitian_spectrum, inner, kron_vec, ComplexMatrix, DensityMatrix, C64, ONE};

/// Sum-to-one tolerance for priors.
pub const PRIOR_SUM_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Construction {
    /// Two states, success branches `|+⟩`, `|−⟩`, failure branch `|0⟩`.
    TwoState,
    /// d states, success branches `|i⟩`, failure branch the uniform superposition.
    DState,
}

/// Priors and failure amplitudes of a discrimination problem.
#[derive(Debug, Clone, PartialEq)]
pub struct Ensemble {
    priors: Vec<f64>,
    alphas: Vec<C64>,
}

pub(crate) fn validate_priors(priors: &[f64]) -> Result<()> {
    if priors.iter().any(|p| !p.is_finite() || *p <= 0.0) {
        return Err(Error::BadPriors(format!("every prior must be positive, got {priors:?}")));
    }
    let sum: f64 = priors.iter().sum();
    if (sum - 1.0).abs() > PRIOR_SUM_TOL {
        return Err(Error::BadPriors(format!("priors sum to {sum}, expected 1")));
    }
    Ok(())
}

fn check_amplitude(label: &str, a: C64) -> Result<()> {
    let m = a.norm();
    if !m.is_finite() || m <= 0.0 || m >= 1.0 {
        return Err(Error::DegenerateEnsemble(format!(
            "|{label}| = {m} must lie strictly between 0 and 1 (0: orthogonal states, 1: identical states)"
        )));
    }
    Ok(())
}

impl Ensemble {
    pub fn new(priors: Vec<f64>, alphas: Vec<C64>) -> Result<Self> {
        if priors.len() < 2 {
            return Err(Error::InvalidInput(format!("need at least 2 states, got {}", priors.len())));
        }
        if priors.len() != alphas.len() {
            return Err(Error::DimensionMismatch(format!(
                "{} priors but {} amplitudes",
                priors.len(),
                alphas.len()
            )));
        }
        validate_priors(&priors)?;
        for (i, &a) in alphas.iter().enumerate() {
            check_amplitude(&format!("alpha_{}", i + 1), a)?;
        }
        Ok(Self { priors, alphas })
    }

    /// Two-state ensemble from the fixed overlap `α = ⟨ψ₊|ψ₋⟩` and the free
    /// amplitude `α₊`; `α₋ = α / α₊*`.
    pub fn two_state(p_plus: f64, p_minus: f64, alpha: C64, alpha_plus: C64) -> Result<Self> {
        validate_priors(&[p_plus, p_minus])?;
        check_amplitude("alpha_plus", alpha_plus)?;
        let alpha_minus = alpha / alpha_plus.conj();
        check_amplitude("alpha_minus", alpha_minus)?;
        Self::new(vec![p_plus, p_minus], vec![alpha_plus, alpha_minus])
    }

    pub fn d(&self) -> usize {
        self.priors.len()
    }

    pub fn priors(&self) -> &[f64] {
        &self.priors
    }

    pub fn alphas(&self) -> &[C64] {
        &self.alphas
    }

    /// `α_ij = α_i* α_j`.
    pub fn overlap(&self, i: usize, j: usize) -> C64 {
        self.alphas[i].conj() * self.alphas[j]
    }

    /// Total failure probability `Σ p_i |α_i|²`.
    pub fn failure_weight(&self) -> f64 {
        self.priors.iter().zip(&self.alphas).map(|(p, a)| p * a.norm_sqr()).sum()
    }

    /// Gram matrix of the input states implied by the amplitudes.
    pub fn gram(&self) -> GramMatrix {
        let d = self.d();
        let m = ComplexMatrix::from_fn(d, |i, j| if i == j { ONE } else { self.overlap(i, j) });
        GramMatrix(m)
    }
}

/// Hermitian PSD matrix of pairwise inner products with unit diagonal.
#[derive(Debug, Clone, PartialEq)]
pub struct GramMatrix(ComplexMatrix);

impl GramMatrix {
    pub const TOL: f64 = 1e-10;

    pub fn new(m: ComplexMatrix) -> Result<Self> {
        let d = m.dim();
        if let Some(i) = (0..d).find(|&i| (m[(i, i)] - ONE).norm() > Self::TOL) {
            return Err(Error::InvalidGram(format!("diagonal entry {i} is {} (expected 1)", m[(i, i)])));
        }
        let dev = m.hermitian_deviation();
        if dev > Self::TOL {
            return Err(Error::InvalidGram(format!("not Hermitian (deviation {dev:e})")));
        }
        let min = hermitian_spectrum(&m)?.min();
        if min < -Self::TOL {
            return Err(Error::InvalidGram(format!("not PSD (min eigenvalue {min:e})")));
        }
        Ok(Self(m))
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.dim()
    }

    pub fn min_eigenvalue(&self) -> f64 {
        hermitian_spectrum(&self.0).map(|s| s.min()).unwrap_or(f64::NEG_INFINITY)
    }
}

/// Outcome of comparing a target Gram matrix against the overlaps an
/// ensemble's amplitudes can realize.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EmbeddingCheck {
    pub consistent: bool,
    pub max_residual: f64,
}

/// Checks `⟨ψ_i|ψ_j⟩ = α_i* α_j` for all `i ≠ j`, the existence condition
/// for the embedding unitary.
pub fn validate_embedding(ensemble: &Ensemble, target: &GramMatrix) -> Result<EmbeddingCheck> {
    let d = ensemble.d();
    if target.dim() != d {
        return Err(Error::DimensionMismatch(format!("ensemble has {d} states, Gram matrix is {}x{}", target.dim(), target.dim())));
    }
    let mut worst = 0.0f64;
    for i in 0..d {
        for j in 0..d {
            if i != j {
                worst = worst.max((target.matrix()[(i, j)] - ensemble.overlap(i, j)).norm());
            }
        }
    }
    Ok(EmbeddingCheck { consistent: worst <= GramMatrix::TOL, max_residual: worst })
}

/// Unit vectors `|ψ_i⟩ ∈ ℂ^d` whose pairwise inner products reproduce `gram`.
///
/// Uses `G = L L†`; the vectors are the columns of `L†`.
pub fn states_from_gram(gram: &GramMatrix) -> Result<Vec<Vec<C64>>> {
    let min = gram.min_eigenvalue();
    if min <= GramMatrix::TOL {
        return Err(Error::SingularGram(min));
    }
    let d = gram.dim();
    let chol = Cholesky::new(gram.matrix().to_nalgebra()).ok_or(Error::SingularGram(min))?;
    let l = chol.l();
    // column i of L† has entries conj(L[i][k])
    Ok((0..d).map(|i| (0..d).map(|k| l[(i, k)].conj()).collect()).collect())
}

/// The joint state after the embedding, plus the pure branches it mixes.
#[derive(Debug, Clone)]
pub struct ProtocolState {
    pub rho: DensityMatrix,
    pub ensemble: Ensemble,
    pub construction: Construction,
    pub branch_vectors: Vec<Vec<C64>>,
}

impl ProtocolState {
    fn assemble(ensemble: Ensemble, construction: Construction, success: Vec<Vec<C64>>, failure: Vec<C64>) -> Result<Self> {
        let d = ensemble.d();
        let anc0 = basis_ket(2, 0);
        let anc1 = basis_ket(2, 1);
        let branch_vectors: Vec<Vec<C64>> = ensemble
            .alphas()
            .iter()
            .zip(&success)
            .map(|(&a, s)| {
                let keep = C64::new((1.0 - a.norm_sqr()).sqrt(), 0.0);
                let ok = kron_vec(s, &anc0);
                let fail = kron_vec(&failure, &anc1);
                ok.iter().zip(&fail).map(|(x, y)| keep * x + a * y).collect()
            })
            .collect();
        let n = 2 * d;
        let mut m = ComplexMatrix::zeros(n);
        for (p, v) in ensemble.priors().iter().zip(&branch_vectors) {
            for r in 0..n {
                for c in 0..n {
                    m[(r, c)] += v[r] * v[c].conj() * *p;
                }
            }
        }
        let rho = DensityMatrix::new(m, (d, 2))?;
        Ok(Self { rho, ensemble, construction, branch_vectors })
    }

    /// Basis in which the system is read out after the ancilla reports success.
    pub fn discrimination_basis(&self) -> Vec<Vec<C64>> {
        let d = self.ensemble.d();
        match self.construction {
            Construction::TwoState => vec![plus_ket(), minus_ket()],
            Construction::DState => (0..d).map(|i| basis_ket(d, i)).collect(),
        }
    }

    /// Max `|⟨out_i|out_j⟩ − α_i* α_j|` over `i ≠ j`.
    pub fn gram_residual(&self) -> f64 {
        let d = self.ensemble.d();
        let mut worst = 0.0f64;
        for i in 0..d {
            for j in 0..d {
                if i != j {
                    let got = inner(&self.branch_vectors[i], &self.branch_vectors[j]);
                    worst = worst.max((got - self.ensemble.overlap(i, j)).norm());
                }
            }
        }
        worst
    }
}

pub(crate) fn plus_ket() -> Vec<C64> {
    vec![C64::new(FRAC_1_SQRT_2, 0.0), C64::new(FRAC_1_SQRT_2, 0.0)]
}

pub(crate) fn minus_ket() -> Vec<C64> {
    vec![C64::new(FRAC_1_SQRT_2, 0.0), C64::new(-FRAC_1_SQRT_2, 0.0)]
}

/// Uniform superposition `(|1⟩+…+|d⟩)/√d`.
pub fn uniform_ket(d: usize) -> Vec<C64> {
    vec![C64::new(1.0 / (d as f64).sqrt(), 0.0); d]
}

/// Joint state of the two-state protocol.
pub fn build_two_state(p_plus: f64, p_minus: f64, alpha: C64, alpha_plus: C64) -> Result<ProtocolState> {
    let ensemble = Ensemble::two_state(p_plus, p_minus, alpha, alpha_plus)?;
    two_state_from_ensemble(ensemble)
}

/// Two-state construction for an already validated d = 2 ensemble
/// (`alphas = [α₊, α₋]`).
pub fn two_state_from_ensemble(ensemble: Ensemble) -> Result<ProtocolState> {
    if ensemble.d() != 2 {
        return Err(Error::DimensionMismatch(format!("two-state construction needs 2 states, got {}", ensemble.d())));
    }
    ProtocolState::assemble(ensemble, Construction::TwoState, vec![plus_ket(), minus_ket()], basis_ket(2, 0))
}

/// Joint state of the d-state protocol.
pub fn build_d_state(priors: Vec<f64>, alphas: Vec<C64>) -> Result<ProtocolState> {
    d_state_from_ensemble(Ensemble::new(priors, alphas)?)
}

pub fn d_state_from_ensemble(ensemble: Ensemble) -> Result<ProtocolState> {
    let d = ensemble.d();
    let success = (0..d).map(|i| basis_ket(d, i)).collect();
    ProtocolState::assemble(ensemble, Construction::DState, success, uniform_ket(d))
}

/// Builds the protocol state with whichever construction the ensemble asks for.
pub fn build(ensemble: Ensemble, construction: Construction) -> Result<ProtocolState> {
    match construction {
        Construction::TwoState => two_state_from_ensemble(ensemble),
        Construction::DState => d_state_from_ensemble(ensemble),
    }
}

/// Hadamard on the system qubit, identity on the ancilla. Maps the d = 2
/// construction onto the two-state one.
pub fn hadamard_on_system() -> ComplexMatrix {
    let h = FRAC_1_SQRT_2;
    let had = ComplexMatrix::new(2, vec![C64::new(h, 0.0), C64::new(h, 0.0), C64::new(h, 0.0), C64::new(-h, 0.0)]).unwrap();
    crate::matrixcore::kron(&had, &ComplexMatrix::identity(2))
}

/// `U ρ U†` for a joint unitary `U`, keeping the bipartition.
pub fn conjugate(rho: &DensityMatrix, u: &ComplexMatrix) -> Result<DensityMatrix> {
    let m = &(u * rho.mat()) * &u.dagger();
    // Round-off can leave tiny anti-Hermitian parts.
    let herm = ComplexMatrix::from_fn(m.dim(), |r, c| (m[(r, c)] + m[(c, r)].conj()) * 0.5);
    DensityMatrix::new(herm, rho.dims())
}
