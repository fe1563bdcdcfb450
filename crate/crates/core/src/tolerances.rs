//! Numerical tolerances shared across the crate.
//!
//! Every threshold used for a decision (Hermiticity, positivity, equality of
//! closed-form conditions, rank cut-offs) lives in [`Tolerances`]. Functions
//! that make such decisions either take a `&Tolerances` or use
//! [`Tolerances::default`].

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Tolerances {
    /// Max |ρ − ρ†| entry accepted for a density matrix.
    pub hermitian_state: f64,
    /// Max |ρ − ρ†| entry accepted by the eigensolver.
    pub hermitian_input: f64,
    /// |Tr ρ − 1| bound for density matrices.
    pub trace: f64,
    /// Most negative eigenvalue still considered PSD.
    pub psd: f64,
    /// Eigenvalues below this are dropped from entropy sums.
    pub entropy_clip: f64,
    /// Outcomes with probability at or below this are skipped in conditional entropies.
    pub outcome_prob: f64,
    /// Singular values above this count toward the operator Schmidt rank.
    pub schmidt_rank: f64,
    /// Max commutator entry for a zero-discord certificate.
    pub commutator: f64,
    /// Absolute tolerance for closed-form equality conditions.
    pub condition: f64,
    /// Minimum Gram eigenvalue for linear independence.
    pub gram_rank: f64,
    /// Max reconstruction residual for a separable decomposition.
    pub reconstruction: f64,
    /// Clamp window for slightly negative discord values.
    pub discord_clamp: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            hermitian_state: 1e-12,
            hermitian_input: 1e-10,
            trace: 1e-12,
            psd: 1e-10,
            entropy_clip: 1e-12,
            outcome_prob: 1e-14,
            schmidt_rank: 1e-10,
            commutator: 1e-8,
            condition: 1e-10,
            gram_rank: 1e-10,
            reconstruction: 1e-8,
            discord_clamp: 1e-9,
        }
    }
}
