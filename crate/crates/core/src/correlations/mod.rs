//! Left/right quantum discord and zero-discord certification.
//!
//! "Left" discord measures the system (first factor), "right" discord the
//! ancilla (second factor). With `A` the system and `B` the ancilla,
//!
//! ```text
//! D_right(ρ) = I(ρ) − [S(ρ_A) − min_{E_k on B} Σ_k p_k S(ρ_{A|k})]
//! D_left(ρ)  = I(ρ) − [S(ρ_B) − min_{E_k on A} Σ_k p_k S(ρ_{B|k})]
//! ```
//!
//! with the minimum over rank-1 projective measurements. The minimum is
//! searched by a deterministic grid followed by Nelder–Mead polishing, so a
//! reported discord is a best-found upper bound.

mod measurement;
mod optimize;
mod schmidt;

use std::f64::consts::PI;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::ensembles::Ensemble;
use crate::error::{Error, Result};
use crate::matrixcore::{
    entropy_bits, hermitian_eigenvalues, inner, mutual_information, partial_trace, ComplexMatrix, DensityMatrix,
    Subsystem, C64,
};
use crate::separability;
use crate::tolerances::Tolerances;

pub use measurement::{parameter_count, MeasurementBasis};
pub use optimize::{Minimum, NelderMead};
pub use schmidt::{
    operator_schmidt, operator_schmidt_tol, zero_discord_certify, zero_discord_certify_tol, OperatorSchmidtDecomposition,
    ZeroDiscordCertificate,
};

/// Which party is measured.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Side {
    /// Measurement on the system.
    Left,
    /// Measurement on the ancilla.
    Right,
}

impl Side {
    pub fn measured(self) -> Subsystem {
        match self {
            Side::Left => Subsystem::System,
            Side::Right => Subsystem::Ancilla,
        }
    }
}

/// Largest measured dimension the optimizer accepts.
pub const MAX_OPTIMIZED_DIM: usize = 3;

/// Grid and polishing settings for the discord optimizer.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DiscordConfig {
    /// `(θ points on [0, π], φ points on [0, 2π))` for a measured qubit.
    pub qubit_grid: (usize, usize),
    /// `(θ points on [0, π/2], φ points on [0, 2π))` per Givens rotation for a measured qutrit.
    pub givens_grid: (usize, usize),
    /// Number of distinct best grid points to polish.
    pub seeds: usize,
    /// Also polish from eigenbases of the measured marginal and of the local Schmidt operators.
    pub spectral_seeds: bool,
    pub initial_step: f64,
    /// Polishing stops when the simplex is smaller than this (radians).
    pub step_tol: f64,
    /// Polishing stops when the simplex value spread is below this (bits).
    pub improvement_tol: f64,
    pub max_evals_per_run: usize,
    /// Extra Nelder–Mead runs restarted from each polished point.
    pub restarts: usize,
    pub tolerances: Tolerances,
}

impl Default for DiscordConfig {
    fn default() -> Self {
        Self {
            qubit_grid: (32, 64),
            givens_grid: (5, 4),
            seeds: 5,
            spectral_seeds: true,
            initial_step: 0.1,
            step_tol: 1e-7,
            improvement_tol: 1e-10,
            max_evals_per_run: 5_000,
            restarts: 2,
            tolerances: Tolerances::default(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DiscordReport {
    pub side: Side,
    pub discord: f64,
    pub mutual_info: f64,
    /// `S(unmeasured marginal) − min conditional entropy`.
    pub classical_correlation: f64,
    pub min_conditional_entropy: f64,
    pub argmin_basis: MeasurementBasis,
    pub optimizer_evals: usize,
    pub zero_certified: bool,
    pub commutator_residual: f64,
}

/// Unnormalized state of the unmeasured party after outcome `v` on the measured one.
fn collapse(m: &ComplexMatrix, (ds, da): (usize, usize), measured: Subsystem, v: &[C64]) -> ComplexMatrix {
    match measured {
        Subsystem::System => ComplexMatrix::from_fn(da, |b, bp| {
            let mut acc = C64::new(0.0, 0.0);
            for a in 0..ds {
                let va = v[a].conj();
                if va.norm_sqr() == 0.0 {
                    continue;
                }
                for ap in 0..ds {
                    acc += va * m[(a * da + b, ap * da + bp)] * v[ap];
                }
            }
            acc
        }),
        Subsystem::Ancilla => ComplexMatrix::from_fn(ds, |a, ap| {
            let mut acc = C64::new(0.0, 0.0);
            for b in 0..da {
                for bp in 0..da {
                    acc += v[b].conj() * m[(a * da + b, ap * da + bp)] * v[bp];
                }
            }
            acc
        }),
    }
}

fn conditional_entropy_vectors(rho: &DensityMatrix, measured: Subsystem, vectors: &[Vec<C64>], tol: &Tolerances) -> f64 {
    vectors
        .iter()
        .map(|v| {
            let sigma = collapse(rho.mat(), rho.dims(), measured, v);
            let p = sigma.trace().re;
            if p <= tol.outcome_prob {
                return 0.0;
            }
            let eig = hermitian_eigenvalues(&sigma);
            p * entropy_bits(eig.into_iter().map(|x| x / p), tol.entropy_clip)
        })
        .sum()
}

/// `Σ_k p_k S(ρ_{other|k})` for the measurement `basis`.
pub fn conditional_entropy(rho: &DensityMatrix, basis: &MeasurementBasis) -> Result<f64> {
    let measured = basis.subsystem.measured();
    let dim = rho.dim_of(measured);
    if basis.dim != dim {
        return Err(Error::DimensionMismatch(format!(
            "basis has dimension {} but the measured factor has dimension {dim}",
            basis.dim
        )));
    }
    Ok(conditional_entropy_vectors(rho, measured, &basis.vectors(), &Tolerances::default()))
}

fn grid_points(dim: usize, cfg: &DiscordConfig) -> Vec<Vec<f64>> {
    match dim {
        1 => vec![vec![]],
        2 => {
            let (nt, np) = cfg.qubit_grid;
            let mut pts = Vec::with_capacity(nt * np);
            for i in 0..nt {
                let theta = if nt > 1 { PI * i as f64 / (nt - 1) as f64 } else { 0.0 };
                for j in 0..np {
                    pts.push(vec![theta, 2.0 * PI * j as f64 / np as f64]);
                }
            }
            pts
        }
        _ => {
            let (nt, np) = cfg.givens_grid;
            let single: Vec<(f64, f64)> = (0..nt)
                .flat_map(|i| {
                    let theta = if nt > 1 { 0.5 * PI * i as f64 / (nt - 1) as f64 } else { 0.0 };
                    (0..np).map(move |j| (theta, 2.0 * PI * j as f64 / np as f64))
                })
                .collect();
            let npairs = parameter_count(dim) / 2;
            let mut pts: Vec<Vec<f64>> = vec![vec![]];
            for _ in 0..npairs {
                pts = pts
                    .into_iter()
                    .flat_map(|p| {
                        single.iter().map(move |&(t, f)| {
                            let mut q = p.clone();
                            q.push(t);
                            q.push(f);
                            q
                        })
                    })
                    .collect();
            }
            pts
        }
    }
}

fn lex_cmp(a: &[f64], b: &[f64]) -> std::cmp::Ordering {
    for (x, y) in a.iter().zip(b) {
        let o = x.total_cmp(y);
        if o.is_ne() {
            return o;
        }
    }
    a.len().cmp(&b.len())
}

fn same_measurement(dim: usize, a: &[f64], b: &[f64]) -> bool {
    let va = measurement::basis_vectors(dim, a);
    let vb = measurement::basis_vectors(dim, b);
    va.iter().zip(&vb).all(|(x, y)| 1.0 - inner(x, y).norm() < 1e-9)
}

/// Canonical Bloch angles: θ ∈ [0, π], φ ∈ [0, 2π).
fn canonical_angles(dim: usize, angles: &[f64]) -> Vec<f64> {
    if dim != 2 {
        return angles.to_vec();
    }
    let mut theta = angles[0].rem_euclid(2.0 * PI);
    let mut phi = angles[1];
    if theta > PI {
        theta = 2.0 * PI - theta;
        phi += PI;
    }
    vec![theta, phi.rem_euclid(2.0 * PI)]
}

/// Eigenbases that coincide with the optimal measurement for zero-discord states.
fn spectral_seed_angles(rho: &DensityMatrix, side: Side, tol: &Tolerances) -> Vec<Vec<f64>> {
    let measured = side.measured();
    let mut seeds = Vec::new();
    let marginal = partial_trace(rho, measured);
    if let Ok(spec) = crate::matrixcore::hermitian_spectrum(marginal.mat()) {
        seeds.push(measurement::angles_from_unitary(&spec.eigenvectors));
    }
    let dec = operator_schmidt_tol(rho, tol);
    let ops = dec.ops(side);
    if !ops.is_empty() {
        let dim = ops[0].dim();
        let mut h = ComplexMatrix::zeros(dim);
        let i = C64::new(0.0, 1.0);
        for (n, s) in ops.iter().enumerate() {
            // incommensurate weights keep the combination non-degenerate
            let w_re = 1.0 / (n as f64 + 1.0).sqrt();
            let w_im = 1.0 / (n as f64 + 2.0).sqrt() * 0.6180339887;
            let sd = s.dagger();
            let herm = (s + &sd).scale_re(0.5 * w_re);
            let anti = (s - &sd).scale(-i * 0.5 * w_im);
            h = &(&h + &herm) + &anti;
        }
        if let Ok(spec) = crate::matrixcore::hermitian_spectrum_tol(&h, 1e-8) {
            seeds.push(measurement::angles_from_unitary(&spec.eigenvectors));
        }
    }
    seeds
}

/// Optimized discord with the measurement on `side`.
pub fn discord(rho: &DensityMatrix, side: Side, cfg: &DiscordConfig) -> Result<DiscordReport> {
    let tol = &cfg.tolerances;
    let measured = side.measured();
    let dim = rho.dim_of(measured);
    if dim > MAX_OPTIMIZED_DIM {
        return Err(Error::UnsupportedDimension(dim));
    }
    let mutual_info = mutual_information(rho)?;
    let unmeasured_entropy = partial_trace(rho, measured.other()).entropy()?;

    let objective = |angles: &[f64]| {
        let vs = measurement::basis_vectors(dim, angles);
        conditional_entropy_vectors(rho, measured, &vs, tol)
    };

    let grid = grid_points(dim, cfg);
    let mut scored: Vec<(f64, Vec<f64>)> = grid.into_par_iter().map(|a| (objective(&a), a)).collect();
    let mut evals = scored.len();
    scored.sort_by(|a, b| a.0.total_cmp(&b.0).then_with(|| lex_cmp(&a.1, &b.1)));

    let mut starts: Vec<Vec<f64>> = Vec::new();
    for (_, a) in &scored {
        if starts.len() >= cfg.seeds {
            break;
        }
        if !starts.iter().any(|s| same_measurement(dim, s, a)) {
            starts.push(a.clone());
        }
    }
    if cfg.spectral_seeds && dim > 1 {
        starts.extend(spectral_seed_angles(rho, side, tol));
    }

    let nm = NelderMead {
        initial_step: cfg.initial_step,
        step_tol: cfg.step_tol,
        value_tol: cfg.improvement_tol,
        max_evals: cfg.max_evals_per_run,
    };
    let polished: Vec<Minimum> = starts
        .par_iter()
        .map(|s| {
            let mut m = nm.minimize(objective, s);
            let mut step = cfg.initial_step;
            for _ in 0..cfg.restarts {
                step *= 0.1;
                let again = NelderMead { initial_step: step, ..nm }.minimize(objective, &m.x);
                let evals = m.evals + again.evals;
                if again.value <= m.value {
                    m = again;
                }
                m.evals = evals;
            }
            m
        })
        .collect();

    let mut best = (scored[0].0, scored[0].1.clone());
    for m in &polished {
        evals += m.evals;
        let better = m.value < best.0 || (m.value == best.0 && lex_cmp(&m.x, &best.1).is_lt());
        if better {
            best = (m.value, m.x.clone());
        }
    }

    let min_ce = best.0;
    let classical = unmeasured_entropy - min_ce;
    let mut value = mutual_info - classical;
    if value < 0.0 && value >= -tol.discord_clamp {
        value = 0.0;
    }
    let cert = zero_discord_certify_tol(rho, side, tol);
    Ok(DiscordReport {
        side,
        discord: value,
        mutual_info,
        classical_correlation: classical,
        min_conditional_entropy: min_ce,
        argmin_basis: MeasurementBasis::new(side, dim, canonical_angles(dim, &best.1)),
        optimizer_evals: evals,
        zero_certified: cert.zero,
        commutator_residual: cert.residual,
    })
}

/// Closed-form zero-left-discord test for a protocol ensemble.
///
/// Left discord of the protocol state vanishes iff the state is separable
/// and the success weights `p_i(1−|α_i|²)` are all equal. Both parts are
/// reported.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LeftZeroCondition {
    pub equal_success_weights: bool,
    pub weights_residual: f64,
    pub separable: bool,
    pub separable_residual: f64,
    pub zero_left_discord: bool,
}

pub fn left_zero_condition_closed_form(ensemble: &Ensemble) -> LeftZeroCondition {
    left_zero_condition_closed_form_tol(ensemble, &Tolerances::default())
}

pub fn left_zero_condition_closed_form_tol(ensemble: &Ensemble, tol: &Tolerances) -> LeftZeroCondition {
    let weights: Vec<f64> =
        ensemble.priors().iter().zip(ensemble.alphas()).map(|(p, a)| p * (1.0 - a.norm_sqr())).collect();
    let mut residual = 0.0f64;
    for i in 0..weights.len() {
        for j in (i + 1)..weights.len() {
            residual = residual.max((weights[i] - weights[j]).abs());
        }
    }
    let equal = residual <= tol.condition;
    let sep = separability::d_state_condition_tol(ensemble, tol);
    LeftZeroCondition {
        equal_success_weights: equal,
        weights_residual: residual,
        separable: sep.holds,
        separable_residual: sep.residual,
        zero_left_discord: equal && sep.holds,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ensembles::{build_d_state, build_two_state};
    use crate::matrixcore::states::bell_phi_plus;
    use crate::matrixcore::{kron, ComplexMatrix};

    fn re(x: f64) -> C64 {
        C64::new(x, 0.0)
    }

    fn product_state() -> DensityMatrix {
        let mut a = ComplexMatrix::diag(&[0.3, 0.7]);
        a[(0, 1)] = C64::new(0.1, 0.2);
        a[(1, 0)] = C64::new(0.1, -0.2);
        let mut b = ComplexMatrix::diag(&[0.6, 0.4]);
        b[(0, 1)] = C64::new(-0.2, 0.05);
        b[(1, 0)] = C64::new(-0.2, -0.05);
        DensityMatrix::new(kron(&a, &b), (2, 2)).unwrap()
    }

    #[test]
    fn conditional_entropy_examples() {
        let rho = product_state();
        let s_a = partial_trace(&rho, Subsystem::System).entropy().unwrap();
        for angles in [[0.0, 0.0], [1.1, 2.3], [2.9, 5.0]] {
            let b = MeasurementBasis::new(Side::Right, 2, angles.to_vec());
            assert!((conditional_entropy(&rho, &b).unwrap() - s_a).abs() < 1e-12);
        }
        let b = MeasurementBasis::computational(Side::Right, 2);
        assert!(conditional_entropy(&bell_phi_plus(), &b).unwrap().abs() < 1e-12);

        let wrong = MeasurementBasis::computational(Side::Right, 3);
        assert!(matches!(conditional_entropy(&rho, &wrong), Err(Error::DimensionMismatch(_))));
    }

    #[test]
    fn conditional_entropy_protocol_branch_collapse() {
        // Ancilla outcome 0 leaves Σ p (1−|α|²)|±⟩⟨±| = ⅜ I on the system
        // (entropy 1 bit), outcome 1 leaves ¼|0⟩⟨0| (pure).
        let ps = build_two_state(0.5, 0.5, re(0.25), re(0.5)).unwrap();
        let b = MeasurementBasis::computational(Side::Right, 2);
        let ce = conditional_entropy(&ps.rho, &b).unwrap();
        assert!((ce - 0.75).abs() < 1e-12);
    }

    #[test]
    fn discord_of_product_is_zero() {
        let cfg = DiscordConfig::default();
        for side in [Side::Left, Side::Right] {
            let r = discord(&product_state(), side, &cfg).unwrap();
            assert!(r.discord.abs() < 1e-7, "{side:?}: {}", r.discord);
            assert!(r.zero_certified);
        }
    }

    #[test]
    fn discord_of_bell_is_one_bit() {
        let cfg = DiscordConfig::default();
        for side in [Side::Left, Side::Right] {
            let r = discord(&bell_phi_plus(), side, &cfg).unwrap();
            assert!((r.discord - 1.0).abs() < 1e-6);
            assert!((r.mutual_info - 2.0).abs() < 1e-12);
            assert!(!r.zero_certified);
        }
    }

    #[test]
    fn optimal_two_state_has_right_but_no_left_discord() {
        let ps = build_two_state(0.5, 0.5, re(0.25), re(0.5)).unwrap();
        let cfg = DiscordConfig::default();
        let right = discord(&ps.rho, Side::Right, &cfg).unwrap();
        let left = discord(&ps.rho, Side::Left, &cfg).unwrap();
        assert!(right.discord > 1e-3, "right discord {}", right.discord);
        assert!(left.discord <= 1e-6, "left discord {}", left.discord);
        assert!(left.zero_certified);
        assert!(!right.zero_certified);
    }

    #[test]
    fn unsupported_dimension() {
        let ps = build_d_state(vec![0.25; 4], vec![re(0.6); 4]).unwrap();
        let err = discord(&ps.rho, Side::Left, &DiscordConfig::default()).unwrap_err();
        assert_eq!(err, Error::UnsupportedDimension(4));
        // certification still works at d = 4
        assert!(zero_discord_certify(&ps.rho, Side::Left).zero);
    }

    #[test]
    fn symmetric_qutrit_family_certified_left() {
        let ps = build_d_state(vec![1.0 / 3.0; 3], vec![re(0.5); 3]).unwrap();
        assert!(zero_discord_certify(&ps.rho, Side::Left).zero);
        assert!(!zero_discord_certify(&ps.rho, Side::Right).zero);
        let r = discord(&ps.rho, Side::Left, &DiscordConfig::default()).unwrap();
        assert!(r.discord <= 1e-6, "left discord {}", r.discord);
    }

    #[test]
    fn closed_form_left_condition() {
        let e = Ensemble::two_state(0.5, 0.5, re(0.25), re(0.5)).unwrap();
        let c = left_zero_condition_closed_form(&e);
        assert!(c.equal_success_weights && c.separable && c.zero_left_discord);

        let e = Ensemble::new(vec![0.3, 0.7], vec![re(0.5), re(0.5)]).unwrap();
        let c = left_zero_condition_closed_form(&e);
        assert!(!c.equal_success_weights);
        assert!(!c.zero_left_discord);

        let e = Ensemble::new(vec![0.25; 4], vec![re(0.6); 4]).unwrap();
        let c = left_zero_condition_closed_form(&e);
        assert!(c.zero_left_discord);
        let ps = crate::ensembles::d_state_from_ensemble(e).unwrap();
        assert_eq!(zero_discord_certify(&ps.rho, Side::Left).zero, c.zero_left_discord);
    }
}
