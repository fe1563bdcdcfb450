use rand::distr::weighted::WeightedIndex;
use rand::distr::Distribution;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::ensembles::ProtocolState;
use crate::error::{Error, Result};
use crate::matrixcore::inner;
use crate::C64;

/// Generator identifier recorded with every run.
pub const RNG_ALGORITHM: &str = "chacha8/seed_from_u64/stream=worker";

/// Trials are always split over this many streams, independent of thread count.
const WORKERS: u64 = 16;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrialStats {
    pub trials: u64,
    pub successes: u64,
    pub misidentifications_given_success: u64,
    pub frequency: f64,
    pub stderr: f64,
    pub seed: u64,
    pub rng_algorithm: String,
}

/// Born probabilities for one prepared state.
struct Branch {
    p_success: f64,
    readout: WeightedIndex<f64>,
}

fn branches(state: &ProtocolState) -> Result<Vec<Branch>> {
    let d = state.ensemble.d();
    let basis = state.discrimination_basis();
    state
        .branch_vectors
        .iter()
        .map(|v| {
            // system amplitude attached to ancilla |0⟩
            let sys: Vec<C64> = (0..d).map(|s| v[2 * s]).collect();
            let p_success: f64 = sys.iter().map(|z| z.norm_sqr()).sum();
            let weights: Vec<f64> = basis.iter().map(|b| inner(b, &sys).norm_sqr()).collect();
            let readout = WeightedIndex::new(&weights)
                .map_err(|e| Error::InvalidInput(format!("readout distribution: {e}")))?;
            Ok(Branch { p_success, readout })
        })
        .collect()
}

/// Simulates prepare, ancilla measurement and system readout `trials` times.
pub fn run_monte_carlo(state: &ProtocolState, trials: u64, seed: u64) -> Result<TrialStats> {
    if trials == 0 {
        return Err(Error::InvalidInput("trials must be at least 1".into()));
    }
    let prior = WeightedIndex::new(state.ensemble.priors())
        .map_err(|e| Error::BadPriors(format!("{e}")))?;
    let branches = branches(state)?;

    let (successes, wrong) = (0..WORKERS)
        .into_par_iter()
        .map(|w| {
            let n = trials / WORKERS + u64::from(w < trials % WORKERS);
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(w);
            let (mut ok, mut bad) = (0u64, 0u64);
            for _ in 0..n {
                let i = prior.sample(&mut rng);
                let b = &branches[i];
                if rng.random::<f64>() < b.p_success {
                    ok += 1;
                    if b.readout.sample(&mut rng) != i {
                        bad += 1;
                    }
                }
            }
            (ok, bad)
        })
        .reduce(|| (0, 0), |a, b| (a.0 + b.0, a.1 + b.1));

    let frequency = successes as f64 / trials as f64;
    Ok(TrialStats {
        trials,
        successes,
        misidentifications_given_success: wrong,
        frequency,
        stderr: (frequency * (1.0 - frequency) / trials as f64).sqrt(),
        seed,
        rng_algorithm: RNG_ALGORITHM.to_string(),
    })
}
