mod common;

use assisted_usd::correlations::{discord, DiscordConfig, Side};
use assisted_usd::discrimination::{
    equal_overlap_optimal, linspace, optimal_probability, success_probability_d,
    success_probability_parameterized, OptimizationInput,
};
use assisted_usd::ensembles::{build_d_state, d_state_from_ensemble, Ensemble};
use assisted_usd::matrixcore::{
    kron, mutual_information, partial_trace, partial_transpose, von_neumann_entropy, Subsystem,
};
use assisted_usd::separability::{build_decomposition, d_state_condition, ppt_test};
use assisted_usd::{ComplexMatrix, DensityMatrix, C64};
use common::*;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn matrix(n: usize) -> impl Strategy<Value = ComplexMatrix> {
    prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0), n * n)
        .prop_map(move |v| ComplexMatrix::new(n, v.into_iter().map(|(a, b)| C64::new(a, b)).collect()).unwrap())
}

fn density(dims: (usize, usize)) -> impl Strategy<Value = DensityMatrix> {
    any::<u64>().prop_map(move |s| random_density(dims, &mut ChaCha8Rng::seed_from_u64(s)))
}

fn unitary(n: usize) -> impl Strategy<Value = ComplexMatrix> {
    prop::collection::vec(-3.0f64..3.0, n * n).prop_map(move |xs| unitary_from(n, &xs))
}

fn ensemble(d: std::ops::RangeInclusive<usize>) -> impl Strategy<Value = Ensemble> {
    (d, any::<u64>()).prop_map(|(d, s)| random_ensemble(d, &mut ChaCha8Rng::seed_from_u64(s)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn kron_mixed_product(a in matrix(2), b in matrix(3), c in matrix(2), e in matrix(3)) {
        let lhs = &kron(&a, &b) * &kron(&c, &e);
        let rhs = kron(&(&a * &c), &(&b * &e));
        prop_assert!(lhs.max_abs_diff(&rhs) < 1e-12);
    }

    #[test]
    fn entropy_unitary_invariant(rho in density((2, 3)), u in unitary(6)) {
        let v = &(&u * rho.mat()) * &u.dagger();
        let s0 = von_neumann_entropy(rho.mat()).unwrap();
        let s1 = von_neumann_entropy(&v).unwrap();
        prop_assert!((s0 - s1).abs() < 1e-9);
    }

    #[test]
    fn partial_trace_of_product(a in density((2, 1)), b in density((3, 1))) {
        let p = DensityMatrix::new(kron(a.mat(), b.mat()), (2, 3)).unwrap();
        prop_assert!(partial_trace(&p, Subsystem::System).mat().max_abs_diff(a.mat()) < 1e-14);
        prop_assert!(partial_trace(&p, Subsystem::Ancilla).mat().max_abs_diff(b.mat()) < 1e-14);
        prop_assert!(mutual_information(&p).unwrap().abs() < 1e-10);
    }

    #[test]
    fn partial_transpose_involution(rho in density((3, 2))) {
        for side in [Subsystem::System, Subsystem::Ancilla] {
            let t = partial_transpose(&rho, side);
            prop_assert!((t.trace() - C64::new(1.0, 0.0)).norm() < 1e-12);
            // PT of PT restores the state
            let tt = ComplexMatrix::from_fn(6, |r, c| {
                let (i, a) = (r / 2, r % 2);
                let (j, b) = (c / 2, c % 2);
                match side {
                    Subsystem::System => t[(j * 2 + a, i * 2 + b)],
                    Subsystem::Ancilla => t[(i * 2 + b, j * 2 + a)],
                }
            });
            prop_assert!(tt.max_abs_diff(rho.mat()) < 1e-15);
        }
    }

    #[test]
    fn ppt_invariant_under_local_unitaries(e in ensemble(2..=4), seed in any::<u64>()) {
        let state = d_state_from_ensemble(e).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let d = state.ensemble.d();
        let moved = local(&state.rho, &random_unitary(d, &mut rng), &random_unitary(2, &mut rng));
        let a = ppt_test(&state.rho);
        let b = ppt_test(&moved);
        prop_assert_eq!(a.ppt, b.ppt);
        prop_assert!((a.min_eigenvalue - b.min_eigenvalue).abs() < 1e-9);
    }

    #[test]
    fn protocol_state_reproduces_overlaps(e in ensemble(2..=6)) {
        let state = d_state_from_ensemble(e).unwrap();
        prop_assert!(state.gram_residual() < 1e-12);
        let p = success_probability_d(&state.ensemble);
        prop_assert!((0.0..=1.0).contains(&p));
    }

    #[test]
    fn condition_implies_decomposition(
        mods in prop::collection::vec(0.05f64..0.95, 2..=5),
        phase in 0.0f64..std::f64::consts::TAU,
    ) {
        let e = satisfying(&mods, phase);
        prop_assert!(d_state_condition(&e).holds);
        let state = d_state_from_ensemble(e).unwrap();
        let dec = build_decomposition(&state).unwrap();
        prop_assert!(dec.reconstruct().max_abs_diff(state.rho.mat()) < 1e-10);
        prop_assert!(dec.min_factor_eigenvalue >= -1e-10);
    }

    #[test]
    fn optimum_dominates_feasible_points(
        d in 2usize..=6,
        seed in any::<u64>(),
    ) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let priors = random_priors(d, &mut rng);
        let overlaps = (1..d).map(|_| {
            use rand::Rng;
            C64::from_polar(rng.random_range(0.0..0.9), rng.random_range(0.0..6.3))
        }).collect();
        let input = OptimizationInput::new(priors, overlaps).unwrap();
        let opt = optimal_probability(&input);
        prop_assert!((0.0..=1.0).contains(&opt.p_opt));
        for x in linspace(0.0, 1.0, 501) {
            if let Ok(p) = success_probability_parameterized(x, &input) {
                prop_assert!(opt.p_opt >= p - 1e-9);
            }
        }
    }

    #[test]
    fn equal_overlap_nonincreasing(d in 2usize..=10, a in 0.0f64..1.0, b in 0.0f64..1.0) {
        let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
        prop_assert!(equal_overlap_optimal(d, lo).unwrap() >= equal_overlap_optimal(d, hi).unwrap() - 1e-15);
    }

    #[test]
    fn zero_left_discord_family_matches_closed_form(d in 2usize..=10, g in 0.0f64..1.0) {
        let input = OptimizationInput::equal(d, g).unwrap();
        let a = optimal_probability(&input).p_opt;
        let b = equal_overlap_optimal(d, g).unwrap();
        prop_assert!((a - b).abs() < 1e-12);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn discord_covariant_under_local_unitaries(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let rho = random_density((2, 2), &mut rng);
        let moved = local(&rho, &random_unitary(2, &mut rng), &random_unitary(2, &mut rng));
        let cfg = DiscordConfig::default();
        for side in [Side::Left, Side::Right] {
            let a = discord(&rho, side, &cfg).unwrap();
            let b = discord(&moved, side, &cfg).unwrap();
            prop_assert!((a.discord - b.discord).abs() <= 2e-6, "{:?}: {} vs {}", side, a.discord, b.discord);
            prop_assert!(a.discord >= 0.0 && a.discord <= a.mutual_info + 1e-9);
        }
    }

    #[test]
    fn qutrit_discord_covariant(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let e = random_ensemble(3, &mut rng);
        let state = build_d_state(e.priors().to_vec(), e.alphas().to_vec()).unwrap();
        let moved = local(&state.rho, &random_unitary(3, &mut rng), &random_unitary(2, &mut rng));
        let cfg = DiscordConfig::default();
        for side in [Side::Left, Side::Right] {
            let a = discord(&state.rho, side, &cfg).unwrap();
            let b = discord(&moved, side, &cfg).unwrap();
            prop_assert!((a.discord - b.discord).abs() <= 2e-6, "{:?}: {} vs {}", side, a.discord, b.discord);
        }
    }
}
