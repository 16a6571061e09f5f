//! Property tests of the structural invariants.

use ergoswitch_core::ergotropy::{coherent_ergotropy, ergotropy, incoherent_ergotropy};
use ergoswitch_core::qmat::rand_states::{random_density, random_hermitian};
use ergoswitch_core::qmat::{eig_hermitian, partial_trace, tensor};
use ergoswitch_core::thermo::{thermal_state, thermalizing_map, Hamiltonian};
use ergoswitch_core::tol;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn partial_trace_recovers_tensor_factors(seed in any::<u64>(), da in 2usize..4, db in 2usize..4) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = random_hermitian(&mut rng, da);
        let b = random_hermitian(&mut rng, db);
        let joint = tensor(&a, &b);
        let ta = a.trace().re;
        let tb = b.trace().re;
        let keep_a = partial_trace(&joint, &[da, db], 0).unwrap();
        prop_assert!(keep_a.max_abs_diff(&a.scale(tb)) <= tol::STRUCTURAL * (1.0 + ta.abs() + tb.abs()));
        let keep_b = partial_trace(&joint, &[da, db], 1).unwrap();
        prop_assert!(keep_b.max_abs_diff(&b.scale(ta)) <= tol::STRUCTURAL * (1.0 + ta.abs() + tb.abs()));
    }

    #[test]
    fn hermitian_eigensystems_reconstruct(seed in any::<u64>(), dim in 2usize..8) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let m = random_hermitian(&mut rng, dim);
        let eig = eig_hermitian(&m).unwrap();
        prop_assert!(eig.reconstruction_residual(&m) <= tol::SPECTRAL * (1.0 + m.frobenius_norm()));
        prop_assert!(eig.orthonormality_residual() <= tol::SPECTRAL);
        let sum: f64 = eig.values.iter().sum();
        prop_assert!((sum - m.trace().re).abs() <= tol::SPECTRAL * (1.0 + m.frobenius_norm()));
        for w in eig.values.windows(2) {
            prop_assert!(w[0] >= w[1]);
        }
    }

    #[test]
    fn qubit_work_splits_into_incoherent_plus_coherent(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let rho = random_density(&mut rng, 2);
        let h = Hamiltonian::qubit();
        let report = ergotropy(&rho, &h).unwrap();
        let wi = incoherent_ergotropy(&rho, &h).unwrap();
        let wc = coherent_ergotropy(&rho, &h).unwrap();
        prop_assert!((report.total - (wi + wc)).abs() <= tol::SPECTRAL);
        prop_assert!(report.total >= 0.0);
    }

    #[test]
    fn pin_maps_pin_everything(seed in any::<u64>(), beta_x in 0.0f64..5.0) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let h = Hamiltonian::qubit();
        let tau = thermal_state(beta_x, &h).unwrap();
        let channel = thermalizing_map(beta_x, &h).unwrap();
        let rho = random_density(&mut rng, 2);
        let out = channel.apply(&rho).unwrap();
        prop_assert!(out.matrix().frobenius_dist(tau.matrix()) <= tol::STRUCTURAL);
    }
}
