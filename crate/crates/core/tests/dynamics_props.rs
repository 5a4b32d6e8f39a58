mod common;

use common::*;
use cryptoherm::ensemble::{complex_vector, seeded};
use cryptoherm::{build_density, evolve, evolve_density, projector, transport_projector, uniform_grid, Vector};
use proptest::prelude::*;

fn shape() -> impl Strategy<Value = (usize, usize, u64)> {
    (2usize..=12, 2usize..=6, any::<u64>())
}

/// A generated model rescaled so that `‖H‖_F = 10 · fraction`.
fn bounded(dim: usize, k: usize, seed: u64, fraction: f64) -> cryptoherm::Model {
    let g = generated(dim, k, seed);
    let s = 10.0 * fraction / g.model.hamiltonian().norm_fro();
    g.model.rescaled(s)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn physical_norm_is_conserved((dim, k, seed) in shape(), fraction in 0.05f64..=1.0) {
        let model = bounded(dim, k, seed, fraction);
        let psi = complex_vector::<f64>(dim, &mut seeded(seed ^ 11));
        let traj = evolve(&model, &psi, &uniform_grid(10.0, 40).unwrap()).unwrap();
        // Rounding in exp(−iHt) is amplified by the metric; the observed
        // worst case over the grid sweep is about 250 · cond(Θ) · eps.
        let tol = 1e-9 + 2048.0 * f64::EPSILON * model.chain().metric_condition(0).unwrap();
        prop_assert!(traj.physical_drift() < tol, "{} tol {tol}", traj.physical_drift());
    }

    #[test]
    fn projectors_transport_covariantly((dim, k, seed) in shape(), t in 0.0f64..=10.0) {
        let model = bounded(dim, k, seed, 1.0);
        let psi = complex_vector::<f64>(dim, &mut seeded(seed ^ 12));
        let pi0 = projector(&model, &psi).unwrap();
        let idem = rel(&mul(&pi0, &pi0), &pi0);
        prop_assert!(idem < 1e-12 * dim as f64 * model.chain().metric_condition(0).unwrap().max(1.0), "{idem}");
        let psi_t = evolve(&model, &psi, &[t]).unwrap().states.remove(0);
        let direct = projector(&model, &psi_t).unwrap();
        let moved = transport_projector(&model, &pi0, t).unwrap();
        let tol = 1e-10 * model.chain().metric_condition(0).unwrap().max(1.0);
        prop_assert!(rel(&moved, &direct) < tol, "{}", rel(&moved, &direct));
    }

    #[test]
    fn mixtures_stay_physical((dim, k, seed) in shape()) {
        let model = bounded(dim, k, seed, 1.0);
        let mut rng = seeded(seed ^ 13);
        let states: Vec<Vector> = (0..3).map(|_| complex_vector(dim, &mut rng)).collect();
        let rho0 = build_density(&model, &states, &[0.5, 0.3, 0.2]).unwrap();
        let series = evolve_density(&model, &rho0, &uniform_grid(10.0, 10).unwrap()).unwrap();
        for rho in &series {
            prop_assert!((rho.trace() - rho0.trace()).norm() < 1e-9);
            let spec = rho.physical_spectrum(&model).unwrap();
            prop_assert!(spec.min_re >= -1e-11, "{}", spec.min_re);
            prop_assert!(spec.max_abs_im < 1e-9, "{}", spec.max_abs_im);
        }
    }
}

#[test]
fn short_chains_conserve_to_the_plain_tolerance() {
    for seed in 0..40u64 {
        let dim = 2 + seed as usize % 15;
        let (k, cap) = if seed % 2 == 0 { (2, cryptoherm::DEFAULT_FACTOR_CAP) } else { (3, 2.0) };
        let g = cryptoherm::generate_chain::<f64>(dim, k, seed, cap).unwrap();
        let model = g.model.rescaled(10.0 / g.model.hamiltonian().norm_fro());
        let psi = complex_vector::<f64>(dim, &mut seeded(seed));
        let traj = evolve(&model, &psi, &uniform_grid(10.0, 40).unwrap()).unwrap();
        assert!(traj.physical_drift() < 1e-9, "seed {seed}: {}", traj.physical_drift());
    }
}

#[test]
fn intermediate_norms_vary() {
    let mut draws = 0;
    let mut varying = 0;
    for seed in 0..100u64 {
        let dim = 2 + seed as usize % 11;
        let k = 3 + seed as usize % 4;
        let model = bounded(dim, k, seed, 1.0);
        let psi = complex_vector::<f64>(dim, &mut seeded(seed));
        let traj = evolve(&model, &psi, &uniform_grid(10.0, 40).unwrap()).unwrap();
        for j in 1..k - 1 {
            draws += 1;
            varying += usize::from(traj.drift(j) > 1e-6);
        }
    }
    assert!(varying * 10 >= 9 * draws, "{varying}/{draws}");
}

#[test]
fn hermitian_model_evolves_unitarily() {
    let h = cryptoherm::ensemble::gue::<f64>(4, &mut seeded(1));
    let chain = cryptoherm::SpaceChain::new(vec![cryptoherm::Matrix::identity(4)], cryptoherm::ChainMode::StrictPd).unwrap();
    let model = cryptoherm::QuantumModel::verified(chain, h, None).unwrap();
    let psi = complex_vector::<f64>(4, &mut seeded(2));
    let traj = evolve(&model, &psi, &uniform_grid(10.0, 20).unwrap()).unwrap();
    assert!(traj.drift(0) < 1e-12 && traj.drift(1) < 1e-12);
}
