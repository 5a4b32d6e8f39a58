mod common;

use common::*;
use cryptoherm::ensemble::{complex_normal, complex_vector, ginibre, seeded};
use cryptoherm::matrix::vec_norm;
use cryptoherm::{Cx, Matrix, DEFAULT_FACTOR_CAP};
use proptest::prelude::*;

fn shape() -> impl Strategy<Value = (usize, usize, u64)> {
    (2usize..=16, 2usize..=6, any::<u64>())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn conjugation_is_an_involution((dim, k, seed) in shape()) {
        let g = generated(dim, k, seed);
        let a: Matrix = ginibre(dim, &mut seeded(seed ^ 1));
        for j in 0..k {
            let back = g.chain.conjugate(&g.chain.conjugate(&a, j).unwrap(), j).unwrap();
            let tol = conditioned_tol(dim, g.chain.metric_condition(j).unwrap());
            prop_assert!(rel(&back, &a) < tol, "j={j} r={} tol={tol}", rel(&back, &a));
        }
    }

    #[test]
    fn conjugation_reverses_products((dim, k, seed) in shape()) {
        let g = generated(dim, k, seed);
        let mut rng = seeded(seed ^ 2);
        let a: Matrix = ginibre(dim, &mut rng);
        let b: Matrix = ginibre(dim, &mut rng);
        for j in 0..k {
            let c = &g.chain;
            let lhs = c.conjugate(&mul(&a, &b), j).unwrap();
            let rhs = mul(&c.conjugate(&b, j).unwrap(), &c.conjugate(&a, j).unwrap());
            let r = lhs.dist_fro(&rhs) / (a.norm_fro() * b.norm_fro());
            prop_assert!(r < conditioned_tol(dim, c.metric_condition(j).unwrap()), "j={j} r={r}");
        }
    }

    #[test]
    fn conjugate_is_the_adjoint_of_each_inner_product((dim, k, seed) in shape()) {
        let g = generated(dim, k, seed);
        let c = &g.chain;
        let mut rng = seeded(seed ^ 3);
        let lam: Matrix = ginibre(dim, &mut rng);
        let a = complex_vector::<f64>(dim, &mut rng);
        let b = complex_vector::<f64>(dim, &mut rng);
        for j in 0..k {
            let lhs = c.inner_product(&a, &lam.matvec(&b).unwrap(), j).unwrap();
            let rhs = c.inner_product(&c.conjugate(&lam, j).unwrap().matvec(&a).unwrap(), &b, j).unwrap();
            let scale = c.metric(j).unwrap().norm_fro() * lam.norm_fro() * vec_norm(&a) * vec_norm(&b);
            let tol = conditioned_tol(dim, c.metric_condition(j).unwrap());
            prop_assert!((lhs - rhs).norm() / scale < tol, "j={j}");
        }
    }

    #[test]
    fn pull_down_identity((dim, k, seed) in shape()) {
        let g = generated(dim, k, seed);
        let c = &g.chain;
        let lam: Matrix = ginibre(dim, &mut seeded(seed ^ 4));
        for j in 0..k - 1 {
            let z = c.z(j + 1).unwrap();
            let rhs = solve(z, &mul(&c.conjugate(&lam, j + 1).unwrap(), z));
            let lhs = c.conjugate(&lam, j).unwrap();
            let tol = conditioned_tol(dim, c.metric_condition(j).unwrap());
            prop_assert!(rel(&lhs, &rhs) < tol, "j={j} r={}", rel(&lhs, &rhs));
        }
    }

    #[test]
    fn hermiticity_is_relegated_down_the_chain((dim, k, seed) in shape()) {
        let g = generated(dim, k, seed);
        let m = &g.model;
        for j in 0..k - 1 {
            let zj = m.z(j).unwrap();
            let zn = m.z(j + 1).unwrap();
            let lhs = mul(&m.chain().conjugate(zj, j + 1).unwrap(), zn);
            let rhs = mul(zn, zj);
            let r = lhs.dist_fro(&rhs) / (zj.norm_fro() * zn.norm_fro());
            prop_assert!(r < conditioned_tol(dim, m.chain().metric_condition(j + 1).unwrap()).max(1e-10 * dim as f64), "j={j} r={r}");
        }
    }

    #[test]
    fn inner_products_are_sesquilinear_and_conjugate_symmetric((dim, k, seed) in shape()) {
        let g = generated(dim, k, seed);
        let c = &g.chain;
        let mut rng = seeded(seed ^ 5);
        let a = complex_vector::<f64>(dim, &mut rng);
        let b = complex_vector::<f64>(dim, &mut rng);
        let d = complex_vector::<f64>(dim, &mut rng);
        let (al, be): (Cx<f64>, Cx<f64>) = (complex_normal(&mut rng), complex_normal(&mut rng));
        let comb: Vec<Cx<f64>> = b.iter().zip(&d).map(|(x, y)| al * x + be * y).collect();
        let scaled: Vec<Cx<f64>> = a.iter().map(|x| al * x).collect();
        for j in 0..k {
            let ip = |x: &[Cx<f64>], y: &[Cx<f64>]| c.inner_product(x, y, j).unwrap();
            let scale = c.metric(j).unwrap().norm_fro() * vec_norm(&a) * (vec_norm(&b) + vec_norm(&d)) * (1.0 + al.norm() + be.norm());
            let tol = 1e-12 * dim as f64 * scale;
            prop_assert!((ip(&a, &comb) - (al * ip(&a, &b) + be * ip(&a, &d))).norm() < tol);
            prop_assert!((ip(&scaled, &b) - al.conj() * ip(&a, &b)).norm() < tol);
            let sym_tol = conditioned_tol(dim, 1.0) * scale;
            prop_assert!((ip(&a, &b) - ip(&b, &a).conj()).norm() < sym_tol);
            let chained: f64 = (j + 1..k).map(|i| c.z(i).unwrap().norm_fro()).product();
            let rec_tol = 1e-12 * dim as f64 * chained * vec_norm(&a) * vec_norm(&b);
            prop_assert!((ip(&a, &b) - c.inner_product_recursive(&a, &b, j).unwrap()).norm() < rec_tol);
        }
    }

    #[test]
    fn conjugation_in_the_top_space_is_the_plain_adjoint((dim, k, seed) in shape()) {
        let g = generated(dim, k, seed);
        let lam: Matrix = ginibre(dim, &mut seeded(seed ^ 6));
        prop_assert_eq!(g.chain.conjugate(&lam, k - 1).unwrap(), lam.dagger());
    }

    #[test]
    fn physical_norm_of_a_generated_chain_is_positive((dim, k, seed) in shape()) {
        let g = generated(dim, k, seed);
        let psi = complex_vector::<f64>(dim, &mut seeded(seed ^ 7));
        prop_assert!(g.chain.norm_sq(&psi, 0).unwrap() > 0.0);
    }
}

#[test]
fn stated_tolerances_hold_for_short_chains() {
    // Two spaces at the default factor bound, or three with mildly
    // conditioned factors, keep the metrics tame enough for `1e-11·dim`.
    for seed in 0..60u64 {
        let dim = 2 + (seed as usize * 5) % 15;
        let (k, cap) = if seed % 2 == 0 { (2, DEFAULT_FACTOR_CAP) } else { (3, 2.0) };
        let g = cryptoherm::generate_chain::<f64>(dim, k, seed, cap).unwrap();
        let a: Matrix = ginibre(dim, &mut seeded(seed));
        for j in 0..k {
            let back = g.chain.conjugate(&g.chain.conjugate(&a, j).unwrap(), j).unwrap();
            assert!(rel(&back, &a) < 1e-11 * dim as f64, "seed {seed} j={j}: {}", rel(&back, &a));
        }
    }
}
