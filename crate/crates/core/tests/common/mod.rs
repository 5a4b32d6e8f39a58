#![allow(dead_code)]

use cryptoherm::{generate_chain, GeneratedChain, Matrix, DEFAULT_FACTOR_CAP};

/// `‖a − b‖_F / ‖b‖_F`.
pub fn rel(a: &Matrix, b: &Matrix) -> f64 {
    let s = b.norm_fro();
    if s > 0.0 {
        a.dist_fro(b) / s
    } else {
        a.norm_fro()
    }
}

pub fn mul(a: &Matrix, b: &Matrix) -> Matrix {
    a.matmul(b).unwrap()
}

/// `a⁻¹ b`.
pub fn solve(a: &Matrix, b: &Matrix) -> Matrix {
    cryptoherm::matrix::Lu::factor(a).unwrap().solve(b).unwrap()
}

/// Sweep point for seed `s`: walks the full `dim × K` grid,
/// `dim = 2 + (s mod 15)`, `K = 2 + (⌊s/15⌋ mod 5)`.
pub fn sweep_shape(s: u64) -> (usize, usize) {
    (2 + (s as usize) % 15, 2 + (s as usize / 15) % 5)
}

pub fn generated(dim: usize, k: usize, seed: u64) -> GeneratedChain {
    generate_chain(dim, k, seed, DEFAULT_FACTOR_CAP).unwrap()
}

/// Rounding bound for identities that pass through a solve with `Θ_j`
/// twice: `dim · (1e-11 + 8 cond² · eps)`. Observed worst case over the
/// grid sweep is about `0.7 · dim · cond² · eps`.
pub fn conditioned_tol(dim: usize, cond: f64) -> f64 {
    dim as f64 * (1e-11 + 8.0 * cond * cond * f64::EPSILON)
}

/// `max_j cond(Z_j)` over the chain factors.
pub fn max_factor_condition(chain: &cryptoherm::Chain) -> f64 {
    chain
        .factors()
        .iter()
        .map(|z| cryptoherm::matrix::Lu::factor(z).unwrap().condition().unwrap())
        .fold(1.0, f64::max)
}

/// Rounding bound for the table relations, which multiply out up to `K`
/// factors against a metric: `dim · (1e-10 + cond(Θ) · max cond(Z) · eps)`.
pub fn table_tol(chain: &cryptoherm::Chain) -> f64 {
    let kappa = chain.metric_condition(0).unwrap() * max_factor_condition(chain);
    chain.dim() as f64 * (1e-10 + kappa * f64::EPSILON)
}
