//! Seeded random matrix ensembles.
//!
//! All draws go through `f64` samples from a ChaCha8 stream, so a given seed
//! yields the same numbers for every scalar type and platform.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::matrix::{CMatrix, CVector};
use crate::scalar::{Cx, Real};

pub type SeededRng = ChaCha8Rng;

pub fn seeded(seed: u64) -> SeededRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Standard complex normal: real and imaginary parts N(0, 1/2).
pub fn complex_normal<T: Real>(rng: &mut impl Rng) -> Cx<T> {
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    let s = std::f64::consts::FRAC_1_SQRT_2;
    Cx::new(T::of(re * s), T::of(im * s))
}

/// Complex Ginibre matrix with i.i.d. standard complex normal entries.
pub fn ginibre<T: Real>(dim: usize, rng: &mut impl Rng) -> CMatrix<T> {
    CMatrix::from_fn(dim, dim, |_, _| complex_normal(rng))
}

/// Gaussian unitary ensemble draw, `(G + G†)/2` of a Ginibre `G`.
pub fn gue<T: Real>(dim: usize, rng: &mut impl Rng) -> CMatrix<T> {
    ginibre::<T>(dim, rng).hermitian_part()
}

pub fn complex_vector<T: Real>(dim: usize, rng: &mut impl Rng) -> CVector<T> {
    (0..dim).map(|_| complex_normal(rng)).collect()
}

/// Real symmetric matrix, `(A + Aᵀ)/2` with i.i.d. N(0,1) entries.
pub fn real_symmetric<T: Real>(dim: usize, rng: &mut impl Rng) -> CMatrix<T> {
    let a = CMatrix::<T>::from_fn(dim, dim, |_, _| {
        let x: f64 = rng.sample(StandardNormal);
        Cx::new(T::of(x), T::zero())
    });
    a.hermitian_part()
}
