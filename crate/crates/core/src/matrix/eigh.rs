use super::CMatrix;
use crate::error::{Error, Result};
use crate::scalar::{abs2, cabs, Cx, Real};

/// Spectrum of a Hermitian matrix: ascending real eigenvalues and a unitary
/// matrix of eigenvector columns.
#[derive(Clone, Debug)]
pub struct HermitianEigen<T: Real> {
    pub values: Vec<T>,
    pub vectors: CMatrix<T>,
}

const MAX_SWEEPS: usize = 64;

/// Cyclic complex Jacobi on the Hermitian part of `a`.
pub fn eigh<T: Real>(a: &CMatrix<T>) -> Result<HermitianEigen<T>> {
    let n = a.dim()?;
    let defect = a.relative_hermitian_defect();
    if defect > T::working_tol() {
        return Err(Error::NotHermitian {
            residual: defect.as_f64(),
        });
    }
    let mut m = a.hermitian_part();
    let mut v = CMatrix::<T>::identity(n);
    let scale = m.norm_fro();
    let eps = T::epsilon();

    let mut converged = n < 2 || scale == T::zero();
    let mut sweeps = 0;
    while !converged && sweeps < MAX_SWEEPS {
        sweeps += 1;
        for p in 0..n - 1 {
            for q in p + 1..n {
                let apq = m[(p, q)];
                let mag = cabs(apq);
                if mag <= eps * eps * scale {
                    m[(p, q)] = Cx::new(T::zero(), T::zero());
                    m[(q, p)] = Cx::new(T::zero(), T::zero());
                    continue;
                }
                let phase = apq / mag;
                let app = m[(p, p)].re;
                let aqq = m[(q, q)].re;
                let theta = (aqq - app) / (mag + mag);
                let t = if theta == T::zero() {
                    T::one()
                } else {
                    theta.signum() / (theta.abs() + (theta * theta + T::one()).sqrt())
                };
                let c = T::one() / (t * t + T::one()).sqrt();
                let s = t * c;
                let ph_conj = phase.conj();
                // J = [[c, s], [-s e^{-iφ}, c e^{-iφ}]] on (p, q).
                for i in 0..n {
                    let xp = m[(i, p)];
                    let xq = m[(i, q)];
                    m[(i, p)] = xp * c - xq * ph_conj * s;
                    m[(i, q)] = xp * s + xq * ph_conj * c;
                }
                for j in 0..n {
                    let xp = m[(p, j)];
                    let xq = m[(q, j)];
                    m[(p, j)] = xp * c - xq * phase * s;
                    m[(q, j)] = xp * s + xq * phase * c;
                }
                m[(p, q)] = Cx::new(T::zero(), T::zero());
                m[(q, p)] = Cx::new(T::zero(), T::zero());
                m[(p, p)].im = T::zero();
                m[(q, q)].im = T::zero();
                for i in 0..n {
                    let xp = v[(i, p)];
                    let xq = v[(i, q)];
                    v[(i, p)] = xp * c - xq * ph_conj * s;
                    v[(i, q)] = xp * s + xq * ph_conj * c;
                }
            }
        }
        let off: T = (0..n)
            .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
            .map(|(i, j)| abs2(m[(i, j)]))
            .sum::<T>()
            .sqrt();
        converged = off <= eps * scale;
    }
    if !converged {
        return Err(Error::NoConvergence {
            iterations: sweeps,
            detail: "Hermitian Jacobi sweeps".into(),
        });
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| m[(i, i)].re.partial_cmp(&m[(j, j)].re).unwrap());
    let values = order.iter().map(|&i| m[(i, i)].re).collect();
    let vectors = CMatrix::from_fn(n, n, |i, k| v[(i, order[k])]);
    Ok(HermitianEigen { values, vectors })
}

/// Unique Hermitian positive-definite square root.
pub fn principal_sqrt_pd<T: Real>(a: &CMatrix<T>) -> Result<CMatrix<T>> {
    let HermitianEigen { values, vectors } = eigh(a)?;
    if let Some((k, &lam)) = values.iter().enumerate().find(|(_, &l)| !(l > T::zero())) {
        return Err(Error::NotPositiveDefinite {
            pivot: k,
            value: lam.as_f64(),
        });
    }
    let n = values.len();
    let scaled = CMatrix::from_fn(n, n, |i, k| vectors[(i, k)] * values[k].sqrt());
    Ok(scaled.matmul(&vectors.dagger())?.hermitian_part())
}
