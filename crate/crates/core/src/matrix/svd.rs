use super::{vdot, vec_norm, CMatrix};
use crate::error::{Error, Result};
use crate::scalar::{abs2, cabs, Cx, Real};

/// Thin singular value decomposition `A = U Σ V†` with singular values in
/// descending order. For an `m×n` input, `U` is `m×min(m,n)` and `V` is
/// `n×min(m,n)`.
#[derive(Clone, Debug)]
pub struct Svd<T: Real> {
    pub u: CMatrix<T>,
    pub singular_values: Vec<T>,
    pub v: CMatrix<T>,
}

impl<T: Real> Svd<T> {
    pub fn condition(&self) -> T {
        let max = self.singular_values.first().copied().unwrap_or(T::zero());
        let min = self.singular_values.last().copied().unwrap_or(T::zero());
        if min == T::zero() {
            T::infinity()
        } else {
            max / min
        }
    }
}

const MAX_SWEEPS: usize = 80;

/// One-sided (Hestenes) Jacobi SVD. Accurate for small singular values,
/// which the null-space solver relies on.
pub fn svd<T: Real>(a: &CMatrix<T>) -> Result<Svd<T>> {
    if a.rows() < a.cols() {
        let t = svd(&a.dagger())?;
        return Ok(Svd {
            u: t.v,
            singular_values: t.singular_values,
            v: t.u,
        });
    }
    let m = a.rows();
    let n = a.cols();
    let mut cols: Vec<Vec<Cx<T>>> = (0..n).map(|j| a.column(j)).collect();
    let mut v: Vec<Vec<Cx<T>>> = (0..n)
        .map(|j| {
            let mut e = vec![Cx::new(T::zero(), T::zero()); n];
            e[j] = Cx::new(T::one(), T::zero());
            e
        })
        .collect();
    let eps = T::epsilon();
    // Columns this small are numerically zero; rotating them only chases noise.
    let negligible = {
        let t = eps * a.norm_fro();
        t * t
    };

    let mut converged = n < 2;
    let mut sweeps = 0;
    while !converged && sweeps < MAX_SWEEPS {
        sweeps += 1;
        converged = true;
        for p in 0..n - 1 {
            for q in p + 1..n {
                let alpha: T = cols[p].iter().map(|&z| abs2(z)).sum();
                let beta: T = cols[q].iter().map(|&z| abs2(z)).sum();
                let gamma = vdot(&cols[p], &cols[q]);
                let g = cabs(gamma);
                if alpha <= negligible || beta <= negligible {
                    continue;
                }
                if g == T::zero() || g <= eps * (alpha * beta).sqrt() {
                    continue;
                }
                converged = false;
                // Rotate the phase of column q so the Gram entry is real.
                let phase = gamma / g;
                let ph_conj = phase.conj();
                for z in cols[q].iter_mut() {
                    *z *= ph_conj;
                }
                for z in v[q].iter_mut() {
                    *z *= ph_conj;
                }
                let zeta = (beta - alpha) / (g + g);
                let t = if zeta == T::zero() {
                    T::one()
                } else {
                    zeta.signum() / (zeta.abs() + (T::one() + zeta * zeta).sqrt())
                };
                let c = T::one() / (T::one() + t * t).sqrt();
                let s = c * t;
                for i in 0..m {
                    let xp = cols[p][i];
                    let xq = cols[q][i];
                    cols[p][i] = xp * c - xq * s;
                    cols[q][i] = xp * s + xq * c;
                }
                for i in 0..n {
                    let xp = v[p][i];
                    let xq = v[q][i];
                    v[p][i] = xp * c - xq * s;
                    v[q][i] = xp * s + xq * c;
                }
            }
        }
    }
    if !converged {
        return Err(Error::NoConvergence {
            iterations: sweeps,
            detail: "one-sided Jacobi SVD".into(),
        });
    }

    let sigma: Vec<T> = cols.iter().map(|c| vec_norm(c)).collect();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| sigma[j].partial_cmp(&sigma[i]).unwrap());
    let mut u = CMatrix::zeros(m, n);
    let mut vm = CMatrix::zeros(n, n);
    let mut singular_values = Vec::with_capacity(n);
    for (k, &j) in order.iter().enumerate() {
        let s = sigma[j];
        singular_values.push(s);
        if s > T::zero() {
            let uc: Vec<Cx<T>> = cols[j].iter().map(|&z| z / s).collect();
            u.set_column(k, &uc);
        }
        vm.set_column(k, &v[j]);
    }
    Ok(Svd {
        u,
        singular_values,
        v: vm,
    })
}
