use std::cmp::Ordering;

use super::{vec_norm, CMatrix};
use crate::error::{Error, Result};
use crate::scalar::{cabs, czero, Cx, Real};

/// Full complex spectrum of a general square matrix.
///
/// Eigenvalues are sorted lexicographically by (real part, imaginary part);
/// `right_eigenvectors` holds unit-norm columns in the same order.
/// `residual` is `max_k ‖A v_k − λ_k v_k‖₂ / (‖A‖_F ‖v_k‖₂)`.
#[derive(Clone, Debug)]
pub struct EigenDecomposition<T: Real> {
    pub eigenvalues: Vec<Cx<T>>,
    pub right_eigenvectors: CMatrix<T>,
    pub residual: T,
}

/// Lexicographic (Re, Im) order used for every spectrum in the crate.
pub(crate) fn cmp_re_im<T: Real>(a: &Cx<T>, b: &Cx<T>) -> Ordering {
    a.re.partial_cmp(&b.re)
        .unwrap_or(Ordering::Equal)
        .then(a.im.partial_cmp(&b.im).unwrap_or(Ordering::Equal))
}

/// Householder reduction to upper Hessenberg form, `A = Q H Q†`.
fn hessenberg<T: Real>(a: &CMatrix<T>) -> (CMatrix<T>, CMatrix<T>) {
    let n = a.rows();
    let mut h = a.clone();
    let mut q = CMatrix::identity(n);
    for k in 0..n.saturating_sub(2) {
        let x: Vec<Cx<T>> = (k + 1..n).map(|i| h[(i, k)]).collect();
        let xnorm = vec_norm(&x);
        if xnorm == T::zero() {
            continue;
        }
        let x0 = x[0];
        let phase = if cabs(x0) == T::zero() {
            Cx::new(T::one(), T::zero())
        } else {
            x0 / cabs(x0)
        };
        let alpha = -phase * xnorm;
        let mut v = x;
        v[0] -= alpha;
        let vnorm = vec_norm(&v);
        if vnorm == T::zero() {
            continue;
        }
        for z in v.iter_mut() {
            *z /= vnorm;
        }
        // H ← (I − 2vv†) H (I − 2vv†) on the trailing block.
        for j in 0..n {
            let mut s = czero::<T>();
            for (r, &vi) in v.iter().enumerate() {
                s += vi.conj() * h[(k + 1 + r, j)];
            }
            let s2 = s + s;
            for (r, &vi) in v.iter().enumerate() {
                h[(k + 1 + r, j)] -= vi * s2;
            }
        }
        for i in 0..n {
            let mut s = czero::<T>();
            for (r, &vi) in v.iter().enumerate() {
                s += h[(i, k + 1 + r)] * vi;
            }
            let s2 = s + s;
            for (r, &vi) in v.iter().enumerate() {
                h[(i, k + 1 + r)] -= s2 * vi.conj();
            }
            let mut s = czero::<T>();
            for (r, &vi) in v.iter().enumerate() {
                s += q[(i, k + 1 + r)] * vi;
            }
            let s2 = s + s;
            for (r, &vi) in v.iter().enumerate() {
                q[(i, k + 1 + r)] -= s2 * vi.conj();
            }
        }
        h[(k + 1, k)] = alpha;
        for i in k + 2..n {
            h[(i, k)] = czero();
        }
    }
    (h, q)
}

/// Givens pair `(c, s)` with `[c s; −s̄ c]·[x; y] = [r; 0]`, `c` real.
fn givens<T: Real>(x: Cx<T>, y: Cx<T>) -> (T, Cx<T>) {
    let ay = cabs(y);
    if ay == T::zero() {
        return (T::one(), czero());
    }
    let ax = cabs(x);
    if ax == T::zero() {
        return (T::zero(), y.conj() / ay);
    }
    let r = ax.hypot(ay);
    (ax / r, (x / ax) * y.conj() / r)
}

/// Complex Schur form `A = Z T Z†` by shifted QR on the Hessenberg form.
fn schur<T: Real>(a: &CMatrix<T>) -> Result<(CMatrix<T>, CMatrix<T>)> {
    let n = a.rows();
    let (mut h, mut z) = hessenberg(a);
    if n < 2 {
        return Ok((h, z));
    }
    let eps = T::epsilon();
    let anorm = h.norm_fro().max(T::min_positive_value());
    let max_iter = 60 * n;
    let mut hi = n - 1;
    let mut iter = 0usize;
    let mut total = 0usize;
    while hi > 0 {
        let mut lo = hi;
        while lo > 0 {
            let mut s = cabs(h[(lo - 1, lo - 1)]) + cabs(h[(lo, lo)]);
            if s == T::zero() {
                s = anorm;
            }
            if cabs(h[(lo, lo - 1)]) <= eps * s {
                h[(lo, lo - 1)] = czero();
                break;
            }
            lo -= 1;
        }
        if lo == hi {
            hi -= 1;
            iter = 0;
            continue;
        }
        iter += 1;
        total += 1;
        if iter > max_iter {
            return Err(Error::NoConvergence {
                iterations: total,
                detail: format!("complex QR stalled on active block {lo}..={hi}"),
            });
        }

        let mu = if iter.is_multiple_of(11) {
            // Exceptional shift to break cycles.
            h[(hi, hi)] + Cx::new(cabs(h[(hi, hi - 1)]) * T::of(0.75), T::zero())
        } else {
            let a11 = h[(hi - 1, hi - 1)];
            let a12 = h[(hi - 1, hi)];
            let a21 = h[(hi, hi - 1)];
            let a22 = h[(hi, hi)];
            let half = T::of(0.5);
            let m = (a11 + a22) * half;
            let d = (a11 - a22) * half;
            let disc = (d * d + a12 * a21).sqrt();
            let l1 = m + disc;
            let l2 = m - disc;
            if cabs(l1 - a22) <= cabs(l2 - a22) {
                l1
            } else {
                l2
            }
        };

        for i in lo..=hi {
            h[(i, i)] -= mu;
        }
        let mut rots = Vec::with_capacity(hi - lo);
        for k in lo..hi {
            let (c, s) = givens(h[(k, k)], h[(k + 1, k)]);
            for j in k..n {
                let x = h[(k, j)];
                let y = h[(k + 1, j)];
                h[(k, j)] = x * c + s * y;
                h[(k + 1, j)] = y * c - s.conj() * x;
            }
            h[(k + 1, k)] = czero();
            rots.push((c, s));
        }
        for (idx, &(c, s)) in rots.iter().enumerate() {
            let k = lo + idx;
            for i in 0..=(k + 1) {
                let x = h[(i, k)];
                let y = h[(i, k + 1)];
                h[(i, k)] = x * c + y * s.conj();
                h[(i, k + 1)] = y * c - x * s;
            }
            for i in 0..n {
                let x = z[(i, k)];
                let y = z[(i, k + 1)];
                z[(i, k)] = x * c + y * s.conj();
                z[(i, k + 1)] = y * c - x * s;
            }
        }
        for i in lo..=hi {
            h[(i, i)] += mu;
        }
    }
    for i in 1..n {
        for j in 0..i {
            h[(i, j)] = czero();
        }
    }
    Ok((h, z))
}

/// Eigenvalues and right eigenvectors of a general complex matrix.
pub fn eig_general<T: Real>(a: &CMatrix<T>) -> Result<EigenDecomposition<T>> {
    let n = a.dim()?;
    if !a.is_finite() {
        return Err(Error::Parameter("non-finite matrix entries".into()));
    }
    let (t, z) = schur(a)?;
    let tnorm = t.norm_fro();
    let small = (T::epsilon() * tnorm).max(T::min_positive_value());

    // Back-substitution on the triangular factor.
    let mut xs = CMatrix::<T>::zeros(n, n);
    for k in 0..n {
        let lam = t[(k, k)];
        let mut x = vec![czero::<T>(); n];
        x[k] = Cx::new(T::one(), T::zero());
        for i in (0..k).rev() {
            let mut s = czero::<T>();
            for m in i + 1..=k {
                s += t[(i, m)] * x[m];
            }
            let mut den = t[(i, i)] - lam;
            if cabs(den) < small {
                den = Cx::new(small, T::zero());
            }
            x[i] = -s / den;
        }
        xs.set_column(k, &x);
    }
    let mut vecs = z.matmul(&xs)?;
    for k in 0..n {
        let col = vecs.column(k);
        let nrm = vec_norm(&col);
        if nrm > T::zero() {
            let scaled: Vec<Cx<T>> = col.iter().map(|&c| c / nrm).collect();
            vecs.set_column(k, &scaled);
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    let diag = t.diagonal();
    order.sort_by(|&i, &j| cmp_re_im(&diag[i], &diag[j]));
    let eigenvalues: Vec<Cx<T>> = order.iter().map(|&i| diag[i]).collect();
    let right_eigenvectors = CMatrix::from_fn(n, n, |i, k| vecs[(i, order[k])]);

    let anorm = a.norm_fro();
    let mut residual = T::zero();
    for (k, &lam) in eigenvalues.iter().enumerate() {
        let v = right_eigenvectors.column(k);
        let av = a.matvec(&v)?;
        let r: Vec<Cx<T>> = av.iter().zip(&v).map(|(&x, &y)| x - y * lam).collect();
        let denom = anorm * vec_norm(&v);
        if denom > T::zero() {
            residual = residual.max(vec_norm(&r) / denom);
        }
    }
    Ok(EigenDecomposition {
        eigenvalues,
        right_eigenvectors,
        residual,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::cx;

    type M = CMatrix<f64>;

    #[test]
    fn diagonal_sorted() {
        let e = eig_general(&M::from_real_diag(&[3.0, 1.0, 2.0])).unwrap();
        let re: Vec<f64> = e.eigenvalues.iter().map(|z| z.re).collect();
        assert_eq!(re, vec![1.0, 2.0, 3.0]);
        assert!(e.residual < 1e-15);
    }

    #[test]
    fn triangular() {
        let e = eig_general(&M::from_real(2, 2, &[1.0, 1.0, 0.0, 2.0]).unwrap()).unwrap();
        assert!((e.eigenvalues[0] - cx(1.0, 0.0)).norm() < 1e-14);
        assert!((e.eigenvalues[1] - cx(2.0, 0.0)).norm() < 1e-14);
        assert!(e.residual < 1e-14);
    }

    #[test]
    fn rotation_generator_has_imaginary_pair() {
        let e = eig_general(&M::from_real(2, 2, &[0.0, 1.0, -1.0, 0.0]).unwrap()).unwrap();
        assert!((e.eigenvalues[0] - cx(0.0, -1.0)).norm() < 1e-14);
        assert!((e.eigenvalues[1] - cx(0.0, 1.0)).norm() < 1e-14);
    }

    #[test]
    fn one_by_one() {
        let e = eig_general(&M::from_vec(1, 1, vec![cx(2.0, -3.0)]).unwrap()).unwrap();
        assert_eq!(e.eigenvalues, vec![cx(2.0, -3.0)]);
    }

    #[test]
    fn companion_of_known_polynomial() {
        // (x-1)(x-2)(x-3)(x-4) = x^4 - 10x^3 + 35x^2 - 50x + 24
        let c = M::from_real(
            4,
            4,
            &[
                10.0, -35.0, 50.0, -24.0, 1.0, 0.0, 0.0, 0.0, 0.0, 1.0, 0.0, 0.0, 0.0, 0.0, 1.0,
                0.0,
            ],
        )
        .unwrap();
        let e = eig_general(&c).unwrap();
        for (k, z) in e.eigenvalues.iter().enumerate() {
            assert!((z - cx(k as f64 + 1.0, 0.0)).norm() < 1e-10, "{z}");
        }
    }
}
