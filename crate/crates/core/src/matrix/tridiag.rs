use super::eig::cmp_re_im;
use crate::error::{Error, Result};
use crate::scalar::{cabs, cone, czero, Cx, Real};

/// Eigenvalues of a complex *symmetric* (not Hermitian) tridiagonal matrix
/// with diagonal `diag` and off-diagonal `off` (`off[i]` couples `i` and
/// `i+1`).
///
/// Implicit QL with complex orthogonal rotations, so the iteration stays
/// tridiagonal and costs O(n²) overall. Real symmetric input reduces to the
/// classical tqli iteration. Returns eigenvalues sorted by (Re, Im).
pub fn tridiagonal_symmetric_eigenvalues<T: Real>(
    diag: &[Cx<T>],
    off: &[Cx<T>],
) -> Result<Vec<Cx<T>>> {
    let n = diag.len();
    if n == 0 || off.len() + 1 != n {
        return Err(Error::Shape(format!(
            "tridiagonal with {} diagonal and {} off-diagonal entries",
            n,
            off.len()
        )));
    }
    let mut d = diag.to_vec();
    let mut e = off.to_vec();
    e.push(czero());
    let eps = T::epsilon();
    let two = Cx::new(T::of(2.0), T::zero());
    let max_iter = 80;

    for l in 0..n {
        let mut iter = 0;
        loop {
            let mut m = l;
            while m < n - 1 {
                let dd = cabs(d[m]) + cabs(d[m + 1]);
                if cabs(e[m]) <= eps * dd {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            iter += 1;
            if iter > max_iter {
                return Err(Error::NoConvergence {
                    iterations: iter,
                    detail: format!("tridiagonal QL at index {l}"),
                });
            }
            let mut g = (d[l + 1] - d[l]) / (two * e[l]);
            let mut r = (g * g + cone()).sqrt();
            let denom = if cabs(g + r) >= cabs(g - r) { g + r } else { g - r };
            g = d[m] - d[l] + e[l] / denom;
            let mut s = cone::<T>();
            let mut c = cone::<T>();
            let mut p = czero::<T>();
            let mut deflated = false;
            let mut i = m;
            while i > l {
                i -= 1;
                let f = s * e[i];
                let b = c * e[i];
                r = (f * f + g * g).sqrt();
                e[i + 1] = r;
                let scale = cabs(f) + cabs(g);
                if cabs(r) <= eps * eps * scale || scale == T::zero() {
                    if scale == T::zero() {
                        d[i + 1] -= p;
                        e[m] = czero();
                        deflated = true;
                        break;
                    }
                    return Err(Error::NoConvergence {
                        iterations: iter,
                        detail: "complex orthogonal rotation broke down".into(),
                    });
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + two * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
            }
            if deflated {
                continue;
            }
            d[l] -= p;
            e[l] = g;
            e[m] = czero();
        }
    }
    d.sort_by(cmp_re_im);
    Ok(d)
}
