use super::CMatrix;
use crate::error::{Error, Result};
use crate::scalar::{abs2, czero, Cx, Real};

/// Lower-triangular `L` with `L L† = A`.
///
/// The input must be Hermitian to `‖A − A†‖_F ≤ tol·‖A‖_F` with the default
/// working tolerance. A nonpositive pivot yields
/// [`Error::NotPositiveDefinite`], which callers use as a definiteness query.
pub fn cholesky_pd<T: Real>(a: &CMatrix<T>) -> Result<CMatrix<T>> {
    cholesky_pd_with_tol(a, T::working_tol())
}

pub fn cholesky_pd_with_tol<T: Real>(a: &CMatrix<T>, herm_tol: T) -> Result<CMatrix<T>> {
    let n = a.dim()?;
    let defect = a.relative_hermitian_defect();
    if defect > herm_tol {
        return Err(Error::NotHermitian {
            residual: defect.as_f64(),
        });
    }
    let mut l = CMatrix::zeros(n, n);
    for j in 0..n {
        let mut d = a[(j, j)].re;
        for k in 0..j {
            d -= abs2(l[(j, k)]);
        }
        if !(d > T::zero()) {
            return Err(Error::NotPositiveDefinite {
                pivot: j,
                value: d.as_f64(),
            });
        }
        let ljj = d.sqrt();
        l[(j, j)] = Cx::new(ljj, T::zero());
        for i in j + 1..n {
            // Lower triangle of the input is authoritative.
            let mut s = a[(i, j)];
            for k in 0..j {
                s -= l[(i, k)] * l[(j, k)].conj();
            }
            l[(i, j)] = s / ljj;
        }
        for i in 0..j {
            l[(i, j)] = czero();
        }
    }
    Ok(l)
}

/// Positive-definiteness query; non-Hermitian input counts as "no".
pub fn is_positive_definite<T: Real>(a: &CMatrix<T>) -> bool {
    cholesky_pd(a).is_ok()
}

#[cfg(test)]
mod tests {
    use super::*;

    type M = CMatrix<f64>;

    #[test]
    fn identity_factor() {
        assert_eq!(cholesky_pd(&M::identity(3)).unwrap(), M::identity(3));
    }

    #[test]
    fn two_by_two_pivots() {
        let a = M::from_real(2, 2, &[2.0, 1.0, 1.0, 2.0]).unwrap();
        let l = cholesky_pd(&a).unwrap();
        assert!((l[(0, 0)].re - 2f64.sqrt()).abs() < 1e-15);
        assert!((l[(1, 1)].re - 1.5f64.sqrt()).abs() < 1e-15);
        assert!((&l * &l.dagger()).dist_fro(&a) < 1e-14);
    }

    #[test]
    fn negative_pivot_is_not_pd() {
        let a = M::from_real_diag(&[1.0, -1.0]);
        assert!(matches!(
            cholesky_pd(&a),
            Err(Error::NotPositiveDefinite { pivot: 1, .. })
        ));
    }

    #[test]
    fn non_hermitian_is_rejected() {
        let a = M::from_real(2, 2, &[2.0, 1.0, 0.0, 2.0]).unwrap();
        assert!(matches!(cholesky_pd(&a), Err(Error::NotHermitian { .. })));
    }
}
