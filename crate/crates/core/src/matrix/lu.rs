use super::CMatrix;
use crate::error::{Error, Result};
use crate::scalar::{cabs, cone, czero, Cx, Real};

/// LU factorization with partial pivoting, `P A = L U`.
#[derive(Clone, Debug)]
pub struct Lu<T: Real> {
    lu: CMatrix<T>,
    perm: Vec<usize>,
    norm_one: T,
}

impl<T: Real> Lu<T> {
    /// Factors a square matrix. An exactly zero pivot is reported as an
    /// infinite condition estimate.
    pub fn factor(a: &CMatrix<T>) -> Result<Self> {
        let n = a.dim()?;
        let mut lu = a.clone();
        let mut perm: Vec<usize> = (0..n).collect();
        for k in 0..n {
            let (p, pmax) = (k..n)
                .map(|i| (i, cabs(lu[(i, k)])))
                .fold((k, T::zero()), |best, cur| if cur.1 > best.1 { cur } else { best });
            if pmax == T::zero() {
                return Err(Error::Conditioning {
                    condition: f64::INFINITY,
                    cap: T::cond_cap().as_f64(),
                });
            }
            if p != k {
                perm.swap(p, k);
                for j in 0..n {
                    let t = lu[(k, j)];
                    lu[(k, j)] = lu[(p, j)];
                    lu[(p, j)] = t;
                }
            }
            let pivot = lu[(k, k)];
            for i in k + 1..n {
                let f = lu[(i, k)] / pivot;
                lu[(i, k)] = f;
                if f == czero() {
                    continue;
                }
                for j in k + 1..n {
                    let u = lu[(k, j)];
                    lu[(i, j)] -= f * u;
                }
            }
        }
        Ok(Self {
            lu,
            perm,
            norm_one: a.norm_one(),
        })
    }

    pub fn dim(&self) -> usize {
        self.perm.len()
    }

    /// Solves `A x = b` in place of a copy of `b`.
    pub fn solve_vec(&self, b: &[Cx<T>]) -> Result<Vec<Cx<T>>> {
        let n = self.dim();
        if b.len() != n {
            return Err(Error::Shape(format!("rhs length {} for dimension {n}", b.len())));
        }
        let mut x: Vec<Cx<T>> = self.perm.iter().map(|&p| b[p]).collect();
        for i in 0..n {
            let mut s = x[i];
            for j in 0..i {
                s -= self.lu[(i, j)] * x[j];
            }
            x[i] = s;
        }
        for i in (0..n).rev() {
            let mut s = x[i];
            for j in i + 1..n {
                s -= self.lu[(i, j)] * x[j];
            }
            x[i] = s / self.lu[(i, i)];
        }
        Ok(x)
    }

    /// Solves `A X = B` column by column.
    pub fn solve(&self, b: &CMatrix<T>) -> Result<CMatrix<T>> {
        let n = self.dim();
        if b.rows() != n {
            return Err(Error::Shape(format!(
                "rhs has {} rows for dimension {n}",
                b.rows()
            )));
        }
        let mut out = CMatrix::zeros(n, b.cols());
        for j in 0..b.cols() {
            let x = self.solve_vec(&b.column(j))?;
            out.set_column(j, &x);
        }
        Ok(out)
    }

    pub fn inverse(&self) -> Result<CMatrix<T>> {
        self.solve(&CMatrix::identity(self.dim()))
    }

    /// 1-norm condition number, computed from the explicit inverse.
    pub fn condition(&self) -> Result<T> {
        Ok(self.norm_one * self.inverse()?.norm_one())
    }

    pub fn determinant(&self) -> Cx<T> {
        let n = self.dim();
        let mut det = (0..n).fold(cone::<T>(), |acc, i| acc * self.lu[(i, i)]);
        // Parity of the row permutation.
        let mut seen = vec![false; n];
        for s in 0..n {
            if seen[s] {
                continue;
            }
            let mut len = 0;
            let mut i = s;
            while !seen[i] {
                seen[i] = true;
                i = self.perm[i];
                len += 1;
            }
            if len % 2 == 0 {
                det = -det;
            }
        }
        det
    }
}

/// Inverse under the default condition cap of the scalar type.
pub fn inverse<T: Real>(a: &CMatrix<T>) -> Result<CMatrix<T>> {
    inverse_with_cap(a, T::cond_cap())
}

/// Inverse that refuses matrices whose 1-norm condition estimate exceeds `cap`.
pub fn inverse_with_cap<T: Real>(a: &CMatrix<T>, cap: T) -> Result<CMatrix<T>> {
    let lu = Lu::factor(a).map_err(|e| match e {
        Error::Conditioning { condition, .. } => Error::Conditioning {
            condition,
            cap: cap.as_f64(),
        },
        other => other,
    })?;
    let inv = lu.inverse()?;
    let cond = a.norm_one() * inv.norm_one();
    if !(cond <= cap) {
        return Err(Error::Conditioning {
            condition: cond.as_f64(),
            cap: cap.as_f64(),
        });
    }
    Ok(inv)
}
