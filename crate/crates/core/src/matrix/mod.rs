//! Dense complex matrices and the kernels the rest of the crate builds on.

mod assign;
mod cholesky;
mod eig;
mod eigh;
mod expm;
mod lu;
mod svd;
mod tridiag;

use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::{abs2, cabs, cone, czero, Cx, Real};

pub use assign::min_cost_assignment;
pub use cholesky::{cholesky_pd, cholesky_pd_with_tol, is_positive_definite};
pub use eig::{eig_general, EigenDecomposition};
pub use eigh::{eigh, principal_sqrt_pd, HermitianEigen};
pub use expm::expm;
pub use lu::{inverse, inverse_with_cap, Lu};
pub use svd::{svd, Svd};
pub use tridiag::tridiagonal_symmetric_eigenvalues;

/// Column vector of complex entries.
pub type CVector<T> = Vec<Cx<T>>;

/// Dense row-major complex matrix.
#[derive(Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound = "T: Real + Serialize + for<'a> Deserialize<'a>")]
pub struct CMatrix<T: Real> {
    rows: usize,
    cols: usize,
    data: Vec<Cx<T>>,
}

impl<T: Real> fmt::Debug for CMatrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "CMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            write!(f, "  ")?;
            for j in 0..self.cols {
                let z = self[(i, j)];
                write!(f, "{:>12.5e}{:+.5e}i  ", z.re, z.im)?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

impl<T: Real> CMatrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![czero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = cone();
        }
        m
    }

    /// Builds a matrix from row-major entries, rejecting bad lengths and
    /// non-finite values.
    pub fn from_vec(rows: usize, cols: usize, data: Vec<Cx<T>>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::Shape(format!("empty matrix {rows}x{cols}")));
        }
        if data.len() != rows * cols {
            return Err(Error::Shape(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        if let Some(k) = data.iter().position(|z| !(z.re.is_finite() && z.im.is_finite())) {
            return Err(Error::NonFinite {
                row: k / cols,
                col: k % cols,
            });
        }
        Ok(Self { rows, cols, data })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Cx<T>) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self { rows, cols, data }
    }

    /// Real row-major entries given as `f64`; handy for literals in tests.
    pub fn from_real(rows: usize, cols: usize, entries: &[f64]) -> Result<Self> {
        Self::from_vec(
            rows,
            cols,
            entries.iter().map(|&x| Cx::new(T::of(x), T::zero())).collect(),
        )
    }

    pub fn from_diag(diag: &[Cx<T>]) -> Self {
        let n = diag.len();
        let mut m = Self::zeros(n, n);
        for (i, &d) in diag.iter().enumerate() {
            m[(i, i)] = d;
        }
        m
    }

    pub fn from_real_diag(diag: &[f64]) -> Self {
        let d: Vec<Cx<T>> = diag.iter().map(|&x| Cx::new(T::of(x), T::zero())).collect();
        Self::from_diag(&d)
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(cols: &[CVector<T>]) -> Result<Self> {
        let ncols = cols.len();
        let nrows = cols.first().map_or(0, Vec::len);
        if cols.iter().any(|c| c.len() != nrows) {
            return Err(Error::Shape("columns of unequal length".into()));
        }
        let mut m = Self::zeros(nrows, ncols);
        for (j, c) in cols.iter().enumerate() {
            for (i, &z) in c.iter().enumerate() {
                m[(i, j)] = z;
            }
        }
        Ok(m)
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    /// Side length of a square matrix.
    pub fn dim(&self) -> Result<usize> {
        if self.is_square() {
            Ok(self.rows)
        } else {
            Err(Error::Shape(format!(
                "expected square matrix, got {}x{}",
                self.rows, self.cols
            )))
        }
    }

    pub fn as_slice(&self) -> &[Cx<T>] {
        &self.data
    }

    pub fn into_vec(self) -> Vec<Cx<T>> {
        self.data
    }

    pub fn is_finite(&self) -> bool {
        self.data.iter().all(|z| z.re.is_finite() && z.im.is_finite())
    }

    /// Conjugate transpose.
    pub fn dagger(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].conj())
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)])
    }

    pub fn conj(&self) -> Self {
        self.map(|z| z.conj())
    }

    pub fn map(&self, f: impl Fn(Cx<T>) -> Cx<T>) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&z| f(z)).collect(),
        }
    }

    pub fn scale(&self, s: Cx<T>) -> Self {
        self.map(|z| z * s)
    }

    pub fn scale_real(&self, s: T) -> Self {
        self.map(|z| z * s)
    }

    pub fn column(&self, j: usize) -> CVector<T> {
        (0..self.rows).map(|i| self[(i, j)]).collect()
    }

    pub fn set_column(&mut self, j: usize, v: &[Cx<T>]) {
        for (i, &z) in v.iter().enumerate() {
            self[(i, j)] = z;
        }
    }

    pub fn diagonal(&self) -> CVector<T> {
        (0..self.rows.min(self.cols)).map(|i| self[(i, i)]).collect()
    }

    pub fn trace(&self) -> Cx<T> {
        self.diagonal().into_iter().fold(czero(), |a, b| a + b)
    }

    pub fn norm_fro(&self) -> T {
        self.data.iter().map(|&z| abs2(z)).sum::<T>().sqrt()
    }

    /// Maximum absolute column sum.
    pub fn norm_one(&self) -> T {
        (0..self.cols)
            .map(|j| (0..self.rows).map(|i| cabs(self[(i, j)])).sum::<T>())
            .fold(T::zero(), T::max)
    }

    pub fn max_abs(&self) -> T {
        self.data.iter().map(|&z| cabs(z)).fold(T::zero(), T::max)
    }

    /// `‖self − other‖_F`.
    pub fn dist_fro(&self, other: &Self) -> T {
        debug_assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        self.data
            .iter()
            .zip(&other.data)
            .map(|(&a, &b)| abs2(a - b))
            .sum::<T>()
            .sqrt()
    }

    /// `‖A − A†‖_F`.
    pub fn hermitian_defect(&self) -> T {
        let n = self.rows;
        let mut s = T::zero();
        for i in 0..n {
            for j in 0..n {
                s += abs2(self[(i, j)] - self[(j, i)].conj());
            }
        }
        s.sqrt()
    }

    /// `‖A − A†‖_F / ‖A‖_F`, zero for the zero matrix.
    pub fn relative_hermitian_defect(&self) -> T {
        let n = self.norm_fro();
        if n == T::zero() {
            T::zero()
        } else {
            self.hermitian_defect() / n
        }
    }

    /// `(A + A†) / 2`.
    pub fn hermitian_part(&self) -> Self {
        let half = T::of(0.5);
        Self::from_fn(self.rows, self.cols, |i, j| {
            (self[(i, j)] + self[(j, i)].conj()) * half
        })
    }

    pub fn try_add(&self, rhs: &Self) -> Result<Self> {
        self.check_same_shape(rhs)?;
        Ok(self.zip_with(rhs, |a, b| a + b))
    }

    pub fn try_sub(&self, rhs: &Self) -> Result<Self> {
        self.check_same_shape(rhs)?;
        Ok(self.zip_with(rhs, |a, b| a - b))
    }

    fn zip_with(&self, rhs: &Self, f: impl Fn(Cx<T>, Cx<T>) -> Cx<T>) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(&a, &b)| f(a, b)).collect(),
        }
    }

    fn check_same_shape(&self, rhs: &Self) -> Result<()> {
        if (self.rows, self.cols) != (rhs.rows, rhs.cols) {
            return Err(Error::Shape(format!(
                "{}x{} vs {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        Ok(())
    }

    /// Matrix product; fails when the inner dimensions differ.
    pub fn matmul(&self, rhs: &Self) -> Result<Self> {
        if self.cols != rhs.rows {
            return Err(Error::Shape(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            let row = &self.data[i * self.cols..(i + 1) * self.cols];
            let orow = &mut out.data[i * rhs.cols..(i + 1) * rhs.cols];
            for (k, &a) in row.iter().enumerate() {
                if a.re == T::zero() && a.im == T::zero() {
                    continue;
                }
                let brow = &rhs.data[k * rhs.cols..(k + 1) * rhs.cols];
                for (o, &b) in orow.iter_mut().zip(brow) {
                    *o += a * b;
                }
            }
        }
        Ok(out)
    }

    pub fn matvec(&self, v: &[Cx<T>]) -> Result<CVector<T>> {
        if v.len() != self.cols {
            return Err(Error::Shape(format!(
                "cannot apply {}x{} matrix to vector of length {}",
                self.rows,
                self.cols,
                v.len()
            )));
        }
        Ok((0..self.rows)
            .map(|i| {
                self.data[i * self.cols..(i + 1) * self.cols]
                    .iter()
                    .zip(v)
                    .fold(czero(), |acc, (&a, &b)| acc + a * b)
            })
            .collect())
    }

    /// Row vector times matrix: `v · A`.
    pub fn vecmat(&self, v: &[Cx<T>]) -> Result<CVector<T>> {
        if v.len() != self.rows {
            return Err(Error::Shape(format!(
                "cannot apply row vector of length {} to {}x{} matrix",
                v.len(),
                self.rows,
                self.cols
            )));
        }
        let mut out = vec![czero(); self.cols];
        for (i, &a) in v.iter().enumerate() {
            for (o, &b) in out.iter_mut().zip(&self.data[i * self.cols..(i + 1) * self.cols]) {
                *o += a * b;
            }
        }
        Ok(out)
    }

    /// `[A, B] = AB − BA`.
    pub fn commutator(&self, rhs: &Self) -> Result<Self> {
        self.matmul(rhs)?.try_sub(&rhs.matmul(self)?)
    }
}

impl<T: Real> Index<(usize, usize)> for CMatrix<T> {
    type Output = Cx<T>;
    #[inline]
    fn index(&self, (i, j): (usize, usize)) -> &Cx<T> {
        &self.data[i * self.cols + j]
    }
}

impl<T: Real> IndexMut<(usize, usize)> for CMatrix<T> {
    #[inline]
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Cx<T> {
        &mut self.data[i * self.cols + j]
    }
}

// Operator forms panic on shape mismatch, like ndarray's; the `try_*` and
// `matmul` methods return errors instead.

impl<T: Real> Mul for &CMatrix<T> {
    type Output = CMatrix<T>;
    fn mul(self, rhs: &CMatrix<T>) -> CMatrix<T> {
        self.matmul(rhs).expect("matrix product shape mismatch")
    }
}

impl<T: Real> Add for &CMatrix<T> {
    type Output = CMatrix<T>;
    fn add(self, rhs: &CMatrix<T>) -> CMatrix<T> {
        self.try_add(rhs).expect("matrix sum shape mismatch")
    }
}

impl<T: Real> Sub for &CMatrix<T> {
    type Output = CMatrix<T>;
    fn sub(self, rhs: &CMatrix<T>) -> CMatrix<T> {
        self.try_sub(rhs).expect("matrix difference shape mismatch")
    }
}

impl<T: Real> Neg for &CMatrix<T> {
    type Output = CMatrix<T>;
    fn neg(self) -> CMatrix<T> {
        self.map(|z| -z)
    }
}

/// `a · b`, or a shape error.
pub fn mat_mul<T: Real>(a: &CMatrix<T>, b: &CMatrix<T>) -> Result<CMatrix<T>> {
    a.matmul(b)
}

/// Conjugate transpose.
pub fn dagger<T: Real>(a: &CMatrix<T>) -> CMatrix<T> {
    a.dagger()
}

/// Left-to-right product `m[0] · m[1] · … · m[last]`; identity when empty.
pub fn product<'a, T: Real>(
    dim: usize,
    factors: impl IntoIterator<Item = &'a CMatrix<T>>,
) -> Result<CMatrix<T>> {
    let mut acc: Option<CMatrix<T>> = None;
    for f in factors {
        acc = Some(match acc {
            None => f.clone(),
            Some(a) => a.matmul(f)?,
        });
    }
    Ok(acc.unwrap_or_else(|| CMatrix::identity(dim)))
}

/// Euclidean norm of a vector.
pub fn vec_norm<T: Real>(v: &[Cx<T>]) -> T {
    v.iter().map(|&z| abs2(z)).sum::<T>().sqrt()
}

/// `a† b` with the first argument conjugated.
pub fn vdot<T: Real>(a: &[Cx<T>], b: &[Cx<T>]) -> Cx<T> {
    a.iter().zip(b).fold(czero(), |acc, (&x, &y)| acc + x.conj() * y)
}

/// Unconjugated `Σ a_i b_i`.
pub fn dot<T: Real>(a: &[Cx<T>], b: &[Cx<T>]) -> Cx<T> {
    a.iter().zip(b).fold(czero(), |acc, (&x, &y)| acc + x * y)
}

/// `‖lhs − rhs‖_F / scale`, where `scale` is the product of operand norms;
/// zero when the scale vanishes.
pub fn relative_residual<T: Real>(lhs: &CMatrix<T>, rhs: &CMatrix<T>, scale: T) -> T {
    let d = lhs.dist_fro(rhs);
    if scale > T::zero() {
        d / scale
    } else {
        d
    }
}
