//! Chains of inner-product spaces `R_{K-1}, …, R_0` sharing one ket space.
//!
//! A chain is fixed by the operators `Z_1 … Z_{K-1}`. The space `R_j` pairs
//! kets through the partial metric `Θ_(K-1,j) = Z_{K-1} Z_{K-2} ⋯ Z_{j+1}`:
//! `R_{K-1}` is the ordinary Euclidean space and `R_0` carries the physical
//! metric `Θ = Θ_(K-1,0)`. The adjoint of `Λ` in `R_j` is
//! `Λ^{‡(j)} = Θ_(K-1,j)⁻¹ Λ† Θ_(K-1,j)`.
//!
//! Inner products are linear in the second (ket) argument.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::{cholesky_pd_with_tol, dot, vdot, CMatrix, CVector, Lu};
use crate::scalar::{Cx, Real};

/// How strictly a chain's metrics are validated.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ChainMode {
    /// Every partial metric must be Hermitian positive definite.
    StrictPd,
    /// Intermediate metrics may be indefinite (Krein spaces); positivity is
    /// reported but not enforced.
    KreinDiagnostic,
}

/// Outcome of the definiteness test on one partial metric.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Positivity {
    Pd,
    Indefinite,
    /// Metric is not Hermitian within tolerance, so definiteness is undefined.
    Skipped,
}

/// Numerical knobs for chain construction.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ChainOptions<T: Real> {
    /// Base relative tolerance; the effective tolerance is `tol · dim`.
    pub tol: T,
    /// Largest accepted 1-norm condition estimate of any `Z_j` or metric.
    pub cond_cap: T,
}

impl<T: Real> Default for ChainOptions<T> {
    fn default() -> Self {
        Self {
            tol: T::working_tol(),
            cond_cap: T::cond_cap(),
        }
    }
}

/// `Θ_(K-1,j)` together with its index.
#[derive(Clone, Debug, PartialEq)]
pub struct PartialMetric<T: Real> {
    pub j: usize,
    pub theta: CMatrix<T>,
}

/// The operator multiplet `Z_1 … Z_{K-1}` with its partial metrics cached.
///
/// Immutable after construction.
#[derive(Clone, Debug)]
pub struct SpaceChain<T: Real = f64> {
    dim: usize,
    mode: ChainMode,
    options: ChainOptions<T>,
    z: Vec<CMatrix<T>>,
    metrics: Vec<CMatrix<T>>,
    metric_lu: Vec<Lu<T>>,
    metric_cond: Vec<T>,
    self_adjoint: Vec<T>,
    positivity: Vec<Positivity>,
}

impl<T: Real> SpaceChain<T> {
    /// Builds and validates a chain with default options.
    ///
    /// Fails on shape problems, singular `Z_j`, any `Z_j` that is not
    /// self-adjoint in `R_j`, or (in strict mode) an indefinite metric.
    pub fn new(z: Vec<CMatrix<T>>, mode: ChainMode) -> Result<Self> {
        Self::with_options(z, mode, ChainOptions::default())
    }

    pub fn with_options(z: Vec<CMatrix<T>>, mode: ChainMode, options: ChainOptions<T>) -> Result<Self> {
        let chain = Self::assemble(z, mode, options)?;
        chain.validate()?;
        Ok(chain)
    }

    /// Builds the caches and diagnostics without enforcing the self-adjointness
    /// or positivity conditions. Only shape and invertibility are checked.
    /// Used by verification front ends that must report on broken chains.
    pub fn assemble(z: Vec<CMatrix<T>>, mode: ChainMode, options: ChainOptions<T>) -> Result<Self> {
        let first = z
            .first()
            .ok_or_else(|| Error::Shape("a chain needs at least Z_1 (K >= 2)".into()))?;
        let dim = first.dim()?;
        for (idx, zj) in z.iter().enumerate() {
            if zj.rows() != dim || zj.cols() != dim {
                return Err(Error::Shape(format!(
                    "Z_{} is {}x{}, expected {dim}x{dim}",
                    idx + 1,
                    zj.rows(),
                    zj.cols()
                )));
            }
            if !zj.is_finite() {
                return Err(Error::Parameter(format!("Z_{} has non-finite entries", idx + 1)));
            }
            let cond = Lu::factor(zj)
                .and_then(|lu| lu.condition())
                .map_err(|_| Error::Conditioning {
                    condition: f64::INFINITY,
                    cap: options.cond_cap.as_f64(),
                })?;
            if !(cond <= options.cond_cap) {
                return Err(Error::Conditioning {
                    condition: cond.as_f64(),
                    cap: options.cond_cap.as_f64(),
                });
            }
        }

        let k = z.len() + 1;
        // metrics[j] = Θ_(K-1,j), associated left to right.
        let mut metrics = vec![CMatrix::identity(dim); k];
        for j in (0..k - 1).rev() {
            metrics[j] = metrics[j + 1].matmul(&z[j])?;
        }
        let mut metric_lu = Vec::with_capacity(k);
        let mut metric_cond = Vec::with_capacity(k);
        for m in &metrics {
            let lu = Lu::factor(m)?;
            metric_cond.push(lu.condition()?);
            metric_lu.push(lu);
        }

        let tol = options.tol * T::of(dim as f64);
        let self_adjoint = (1..k)
            .map(|j| pseudo_hermitian_residual(&z[j - 1], &metrics[j]))
            .collect::<Result<Vec<_>>>()?;
        let positivity = metrics
            .iter()
            .map(|m| {
                if m.relative_hermitian_defect() > tol {
                    Positivity::Skipped
                } else if cholesky_pd_with_tol(m, tol).is_ok() {
                    Positivity::Pd
                } else {
                    Positivity::Indefinite
                }
            })
            .collect();

        Ok(Self {
            dim,
            mode,
            options,
            z,
            metrics,
            metric_lu,
            metric_cond,
            self_adjoint,
            positivity,
        })
    }

    /// Checks `Z_j = Z_j^{‡(j)}` for every `j`, and in strict mode positive
    /// definiteness of every partial metric.
    pub fn validate(&self) -> Result<()> {
        let tol = self.tolerance();
        for (idx, &r) in self.self_adjoint.iter().enumerate() {
            if !(r <= tol) {
                return Err(Error::SelfAdjointness {
                    j: idx + 1,
                    residual: r.as_f64(),
                    tol: tol.as_f64(),
                });
            }
        }
        if self.mode == ChainMode::StrictPd {
            if let Some(j) = self.positivity.iter().position(|&p| p != Positivity::Pd) {
                return Err(Error::Indefinite { j });
            }
        }
        Ok(())
    }

    /// Number of spaces `K`.
    pub fn k(&self) -> usize {
        self.z.len() + 1
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn mode(&self) -> ChainMode {
        self.mode
    }

    pub fn options(&self) -> ChainOptions<T> {
        self.options
    }

    /// Effective tolerance `tol · dim`.
    pub fn tolerance(&self) -> T {
        self.options.tol * T::of(self.dim as f64)
    }

    /// `Z_j` for `1 ≤ j ≤ K−1`.
    pub fn z(&self, j: usize) -> Result<&CMatrix<T>> {
        if j == 0 || j >= self.k() {
            return Err(Error::IndexOutOfRange {
                index: j,
                max: self.k() - 1,
            });
        }
        Ok(&self.z[j - 1])
    }

    /// `[Z_1, …, Z_{K-1}]`.
    pub fn factors(&self) -> &[CMatrix<T>] {
        &self.z
    }

    fn check_index(&self, j: usize) -> Result<()> {
        if j >= self.k() {
            return Err(Error::IndexOutOfRange {
                index: j,
                max: self.k() - 1,
            });
        }
        Ok(())
    }

    /// Cached `Θ_(K-1,j)`.
    pub fn metric(&self, j: usize) -> Result<&CMatrix<T>> {
        self.check_index(j)?;
        Ok(&self.metrics[j])
    }

    pub fn partial_metric(&self, j: usize) -> Result<PartialMetric<T>> {
        Ok(PartialMetric {
            j,
            theta: self.metric(j)?.clone(),
        })
    }

    /// The physical metric `Θ = Θ_(K-1,0)`.
    pub fn physical_metric(&self) -> &CMatrix<T> {
        &self.metrics[0]
    }

    pub fn metric_condition(&self, j: usize) -> Result<T> {
        self.check_index(j)?;
        Ok(self.metric_cond[j])
    }

    /// Relative residuals of `Z_j† Θ_j = Θ_j Z_j`, indexed by `j − 1`.
    pub fn self_adjoint_residuals(&self) -> &[T] {
        &self.self_adjoint
    }

    /// Definiteness of every `Θ_(K-1,j)`, indexed by `j`.
    pub fn positivity(&self) -> &[Positivity] {
        &self.positivity
    }

    fn check_square(&self, m: &CMatrix<T>) -> Result<()> {
        if m.rows() != self.dim || m.cols() != self.dim {
            return Err(Error::Shape(format!(
                "operator is {}x{}, chain dimension is {}",
                m.rows(),
                m.cols(),
                self.dim
            )));
        }
        Ok(())
    }

    fn check_vec(&self, v: &[Cx<T>]) -> Result<()> {
        if v.len() != self.dim {
            return Err(Error::Shape(format!(
                "vector of length {}, chain dimension is {}",
                v.len(),
                self.dim
            )));
        }
        Ok(())
    }

    /// Adjoint of `lambda` in `R_j`: `Θ_j⁻¹ Λ† Θ_j`. At `j = K−1` this is the
    /// ordinary conjugate transpose, exactly.
    pub fn conjugate(&self, lambda: &CMatrix<T>, j: usize) -> Result<CMatrix<T>> {
        self.check_index(j)?;
        self.check_square(lambda)?;
        if j == self.k() - 1 {
            return Ok(lambda.dagger());
        }
        if !(self.metric_cond[j] <= self.options.cond_cap) {
            return Err(Error::Conditioning {
                condition: self.metric_cond[j].as_f64(),
                cap: self.options.cond_cap.as_f64(),
            });
        }
        let rhs = lambda.dagger().matmul(&self.metrics[j])?;
        self.metric_lu[j].solve(&rhs)
    }

    /// Bra `⟨_[j]ψ| = ⟨ψ| Z_{K-1} ⋯ Z_{j+1}` as a row vector.
    pub fn bra(&self, psi: &[Cx<T>], j: usize) -> Result<CVector<T>> {
        self.check_index(j)?;
        self.check_vec(psi)?;
        let conj: Vec<Cx<T>> = psi.iter().map(|z| z.conj()).collect();
        self.metrics[j].vecmat(&conj)
    }

    /// `⟨_[j]a|b⟩` through the closed-form bra.
    pub fn inner_product(&self, a: &[Cx<T>], b: &[Cx<T>], j: usize) -> Result<Cx<T>> {
        self.check_vec(b)?;
        Ok(dot(&self.bra(a, j)?, b))
    }

    /// `⟨_[j]a|b⟩` through the recursion `⟨_[j]a|b⟩ = ⟨_[j+1]a|Z_{j+1} b⟩`,
    /// terminating in the Euclidean product of `R_{K-1}`.
    pub fn inner_product_recursive(&self, a: &[Cx<T>], b: &[Cx<T>], j: usize) -> Result<Cx<T>> {
        self.check_index(j)?;
        self.check_vec(a)?;
        self.check_vec(b)?;
        let mut ket = b.to_vec();
        for level in j..self.k() - 1 {
            ket = self.z[level].matvec(&ket)?;
        }
        Ok(vdot(a, &ket))
    }

    /// Real part of `⟨_[j]ψ|ψ⟩`.
    pub fn norm_sq(&self, psi: &[Cx<T>], j: usize) -> Result<T> {
        Ok(self.inner_product(psi, psi, j)?.re)
    }
}

/// `‖Λ† G − G Λ‖_F / (‖Λ‖_F ‖G‖_F)`: how far `Λ` is from being self-adjoint
/// with respect to the (pseudo-)metric `G`.
pub fn pseudo_hermitian_residual<T: Real>(lambda: &CMatrix<T>, g: &CMatrix<T>) -> Result<T> {
    let lhs = lambda.dagger().matmul(g)?;
    let rhs = g.matmul(lambda)?;
    let scale = lambda.norm_fro() * g.norm_fro();
    Ok(crate::matrix::relative_residual(&lhs, &rhs, scale))
}
