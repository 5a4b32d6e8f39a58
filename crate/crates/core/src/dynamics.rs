//! Unitary evolution generated by a crypto-Hermitian Hamiltonian, pure-state
//! projectors and statistical mixtures.
//!
//! States are evolved with a fresh `exp(−iHt)` per time point (ħ = 1), so no
//! integrator error enters the norm bookkeeping.

use serde::{Deserialize, Serialize};

use crate::chain::pseudo_hermitian_residual;
use crate::error::{Error, Result};
use crate::ledger::QuantumModel;
use crate::matrix::{eig_general, expm, principal_sqrt_pd, vec_norm, CMatrix, CVector, Lu};
use crate::scalar::{Cx, Real};

/// States along a time grid and their norms in every space of the chain.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(bound(serialize = "T: Serialize", deserialize = "T: Deserialize<'de>"))]
pub struct StateTrajectory<T: Real = f64> {
    pub times: Vec<T>,
    pub states: Vec<CVector<T>>,
    /// `norms[j][i] = Re ⟨_[j]ψ(t_i)|ψ(t_i)⟩`.
    pub norms: Vec<Vec<T>>,
}

impl<T: Real> StateTrajectory<T> {
    /// `max_i |n_j(t_i) − n_j(t_0)| / |n_j(t_0)|`.
    pub fn drift(&self, j: usize) -> T {
        let col = &self.norms[j];
        let n0 = col[0].abs();
        let max_dev = col.iter().map(|&n| (n - col[0]).abs()).fold(T::zero(), T::max);
        if n0 > T::zero() {
            max_dev / n0
        } else {
            max_dev
        }
    }

    /// Relative drift of the physical (`j = 0`) norm.
    pub fn physical_drift(&self) -> T {
        self.drift(0)
    }
}

fn propagator<T: Real>(h: &CMatrix<T>, t: T) -> Result<CMatrix<T>> {
    expm(&h.scale(Cx::new(T::zero(), -t)))
}

fn check_times<T: Real>(times: &[T]) -> Result<()> {
    if times.is_empty() {
        return Err(Error::Parameter("empty time grid".into()));
    }
    if times.iter().any(|t| !t.is_finite()) {
        return Err(Error::Parameter("non-finite time".into()));
    }
    if times.windows(2).any(|w| !(w[1] > w[0])) {
        return Err(Error::Parameter("time grid must be strictly increasing".into()));
    }
    Ok(())
}

fn check_state<T: Real>(model: &QuantumModel<T>, psi: &[Cx<T>]) -> Result<()> {
    if psi.len() != model.dim() {
        return Err(Error::Shape(format!(
            "state of length {}, model dimension {}",
            psi.len(),
            model.dim()
        )));
    }
    let n = vec_norm(psi);
    if !(n > T::zero()) {
        return Err(Error::ZeroNorm { norm: n.as_f64() });
    }
    Ok(())
}

/// Uniform grid `t_i = i · t_max / steps`, `i = 0 … steps`.
pub fn uniform_grid<T: Real>(t_max: T, steps: usize) -> Result<Vec<T>> {
    if steps == 0 || !(t_max > T::zero()) {
        return Err(Error::Parameter("need steps >= 1 and t_max > 0".into()));
    }
    Ok((0..=steps)
        .map(|i| t_max * T::of(i as f64) / T::of(steps as f64))
        .collect())
}

/// `ψ(t) = exp(−iHt) ψ₀` at every grid time.
pub fn evolve<T: Real>(model: &QuantumModel<T>, psi0: &[Cx<T>], times: &[T]) -> Result<StateTrajectory<T>> {
    check_state(model, psi0)?;
    check_times(times)?;
    let chain = model.chain();
    let mut states = Vec::with_capacity(times.len());
    let mut norms = vec![Vec::with_capacity(times.len()); chain.k()];
    for &t in times {
        let psi = propagator(model.hamiltonian(), t)?.matvec(psi0)?;
        for (j, col) in norms.iter_mut().enumerate() {
            col.push(chain.norm_sq(&psi, j)?);
        }
        states.push(psi);
    }
    Ok(StateTrajectory {
        times: times.to_vec(),
        states,
        norms,
    })
}

/// `π = |ψ⟩⟨_[0]ψ| / ⟨_[0]ψ|ψ⟩`.
///
/// Fails with a zero-norm error when the physical norm vanishes relative to
/// `‖Θ‖ ‖ψ‖²`, which only an indefinite metric permits.
pub fn projector<T: Real>(model: &QuantumModel<T>, psi: &[Cx<T>]) -> Result<CMatrix<T>> {
    check_state(model, psi)?;
    let bra = model.chain().bra(psi, 0)?;
    let norm: Cx<T> = bra.iter().zip(psi).map(|(&b, &k)| b * k).sum();
    let scale = model.metric().norm_fro() * vec_norm(psi).powi(2);
    if !(norm.norm() > T::of(1e3) * T::epsilon() * scale) {
        return Err(Error::ZeroNorm {
            norm: norm.norm().as_f64(),
        });
    }
    let n = psi.len();
    Ok(CMatrix::from_fn(n, n, |i, j| psi[i] * bra[j] / norm))
}

/// A statistical mixture `ρ = Σ_k p_k π_k` of pure-state projectors.
#[derive(Clone, Debug, PartialEq)]
pub struct DensityMatrix<T: Real = f64> {
    pub rho: CMatrix<T>,
    pub weights: Vec<T>,
    pub constituents: Vec<CVector<T>>,
}

impl<T: Real> DensityMatrix<T> {
    pub fn trace(&self) -> Cx<T> {
        self.rho.trace()
    }

    /// `‖ρ†Θ − Θρ‖ / (‖ρ‖ ‖Θ‖)`: `ρ` is self-adjoint in the physical space.
    pub fn quasi_hermiticity_residual(&self, model: &QuantumModel<T>) -> Result<T> {
        pseudo_hermitian_residual(&self.rho, model.metric())
    }

    /// `Θ^{1/2} ρ Θ^{−1/2}`, the frame in which `ρ` is an ordinary density
    /// matrix.
    pub fn physical_frame(&self, model: &QuantumModel<T>) -> Result<CMatrix<T>> {
        let s = principal_sqrt_pd(&model.metric().hermitian_part())?;
        let sr = s.matmul(&self.rho)?;
        // (S ρ) S⁻¹ through a solve with S† = S.
        Ok(Lu::factor(&s)?.solve(&sr.dagger())?.dagger())
    }

    /// Eigenvalues of the physical-frame matrix and the largest imaginary
    /// part among them.
    pub fn physical_spectrum(&self, model: &QuantumModel<T>) -> Result<PhysicalSpectrum<T>> {
        let ev = eig_general(&self.physical_frame(model)?)?.eigenvalues;
        let min_re = ev.iter().map(|l| l.re).fold(T::infinity(), T::min);
        let max_im = ev.iter().map(|l| l.im.abs()).fold(T::zero(), T::max);
        Ok(PhysicalSpectrum {
            eigenvalues: ev,
            min_re,
            max_abs_im: max_im,
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct PhysicalSpectrum<T: Real> {
    pub eigenvalues: Vec<Cx<T>>,
    pub min_re: T,
    pub max_abs_im: T,
}

/// Assembles `ρ` from states and weights. Weights must be positive and sum
/// to one within `1e-12`.
pub fn build_density<T: Real>(model: &QuantumModel<T>, states: &[CVector<T>], weights: &[T]) -> Result<DensityMatrix<T>> {
    if states.is_empty() || states.len() != weights.len() {
        return Err(Error::Weights(format!(
            "{} states and {} weights",
            states.len(),
            weights.len()
        )));
    }
    if weights.iter().any(|&p| !(p > T::zero()) || !p.is_finite()) {
        return Err(Error::Weights("weights must be positive and finite".into()));
    }
    let sum: T = weights.iter().copied().sum();
    if !((sum - T::one()).abs() <= T::of(1e-12).max(T::epsilon() * T::of(16.0))) {
        return Err(Error::Weights(format!("weights sum to {sum}, expected 1")));
    }
    let n = model.dim();
    let mut rho = CMatrix::zeros(n, n);
    for (psi, &p) in states.iter().zip(weights) {
        rho = rho.try_add(&projector(model, psi)?.scale_real(p))?;
    }
    Ok(DensityMatrix {
        rho,
        weights: weights.to_vec(),
        constituents: states.to_vec(),
    })
}

/// Evolves every constituent with [`evolve`] and reassembles `ρ(t)` with the
/// original weights.
pub fn evolve_density<T: Real>(
    model: &QuantumModel<T>,
    initial: &DensityMatrix<T>,
    times: &[T],
) -> Result<Vec<DensityMatrix<T>>> {
    check_times(times)?;
    let propagators = times
        .iter()
        .map(|&t| propagator(model.hamiltonian(), t))
        .collect::<Result<Vec<_>>>()?;
    propagators
        .iter()
        .map(|u| {
            let states = initial
                .constituents
                .iter()
                .map(|psi| u.matvec(psi))
                .collect::<Result<Vec<_>>>()?;
            build_density(model, &states, &initial.weights)
        })
        .collect()
}

/// `U π Θ⁻¹ U† Θ`: how a projector transforms under `U = exp(−iHt)`.
pub fn transport_projector<T: Real>(model: &QuantumModel<T>, pi: &CMatrix<T>, t: T) -> Result<CMatrix<T>> {
    let u = propagator(model.hamiltonian(), t)?;
    let theta = model.metric();
    let right = Lu::factor(theta)?.solve(&u.dagger().matmul(theta)?)?;
    u.matmul(pi)?.matmul(&right)
}
