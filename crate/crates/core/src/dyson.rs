//! Factorized Dyson maps and the chains they generate.
//!
//! Postulating `Z_j = Ω_j^{‡(j)} Ω_j` for every level turns each partial
//! metric into `Θ_(K-1,j-1) = Ω_j† Θ_(K-1,j) Ω_j`, so the physical metric
//! refactorizes as `Θ = Ω† Ω` with the composed map
//! `Ω = Ω_{K-1} ⋯ Ω_2 Ω_1`. A Hermitian `𝔥` and the crypto-Hermitian
//! `H = Ω⁻¹ 𝔥 Ω` are then related by similarity.

use rand::Rng;

use crate::chain::{ChainMode, ChainOptions, SpaceChain};
use crate::ensemble::{ginibre, gue, seeded};
use crate::error::{Error, Result};
use crate::ledger::{default_tolerance, QuantumModel};
use crate::matrix::{eig_general, principal_sqrt_pd, product, svd, CMatrix, Lu};
use crate::scalar::{Cx, Real};
use crate::spectral::{compare_spectra, SpectralComparison};

/// The factor multiplet `Ω_1 … Ω_{K-1}` and the composed map.
#[derive(Clone, Debug, PartialEq)]
pub struct DysonChain<T: Real = f64> {
    omegas: Vec<CMatrix<T>>,
    composed: CMatrix<T>,
}

impl<T: Real> DysonChain<T> {
    /// Validates the factors (square, equal size, condition below `cond_cap`)
    /// and caches `Ω_{K-1} ⋯ Ω_1`.
    pub fn new(omegas: Vec<CMatrix<T>>, cond_cap: T) -> Result<Self> {
        let dim = omegas
            .first()
            .ok_or_else(|| Error::Shape("a Dyson chain needs at least one factor".into()))?
            .dim()?;
        for (idx, om) in omegas.iter().enumerate() {
            if om.rows() != dim || om.cols() != dim {
                return Err(Error::Shape(format!(
                    "Omega_{} is {}x{}, expected {dim}x{dim}",
                    idx + 1,
                    om.rows(),
                    om.cols()
                )));
            }
            let cond = Lu::factor(om)
                .and_then(|lu| lu.condition())
                .unwrap_or(T::infinity());
            if !(cond <= cond_cap) {
                return Err(Error::Conditioning {
                    condition: cond.as_f64(),
                    cap: cond_cap.as_f64(),
                });
            }
        }
        let composed = product(dim, omegas.iter().rev())?;
        Ok(Self { omegas, composed })
    }

    pub fn k(&self) -> usize {
        self.omegas.len() + 1
    }

    pub fn dim(&self) -> usize {
        self.composed.rows()
    }

    /// `Ω_j` for `1 ≤ j ≤ K−1`.
    pub fn omega(&self, j: usize) -> Result<&CMatrix<T>> {
        if j == 0 || j > self.omegas.len() {
            return Err(Error::IndexOutOfRange {
                index: j,
                max: self.omegas.len(),
            });
        }
        Ok(&self.omegas[j - 1])
    }

    pub fn omegas(&self) -> &[CMatrix<T>] {
        &self.omegas
    }

    /// `Ω_{K-1} ⋯ Ω_2 Ω_1`.
    pub fn compose(&self) -> &CMatrix<T> {
        &self.composed
    }

    /// `‖Θ − Ω†Ω‖_F / ‖Θ‖_F` for the composed map.
    pub fn refactorization_residual(&self, theta: &CMatrix<T>) -> Result<T> {
        let gram = self.composed.dagger().matmul(&self.composed)?;
        Ok(crate::matrix::relative_residual(theta, &gram, theta.norm_fro()))
    }
}

/// Builds `Z_{K-1} = Ω_{K-1}†Ω_{K-1}` and then, descending,
/// `Z_j = Θ_j⁻¹ Ω_j† Θ_j Ω_j` from the partial metric assembled so far.
///
/// The order is forced: `‡(j)` depends only on `Z_{j+1} … Z_{K-1}`.
pub fn chain_from_dyson<T: Real>(
    omegas: Vec<CMatrix<T>>,
    mode: ChainMode,
    options: ChainOptions<T>,
) -> Result<(SpaceChain<T>, DysonChain<T>)> {
    let dyson = DysonChain::new(omegas, options.cond_cap)?;
    let dim = dyson.dim();
    let levels = dyson.omegas.len();
    let mut z = vec![CMatrix::identity(dim); levels];
    // `theta` is the partial metric exactly as the chain forms it
    // (left-to-right products of the Z's), so Z_j = conj(Ω_j, j)·Ω_j uses the
    // already-built metric bit for bit.
    let mut theta = CMatrix::identity(dim);
    for j in (1..=levels).rev() {
        let om = &dyson.omegas[j - 1];
        let gram = om.dagger().matmul(&theta)?.matmul(om)?;
        z[j - 1] = if j == levels {
            gram
        } else {
            let lu = Lu::factor(&theta)?;
            let cond = lu.condition()?;
            if !(cond <= options.cond_cap) {
                return Err(Error::Conditioning {
                    condition: cond.as_f64(),
                    cap: options.cond_cap.as_f64(),
                });
            }
            lu.solve(&gram)?
        };
        theta = theta.matmul(&z[j - 1])?;
    }
    let chain = SpaceChain::with_options(z, mode, options)?;
    Ok((chain, dyson))
}

/// Result of mapping `H` to its Hermitian partner.
#[derive(Clone, Debug)]
pub struct Hermitization<T: Real> {
    pub h: CMatrix<T>,
    /// `‖𝔥 − 𝔥†‖_F / ‖𝔥‖_F`.
    pub hermiticity_residual: T,
    /// Spectrum of `H` (first) matched against that of `𝔥` (second).
    pub spectra: SpectralComparison,
}

/// `𝔥 = Ω H Ω⁻¹` with `Ω` the composed map of `dyson`.
///
/// Requires `dyson` to refactorize the model's metric and `𝔥` to come out
/// Hermitian, both within `tol` (default `1e-10·dim`).
pub fn hermitize<T: Real>(model: &QuantumModel<T>, dyson: &DysonChain<T>, tol: Option<T>) -> Result<Hermitization<T>> {
    let tol = tol.unwrap_or_else(|| default_tolerance(model.dim()));
    if dyson.dim() != model.dim() {
        return Err(Error::Shape(format!(
            "Dyson map of dimension {}, model of dimension {}",
            dyson.dim(),
            model.dim()
        )));
    }
    let mismatch = dyson.refactorization_residual(model.metric())?;
    if !(mismatch <= tol) {
        return Err(Error::DysonMismatch {
            residual: mismatch.as_f64(),
            tol: tol.as_f64(),
        });
    }
    let omega = dyson.compose();
    let lu = Lu::factor(omega)?;
    let cond = lu.condition()?;
    let cap = model.chain().options().cond_cap;
    if !(cond <= cap) {
        return Err(Error::Conditioning {
            condition: cond.as_f64(),
            cap: cap.as_f64(),
        });
    }
    let oh = omega.matmul(model.hamiltonian())?;
    let h = right_divide(&oh, omega)?;
    let hermiticity_residual = h.relative_hermitian_defect();
    if !(hermiticity_residual <= tol) {
        return Err(Error::HermitizationFailure {
            residual: hermiticity_residual.as_f64(),
            tol: tol.as_f64(),
        });
    }
    let spec_big = eig_general(model.hamiltonian())?.eigenvalues;
    let spec_small = eig_general(&h)?.eigenvalues;
    let spectra = compare_spectra(&spec_big, &spec_small)?;
    Ok(Hermitization {
        h,
        hermiticity_residual,
        spectra,
    })
}

/// `a · b⁻¹` via a solve with `b†`.
fn right_divide<T: Real>(a: &CMatrix<T>, b: &CMatrix<T>) -> Result<CMatrix<T>> {
    Ok(Lu::factor(&b.dagger())?.solve(&a.dagger())?.dagger())
}

/// `H = Ω⁻¹ 𝔥 Ω` over the chain generated by `dyson`.
pub fn make_crypto_hermitian<T: Real>(
    hermitian_h: &CMatrix<T>,
    dyson: &DysonChain<T>,
    mode: ChainMode,
    options: ChainOptions<T>,
) -> Result<QuantumModel<T>> {
    let dim = hermitian_h.dim()?;
    if dim != dyson.dim() {
        return Err(Error::Shape(format!(
            "Hamiltonian of dimension {dim}, Dyson map of dimension {}",
            dyson.dim()
        )));
    }
    let defect = hermitian_h.relative_hermitian_defect();
    if defect > default_tolerance::<T>(dim) {
        return Err(Error::NotHermitian {
            residual: defect.as_f64(),
        });
    }
    let (chain, _) = chain_from_dyson(dyson.omegas.clone(), mode, options)?;
    let omega = dyson.compose();
    let h = Lu::factor(omega)?.solve(&hermitian_h.matmul(omega)?)?;
    QuantumModel::verified(chain, h, Some(options.tol * T::of(dim as f64)))
}

/// Everything produced by [`generate_chain`].
#[derive(Clone, Debug)]
pub struct GeneratedChain<T: Real = f64> {
    pub chain: SpaceChain<T>,
    pub dyson: DysonChain<T>,
    pub model: QuantumModel<T>,
    /// The Hermitian partner `𝔥` the Hamiltonian was built from.
    pub hermitian: CMatrix<T>,
    /// Draws taken; earlier draws were numerically invalid and rejected.
    pub attempts: usize,
}

/// Default per-factor condition cap for generated Dyson factors.
pub const DEFAULT_FACTOR_CAP: f64 = 10.0;

/// Draws a random valid chain.
///
/// Each `Ω_j` is a complex Ginibre matrix whose singular values are mapped
/// log-affinely onto `[c^{-1/2}, c^{1/2}]`, so `cond(Ω_j) ≤ c` and the
/// composed map has condition at most `c^{K-1}`. `𝔥` is a GUE draw. The
/// stream is ChaCha8 seeded from `seed`; factors are drawn `Ω_1` first and
/// `𝔥` last, so outputs are reproducible across platforms. A draw whose
/// chain fails validation in floating point (possible for small `dim` and
/// large `K`, where the derived `Z_j` are badly conditioned) is discarded
/// and the stream continues.
pub fn generate_chain<T: Real>(dim: usize, k: usize, seed: u64, conditioning_cap: f64) -> Result<GeneratedChain<T>> {
    if dim == 0 {
        return Err(Error::Parameter("dimension must be at least 1".into()));
    }
    if k < 2 {
        return Err(Error::Parameter("K must be at least 2".into()));
    }
    if !(conditioning_cap >= 1.0) || !conditioning_cap.is_finite() {
        return Err(Error::Parameter(format!(
            "conditioning cap must be a finite number >= 1, got {conditioning_cap}"
        )));
    }
    let mut rng = seeded(seed);
    let options = generation_options::<T>(dim, k, conditioning_cap);
    let mut attempt = 1;
    loop {
        match draw_once(dim, k, conditioning_cap, options, &mut rng) {
            Ok((chain, dyson, model, hermitian)) => {
                return Ok(GeneratedChain {
                    chain,
                    dyson,
                    model,
                    hermitian,
                    attempts: attempt,
                })
            }
            Err(e) if attempt < MAX_GENERATION_ATTEMPTS && is_numerical_rejection(&e) => attempt += 1,
            Err(e) => return Err(e),
        }
    }
}

/// A `K = 4` model whose middle factor `Z_2` is observable.
///
/// With `G = Z_3` positive definite, `Z_1 = G^{-1/2} C G^{1/2}` and
/// `Z_2 = G^{-1/2} D G^{1/2}` where `C`, `D` are positive definite and share
/// an eigenbasis, so `CD = DC`. `H` is similar to a GUE draw through
/// `Θ^{1/2} = (DC)^{1/2} G^{1/2}`.
pub fn commuting_pair_model<T: Real>(dim: usize, seed: u64) -> Result<QuantumModel<T>> {
    if dim == 0 {
        return Err(Error::Parameter("dimension must be at least 1".into()));
    }
    let mut rng = seeded(seed);
    let w = ginibre::<T>(dim, &mut rng);
    let g = w.dagger().matmul(&w)?.try_add(&CMatrix::identity(dim))?;
    let u = crate::matrix::eigh(&gue::<T>(dim, &mut rng))?.vectors;
    let in_basis = |f: &dyn Fn(usize) -> f64| -> Result<CMatrix<T>> {
        let d: Vec<f64> = (0..dim).map(f).collect();
        u.matmul(&CMatrix::from_real_diag(&d))?.matmul(&u.dagger())
    };
    let c = in_basis(&|i| 1.0 + 0.3 * i as f64)?;
    let d = in_basis(&|i| 2.0 + 0.4 * ((7 * i) % 5) as f64)?;
    let gh = principal_sqrt_pd(&g)?;
    let gh_lu = Lu::factor(&gh)?;
    let similar = |core: &CMatrix<T>| gh_lu.solve(core)?.matmul(&gh);
    let (z1, z2) = (similar(&c)?, similar(&d)?);
    let root = principal_sqrt_pd(&d.matmul(&c)?.hermitian_part())?;
    let s = root.matmul(&gh)?;
    let h = Lu::factor(&s)?.solve(&gue::<T>(dim, &mut rng).matmul(&s)?)?;
    let chain = SpaceChain::new(vec![z1, z2, g], ChainMode::StrictPd)?;
    QuantumModel::verified(chain, h, None)
}

/// Upper bound on draws before [`generate_chain`] gives up.
pub const MAX_GENERATION_ATTEMPTS: usize = 64;

type Draw<T> = (SpaceChain<T>, DysonChain<T>, QuantumModel<T>, CMatrix<T>);

fn draw_once<T: Real>(dim: usize, k: usize, cap: f64, options: ChainOptions<T>, rng: &mut impl Rng) -> Result<Draw<T>> {
    let omegas = (1..k)
        .map(|_| clamped_factor::<T>(dim, cap, rng))
        .collect::<Result<Vec<_>>>()?;
    let hermitian = gue::<T>(dim, rng);
    let (chain, dyson) = chain_from_dyson(omegas, ChainMode::StrictPd, options)?;
    let model = make_crypto_hermitian(&hermitian, &dyson, ChainMode::StrictPd, options)?;
    Ok((chain, dyson, model, hermitian))
}

/// Draws whose factor products lose definiteness or self-adjointness to
/// rounding are redrawn.
fn is_numerical_rejection(e: &Error) -> bool {
    matches!(
        e,
        Error::Indefinite { .. }
            | Error::SelfAdjointness { .. }
            | Error::NotQuasiHermitian { .. }
            | Error::NotPositiveDefinite { .. }
            | Error::Conditioning { .. }
    )
}

/// Options for generated chains. With `cond(Ω_j) ≤ c` the derived factor
/// `Z_j = Θ_j⁻¹ Ω_j† Θ_j Ω_j` can reach `cond(Θ_j)² c² ≤ c^{4K-6}` (times
/// `dim` for the 1-norm estimate), which the default cap would reject for
/// small `dim` and large `K`; the cap is raised to that bound so generation
/// cannot fail.
fn generation_options<T: Real>(dim: usize, k: usize, c: f64) -> ChainOptions<T> {
    let defaults = ChainOptions::<T>::default();
    let bound = dim as f64 * c.powi(4 * k as i32 - 6).max(1.0);
    ChainOptions {
        cond_cap: defaults.cond_cap.max(T::of(bound)),
        ..defaults
    }
}

fn clamped_factor<T: Real>(dim: usize, cap: f64, rng: &mut impl Rng) -> Result<CMatrix<T>> {
    let g = ginibre::<T>(dim, rng);
    let s = svd(&g)?;
    let lo = -0.5 * cap.ln();
    let hi = 0.5 * cap.ln();
    let logs: Vec<f64> = s.singular_values.iter().map(|v| v.as_f64().ln()).collect();
    let (lmax, lmin) = (logs[0], logs[logs.len() - 1]);
    let spread = lmax - lmin;
    let mapped: Vec<f64> = logs
        .iter()
        .map(|&l| {
            if spread > 1e-12 {
                (lo + (l - lmin) / spread * (hi - lo)).exp()
            } else {
                l.clamp(lo, hi).exp()
            }
        })
        .collect();
    let us = CMatrix::from_fn(dim, dim, |i, j| s.u[(i, j)] * T::of(mapped[j]));
    us.matmul(&s.v.dagger())
}

/// Single-step refactorization `Ω_1 = √Θ`, a `K = 2` Dyson chain with the
/// same physical metric.
pub fn sqrt_refactorize<T: Real>(chain: &SpaceChain<T>) -> Result<DysonChain<T>> {
    let theta = chain.physical_metric();
    let defect = theta.relative_hermitian_defect();
    if defect > chain.tolerance() {
        return Err(Error::NotHermitian {
            residual: defect.as_f64(),
        });
    }
    let root = principal_sqrt_pd(&theta.hermitian_part())?;
    DysonChain::new(vec![root], chain.options().cond_cap)
}

/// Options for [`metric_from_hamiltonian`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MetricSearchOptions {
    /// Largest accepted dimension.
    pub dim_cap: usize,
    /// Singular values below `null_tol · σ_max` span the null space.
    pub null_tol: f64,
    /// Eigenvector-matrix condition above which `H` counts as defective.
    pub defect_cap: f64,
    /// `|Im λ| ≤ reality_tol · ‖H‖_F` counts as real.
    pub reality_tol: f64,
    /// Quasi-Hermiticity residual a candidate must meet (scaled by dim).
    pub tol: f64,
    /// Upper bound on returned scan candidates.
    pub max_candidates: usize,
}

impl Default for MetricSearchOptions {
    fn default() -> Self {
        Self {
            dim_cap: 12,
            null_tol: 1e-8,
            defect_cap: 1e8,
            reality_tol: 1e-9,
            tol: 1e-10,
            max_candidates: 16,
        }
    }
}

/// How a metric candidate was obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CandidateOrigin {
    Identity,
    /// `Θ = Σ_k |χ_k⟩⟨χ_k|` from left eigenvectors, i.e. `V^{-†}V^{-1}`.
    Biorthogonal,
    /// Sign-pattern combination of null-space basis elements.
    Scan,
}

#[derive(Clone, Debug, PartialEq)]
pub struct MetricCandidate {
    pub theta: CMatrix<f64>,
    /// `‖H†Θ − ΘH‖ / (‖H‖ ‖Θ‖)`.
    pub residual: f64,
    pub origin: CandidateOrigin,
}

/// Solution of `H†Θ = ΘH` over Hermitian `Θ`.
#[derive(Clone, Debug, PartialEq)]
pub struct MetricSolution {
    /// Orthonormal (Frobenius) basis of the Hermitian solution space.
    pub basis: Vec<CMatrix<f64>>,
    /// Positive-definite representatives; empty when none exists.
    pub candidates: Vec<MetricCandidate>,
    pub spectrum: Vec<Cx<f64>>,
    pub spectrum_real: bool,
    /// Condition number of the right-eigenvector matrix.
    pub eigenvector_condition: f64,
}

/// Orthonormal Hermitian basis element indexed as used by the vectorization:
/// `E_ii`, then `(E_ij + E_ji)/√2` and `i(E_ij − E_ji)/√2` for `i < j`.
fn hermitian_basis(n: usize) -> Vec<CMatrix<f64>> {
    let r = std::f64::consts::FRAC_1_SQRT_2;
    let mut out = Vec::with_capacity(n * n);
    for i in 0..n {
        let mut e = CMatrix::zeros(n, n);
        e[(i, i)] = Cx::new(1.0, 0.0);
        out.push(e);
    }
    for i in 0..n {
        for j in i + 1..n {
            let mut s = CMatrix::zeros(n, n);
            s[(i, j)] = Cx::new(r, 0.0);
            s[(j, i)] = Cx::new(r, 0.0);
            out.push(s);
            let mut a = CMatrix::zeros(n, n);
            a[(i, j)] = Cx::new(0.0, -r);
            a[(j, i)] = Cx::new(0.0, r);
            out.push(a);
        }
    }
    out
}

/// Finds the metrics compatible with `H` by vectorizing `H†Θ − ΘH = 0`
/// over a real basis of Hermitian matrices.
///
/// Returns the solution basis and positive-definite candidates: the identity
/// when `H` is Hermitian, the biorthogonal metric when the spectrum is real,
/// and positive sign-pattern combinations of the basis. A complex spectrum
/// gives no candidates. A defective `H` is an error.
pub fn metric_from_hamiltonian(h: &CMatrix<f64>, options: MetricSearchOptions) -> Result<MetricSolution> {
    let n = h.dim()?;
    if n > options.dim_cap {
        return Err(Error::DimensionCap {
            dim: n,
            cap: options.dim_cap,
        });
    }
    let tol = options.tol * n as f64;
    let eig = eig_general(h)?;
    let vcond = svd(&eig.right_eigenvectors)?.condition();
    if !(vcond <= options.defect_cap) {
        return Err(Error::Defective {
            condition: vcond,
            cap: options.defect_cap,
        });
    }
    let hnorm = h.norm_fro();
    let spectrum_real = eig
        .eigenvalues
        .iter()
        .all(|l| l.im.abs() <= options.reality_tol * hnorm.max(f64::MIN_POSITIVE));

    let herm = hermitian_basis(n);
    let hd = h.dagger();
    let m = n * n;
    let mut a = CMatrix::<f64>::zeros(2 * m, m);
    for (col, b) in herm.iter().enumerate() {
        let img = hd.matmul(b)?.try_sub(&b.matmul(h)?)?;
        for (idx, z) in img.as_slice().iter().enumerate() {
            a[(2 * idx, col)] = Cx::new(z.re, 0.0);
            a[(2 * idx + 1, col)] = Cx::new(z.im, 0.0);
        }
    }
    let dec = svd(&a)?;
    let smax = dec.singular_values[0];
    let basis: Vec<CMatrix<f64>> = dec
        .singular_values
        .iter()
        .enumerate()
        .filter(|(_, &s)| s <= options.null_tol * smax.max(f64::MIN_POSITIVE))
        .map(|(idx, _)| {
            let mut th = CMatrix::zeros(n, n);
            for (b, e) in herm.iter().enumerate() {
                let c = dec.v[(b, idx)].re;
                if c != 0.0 {
                    th = th.try_add(&e.scale_real(c)).expect("same shape");
                }
            }
            th.hermitian_part()
        })
        .collect();

    let residual = |th: &CMatrix<f64>| -> Result<f64> { crate::chain::pseudo_hermitian_residual(h, th) };
    let mut candidates: Vec<MetricCandidate> = Vec::new();
    let push = |theta: CMatrix<f64>, origin, cands: &mut Vec<MetricCandidate>| -> Result<()> {
        let r = residual(&theta)?;
        if r > tol || crate::matrix::cholesky_pd_with_tol(&theta, tol).is_err() {
            return Ok(());
        }
        let unit = theta.scale_real(1.0 / theta.norm_fro());
        if cands
            .iter()
            .any(|c| c.theta.scale_real(1.0 / c.theta.norm_fro()).dist_fro(&unit) < 1e-8)
        {
            return Ok(());
        }
        cands.push(MetricCandidate {
            theta,
            residual: r,
            origin,
        });
        Ok(())
    };

    if !spectrum_real {
        return Ok(MetricSolution {
            basis,
            candidates,
            spectrum: eig.eigenvalues,
            spectrum_real,
            eigenvector_condition: vcond,
        });
    }
    push(CMatrix::identity(n), CandidateOrigin::Identity, &mut candidates)?;
    {
        // Θ = V^{-†} V^{-1}, normalized to trace n.
        let vinv = crate::matrix::inverse_with_cap(&eig.right_eigenvectors, options.defect_cap * options.defect_cap)?;
        let th = vinv.dagger().matmul(&vinv)?.hermitian_part();
        let tr = th.trace().re;
        push(th.scale_real(n as f64 / tr), CandidateOrigin::Biorthogonal, &mut candidates)?;
    }
    let scan_cap = candidates.len() + options.max_candidates;
    let b = basis.len().min(10);
    'scan: for pattern in 0u32..(1u32 << b) {
        let mut th = CMatrix::zeros(n, n);
        for (idx, e) in basis.iter().take(b).enumerate() {
            let sign = if pattern >> idx & 1 == 1 { -1.0 } else { 1.0 };
            th = th.try_add(&e.scale_real(sign))?;
        }
        let tr = th.trace().re;
        if tr.abs() < 1e-12 {
            continue;
        }
        push(th.scale_real(n as f64 / tr), CandidateOrigin::Scan, &mut candidates)?;
        if candidates.len() >= scan_cap {
            break 'scan;
        }
    }
    Ok(MetricSolution {
        basis,
        candidates,
        spectrum: eig.eigenvalues,
        spectrum_real,
        eigenvector_condition: vcond,
    })
}
