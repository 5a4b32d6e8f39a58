//! Hermiticity bookkeeping for a chain plus Hamiltonian.
//!
//! Table 1 collects the self-adjointness relations `P = P^{‡(j)}` for the
//! descending products `P = Z_j Z_{j-1} ⋯ Z_{j-t}` (`Z_0 = H`). Table 2
//! collects the pseudo-Hermiticity relations
//! `Z_k^{‡(j)} (Z_j ⋯ Z_{k+1}) = (Z_j ⋯ Z_{k+1}) Z_k` for `k < j`.
//!
//! Every relation is evaluated in multiplied-out form (`Λ† G = G Λ` with `G`
//! the appropriate metric product), which avoids an inversion and keeps the
//! residual meaningful when the metrics are poorly conditioned.

use serde::{Deserialize, Serialize};

use crate::chain::{pseudo_hermitian_residual, ChainMode, Positivity, SpaceChain};
use crate::error::{Error, Result};
use crate::matrix::{product, CMatrix};
use crate::scalar::Real;

/// An operator with a display name.
#[derive(Clone, Debug, PartialEq)]
pub struct NamedOperator<T: Real> {
    pub name: String,
    pub op: CMatrix<T>,
}

/// A space chain together with its Hamiltonian `H = Z_0`.
#[derive(Clone, Debug)]
pub struct QuantumModel<T: Real = f64> {
    chain: SpaceChain<T>,
    h: CMatrix<T>,
    extra_observables: Vec<NamedOperator<T>>,
}

impl<T: Real> QuantumModel<T> {
    /// Bundles a chain and Hamiltonian without checking quasi-Hermiticity.
    pub fn new(chain: SpaceChain<T>, h: CMatrix<T>) -> Result<Self> {
        check_dim(&chain, &h, "Hamiltonian")?;
        Ok(Self {
            chain,
            h,
            extra_observables: Vec::new(),
        })
    }

    /// Bundles and requires `H† Θ = Θ H` within `tol` (default `1e-10·dim`).
    pub fn verified(chain: SpaceChain<T>, h: CMatrix<T>, tol: Option<T>) -> Result<Self> {
        let model = Self::new(chain, h)?;
        let tol = tol.unwrap_or_else(|| default_tolerance(model.dim()));
        let r = model.quasi_hermiticity_residual()?;
        if !(r <= tol) {
            return Err(Error::NotQuasiHermitian {
                residual: r.as_f64(),
                tol: tol.as_f64(),
            });
        }
        Ok(model)
    }

    pub fn with_observable(mut self, name: impl Into<String>, op: CMatrix<T>) -> Result<Self> {
        let name = name.into();
        check_dim(&self.chain, &op, &name)?;
        self.extra_observables.push(NamedOperator { name, op });
        Ok(self)
    }

    /// The same chain with `H` replaced by `s·H` (still quasi-Hermitian for
    /// real `s`).
    pub fn rescaled(&self, s: T) -> Self {
        Self {
            chain: self.chain.clone(),
            h: self.h.scale_real(s),
            extra_observables: self.extra_observables.clone(),
        }
    }

    pub fn chain(&self) -> &SpaceChain<T> {
        &self.chain
    }

    pub fn hamiltonian(&self) -> &CMatrix<T> {
        &self.h
    }

    pub fn extra_observables(&self) -> &[NamedOperator<T>] {
        &self.extra_observables
    }

    pub fn dim(&self) -> usize {
        self.chain.dim()
    }

    pub fn k(&self) -> usize {
        self.chain.k()
    }

    /// `Z_j` with the convention `Z_0 = H`.
    pub fn z(&self, j: usize) -> Result<&CMatrix<T>> {
        if j == 0 {
            Ok(&self.h)
        } else {
            self.chain.z(j)
        }
    }

    /// The physical metric `Θ`.
    pub fn metric(&self) -> &CMatrix<T> {
        self.chain.physical_metric()
    }

    /// `‖H†Θ − ΘH‖ / (‖H‖ ‖Θ‖)`.
    pub fn quasi_hermiticity_residual(&self) -> Result<T> {
        pseudo_hermitian_residual(&self.h, self.metric())
    }

    /// `Z_j Z_{j-1} ⋯ Z_{j-tier}` with `Z_0 = H`.
    pub fn product_tier(&self, j: usize, tier: usize) -> Result<CMatrix<T>> {
        product_tier(&self.chain, &self.h, j, tier)
    }
}

fn check_dim<T: Real>(chain: &SpaceChain<T>, m: &CMatrix<T>, what: &str) -> Result<()> {
    let d = chain.dim();
    if m.rows() != d || m.cols() != d {
        return Err(Error::Shape(format!(
            "{what} is {}x{}, chain dimension is {d}",
            m.rows(),
            m.cols()
        )));
    }
    Ok(())
}

/// Library default tolerance `1e-10 · dim` (scaled down proportionally for
/// `f32` through [`Real::working_tol`]).
pub fn default_tolerance<T: Real>(dim: usize) -> T {
    T::working_tol() * T::of(dim as f64)
}

/// `Z_j Z_{j-1} ⋯ Z_{j-tier}` (tier 0 is `Z_j` itself), with `Z_0 = h`.
pub fn product_tier<T: Real>(chain: &SpaceChain<T>, h: &CMatrix<T>, j: usize, tier: usize) -> Result<CMatrix<T>> {
    if j >= chain.k() {
        return Err(Error::IndexOutOfRange {
            index: j,
            max: chain.k() - 1,
        });
    }
    if tier > j {
        return Err(Error::IndexOutOfRange { index: tier, max: j });
    }
    check_dim(chain, h, "Hamiltonian")?;
    let factors = (j - tier..=j).rev().map(|i| if i == 0 { h } else { &chain.factors()[i - 1] });
    product(chain.dim(), factors)
}

/// Row label of a Table-1 tier: `Z, Y, X, W`, then `tier4`, `tier5`, ….
pub fn tier_name(tier: usize) -> String {
    match tier {
        0 => "Z".into(),
        1 => "Y".into(),
        2 => "X".into(),
        3 => "W".into(),
        t => format!("tier{t}"),
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Table1Cell {
    pub j: usize,
    pub tier: usize,
    pub name: String,
    pub residual: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Table2Cell {
    pub j: usize,
    pub k: usize,
    pub residual: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PositivityEntry {
    pub j: usize,
    pub status: Positivity,
}

/// Whether an operator is expected to be observable.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Expectation {
    /// Observable by algebra; a failure means the model is broken.
    Required,
    /// Not observable generically; the residual is only reported.
    Excluded,
    /// User supplied; reported.
    Extra,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ObservabilityEntry {
    pub name: String,
    pub residual: f64,
    pub pass: bool,
    pub expectation: Expectation,
}

/// Residuals for every relation of both tables, observability verdicts and
/// positivity of every partial metric.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct HermiticityReport {
    pub dim: usize,
    pub k: usize,
    pub mode: ChainMode,
    pub quasi_hermiticity: f64,
    pub table1: Vec<Table1Cell>,
    pub table2: Vec<Table2Cell>,
    pub positivity: Vec<PositivityEntry>,
    pub observability: Vec<ObservabilityEntry>,
    pub tolerance_used: f64,
    pub pass: bool,
    /// Labels of the asserted relations that exceed the tolerance.
    pub failures: Vec<String>,
}

impl HermiticityReport {
    pub fn max_table1(&self) -> f64 {
        self.table1.iter().map(|c| c.residual).fold(0.0, f64::max)
    }

    pub fn max_table2(&self) -> f64 {
        self.table2.iter().map(|c| c.residual).fold(0.0, f64::max)
    }
}

/// Table 1: one cell per `(j, tier)` with `0 ≤ tier ≤ j ≤ K−1`.
///
/// With `P = Z_j ⋯ Z_{j-t}` the cell is `‖P†Θ_j − Θ_j P‖ / (‖P‖ ‖Θ_j‖)`,
/// where `Θ_j P` is associated left to right and `P†Θ_j` is formed as
/// `(Θ_j† Z_j ⋯ Z_{j-t})†` in the same order.
pub fn verify_table1<T: Real>(model: &QuantumModel<T>) -> Result<Vec<Table1Cell>> {
    let chain = model.chain();
    let dim = chain.dim();
    let mut cells = Vec::new();
    for j in 0..chain.k() {
        let theta = chain.metric(j)?;
        let theta_d = theta.dagger();
        for tier in 0..=j {
            let factors: Vec<&CMatrix<T>> = (j - tier..=j).rev().map(|i| model.z(i)).collect::<Result<_>>()?;
            let p = product(dim, factors.iter().copied())?;
            let rhs = product(dim, std::iter::once(theta).chain(factors.iter().copied()))?;
            let lhs = product(dim, std::iter::once(&theta_d).chain(factors.iter().copied()))?.dagger();
            let residual = crate::matrix::relative_residual(&lhs, &rhs, p.norm_fro() * theta.norm_fro());
            cells.push(Table1Cell {
                j,
                tier,
                name: tier_name(tier),
                residual: residual.as_f64(),
            });
        }
    }
    Ok(cells)
}

/// Table 2: one cell per `(j, k)` with `0 ≤ k < j ≤ K−1`.
pub fn verify_table2<T: Real>(model: &QuantumModel<T>) -> Result<Vec<Table2Cell>> {
    let chain = model.chain();
    let dim = chain.dim();
    let mut cells = Vec::new();
    for j in 1..chain.k() {
        let theta = chain.metric(j)?;
        for k in 0..j {
            // G = Θ_j Z_j ⋯ Z_{k+1}, associated left to right.
            let g = product(dim, std::iter::once(theta).chain((k + 1..=j).rev().map(|i| &chain.factors()[i - 1])))?;
            cells.push(Table2Cell {
                j,
                k,
                residual: pseudo_hermitian_residual(model.z(k)?, &g)?.as_f64(),
            });
        }
    }
    Ok(cells)
}

/// Residual of `Λ†Θ = ΘΛ` against the physical metric.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Observability<T> {
    pub residual: T,
    pub pass: bool,
}

pub fn observability_check<T: Real>(model: &QuantumModel<T>, lambda: &CMatrix<T>, tol: T) -> Result<Observability<T>> {
    check_dim(model.chain(), lambda, "operator")?;
    let residual = pseudo_hermitian_residual(lambda, model.metric())?;
    Ok(Observability {
        residual,
        pass: residual <= tol,
    })
}

/// Name of the descending product `Z_m Z_{m-1} ⋯ Z_l`, e.g. `Z3Z2`.
pub fn product_name(m: usize, l: usize) -> String {
    (l..=m).rev().map(|i| format!("Z{i}")).collect()
}

/// Verdicts for `H`, the tail products `Z_m ⋯ Z_1`, `Θ`, the excluded
/// candidates `Z_m ⋯ Z_l` with `l ≥ 2`, and any extra observables.
pub fn classify_canonical_observables<T: Real>(model: &QuantumModel<T>, tol: T) -> Result<Vec<ObservabilityEntry>> {
    let chain = model.chain();
    let dim = chain.dim();
    let k = chain.k();
    let factor = |i: usize| &chain.factors()[i - 1];
    let mut out = Vec::new();
    let mut push = |name: String, op: &CMatrix<T>, expectation| -> Result<()> {
        let o = observability_check(model, op, tol)?;
        out.push(ObservabilityEntry {
            name,
            residual: o.residual.as_f64(),
            pass: o.pass,
            expectation,
        });
        Ok(())
    };
    push("H".into(), model.hamiltonian(), Expectation::Required)?;
    for m in 1..k {
        let p = product(dim, (1..=m).rev().map(factor))?;
        push(product_name(m, 1), &p, Expectation::Required)?;
    }
    push("Theta".into(), model.metric(), Expectation::Required)?;
    for l in 2..k {
        for m in l..k {
            let p = product(dim, (l..=m).rev().map(factor))?;
            push(product_name(m, l), &p, Expectation::Excluded)?;
        }
    }
    for extra in model.extra_observables() {
        push(extra.name.clone(), &extra.op, Expectation::Extra)?;
    }
    Ok(out)
}

/// Full report. `tol` defaults to `1e-10·dim`.
///
/// The report passes when the quasi-Hermiticity of `H`, every Table-1 and
/// Table-2 cell and every required observable are within tolerance and, in
/// strict mode, every partial metric is positive definite.
pub fn verify<T: Real>(model: &QuantumModel<T>, tol: Option<T>) -> Result<HermiticityReport> {
    let tol = tol.unwrap_or_else(|| default_tolerance(model.dim()));
    let tol64 = tol.as_f64();
    let chain = model.chain();
    let quasi = model.quasi_hermiticity_residual()?.as_f64();
    let table1 = verify_table1(model)?;
    let table2 = verify_table2(model)?;
    let observability = classify_canonical_observables(model, tol)?;
    let positivity: Vec<PositivityEntry> = chain
        .positivity()
        .iter()
        .enumerate()
        .map(|(j, &status)| PositivityEntry { j, status })
        .collect();

    let bad = |r: f64| !(r <= tol64);
    let mut failures = Vec::new();
    if bad(quasi) {
        failures.push("quasi_hermiticity".to_string());
    }
    for c in table1.iter().filter(|c| bad(c.residual)) {
        failures.push(format!("table1[j={},{}]", c.j, c.name));
    }
    for c in table2.iter().filter(|c| bad(c.residual)) {
        failures.push(format!("table2[j={},k={}]", c.j, c.k));
    }
    for o in observability
        .iter()
        .filter(|o| o.expectation == Expectation::Required && !o.pass)
    {
        failures.push(format!("observability[{}]", o.name));
    }
    if chain.mode() == ChainMode::StrictPd {
        for p in positivity.iter().filter(|p| p.status != Positivity::Pd) {
            failures.push(format!("positivity[j={}]", p.j));
        }
    }
    Ok(HermiticityReport {
        dim: model.dim(),
        k: model.k(),
        mode: chain.mode(),
        quasi_hermiticity: quasi,
        table1,
        table2,
        positivity,
        observability,
        tolerance_used: tol64,
        pass: failures.is_empty(),
        failures,
    })
}
