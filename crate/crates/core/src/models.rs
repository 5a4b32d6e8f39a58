//! Finite-difference realization of the isospectral pair
//!
//! ```text
//! H  = −d²/dx² + (j²−1)/(4r²) + r²/4 − g²r⁴/4,   r = x − iη,
//! Q  = −d²/dx² − (gx − 1/2) j + (gx − 1)² x²,
//! ```
//!
//! the first non-Hermitian (complex-shifted wrong-sign quartic), the second
//! real and self-adjoint. Both use the three-point Laplacian with Dirichlet
//! walls on a uniform grid of interior nodes.
//!
//! `Q` is a double well with minima at `x = 0` and `x = 1/g`; its low levels
//! alternate between the two wells. [`QBox::BothWells`] therefore places the
//! `Q` window on `[−L, L + 1/g]` when comparing spectra, while
//! [`discretize_q`] itself uses the symmetric box `[−L, L]`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::{tridiagonal_symmetric_eigenvalues, CMatrix};
use crate::scalar::Cx;
use crate::spectral::{compare_spectra, SpectralComparison};

/// Parameters of the pair and of the grid.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct BGParams {
    pub g: f64,
    pub j: f64,
    pub eta: f64,
    /// Half-width of the box `[−L, L]`.
    pub l: f64,
    /// Number of interior grid points.
    pub n_grid: usize,
}

impl Default for BGParams {
    fn default() -> Self {
        Self {
            g: 0.05,
            j: 1.0,
            eta: 1.0,
            l: 8.0,
            n_grid: 800,
        }
    }
}

pub const MIN_GRID: usize = 16;
pub const MAX_LEVELS: usize = 8;
/// Imaginary parts below this fraction of `1 + |Re λ|` are eigensolver
/// rounding, not discretization error.
pub const REALITY_NOISE_FLOOR: f64 = 1e-9;

impl BGParams {
    pub fn validate(&self) -> Result<()> {
        let finite = [self.g, self.j, self.eta, self.l].iter().all(|v| v.is_finite());
        if !finite {
            return Err(Error::Parameter("parameters must be finite".into()));
        }
        if !(self.g > 0.0) {
            return Err(Error::Parameter(format!("g must be positive, got {}", self.g)));
        }
        if !(self.eta > 0.0) {
            return Err(Error::Parameter(format!("eta must be positive, got {}", self.eta)));
        }
        if !(self.l > 0.0) {
            return Err(Error::Parameter(format!("box half-width must be positive, got {}", self.l)));
        }
        if self.n_grid < MIN_GRID {
            return Err(Error::Parameter(format!(
                "n_grid must be at least {MIN_GRID}, got {}",
                self.n_grid
            )));
        }
        Ok(())
    }

    pub fn with_grid(self, n_grid: usize) -> Self {
        Self { n_grid, ..self }
    }

    /// Grid spacing `2L / (N + 1)` of the symmetric box.
    pub fn spacing(&self) -> f64 {
        2.0 * self.l / (self.n_grid as f64 + 1.0)
    }
}

/// Interior nodes `x_i = a + (i + 1) h`, `h = (b − a)/(N + 1)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Grid {
    pub a: f64,
    pub b: f64,
    pub n: usize,
}

impl Grid {
    pub fn spacing(&self) -> f64 {
        (self.b - self.a) / (self.n as f64 + 1.0)
    }

    pub fn nodes(&self) -> Vec<f64> {
        let h = self.spacing();
        (0..self.n).map(|i| self.a + (i as f64 + 1.0) * h).collect()
    }
}

/// A (complex) symmetric tridiagonal matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct Tridiagonal {
    pub diag: Vec<Cx<f64>>,
    /// `off[i]` couples nodes `i` and `i + 1`.
    pub off: Vec<Cx<f64>>,
}

impl Tridiagonal {
    pub fn dim(&self) -> usize {
        self.diag.len()
    }

    pub fn to_dense(&self) -> CMatrix<f64> {
        let n = self.dim();
        let mut m = CMatrix::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = self.diag[i];
        }
        for (i, &e) in self.off.iter().enumerate() {
            m[(i, i + 1)] = e;
            m[(i + 1, i)] = e;
        }
        m
    }

    /// All eigenvalues, sorted by (Re, Im).
    pub fn eigenvalues(&self) -> Result<Vec<Cx<f64>>> {
        tridiagonal_symmetric_eigenvalues(&self.diag, &self.off)
    }
}

/// `−d²/dx² + V(x)` on `grid`.
pub fn schrodinger(grid: Grid, potential: impl Fn(f64) -> Cx<f64>) -> Tridiagonal {
    let h = grid.spacing();
    let k = 1.0 / (h * h);
    Tridiagonal {
        diag: grid.nodes().into_iter().map(|x| Cx::new(2.0 * k, 0.0) + potential(x)).collect(),
        off: vec![Cx::new(-k, 0.0); grid.n.saturating_sub(1)],
    }
}

/// `(j²−1)/(4r²) + r²/4 − g²r⁴/4` at `r = x − iη`.
pub fn bg_potential(p: &BGParams, x: f64) -> Cx<f64> {
    let r = Cx::new(x, -p.eta);
    let r2 = r * r;
    let centrifugal = p.j * p.j - 1.0;
    let c = if centrifugal == 0.0 {
        Cx::new(0.0, 0.0)
    } else {
        Cx::new(centrifugal, 0.0) / (r2 * 4.0)
    };
    c + r2 / 4.0 - r2 * r2 * (p.g * p.g / 4.0)
}

/// `−(gx − 1/2) j + (gx − 1)² x²`.
pub fn q_potential(p: &BGParams, x: f64) -> f64 {
    let s = p.g * x - 1.0;
    -(p.g * x - 0.5) * p.j + s * s * x * x
}

fn symmetric_grid(p: &BGParams) -> Grid {
    Grid {
        a: -p.l,
        b: p.l,
        n: p.n_grid,
    }
}

pub fn bg_tridiagonal(p: &BGParams) -> Result<Tridiagonal> {
    p.validate()?;
    Ok(schrodinger(symmetric_grid(p), |x| bg_potential(p, x)))
}

pub fn q_tridiagonal_on(p: &BGParams, grid: Grid) -> Result<Tridiagonal> {
    p.validate()?;
    Ok(schrodinger(grid, |x| Cx::new(q_potential(p, x), 0.0)))
}

/// Dense `N × N` discretization of the non-Hermitian operator on `[−L, L]`.
pub fn discretize_bg(p: &BGParams) -> Result<CMatrix<f64>> {
    Ok(bg_tridiagonal(p)?.to_dense())
}

/// Dense real symmetric discretization of `Q` on `[−L, L]`.
pub fn discretize_q(p: &BGParams) -> Result<CMatrix<f64>> {
    Ok(q_tridiagonal_on(p, symmetric_grid(p))?.to_dense())
}

/// Box used for the `Q` side of a comparison.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "kebab-case")]
pub enum QBox {
    /// `[−L, L]`, the same box as the non-Hermitian side; misses the well
    /// at `x = 1/g` once `1/g > L`.
    Symmetric,
    /// `[−L, L + 1/g]`, covering both wells with the same margin.
    #[default]
    BothWells,
}

impl QBox {
    pub fn grid(self, p: &BGParams) -> Grid {
        match self {
            QBox::Symmetric => symmetric_grid(p),
            QBox::BothWells => Grid {
                a: -p.l,
                b: p.l + 1.0 / p.g,
                n: p.n_grid,
            },
        }
    }
}

/// Options for [`compare_bg_spectra`].
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct CompareOptions {
    /// Keep eigenvalues with `|Im λ| < reality_tol · (1 + |Re λ|)`.
    pub reality_tol: f64,
    pub q_box: QBox,
}

impl Default for CompareOptions {
    fn default() -> Self {
        Self {
            reality_tol: 1e-2,
            q_box: QBox::BothWells,
        }
    }
}

/// Lowest `n_levels` near-real eigenvalues of the non-Hermitian side, by
/// real part. Returns fewer when the filter rejects too many.
pub fn bg_levels(p: &BGParams, n_levels: usize, reality_tol: f64) -> Result<Vec<Cx<f64>>> {
    let mut ev: Vec<Cx<f64>> = bg_tridiagonal(p)?
        .eigenvalues()?
        .into_iter()
        .filter(|l| l.im.abs() < reality_tol * (1.0 + l.re.abs()))
        .collect();
    ev.sort_by(|a, b| a.re.total_cmp(&b.re));
    ev.truncate(n_levels);
    Ok(ev)
}

/// Lowest `n_levels` eigenvalues of `Q` on the chosen box.
pub fn q_levels(p: &BGParams, n_levels: usize, q_box: QBox) -> Result<Vec<f64>> {
    let mut ev: Vec<f64> = q_tridiagonal_on(p, q_box.grid(p))?
        .eigenvalues()?
        .into_iter()
        .map(|l| l.re)
        .collect();
    ev.sort_by(f64::total_cmp);
    ev.truncate(n_levels);
    Ok(ev)
}

/// Both spectra at one grid size.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LevelComparison {
    pub n_grid: usize,
    pub bg: Vec<Cx<f64>>,
    pub q: Vec<f64>,
    /// Absent when the reality filter left fewer than the requested levels.
    pub comparison: Option<SpectralComparison>,
    /// Largest `|Im λ| / (1 + |Re λ|)` among retained levels.
    pub max_im_ratio: f64,
}

impl LevelComparison {
    /// Relative deviation of the matched lowest level.
    pub fn ground_deviation(&self) -> Option<f64> {
        self.comparison.as_ref().and_then(|c| c.pairs.first().map(|p| p.rel_dev))
    }
}

/// Overall verdict of a comparison.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BgOutcome {
    Compared,
    /// Too few near-real eigenvalues on the non-Hermitian side.
    RealityFilterFailure,
}

/// Comparison at `N` and `2N` with refinement diagnostics.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BgComparison {
    pub params: BGParams,
    pub n_levels: usize,
    pub options: CompareOptions,
    pub outcome: BgOutcome,
    pub coarse: LevelComparison,
    pub fine: LevelComparison,
    /// Every matched level deviates less at `2N` than at `N`.
    pub all_levels_improve: bool,
    pub ground_improves: bool,
    /// Largest relative deviation at `N`.
    pub max_rel_dev: f64,
    /// Reality-filter ratio shrinks from `N` to `2N`, or is already below
    /// [`REALITY_NOISE_FLOOR`] at `2N`.
    pub reality_improves: bool,
}

fn compare_at(p: &BGParams, n_levels: usize, opts: &CompareOptions) -> Result<LevelComparison> {
    let bg = bg_levels(p, n_levels, opts.reality_tol)?;
    let q = q_levels(p, n_levels, opts.q_box)?;
    let max_im_ratio = bg
        .iter()
        .map(|l| l.im.abs() / (1.0 + l.re.abs()))
        .fold(0.0, f64::max);
    let comparison = if bg.len() == n_levels && q.len() == n_levels {
        let qc: Vec<Cx<f64>> = q.iter().map(|&v| Cx::new(v, 0.0)).collect();
        Some(compare_spectra(&bg, &qc)?)
    } else {
        None
    };
    Ok(LevelComparison {
        n_grid: p.n_grid,
        bg,
        q,
        comparison,
        max_im_ratio,
    })
}

/// Compares the lowest levels of both discretizations at `N` and `2N`.
pub fn compare_bg_spectra(p: &BGParams, n_levels: usize, opts: CompareOptions) -> Result<BgComparison> {
    p.validate()?;
    if n_levels == 0 || n_levels > MAX_LEVELS {
        return Err(Error::Parameter(format!(
            "n_levels must be in 1..={MAX_LEVELS}, got {n_levels}"
        )));
    }
    let coarse = compare_at(p, n_levels, &opts)?;
    let fine = compare_at(&p.with_grid(2 * p.n_grid), n_levels, &opts)?;
    let (outcome, all_levels_improve, ground_improves, max_rel_dev) = match (&coarse.comparison, &fine.comparison) {
        (Some(c), Some(f)) => (
            BgOutcome::Compared,
            c.pairs.iter().zip(&f.pairs).all(|(a, b)| b.rel_dev < a.rel_dev),
            f.pairs[0].rel_dev < c.pairs[0].rel_dev,
            c.max_rel_dev,
        ),
        _ => (BgOutcome::RealityFilterFailure, false, false, f64::NAN),
    };
    Ok(BgComparison {
        params: *p,
        n_levels,
        options: opts,
        outcome,
        reality_improves: fine.max_im_ratio <= coarse.max_im_ratio || fine.max_im_ratio < REALITY_NOISE_FLOOR,
        coarse,
        fine,
        all_levels_improve,
        ground_improves,
        max_rel_dev,
    })
}

/// `Q` against itself on the same grid: zero deviations by construction.
pub fn self_compare_q(p: &BGParams, n_levels: usize, q_box: QBox) -> Result<SpectralComparison> {
    let q: Vec<Cx<f64>> = q_levels(p, n_levels, q_box)?
        .into_iter()
        .map(|v| Cx::new(v, 0.0))
        .collect();
    compare_spectra(&q, &q)
}

/// Lowest `levels` eigenvalues of the bare Dirichlet Laplacian on `[−L, L]`.
pub fn kinetic_levels(l: f64, n_grid: usize, levels: usize) -> Result<Vec<f64>> {
    let grid = Grid { a: -l, b: l, n: n_grid };
    let mut ev: Vec<f64> = schrodinger(grid, |_| Cx::new(0.0, 0.0))
        .eigenvalues()?
        .into_iter()
        .map(|z| z.re)
        .collect();
    ev.sort_by(f64::total_cmp);
    ev.truncate(levels);
    Ok(ev)
}

/// Convergence order of the kinetic term: least-squares slope of
/// `log |λ_k(h) − (kπ/2L)²|` against `log h` over `grids`, averaged over
/// the lowest `levels` states.
pub fn kinetic_convergence_slope(l: f64, grids: &[usize], levels: usize) -> Result<f64> {
    if grids.len() < 2 || levels == 0 {
        return Err(Error::Parameter("need at least two grids and one level".into()));
    }
    let mut slopes = Vec::with_capacity(levels);
    for k in 1..=levels {
        let exact = (k as f64 * std::f64::consts::PI / (2.0 * l)).powi(2);
        let mut pts = Vec::with_capacity(grids.len());
        for &n in grids {
            let lam = kinetic_levels(l, n, k)?[k - 1];
            let h = 2.0 * l / (n as f64 + 1.0);
            pts.push((h.ln(), (lam - exact).abs().ln()));
        }
        slopes.push(ls_slope(&pts));
    }
    Ok(slopes.iter().sum::<f64>() / slopes.len() as f64)
}

fn ls_slope(pts: &[(f64, f64)]) -> f64 {
    let n = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    sxy / sxx
}

/// Lowest near-real levels of the non-Hermitian side for several `η`.
/// Reported only: the partner `Q` does not depend on `η`.
pub fn eta_scan(p: &BGParams, etas: &[f64], n_levels: usize, reality_tol: f64) -> Result<Vec<(f64, Vec<Cx<f64>>)>> {
    etas.iter()
        .map(|&eta| Ok((eta, bg_levels(&BGParams { eta, ..*p }, n_levels, reality_tol)?)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params(n: usize) -> BGParams {
        BGParams {
            n_grid: n,
            ..BGParams::default()
        }
    }

    #[test]
    fn validation() {
        assert!(params(8).validate().is_err());
        assert!(BGParams { g: 0.0, ..params(32) }.validate().is_err());
        assert!(BGParams { eta: -1.0, ..params(32) }.validate().is_err());
        assert!(params(16).validate().is_ok());
    }

    #[test]
    fn spacing_and_nodes() {
        let p = BGParams { l: 1.0, ..params(19) };
        assert!((p.spacing() - 0.1).abs() < 1e-15);
        let x = Grid { a: -1.0, b: 1.0, n: 19 }.nodes();
        assert!((x[0] + 0.9).abs() < 1e-15 && (x[18] - 0.9).abs() < 1e-12);
    }

    #[test]
    fn centrifugal_term_vanishes_at_unit_j() {
        let p = params(32);
        let r = Cx::new(0.3, -1.0);
        let expect = r * r / 4.0 - r * r * r * r * (p.g * p.g / 4.0);
        assert_eq!(bg_potential(&p, 0.3), expect);
        let pm = BGParams { j: -1.0, ..p };
        assert_eq!(bg_potential(&pm, 0.3), expect);
        let p2 = BGParams { j: 2.0, ..p };
        assert!((bg_potential(&p2, 0.3) - expect - Cx::new(3.0, 0.0) / (r * r * 4.0)).norm() < 1e-15);
    }

    #[test]
    fn q_is_real_symmetric() {
        let q = discretize_q(&params(40)).unwrap();
        assert_eq!(q, q.transpose());
        assert!(q.as_slice().iter().all(|z| z.im == 0.0));
    }

    #[test]
    fn bg_has_complex_diagonal() {
        let h = discretize_bg(&params(40)).unwrap();
        assert!(h.diagonal().iter().all(|z| z.im != 0.0));
        assert_eq!(h, h.transpose());
    }

    #[test]
    fn harmonic_limit() {
        let p = BGParams {
            g: 1e-6,
            j: 0.0,
            l: 8.0,
            n_grid: 800,
            eta: 1.0,
        };
        let q = q_levels(&p, 3, QBox::Symmetric).unwrap();
        for (lev, want) in q.iter().zip([1.0, 3.0, 5.0]) {
            assert!((lev - want).abs() < 1e-3, "{lev} vs {want}");
        }
    }

    #[test]
    fn particle_in_a_box() {
        let ev = kinetic_levels(1.0, 400, 3).unwrap();
        for (k, lam) in ev.iter().enumerate() {
            let exact = ((k + 1) as f64 * std::f64::consts::PI / 2.0).powi(2);
            assert!((lam - exact).abs() / exact < 1e-4);
        }
        let slope = kinetic_convergence_slope(8.0, &[100, 200, 400, 800], 3).unwrap();
        assert!((1.8..=2.2).contains(&slope), "{slope}");
    }

    #[test]
    fn self_comparison_is_zero() {
        let c = self_compare_q(&params(100), 3, QBox::Symmetric).unwrap();
        assert_eq!(c.max_abs_dev, 0.0);
    }

    #[test]
    fn level_count_is_desk_scale() {
        assert!(compare_bg_spectra(&params(32), 9, CompareOptions::default()).is_err());
        assert!(compare_bg_spectra(&params(32), 0, CompareOptions::default()).is_err());
    }
}
