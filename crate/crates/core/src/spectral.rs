//! Eigenvalue-multiset comparison by optimal matching in the complex plane.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::min_cost_assignment;
use crate::scalar::{Cx, Real};

/// One matched eigenvalue pair.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MatchedPair {
    pub a: Cx<f64>,
    pub b: Cx<f64>,
    pub abs_dev: f64,
    /// `abs_dev / max(|a|, |b|)`, zero when both vanish.
    pub rel_dev: f64,
}

/// Two spectra paired by a minimal-weight perfect assignment on
/// `|λ_a − λ_b|`, listed in the order of the first spectrum.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SpectralComparison {
    pub count: usize,
    pub pairs: Vec<MatchedPair>,
    /// Description of the matching rule.
    pub matching: String,
    /// `assignment[i]` is the index in the second list matched to entry `i`
    /// of the first.
    pub assignment: Vec<usize>,
    pub max_abs_dev: f64,
    pub max_rel_dev: f64,
    /// Largest modulus over both spectra.
    pub spectral_scale: f64,
}

pub const MATCHING_RULE: &str = "minimal-weight perfect assignment on |a - b|";

impl SpectralComparison {
    /// `max_abs_dev / spectral_scale`: deviation relative to the overall
    /// size of the spectrum, insensitive to eigenvalues near zero.
    pub fn scaled_deviation(&self) -> f64 {
        if self.spectral_scale > 0.0 {
            self.max_abs_dev / self.spectral_scale
        } else {
            self.max_abs_dev
        }
    }
}

/// Matches `a` against `b`. Both lists must have the same length.
pub fn compare_spectra<T: Real>(a: &[Cx<T>], b: &[Cx<T>]) -> Result<SpectralComparison> {
    if a.len() != b.len() {
        return Err(Error::Shape(format!(
            "spectra of different sizes: {} and {}",
            a.len(),
            b.len()
        )));
    }
    let to64 = |z: &Cx<T>| Cx::new(z.re.as_f64(), z.im.as_f64());
    let a: Vec<Cx<f64>> = a.iter().map(to64).collect();
    let b: Vec<Cx<f64>> = b.iter().map(to64).collect();
    let cost: Vec<Vec<f64>> = a.iter().map(|x| b.iter().map(|y| (x - y).norm()).collect()).collect();
    let assignment = min_cost_assignment(&cost);
    let pairs: Vec<MatchedPair> = a
        .iter()
        .zip(&assignment)
        .map(|(&x, &j)| {
            let y = b[j];
            let abs_dev = (x - y).norm();
            let scale = x.norm().max(y.norm());
            MatchedPair {
                a: x,
                b: y,
                abs_dev,
                rel_dev: if scale > 0.0 { abs_dev / scale } else { 0.0 },
            }
        })
        .collect();
    let spectral_scale = a.iter().chain(&b).map(|z| z.norm()).fold(0.0, f64::max);
    Ok(SpectralComparison {
        count: pairs.len(),
        max_abs_dev: pairs.iter().map(|p| p.abs_dev).fold(0.0, f64::max),
        max_rel_dev: pairs.iter().map(|p| p.rel_dev).fold(0.0, f64::max),
        pairs,
        matching: MATCHING_RULE.into(),
        assignment,
        spectral_scale,
    })
}
