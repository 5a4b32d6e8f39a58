//! Crypto-Hermitian quantum models over chains of Hilbert-space metrics.
//!
//! Numerical code is generic over the real scalar (`f32` or `f64`); the
//! aliases below fix it to the common choices.

// `!(x <= tol)` is used deliberately so NaN residuals fail checks.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod chain;
pub mod dynamics;
pub mod dyson;
pub mod ensemble;
pub mod error;
pub mod io;
pub mod ledger;
pub mod matrix;
pub mod models;
pub mod scalar;
pub mod spectral;

pub use chain::{pseudo_hermitian_residual, ChainMode, ChainOptions, Positivity, SpaceChain};
pub use dynamics::{build_density, evolve, evolve_density, projector, transport_projector, uniform_grid, DensityMatrix, StateTrajectory};
pub use dyson::{
    chain_from_dyson, commuting_pair_model, generate_chain, hermitize, make_crypto_hermitian, metric_from_hamiltonian, sqrt_refactorize, DysonChain,
    GeneratedChain, Hermitization, MetricSearchOptions, MetricSolution, DEFAULT_FACTOR_CAP,
};
pub use error::{Error, Result};
pub use ledger::{verify, HermiticityReport, QuantumModel};
pub use matrix::{CMatrix, CVector};
pub use models::{compare_bg_spectra, BGParams, BgComparison, CompareOptions, QBox};
pub use scalar::{Cx, Real};
pub use spectral::{compare_spectra, SpectralComparison};

pub type Complex64 = Cx<f64>;
pub type Complex32 = Cx<f32>;
pub type Matrix = CMatrix<f64>;
pub type Matrix32 = CMatrix<f32>;
pub type Vector = CVector<f64>;
pub type Vector32 = CVector<f32>;
pub type Chain = SpaceChain<f64>;
pub type Chain32 = SpaceChain<f32>;
pub type Model = QuantumModel<f64>;
pub type Model32 = QuantumModel<f32>;
pub type Dyson = DysonChain<f64>;
pub type Dyson32 = DysonChain<f32>;
pub type Density = DensityMatrix<f64>;
pub type Density32 = DensityMatrix<f32>;
