use thiserror::Error;

/// Errors raised by the numerical kernels and the chain machinery.
///
/// Numeric payloads are carried as `f64` regardless of the working scalar so
/// that the error type is not generic.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("shape mismatch: {0}")]
    Shape(String),

    #[error("matrix contains a non-finite entry at ({row}, {col})")]
    NonFinite { row: usize, col: usize },

    #[error("ill-conditioned or singular matrix: condition estimate {condition:e} exceeds cap {cap:e}")]
    Conditioning { condition: f64, cap: f64 },

    #[error("matrix is not Hermitian within tolerance: relative defect {residual:e}")]
    NotHermitian { residual: f64 },

    #[error("matrix is not positive definite: pivot {pivot} has value {value:e}")]
    NotPositiveDefinite { pivot: usize, value: f64 },

    #[error("iteration did not converge after {iterations} iterations ({detail})")]
    NoConvergence { iterations: usize, detail: String },

    #[error("matrix exponential out of range: {0}")]
    Range(String),

    #[error("index {index} out of range 0..={max}")]
    IndexOutOfRange { index: usize, max: usize },

    #[error("Z_{j} is not self-adjoint in R_{j}: relative residual {residual:e} > {tol:e}")]
    SelfAdjointness { j: usize, residual: f64, tol: f64 },

    #[error("partial metric Theta_(K-1,{j}) is not positive definite")]
    Indefinite { j: usize },

    #[error("Hamiltonian is not quasi-Hermitian against the chain metric: relative residual {residual:e} > {tol:e}")]
    NotQuasiHermitian { residual: f64, tol: f64 },

    #[error("Dyson chain does not generate the model metric: relative residual {residual:e} > {tol:e}")]
    DysonMismatch { residual: f64, tol: f64 },

    #[error("Hermitization failed: relative Hermiticity defect of the image {residual:e} > {tol:e}")]
    HermitizationFailure { residual: f64, tol: f64 },

    #[error("Hamiltonian is defective within tolerance: eigenvector condition {condition:e} > {cap:e}")]
    Defective { condition: f64, cap: f64 },

    #[error("dimension {dim} exceeds configured cap {cap}")]
    DimensionCap { dim: usize, cap: usize },

    #[error("state has vanishing physical norm {norm:e}")]
    ZeroNorm { norm: f64 },

    #[error("invalid weights: {0}")]
    Weights(String),

    #[error("invalid parameter: {0}")]
    Parameter(String),

    #[error("format error in `{field}`: {detail}")]
    Format { field: String, detail: String },
}

pub type Result<T> = std::result::Result<T, Error>;
