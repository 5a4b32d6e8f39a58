use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use cryptoherm::{ChainMode, QBox};

/// Construct, verify and exploit chains of inner-product spaces for
/// crypto-Hermitian Hamiltonians.
///
/// Exit status: 0 pass, 1 verification failure, 2 usage or format error.
#[derive(Debug, Parser)]
#[command(name = "cryptoherm", version)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Output written to stdout; JSON files are always written.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    pub format: Format,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    StrictPd,
    Krein,
}

impl From<Mode> for ChainMode {
    fn from(m: Mode) -> Self {
        match m {
            Mode::StrictPd => ChainMode::StrictPd,
            Mode::Krein => ChainMode::KreinDiagnostic,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum QBoxArg {
    BothWells,
    Symmetric,
}

impl From<QBoxArg> for QBox {
    fn from(b: QBoxArg) -> Self {
        match b {
            QBoxArg::BothWells => QBox::BothWells,
            QBoxArg::Symmetric => QBox::Symmetric,
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Draw a random chain, Dyson factors and Hamiltonian from a seed.
    Generate(GenerateArgs),
    /// Check every pseudo-Hermiticity relation of a chain and Hamiltonian.
    Verify(VerifyArgs),
    /// Map the Hamiltonian to its Hermitian partner and compare spectra.
    Hermitize(HermitizeArgs),
    /// Propagate a state and record its norm in every space.
    Evolve(EvolveArgs),
    /// Propagate a mixture and check its density-matrix properties.
    Density(DensityArgs),
    /// Compare the complex-shifted quartic oscillator with its real partner.
    Bg(BgArgs),
    /// Find metrics compatible with a given Hamiltonian.
    MetricSolve(MetricSolveArgs),
}

fn positive_real(s: &str) -> Result<f64, String> {
    let v: f64 = s.parse().map_err(|e| format!("{e}"))?;
    if v.is_finite() && v > 0.0 {
        Ok(v)
    } else {
        Err(format!("expected a finite positive number, got {s}"))
    }
}

fn finite_real(s: &str) -> Result<f64, String> {
    let v: f64 = s.parse().map_err(|e| format!("{e}"))?;
    if v.is_finite() {
        Ok(v)
    } else {
        Err(format!("expected a finite number, got {s}"))
    }
}

#[derive(Debug, Args)]
pub struct Tolerance {
    /// Pass threshold; the default depends on the command.
    #[arg(long, env = "CRYPTOHERM_TOL", value_parser = positive_real)]
    pub tol: Option<f64>,
}

#[derive(Debug, Args)]
pub struct Output {
    /// Directory receiving the output files.
    #[arg(long, default_value = ".")]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct ModelInputs {
    /// Chain file.
    #[arg(long)]
    pub chain: PathBuf,
    /// Hamiltonian matrix file.
    #[arg(long)]
    pub hamiltonian: PathBuf,
    /// Override the validation mode stored in the chain file.
    #[arg(long, value_enum)]
    pub mode: Option<Mode>,
}

#[derive(Debug, Args)]
pub struct GenerateArgs {
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    pub dim: u64,
    /// Number of spaces in the chain.
    #[arg(long, value_parser = clap::value_parser!(u64).range(2..))]
    pub k: u64,
    #[arg(long)]
    pub seed: u64,
    /// Condition-number cap of every Dyson factor.
    #[arg(long, default_value_t = cryptoherm::DEFAULT_FACTOR_CAP, value_parser = positive_real)]
    pub cap: f64,
    /// Validation mode recorded in the chain file.
    #[arg(long, value_enum, default_value_t = Mode::StrictPd)]
    pub mode: Mode,
    #[command(flatten)]
    pub tol: Tolerance,
    #[command(flatten)]
    pub out: Output,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub model: ModelInputs,
    #[command(flatten)]
    pub tol: Tolerance,
    #[command(flatten)]
    pub out: Output,
}

#[derive(Debug, Args)]
pub struct HermitizeArgs {
    #[command(flatten)]
    pub model: ModelInputs,
    /// Dyson factor file.
    #[arg(long)]
    pub dyson: PathBuf,
    /// Largest accepted scaled spectral deviation.
    #[arg(long, default_value_t = 1e-8, value_parser = positive_real)]
    pub spectral_tol: f64,
    #[command(flatten)]
    pub tol: Tolerance,
    #[command(flatten)]
    pub out: Output,
}

#[derive(Debug, Args)]
pub struct EvolveArgs {
    #[command(flatten)]
    pub model: ModelInputs,
    /// Initial state; defaults to the first basis vector.
    #[arg(long)]
    pub psi0: Option<PathBuf>,
    #[arg(long, default_value_t = 10.0, value_parser = positive_real)]
    pub t_max: f64,
    #[arg(long, default_value_t = 100, value_parser = clap::value_parser!(u64).range(1..))]
    pub steps: u64,
    /// Include the state vectors in the trajectory file.
    #[arg(long)]
    pub states: bool,
    #[command(flatten)]
    pub tol: Tolerance,
    #[command(flatten)]
    pub out: Output,
}

#[derive(Debug, Args)]
pub struct DensityArgs {
    #[command(flatten)]
    pub model: ModelInputs,
    /// Constituent state files; repeat for a mixture.
    #[arg(long = "state")]
    pub states: Vec<PathBuf>,
    /// Seed for random constituents when no state files are given.
    #[arg(long)]
    pub seed: Option<u64>,
    /// Number of random constituents.
    #[arg(long, default_value_t = 2, value_parser = clap::value_parser!(u64).range(1..))]
    pub mixture: u64,
    /// Comma-separated weights; uniform by default.
    #[arg(long, value_delimiter = ',', value_parser = positive_real)]
    pub weights: Option<Vec<f64>>,
    #[arg(long, default_value_t = 10.0, value_parser = positive_real)]
    pub t_max: f64,
    #[arg(long, default_value_t = 100, value_parser = clap::value_parser!(u64).range(1..))]
    pub steps: u64,
    #[command(flatten)]
    pub tol: Tolerance,
    #[command(flatten)]
    pub out: Output,
}

#[derive(Debug, Args)]
pub struct BgArgs {
    #[arg(long, default_value_t = 0.05, value_parser = positive_real)]
    pub g: f64,
    #[arg(long, default_value_t = 1.0, value_parser = finite_real)]
    pub j: f64,
    #[arg(long, default_value_t = 1.0, value_parser = positive_real)]
    pub eta: f64,
    /// Half-width L of the box [-L, L].
    #[arg(long = "box", default_value_t = 8.0, value_parser = positive_real)]
    pub half_width: f64,
    /// Interior grid points N; the refinement check also runs at 2N.
    #[arg(long, default_value_t = 800)]
    pub n_grid: usize,
    #[arg(long, default_value_t = 3)]
    pub levels: usize,
    /// Box for the real partner.
    #[arg(long, value_enum, default_value_t = QBoxArg::BothWells)]
    pub q_box: QBoxArg,
    /// Largest accepted |Im E| / (1 + |Re E|) for a retained level.
    #[arg(long, default_value_t = 1e-2, value_parser = positive_real)]
    pub reality_tol: f64,
    /// Compare the real partner with itself.
    #[arg(long)]
    pub self_compare: bool,
    #[command(flatten)]
    pub tol: Tolerance,
    #[command(flatten)]
    pub out: Output,
}

#[derive(Debug, Args)]
pub struct MetricSolveArgs {
    /// Hamiltonian matrix file.
    #[arg(long)]
    pub hamiltonian: PathBuf,
    #[arg(long, default_value_t = 12)]
    pub dim_cap: usize,
    #[command(flatten)]
    pub tol: Tolerance,
    #[command(flatten)]
    pub out: Output,
}
