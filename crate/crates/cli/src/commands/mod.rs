mod bg;
mod density;
mod evolve;
mod generate;
mod hermitize;
mod metric;
mod verify;

use std::path::Path;

use cryptoherm::io::{ChainFile, MatrixFile, VectorFile};
use cryptoherm::{ChainOptions, Error, Model};

use crate::cli::{Cli, Command, Format, ModelInputs};
use crate::failure::{Failure, Result};
use crate::report::{ensure_dir, read_json, write_json, FileDigest, RunReport};

/// A finished command: the report and its plain-text rendering.
pub struct Outcome {
    pub report: RunReport,
    pub text: String,
}

/// Runs the command, writes `<command>-report.json` and prints the report.
/// Returns the verdict.
pub fn run(cli: &Cli) -> Result<bool> {
    let (out, outcome) = match &cli.command {
        Command::Generate(a) => (&a.out.out, generate::run(a)?),
        Command::Verify(a) => (&a.out.out, verify::run(a)?),
        Command::Hermitize(a) => (&a.out.out, hermitize::run(a)?),
        Command::Evolve(a) => (&a.out.out, evolve::run(a)?),
        Command::Density(a) => (&a.out.out, density::run(a)?),
        Command::Bg(a) => (&a.out.out, bg::run(a)?),
        Command::MetricSolve(a) => (&a.out.out, metric::run(a)?),
    };
    let dir = ensure_dir(out)?;
    let name = format!("{}-report.json", outcome.report.command);
    write_json(&dir, &name, "report", &outcome.report)?;
    match cli.format {
        Format::Json => print!("{}", cryptoherm::io::to_json(&outcome.report)?),
        Format::Text => print!("{}", outcome.text),
    }
    Ok(outcome.report.pass)
}

fn input_error(path: &Path, source: Error) -> Failure {
    Failure::Input {
        path: path.to_owned(),
        source,
    }
}

pub fn load_matrix(path: &Path, role: &str) -> Result<(cryptoherm::Matrix, FileDigest)> {
    let (file, digest): (MatrixFile, _) = read_json(path, role)?;
    let m = file.to_matrix().map_err(|e| input_error(path, e))?;
    Ok((m, digest))
}

pub fn load_vector(path: &Path, role: &str) -> Result<(cryptoherm::Vector, FileDigest)> {
    let (file, digest): (VectorFile, _) = read_json(path, role)?;
    let v = file.to_vector().map_err(|e| input_error(path, e))?;
    Ok((v, digest))
}

/// Reads chain and Hamiltonian. With `validate` the chain must satisfy its
/// mode's requirements; otherwise only shapes and invertibility are checked
/// so a broken chain can still be reported on.
pub fn load_model(inputs: &ModelInputs, validate: bool) -> Result<(Model, Vec<FileDigest>)> {
    let (mut chain_file, chain_digest): (ChainFile, _) = read_json(&inputs.chain, "chain")?;
    if let Some(mode) = inputs.mode {
        chain_file.mode = mode.into();
    }
    let options = ChainOptions::default();
    let chain = if validate {
        chain_file.to_chain(options)
    } else {
        chain_file.assemble_chain(options)
    };
    let chain = chain.map_err(|e| input_error(&inputs.chain, e))?;
    let (h, h_digest) = load_matrix(&inputs.hamiltonian, "hamiltonian")?;
    let model = Model::new(chain, h).map_err(|e| input_error(&inputs.hamiltonian, e))?;
    Ok((model, vec![chain_digest, h_digest]))
}

/// `‖a − b‖_F / max(‖a‖_F, ‖b‖_F)`.
pub fn relative_distance(a: &cryptoherm::Matrix, b: &cryptoherm::Matrix) -> f64 {
    let scale = a.norm_fro().max(b.norm_fro());
    if scale > 0.0 {
        a.dist_fro(b) / scale
    } else {
        0.0
    }
}
