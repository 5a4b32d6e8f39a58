use std::fmt::Write;

use cryptoherm::io::{DysonFile, MatrixFile};
use cryptoherm::{hermitize, ChainOptions};
use serde_json::json;

use super::{load_model, Outcome};
use crate::cli::HermitizeArgs;
use crate::failure::{Failure, Result};
use crate::report::{ensure_dir, read_json, write_json, RunReport};
use crate::text::{sci, table, verdict};

pub fn run(a: &HermitizeArgs) -> Result<Outcome> {
    let (model, mut inputs) = load_model(&a.model, true)?;
    let (dyson_file, dyson_digest): (DysonFile, _) = read_json(&a.dyson, "dyson")?;
    inputs.push(dyson_digest);
    let dyson = dyson_file
        .to_dyson(ChainOptions::<f64>::default().cond_cap)
        .map_err(|source| Failure::Input {
            path: a.dyson.clone(),
            source,
        })?;
    let tol = a.tol.tol.unwrap_or(1e-10 * model.dim() as f64);
    let result = hermitize(&model, &dyson, Some(tol))?;

    let dir = ensure_dir(&a.out.out)?;
    let h_file = MatrixFile::from_matrix(&result.h, Some("h"))?;
    let outputs = vec![write_json(&dir, "hermitian.json", "hermitian", &h_file)?];

    let spectra = &result.spectra;
    let h_norm = model.hamiltonian().norm_fro();
    let max_imag = spectra.pairs.iter().map(|p| p.a.im.abs()).fold(0.0, f64::max);
    let reality = if h_norm > 0.0 { max_imag / h_norm } else { max_imag };
    let pass = result.hermiticity_residual <= tol && spectra.scaled_deviation() <= a.spectral_tol;

    let mut t = String::new();
    let _ = writeln!(t, "hermiticity residual of h: {}", sci(result.hermiticity_residual));
    let _ = writeln!(t, "largest |Im| of spec(H) / |H|_F: {}", sci(reality));
    let _ = writeln!(
        t,
        "spectral deviation: max abs {}  scaled {}  max rel {}\n",
        sci(spectra.max_abs_dev),
        sci(spectra.scaled_deviation()),
        sci(spectra.max_rel_dev)
    );
    let rows: Vec<Vec<String>> = spectra
        .pairs
        .iter()
        .map(|p| {
            vec![
                format!("{:+.12e}{:+.3e}i", p.a.re, p.a.im),
                format!("{:+.12e}{:+.3e}i", p.b.re, p.b.im),
                sci(p.abs_dev),
            ]
        })
        .collect();
    t += &table(&["spec(H)", "spec(h)", "|dev|"], &rows);
    let _ = writeln!(t, "\n{}", verdict(pass));

    let mut run = RunReport::new(
        "hermitize",
        json!({ "spectral_tol": a.spectral_tol }),
        json!({
            "hermiticity_residual": result.hermiticity_residual,
            "scaled_spectral_deviation": spectra.scaled_deviation(),
            "h_reality": reality,
            "spectra": spectra,
        }),
        pass,
        tol,
    );
    run.inputs = inputs;
    run.outputs = outputs;
    Ok(Outcome { report: run, text: t })
}
