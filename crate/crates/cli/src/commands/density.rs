use std::fmt::Write;

use cryptoherm::ensemble::{complex_vector, seeded};
use cryptoherm::io::SCHEMA_VERSION;
use cryptoherm::{build_density, evolve_density, projector, transport_projector, uniform_grid, Matrix, Vector};
use serde::Serialize;
use serde_json::json;

use super::{load_model, load_vector, relative_distance, Outcome};
use crate::cli::DensityArgs;
use crate::failure::{Failure, Result};
use crate::report::{ensure_dir, write_json, RunReport};
use crate::text::{sci, table, verdict};

pub const DEFAULT_TRACE_TOL: f64 = 1e-9;
pub const IDEMPOTENCY_TOL: f64 = 1e-12;

#[derive(Serialize)]
struct DensityFile {
    schema_version: &'static str,
    columns: Vec<&'static str>,
    rows: Vec<[f64; 6]>,
}

fn idempotency(pi: &Matrix) -> Result<f64> {
    Ok(relative_distance(&pi.matmul(pi)?, pi))
}

pub fn run(a: &DensityArgs) -> Result<Outcome> {
    let (model, mut inputs) = load_model(&a.model, true)?;
    let states: Vec<Vector> = if !a.states.is_empty() {
        let mut v = Vec::new();
        for p in &a.states {
            let (s, d) = load_vector(p, "state")?;
            inputs.push(d);
            v.push(s);
        }
        v
    } else if let Some(seed) = a.seed {
        let mut rng = seeded(seed);
        (0..a.mixture).map(|_| complex_vector::<f64>(model.dim(), &mut rng)).collect()
    } else {
        return Err(Failure::Usage("give --state files or a --seed for random constituents".into()));
    };
    let weights = match &a.weights {
        Some(w) => w.clone(),
        None => vec![1.0 / states.len() as f64; states.len()],
    };

    let rho0 = build_density(&model, &states, &weights)?;
    let times = uniform_grid(a.t_max, a.steps as usize)?;
    let path = evolve_density(&model, &rho0, &times)?;

    let mut rows = Vec::with_capacity(times.len());
    let tr0 = rho0.trace();
    let mut trace_drift: f64 = 0.0;
    let mut max_quasi: f64 = 0.0;
    let mut min_eig = f64::INFINITY;
    let mut max_imag: f64 = 0.0;
    for (t, rho) in times.iter().zip(&path) {
        let tr = rho.trace();
        let quasi = rho.quasi_hermiticity_residual(&model)?;
        let spec = rho.physical_spectrum(&model)?;
        trace_drift = trace_drift.max((tr - tr0).norm());
        max_quasi = max_quasi.max(quasi);
        min_eig = min_eig.min(spec.min_re);
        max_imag = max_imag.max(spec.max_abs_im);
        rows.push([*t, tr.re, tr.im, quasi, spec.min_re, spec.max_abs_im]);
    }

    let mut idem: f64 = 0.0;
    let mut transport: f64 = 0.0;
    let t_end = *times.last().unwrap_or(&0.0);
    let last = path.last().map(|r| &r.constituents);
    for (i, psi) in states.iter().enumerate() {
        let pi = projector(&model, psi)?;
        idem = idem.max(idempotency(&pi)?);
        if let Some(evolved) = last {
            let moved = transport_projector(&model, &pi, t_end)?;
            transport = transport.max(relative_distance(&moved, &projector(&model, &evolved[i])?));
        }
    }

    let tol = a.tol.tol.unwrap_or(DEFAULT_TRACE_TOL);
    let pass = trace_drift <= tol && idem <= IDEMPOTENCY_TOL;

    let columns = vec!["t", "trace_re", "trace_im", "quasi_hermiticity", "min_physical_eigenvalue", "max_physical_imag"];
    let file = DensityFile {
        schema_version: SCHEMA_VERSION,
        columns: columns.clone(),
        rows: rows.clone(),
    };
    let dir = ensure_dir(&a.out.out)?;
    let outputs = vec![write_json(&dir, "density.json", "density", &file)?];

    let cells: Vec<Vec<String>> = rows.iter().map(|r| r.iter().map(|&x| sci(x)).collect()).collect();
    let mut t = table(&columns, &cells);
    let _ = writeln!(t, "\ntrace drift: {}", sci(trace_drift));
    let _ = writeln!(t, "projector idempotency: {}", sci(idem));
    let _ = writeln!(t, "projector transport at t_max: {}", sci(transport));
    let _ = writeln!(t, "\n{}", verdict(pass));

    let mut run = RunReport::new(
        "density",
        json!({
            "t_max": a.t_max,
            "steps": a.steps,
            "seed": a.seed,
            "constituents": states.len(),
            "weights": weights,
        }),
        json!({
            "trace_drift": trace_drift,
            "idempotency": idem,
            "idempotency_tol": IDEMPOTENCY_TOL,
            "transport_residual": transport,
            "max_quasi_hermiticity": max_quasi,
            "min_physical_eigenvalue": min_eig,
            "max_physical_imag": max_imag,
        }),
        pass,
        tol,
    );
    run.inputs = inputs;
    run.outputs = outputs;
    Ok(Outcome { report: run, text: t })
}
