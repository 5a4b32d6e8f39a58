use std::fmt::Write;

use cryptoherm::io::SCHEMA_VERSION;
use cryptoherm::{evolve, uniform_grid, Cx};
use serde::Serialize;
use serde_json::json;

use super::{load_model, load_vector, Outcome};
use crate::cli::EvolveArgs;
use crate::failure::Result;
use crate::report::{ensure_dir, write_json, RunReport};
use crate::text::{sci, table, verdict};

/// Physical-norm drift accepted by default.
pub const DEFAULT_DRIFT_TOL: f64 = 1e-9;

/// Plot-ready columns `t, norm_0, …, norm_{K-1}`.
#[derive(Serialize)]
struct TrajectoryFile {
    schema_version: &'static str,
    columns: Vec<String>,
    rows: Vec<Vec<f64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    states: Option<Vec<Vec<[f64; 2]>>>,
}

pub fn run(a: &EvolveArgs) -> Result<Outcome> {
    let (model, mut inputs) = load_model(&a.model, true)?;
    let psi0 = match &a.psi0 {
        Some(p) => {
            let (v, d) = load_vector(p, "psi0")?;
            inputs.push(d);
            v
        }
        None => {
            let mut e = vec![Cx::new(0.0, 0.0); model.dim()];
            e[0] = Cx::new(1.0, 0.0);
            e
        }
    };
    let times = uniform_grid(a.t_max, a.steps as usize)?;
    let traj = evolve(&model, &psi0, &times)?;
    let k = model.k();
    let drifts: Vec<f64> = (0..k).map(|j| traj.drift(j)).collect();
    let tol = a.tol.tol.unwrap_or(DEFAULT_DRIFT_TOL);
    let pass = drifts[0] <= tol;

    let mut columns = vec!["t".to_string()];
    columns.extend((0..k).map(|j| format!("norm_{j}")));
    let rows: Vec<Vec<f64>> = times
        .iter()
        .enumerate()
        .map(|(i, &t)| std::iter::once(t).chain(traj.norms.iter().map(|c| c[i])).collect())
        .collect();
    let file = TrajectoryFile {
        schema_version: SCHEMA_VERSION,
        columns: columns.clone(),
        rows: rows.clone(),
        states: a.states.then(|| {
            traj.states
                .iter()
                .map(|s| s.iter().map(|z| [z.re, z.im]).collect())
                .collect()
        }),
    };
    let dir = ensure_dir(&a.out.out)?;
    let outputs = vec![write_json(&dir, "trajectory.json", "trajectory", &file)?];

    let header: Vec<&str> = columns.iter().map(String::as_str).collect();
    let cells: Vec<Vec<String>> = rows
        .iter()
        .map(|r| r.iter().map(|&x| format!("{x:.12e}")).collect())
        .collect();
    let mut t = table(&header, &cells);
    let _ = writeln!(t);
    for (j, d) in drifts.iter().enumerate() {
        let _ = writeln!(t, "drift norm_{j}: {}", sci(*d));
    }
    let _ = writeln!(t, "\n{}", verdict(pass));

    let mut run = RunReport::new(
        "evolve",
        json!({ "t_max": a.t_max, "steps": a.steps, "default_psi0": a.psi0.is_none() }),
        json!({
            "physical_drift": drifts[0],
            "drift": drifts,
            "initial_norms": traj.norms.iter().map(|c| c[0]).collect::<Vec<_>>(),
        }),
        pass,
        tol,
    );
    run.inputs = inputs;
    run.outputs = outputs;
    Ok(Outcome { report: run, text: t })
}
