use std::fmt::Write;

use cryptoherm::io::MatrixFile;
use cryptoherm::{metric_from_hamiltonian, MetricSearchOptions};
use serde_json::json;

use super::{load_matrix, Outcome};
use crate::cli::MetricSolveArgs;
use crate::failure::Result;
use crate::report::{ensure_dir, write_json, RunReport};
use crate::text::{sci, table, verdict};

/// Passes when at least one positive-definite metric exists; the first is
/// written to `metric.json`.
pub fn run(a: &MetricSolveArgs) -> Result<Outcome> {
    let (h, digest) = load_matrix(&a.hamiltonian, "hamiltonian")?;
    let defaults = MetricSearchOptions::default();
    let opts = MetricSearchOptions {
        dim_cap: a.dim_cap,
        tol: a.tol.tol.unwrap_or(defaults.tol),
        ..defaults
    };
    let sol = metric_from_hamiltonian(&h, opts)?;
    let pass = !sol.candidates.is_empty();

    let dir = ensure_dir(&a.out.out)?;
    let mut outputs = Vec::new();
    if let Some(first) = sol.candidates.first() {
        let f = MatrixFile::from_matrix(&first.theta, Some("Theta"))?;
        outputs.push(write_json(&dir, "metric.json", "metric", &f)?);
    }
    let candidates = sol
        .candidates
        .iter()
        .map(|c| {
            Ok(json!({
                "origin": c.origin,
                "residual": c.residual,
                "metric": MatrixFile::from_matrix(&c.theta, None)?,
            }))
        })
        .collect::<cryptoherm::Result<Vec<_>>>()?;

    let mut t = String::new();
    let _ = writeln!(t, "solution space dimension: {}", sol.basis.len());
    let _ = writeln!(t, "spectrum real: {}", sol.spectrum_real);
    let _ = writeln!(t, "eigenvector condition: {}\n", sci(sol.eigenvector_condition));
    let rows: Vec<Vec<String>> = sol
        .candidates
        .iter()
        .enumerate()
        .map(|(i, c)| vec![i.to_string(), format!("{:?}", c.origin).to_lowercase(), sci(c.residual)])
        .collect();
    t += &table(&["candidate", "origin", "residual"], &rows);
    let _ = writeln!(t, "\n{}", verdict(pass));

    let mut run = RunReport::new(
        "metric-solve",
        json!({ "dim_cap": opts.dim_cap, "null_tol": opts.null_tol, "max_candidates": opts.max_candidates }),
        json!({
            "solution_dimension": sol.basis.len(),
            "spectrum": sol.spectrum,
            "spectrum_real": sol.spectrum_real,
            "eigenvector_condition": sol.eigenvector_condition,
            "candidates": candidates,
        }),
        pass,
        opts.tol,
    );
    run.inputs = vec![digest];
    run.outputs = outputs;
    Ok(Outcome { report: run, text: t })
}
