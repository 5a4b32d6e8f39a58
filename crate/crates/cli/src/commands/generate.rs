use std::fmt::Write;

use cryptoherm::io::{ChainFile, DysonFile, MatrixFile};
use cryptoherm::{generate_chain, verify, ChainMode};
use serde_json::json;

use super::Outcome;
use crate::cli::GenerateArgs;
use crate::failure::Result;
use crate::report::{ensure_dir, write_json, RunReport};
use crate::text;

pub fn run(a: &GenerateArgs) -> Result<Outcome> {
    let generated = generate_chain::<f64>(a.dim as usize, a.k as usize, a.seed, a.cap)?;
    let mode: ChainMode = a.mode.into();
    let mut chain_file = ChainFile::from_chain(&generated.chain)?;
    chain_file.mode = mode;
    let dyson_file = DysonFile::from_dyson(&generated.dyson)?;
    let h_file = MatrixFile::from_matrix(generated.model.hamiltonian(), Some("H"))?;

    let dir = ensure_dir(&a.out.out)?;
    let outputs = vec![
        write_json(&dir, "chain.json", "chain", &chain_file)?,
        write_json(&dir, "dyson.json", "dyson", &dyson_file)?,
        write_json(&dir, "hamiltonian.json", "hamiltonian", &h_file)?,
    ];

    let report = verify(&generated.model, a.tol.tol)?;
    let mut t = String::new();
    for o in &outputs {
        let _ = writeln!(t, "wrote {}  sha256 {}", o.path, o.sha256);
    }
    t.push('\n');
    t += &text::hermiticity(&report);

    let mut run = RunReport::new(
        "generate",
        json!({
            "dim": a.dim,
            "k": a.k,
            "seed": a.seed,
            "cap": a.cap,
            "mode": mode,
        }),
        json!({
            "max_table1": report.max_table1(),
            "max_table2": report.max_table2(),
            "hermiticity": report,
        }),
        report.pass,
        report.tolerance_used,
    );
    run.outputs = outputs;
    Ok(Outcome { report: run, text: t })
}
