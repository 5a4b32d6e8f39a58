use cryptoherm::verify;
use serde_json::json;

use super::{load_model, Outcome};
use crate::cli::VerifyArgs;
use crate::failure::Result;
use crate::report::RunReport;
use crate::text;

pub fn run(a: &VerifyArgs) -> Result<Outcome> {
    let (model, inputs) = load_model(&a.model, false)?;
    let report = verify(&model, a.tol.tol)?;
    let t = text::hermiticity(&report);
    let mut run = RunReport::new(
        "verify",
        json!({ "mode": model.chain().mode() }),
        json!({
            "max_table1": report.max_table1(),
            "max_table2": report.max_table2(),
            "hermiticity": report,
        }),
        report.pass,
        report.tolerance_used,
    );
    run.inputs = inputs;
    Ok(Outcome { report: run, text: t })
}
