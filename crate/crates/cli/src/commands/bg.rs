use std::fmt::Write;

use cryptoherm::models::{self_compare_q, BgOutcome};
use cryptoherm::{compare_bg_spectra, BGParams, CompareOptions, SpectralComparison};
use serde_json::json;

use super::Outcome;
use crate::cli::BgArgs;
use crate::failure::Result;
use crate::report::{ensure_dir, write_json, RunReport};
use crate::text::{sci, table, verdict};

/// Relative agreement required of every compared level at `N`.
pub const DEFAULT_AGREEMENT_TOL: f64 = 1e-2;

fn pair_rows(c: &SpectralComparison) -> Vec<Vec<String>> {
    c.pairs
        .iter()
        .enumerate()
        .map(|(i, p)| {
            vec![
                i.to_string(),
                format!("{:.12}", p.a.re),
                sci(p.a.im),
                format!("{:.12}", p.b.re),
                sci(p.rel_dev),
            ]
        })
        .collect()
}

pub fn run(a: &BgArgs) -> Result<Outcome> {
    let params = BGParams {
        g: a.g,
        j: a.j,
        eta: a.eta,
        l: a.half_width,
        n_grid: a.n_grid,
    };
    params.validate()?;
    let tol = a.tol.tol.unwrap_or(DEFAULT_AGREEMENT_TOL);
    let dir = ensure_dir(&a.out.out)?;
    let mut t = String::new();

    let (results, pass) = if a.self_compare {
        let c = self_compare_q(&params, a.levels, a.q_box.into())?;
        t += &table(&["level", "Re Q", "Im Q", "Re Q", "rel dev"], &pair_rows(&c));
        let pass = c.max_abs_dev == 0.0;
        (json!({ "self_compare": true, "comparison": c }), pass)
    } else {
        let opts = CompareOptions {
            reality_tol: a.reality_tol,
            q_box: a.q_box.into(),
        };
        let c = compare_bg_spectra(&params, a.levels, opts)?;
        let pass = c.outcome == BgOutcome::Compared && c.max_rel_dev <= tol && c.all_levels_improve;
        for side in [&c.coarse, &c.fine] {
            let _ = writeln!(t, "N = {}  largest |Im E|/(1+|Re E|) = {}", side.n_grid, sci(side.max_im_ratio));
            match &side.comparison {
                Some(cmp) => t += &table(&["level", "Re E_bg", "Im E_bg", "E_q", "rel dev"], &pair_rows(cmp)),
                None => t += "reality filter kept too few levels\n",
            }
            t.push('\n');
        }
        let _ = writeln!(t, "max rel dev at N: {}", sci(c.max_rel_dev));
        let _ = writeln!(t, "all levels improve at 2N: {}", c.all_levels_improve);
        (json!({ "self_compare": false, "comparison": c }), pass)
    };
    let _ = writeln!(t, "\n{}", verdict(pass));

    let outputs = vec![write_json(&dir, "bg.json", "bg", &results)?];
    let mut run = RunReport::new(
        "bg",
        json!({
            "params": params,
            "levels": a.levels,
            "q_box": cryptoherm::QBox::from(a.q_box),
            "reality_tol": a.reality_tol,
        }),
        results,
        pass,
        tol,
    );
    run.outputs = outputs;
    Ok(Outcome { report: run, text: t })
}
