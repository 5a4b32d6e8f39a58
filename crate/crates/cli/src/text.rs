use std::fmt::Write;

use cryptoherm::HermiticityReport;

/// Formats `rows` as whitespace-aligned columns under `header`.
pub fn table(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut width: Vec<usize> = header.iter().map(|h| h.len()).collect();
    for r in rows {
        for (w, c) in width.iter_mut().zip(r) {
            *w = (*w).max(c.len());
        }
    }
    let mut out = String::new();
    let line = |cells: Vec<&str>, out: &mut String| {
        let padded: Vec<String> = cells.iter().zip(&width).map(|(c, w)| format!("{c:<w$}")).collect();
        let _ = writeln!(out, "{}", padded.join("  ").trim_end());
    };
    line(header.to_vec(), &mut out);
    for r in rows {
        line(r.iter().map(String::as_str).collect(), &mut out);
    }
    out
}

pub fn sci(x: f64) -> String {
    format!("{x:.3e}")
}

pub fn verdict(pass: bool) -> &'static str {
    if pass {
        "PASS"
    } else {
        "FAIL"
    }
}

pub fn hermiticity(r: &HermiticityReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "dim {}  K {}  mode {:?}  tol {}", r.dim, r.k, r.mode, sci(r.tolerance_used));
    let _ = writeln!(out, "quasi-hermiticity of H: {}\n", sci(r.quasi_hermiticity));
    let rows: Vec<Vec<String>> = r
        .table1
        .iter()
        .map(|c| vec![c.j.to_string(), c.name.clone(), sci(c.residual)])
        .collect();
    out += &table(&["j", "tier", "table1 residual"], &rows);
    out.push('\n');
    let rows: Vec<Vec<String>> = r
        .table2
        .iter()
        .map(|c| vec![c.j.to_string(), c.k.to_string(), sci(c.residual)])
        .collect();
    out += &table(&["j", "k", "table2 residual"], &rows);
    out.push('\n');
    let rows: Vec<Vec<String>> = r
        .observability
        .iter()
        .map(|o| {
            vec![
                o.name.clone(),
                format!("{:?}", o.expectation).to_lowercase(),
                sci(o.residual),
                verdict(o.pass).into(),
            ]
        })
        .collect();
    out += &table(&["operator", "expected", "residual", "observable"], &rows);
    out.push('\n');
    let rows: Vec<Vec<String>> = r
        .positivity
        .iter()
        .map(|p| vec![p.j.to_string(), format!("{:?}", p.status).to_lowercase()])
        .collect();
    out += &table(&["j", "metric"], &rows);
    let _ = writeln!(out, "\n{}", verdict(r.pass));
    for f in &r.failures {
        let _ = writeln!(out, "  failed: {f}");
    }
    out
}
