use std::fmt::Write;
use std::path::Path;

use polytile_core::theory::{connectivity_extended, connectivity_tiling, jmmv_lower_bound, predict, Family};
use rayon::prelude::*;
use serde::Serialize;

use crate::verify::verify;
use crate::{CliError, Format};

/// `"a"`, `"a,b,c"` or `"a..b"` (inclusive).
pub fn parse_range(text: &str) -> Result<Vec<usize>, CliError> {
    let bad = || CliError::Usage(format!("bad range {text:?}"));
    let values: Vec<usize> = if let Some((lo, hi)) = text.split_once("..") {
        let lo: usize = lo.trim().parse().map_err(|_| bad())?;
        let hi: usize = hi.trim().parse().map_err(|_| bad())?;
        (lo..=hi).collect()
    } else {
        text.split(',').map(|s| s.trim().parse().map_err(|_| bad())).collect::<Result<_, _>>()?
    };
    if values.is_empty() {
        return Err(CliError::Usage(format!("empty range {text:?}")));
    }
    Ok(values)
}

#[derive(Clone, Debug, Serialize)]
pub struct Row {
    pub family: Family,
    pub n: usize,
    pub t: usize,
    pub predicted: String,
    pub connectivity: Option<String>,
    pub jmmv_bound: Option<i64>,
    pub status: &'static str,
}

pub fn rows(
    family: Family,
    ns: &[usize],
    ts: &[usize],
    run_verify: bool,
    budget: usize,
    cache_dir: Option<&Path>,
) -> Result<Vec<Row>, CliError> {
    let cells: Vec<(usize, usize)> = ns.iter().flat_map(|&n| ts.iter().map(move |&t| (n, t))).collect();
    cells
        .par_iter()
        .map(|&(n, t)| {
            let predicted = predict(family, n, t)?;
            let connectivity = match (family, t) {
                (_, 0) => None,
                (Family::G, _) => Some(connectivity_tiling(n, t)?.to_string()),
                (Family::H, _) => Some(connectivity_extended(n, t)?.to_string()),
            };
            let jmmv_bound = (family == Family::G && n % 3 == 2 && t > 0).then(|| jmmv_lower_bound(n, t)).transpose()?;
            let status = if run_verify {
                let report = verify(family, n, t, budget, cache_dir)?;
                match report.exit_code() {
                    0 => "verified",
                    3 => "budget-exceeded",
                    _ => "mismatch",
                }
            } else {
                "predicted-only"
            };
            Ok(Row { family, n, t, predicted: predicted.to_string(), connectivity, jmmv_bound, status })
        })
        .collect()
}

fn cell(v: &Option<impl ToString>) -> String {
    v.as_ref().map_or_else(String::new, ToString::to_string)
}

pub fn render(rows: &[Row], format: Format) -> String {
    let header = ["family", "n", "t", "predicted", "connectivity", "jmmv_bound", "status"];
    let fields = |r: &Row| {
        [
            r.family.to_string(),
            r.n.to_string(),
            r.t.to_string(),
            r.predicted.clone(),
            cell(&r.connectivity),
            cell(&r.jmmv_bound),
            r.status.to_string(),
        ]
    };
    let mut out = String::new();
    match format {
        Format::Json => out = serde_json::to_string_pretty(rows).expect("rows serialize") + "\n",
        Format::Csv => {
            writeln!(out, "{}", header.join(",")).unwrap();
            for r in rows {
                writeln!(out, "{}", fields(r).join(",")).unwrap();
            }
        }
        Format::Md => {
            writeln!(out, "| {} |", header.join(" | ")).unwrap();
            writeln!(out, "|{}", "---|".repeat(header.len())).unwrap();
            for r in rows {
                writeln!(out, "| {} |", fields(r).join(" | ")).unwrap();
            }
        }
    }
    out
}
