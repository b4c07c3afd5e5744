use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use polytile_core::complexes::{independence_complex, matching_complex, ComplexError, SimplicialComplex};
use polytile_core::graphs::{extended_tiling_line_graph, polygon_line_tiling, Graph};
use polytile_core::homology::{complex_homology, HomologyProfile};
use polytile_core::theory::{
    connectivity_extended, connectivity_tiling, predict, Connectivity, Family, HomotopyType,
};
use serde::{Deserialize, Serialize};

use crate::CliError;

/// Outcome of comparing a prediction with brute-force homology.
#[derive(Clone, Debug, Serialize)]
pub struct VerificationReport {
    pub family: Family,
    pub n: usize,
    pub t: usize,
    pub predicted: HomotopyType,
    pub computed: Option<HomologyProfile>,
    #[serde(rename = "match")]
    pub matched: bool,
    pub torsion_free: Option<bool>,
    pub connectivity_predicted: Connectivity,
    pub connectivity_formula: Option<Connectivity>,
    pub connectivity_computed: Option<Connectivity>,
    pub face_count: Option<usize>,
    pub budget_exceeded: bool,
    pub cached: bool,
    pub elapsed_ms: u128,
}

impl VerificationReport {
    pub fn exit_code(&self) -> i32 {
        if self.budget_exceeded {
            3
        } else if self.matched {
            0
        } else {
            1
        }
    }

    /// JSON without the fields that vary between runs.
    pub fn stable_json(&self) -> serde_json::Value {
        let mut v = serde_json::to_value(self).expect("report serializes");
        let map = v.as_object_mut().expect("report is an object");
        map.remove("elapsed_ms");
        map.remove("cached");
        v
    }
}

#[derive(Serialize, Deserialize)]
struct CacheEntry {
    digest: String,
    face_count: usize,
    homology: HomologyProfile,
}

/// The graph whose complex is computed, and the complex kind.
fn instance(family: Family, n: usize, t: usize) -> Result<(Graph, &'static str), CliError> {
    Ok(match family {
        Family::G => (polygon_line_tiling(n, t)?, "matching"),
        Family::H => (extended_tiling_line_graph(n, t)?, "independence"),
    })
}

fn build_complex(g: &Graph, kind: &str, budget: usize) -> Result<SimplicialComplex, ComplexError> {
    if kind == "matching" {
        matching_complex(g, budget)
    } else {
        independence_complex(g, budget)
    }
}

fn cache_path(dir: &Path, family: Family, n: usize, t: usize, kind: &str, digest: &str) -> PathBuf {
    dir.join(format!("{family}-n{n}-t{t}-{kind}-{digest}.json"))
}

fn read_cache(path: &Path, digest: &str) -> Option<CacheEntry> {
    let text = fs::read_to_string(path).ok()?;
    let entry: CacheEntry = serde_json::from_str(&text).ok()?;
    (entry.digest == digest).then_some(entry)
}

fn write_cache(dir: &Path, path: &Path, entry: &CacheEntry) -> Result<(), CliError> {
    fs::create_dir_all(dir)?;
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    tmp.write_all(serde_json::to_string(entry).expect("cache entry serializes").as_bytes())?;
    tmp.persist(path).map_err(|e| CliError::Io(e.error))?;
    Ok(())
}

pub fn verify(
    family: Family,
    n: usize,
    t: usize,
    budget: usize,
    cache_dir: Option<&Path>,
) -> Result<VerificationReport, CliError> {
    let start = Instant::now();
    let predicted = predict(family, n, t)?;
    let (graph, kind) = instance(family, n, t)?;
    let digest = graph.digest();
    let path = cache_dir.map(|d| cache_path(d, family, n, t, kind, &digest));

    let mut cached = false;
    let computed = match path.as_deref().and_then(|p| read_cache(p, &digest)) {
        Some(entry) => {
            cached = true;
            Some((entry.face_count, entry.homology))
        }
        None => match build_complex(&graph, kind, budget) {
            Ok(k) => {
                let h = complex_homology(&k);
                if let (Some(dir), Some(p)) = (cache_dir, path.as_deref()) {
                    let entry = CacheEntry { digest: digest.clone(), face_count: k.face_count(), homology: h.clone() };
                    write_cache(dir, p, &entry)?;
                }
                Some((k.face_count(), h))
            }
            Err(ComplexError::BudgetExceeded { .. }) => None,
            Err(e) => return Err(e.into()),
        },
    };

    let connectivity_formula = match (family, t) {
        (_, 0) => None,
        (Family::G, _) => Some(connectivity_tiling(n, t)?),
        (Family::H, _) => Some(connectivity_extended(n, t)?),
    };
    let (face_count, homology) = match computed {
        Some((f, h)) => (Some(f), Some(h)),
        None => (None, None),
    };
    Ok(VerificationReport {
        family,
        n,
        t,
        connectivity_predicted: predicted.connectivity(),
        matched: homology.as_ref().is_some_and(|h| h.matches(&predicted)),
        torsion_free: homology.as_ref().map(HomologyProfile::is_torsion_free),
        connectivity_computed: homology.as_ref().and_then(|h| h.connectivity().ok()),
        connectivity_formula,
        face_count,
        budget_exceeded: homology.is_none(),
        computed: homology,
        predicted,
        cached,
        elapsed_ms: start.elapsed().as_millis(),
    })
}
