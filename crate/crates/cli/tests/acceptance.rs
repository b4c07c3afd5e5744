//! Acceptance criteria, one PASS/FAIL line each. Exits non-zero if any
//! criterion fails.

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use polytile_cli::verify::{verify, VerificationReport};
use polytile_core::complexes::DEFAULT_FACE_BUDGET;
use polytile_core::graphs::{
    cycle_graph, extended_tiling_line_graph, path_graph, tiling_line_graph, Graph, VertexLabel,
};
use polytile_core::homology::{independence_homology, HomologyProfile};
use polytile_core::reductions::{applications, expr_homology, reduce, DEFAULT_STRATEGY};
use polytile_core::theory::{
    connectivity_tiling, jmmv_lower_bound, kozlov, Connectivity, Family, KozlovGraph,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const BUDGET: usize = DEFAULT_FACE_BUDGET;
const INSTANCE_LIMIT: Duration = Duration::from_secs(300);

type Verdict = Result<String, String>;

struct Instances {
    reports: BTreeMap<(Family, usize, usize), VerificationReport>,
}

impl Instances {
    fn run(&mut self, family: Family, n: usize, t: usize) -> &VerificationReport {
        self.reports
            .entry((family, n, t))
            .or_insert_with(|| verify(family, n, t, BUDGET, None).expect("verification runs"))
    }

    fn in_budget(&self) -> impl Iterator<Item = &VerificationReport> {
        self.reports.values().filter(|r| !r.budget_exceeded)
    }
}

fn betti(r: &VerificationReport) -> BTreeMap<i64, u64> {
    r.computed.as_ref().map(HomologyProfile::nonzero_betti).unwrap_or_default()
}

fn describe(r: &VerificationReport) -> String {
    let status = if r.budget_exceeded {
        "budget-exceeded".to_string()
    } else {
        format!("betti {:?}{}", betti(r), if r.matched { "" } else { " MISMATCH" })
    };
    format!("{}({},{}) {} in {} ms", r.family, r.n, r.t, status, r.elapsed_ms)
}

fn random_graph(rng: &mut ChaCha8Rng, max_vertices: usize, offset: u64) -> Graph {
    let n = rng.gen_range(0..=max_vertices);
    let p: f64 = rng.gen_range(0.1..0.7);
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges((0..n as u64).map(|id| VertexLabel::Opaque { id: offset + id }).collect(), edges).unwrap()
}

fn kozlov_table() -> Verdict {
    let start = Instant::now();
    let mut checked = 0;
    let cases = (1..=14)
        .map(|k| (KozlovGraph::Path, k, path_graph(k)))
        .chain((3..=14).map(|k| (KozlovGraph::Cycle, k, cycle_graph(k).unwrap())));
    for (kind, k, g) in cases {
        let h = independence_homology(&g, BUDGET).map_err(|e| e.to_string())?;
        let expected = kozlov(kind, k).unwrap();
        if !h.matches(&expected) {
            return Err(format!("{kind:?} {k}: expected {expected}, computed {h}"));
        }
        checked += 1;
    }
    let elapsed = start.elapsed();
    if elapsed >= Duration::from_secs(10) {
        return Err(format!("took {elapsed:?}"));
    }
    Ok(format!("{checked} paths and cycles, exact, torsion-free, {elapsed:.2?}"))
}

fn residue_one(inst: &mut Instances) -> Verdict {
    let mut lines = Vec::new();
    for t in 1..=3 {
        let r = inst.run(Family::G, 4, t);
        let expected = BTreeMap::from([(2 * t as i64, t as u64)]);
        if r.budget_exceeded || betti(r) != expected || !r.matched || r.elapsed_ms >= INSTANCE_LIMIT.as_millis() {
            return Err(describe(r));
        }
        lines.push(describe(r));
    }
    Ok(lines.join("; "))
}

fn residue_two(inst: &mut Instances) -> Verdict {
    let mut lines = Vec::new();
    for (n, t) in (1..=6).map(|t| (2, t)).chain([(5, 1), (5, 2)]) {
        let r = inst.run(Family::G, n, t);
        if !r.matched {
            return Err(describe(r));
        }
        lines.push(describe(r));
    }
    let target = BTreeMap::from([(8, 1)]);
    let r = inst.run(Family::G, 5, 3);
    if !r.budget_exceeded && (!r.matched || betti(r) != target) {
        return Err(describe(r));
    }
    lines.push(format!("attempted {}", describe(r)));
    Ok(lines.join("; "))
}

fn residue_zero(inst: &mut Instances) -> Verdict {
    let start = Instant::now();
    let mut lines = Vec::new();
    let cells = (1..=4).map(|t| (Family::G, t)).chain((0..=3).map(|t| (Family::H, t)));
    for (family, t) in cells {
        let r = inst.run(family, 3, t);
        if !r.matched {
            return Err(describe(r));
        }
        lines.push(describe(r));
    }
    let g3 = &inst.reports[&(Family::G, 3, 3)];
    let g4 = &inst.reports[&(Family::G, 3, 4)];
    if betti(g3) != BTreeMap::from([(3, 1), (4, 1)]) || betti(g4) != BTreeMap::from([(4, 1), (5, 5)]) {
        return Err(format!("{} / {}", describe(g3), describe(g4)));
    }
    let elapsed = start.elapsed();
    if elapsed >= INSTANCE_LIMIT {
        return Err(format!("took {elapsed:?}"));
    }
    Ok(lines.join("; "))
}

fn connectivity(inst: &Instances) -> Verdict {
    let mut checked = 0;
    for r in inst.in_budget().filter(|r| r.t >= 1) {
        if r.connectivity_computed.is_none() || r.connectivity_computed != r.connectivity_formula {
            return Err(format!(
                "{}({},{}): computed {:?}, formula {:?}",
                r.family, r.n, r.t, r.connectivity_computed, r.connectivity_formula
            ));
        }
        checked += 1;
    }
    let mut strict = 0;
    for n in [2, 5] {
        for t in 1..=20 {
            let Connectivity::Finite(k) = connectivity_tiling(n, t).unwrap() else {
                return Err(format!("n = {n}, t = {t}: infinite connectivity"));
            };
            let bound = jmmv_lower_bound(n, t).unwrap();
            if k < bound {
                return Err(format!("n = {n}, t = {t}: {k} below the older bound {bound}"));
            }
            strict += usize::from(k > bound);
        }
    }
    if strict == 0 {
        return Err("closed form never strictly above the older bound".into());
    }
    Ok(format!("{checked} instances exact; bound comparison: strict in {strict} of 40 cells"))
}

fn soundness(graph: &Graph, before: &HomologyProfile) -> Result<usize, String> {
    let apps = applications(graph);
    for (rule, vertices, result) in &apps {
        let after = expr_homology(result, BUDGET).map_err(|e| e.to_string())?;
        if after != *before {
            let names: Vec<VertexLabel> = vertices.iter().map(|&v| graph.label(v)).collect();
            return Err(format!("{rule} at {names:?}: {before} became {after}"));
        }
    }
    let (expr, _) = reduce(graph, &DEFAULT_STRATEGY);
    let reduced = expr_homology(&expr, BUDGET).map_err(|e| e.to_string())?;
    if reduced != *before {
        return Err(format!("full reduction {expr}: {before} became {reduced}"));
    }
    Ok(apps.len())
}

fn reduction_soundness(inst: &Instances) -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut applied = 0;
    for case in 0..200 {
        let g = random_graph(&mut rng, 14, 0);
        let before = independence_homology(&g, BUDGET).map_err(|e| e.to_string())?;
        applied += soundness(&g, &before).map_err(|e| format!("random graph {case}: {e}"))?;
    }
    let mut instances = 0;
    for r in inst.in_budget() {
        let g = match r.family {
            Family::G => tiling_line_graph(r.n, r.t).unwrap(),
            Family::H => extended_tiling_line_graph(r.n, r.t).unwrap(),
        };
        let before = r.computed.clone().expect("in-budget instance has homology");
        applied += soundness(&g, &before).map_err(|e| format!("{}({},{}): {e}", r.family, r.n, r.t))?;
        instances += 1;
    }
    Ok(format!("200 random graphs + {instances} tiling instances, {applied} rule applications, 0 violations"))
}

fn join_law() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(77);
    for case in 0..50 {
        let a = random_graph(&mut rng, 8, 0);
        let b = random_graph(&mut rng, 8, 100);
        let union = a.disjoint_union(&b).unwrap();
        let ha = independence_homology(&a, BUDGET).unwrap();
        let hb = independence_homology(&b, BUDGET).unwrap();
        let hu = independence_homology(&union, BUDGET).unwrap();
        if hu != ha.join(&hb) {
            return Err(format!("pair {case}: {hu} vs {ha} * {hb}"));
        }
    }
    Ok("50 random pairs, 0 violations".into())
}

fn torsion_free(inst: &Instances) -> Verdict {
    let mut checked = 0;
    for r in inst.in_budget() {
        if r.torsion_free != Some(true) || (r.matched && r.exit_code() != 0) {
            return Err(describe(r));
        }
        checked += 1;
    }
    Ok(format!("{checked} in-budget instances, no torsion"))
}

fn strip_varying(stdout: &str) -> serde_json::Value {
    let mut v: serde_json::Value = serde_json::from_str(stdout).expect("command prints JSON");
    if let Some(map) = v.as_object_mut() {
        map.remove("elapsed_ms");
        map.remove("cached");
    }
    v
}

fn determinism() -> Verdict {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let cache = dir.path().join("cache");
    let run = |args: &[&str]| {
        let mut full = vec!["polytile"];
        full.extend_from_slice(args);
        polytile_cli::run(full)
    };
    let mut compared = 0;
    for (family, n, t) in [("G", "3", "3"), ("G", "2", "4"), ("H", "3", "2")] {
        let args = ["verify", "--family", family, "--n", n, "--t", t];
        let first = run(&args);
        let second = run(&args);
        if first.code != 0 || strip_varying(&first.stdout) != strip_varying(&second.stdout) {
            return Err(format!("verify {family} {n} {t} differs between runs"));
        }
        let cached_args = ["verify", "--family", family, "--n", n, "--t", t, "--cache-dir", cache.to_str().unwrap()];
        let cold = run(&cached_args);
        let warm = run(&cached_args);
        if strip_varying(&cold.stdout) != strip_varying(&first.stdout)
            || strip_varying(&warm.stdout) != strip_varying(&cold.stdout)
        {
            return Err(format!("cached verify {family} {n} {t} differs from a cold run"));
        }
        compared += 3;
    }
    let graphs = [
        ("c9", cycle_graph(9).unwrap()),
        ("g32", tiling_line_graph(3, 2).unwrap()),
        ("h33", extended_tiling_line_graph(3, 3).unwrap()),
        ("g53", tiling_line_graph(5, 3).unwrap()),
    ];
    for (name, g) in graphs {
        let path = dir.path().join(format!("{name}.json"));
        std::fs::write(&path, g.to_json()).map_err(|e| e.to_string())?;
        let args = ["reduce", path.to_str().unwrap()];
        let first = run(&args);
        let second = run(&args);
        if first.code != 0 || first.stdout != second.stdout {
            return Err(format!("reduce {name} differs between runs"));
        }
        compared += 1;
    }
    Ok(format!("{compared} repeated command pairs byte-identical (excluding elapsed time)"))
}

fn main() {
    let mut inst = Instances { reports: BTreeMap::new() };
    let results: Vec<(&str, Verdict)> = vec![
        ("1 path and cycle table", kozlov_table()),
        ("2 n = 4 wedges", residue_one(&mut inst)),
        ("3 n = 2 and n = 5 recursion", residue_two(&mut inst)),
        ("4 n = 3 mutual recursion", residue_zero(&mut inst)),
        ("5 connectivity formulas", connectivity(&inst)),
        ("6 reduction soundness", reduction_soundness(&inst)),
        ("7 disjoint union is join", join_law()),
        ("8 torsion-freeness", torsion_free(&inst)),
        ("9 determinism", determinism()),
    ];

    let mut failed = 0;
    for (name, verdict) in &results {
        match verdict {
            Ok(detail) => println!("[PASS] criterion {name}: {detail}"),
            Err(detail) => {
                failed += 1;
                println!("[FAIL] criterion {name}: {detail}");
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", results.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
