//! The `polytile` command line: build graphs, compute complexes and homology,
//! predict homotopy types, verify predictions, trace reductions and produce
//! tables.
//!
//! Exit codes: 0 success or match, 1 verified mismatch, 2 usage or input
//! error, 3 face budget exceeded.

pub mod table;
pub mod verify;

use std::fs;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use polytile_core::complexes::{independence_complex, matching_complex, ComplexError, DEFAULT_FACE_BUDGET};
use polytile_core::graphs::{
    cycle_graph, extended_tiling_line_graph, path_graph, polygon_line_tiling, tiling_line_graph, Graph, GraphError,
};
use polytile_core::homology::complex_homology;
use polytile_core::reductions::{reduce, Rule, DEFAULT_STRATEGY};
use polytile_core::theory::{evaluate, predict, Family, TheoryError};
use serde_json::json;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("face budget of {0} exceeded")]
    Budget(usize),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Theory(#[from] TheoryError),
    #[error("{0}")]
    Complex(String),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

impl From<ComplexError> for CliError {
    fn from(e: ComplexError) -> Self {
        match e {
            ComplexError::BudgetExceeded { budget } => CliError::Budget(budget),
            other => CliError::Complex(other.to_string()),
        }
    }
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Budget(_) => 3,
            _ => 2,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Md,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum BuildFamily {
    Path,
    Cycle,
    Tiling,
    #[value(name = "G")]
    G,
    #[value(name = "H")]
    H,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum FamilyArg {
    #[value(name = "G")]
    G,
    #[value(name = "H")]
    H,
}

impl From<FamilyArg> for Family {
    fn from(f: FamilyArg) -> Family {
        match f {
            FamilyArg::G => Family::G,
            FamilyArg::H => Family::H,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ComplexKind {
    Independence,
    Matching,
}

#[derive(Debug, Parser)]
#[command(name = "polytile", version, about = "Matching complexes of polygonal line tilings")]
pub struct Cli {
    /// Maximum number of faces to enumerate.
    #[arg(long, global = true, env = "POLYTILE_BUDGET", default_value_t = DEFAULT_FACE_BUDGET)]
    pub budget: usize,
    /// Directory for cached brute-force results; no caching when unset.
    #[arg(long, global = true, env = "POLYTILE_CACHE_DIR")]
    pub cache_dir: Option<PathBuf>,
    /// Output format (csv and md apply to `table` only).
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Write a graph as JSON.
    Build {
        #[arg(long, value_enum)]
        family: BuildFamily,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        t: Option<usize>,
        /// Vertex count for paths and cycles.
        #[arg(long)]
        k: Option<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Enumerate the faces of a complex of a graph file.
    Complex {
        graph: PathBuf,
        #[arg(long, value_enum, default_value_t = ComplexKind::Independence)]
        kind: ComplexKind,
    },
    /// Reduced integral homology of a complex of a graph file.
    Homology {
        graph: PathBuf,
        #[arg(long, value_enum, default_value_t = ComplexKind::Independence)]
        kind: ComplexKind,
    },
    /// Predicted homotopy type.
    Predict {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        t: usize,
        #[arg(long, value_enum, default_value_t = FamilyArg::G)]
        family: FamilyArg,
    },
    /// Compare the prediction with brute-force homology.
    Verify {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        t: usize,
        #[arg(long, value_enum, default_value_t = FamilyArg::G)]
        family: FamilyArg,
    },
    /// Apply the reduction rules to a graph file and print the trace.
    Reduce {
        graph: PathBuf,
        /// Comma-separated rule priority list.
        #[arg(long)]
        strategy: Option<String>,
    },
    /// Predictions (and optionally verification status) over ranges of n and t.
    Table {
        /// `a`, `a,b,...` or `a..b`.
        #[arg(long)]
        n: String,
        #[arg(long)]
        t: String,
        #[arg(long, value_enum, default_value_t = FamilyArg::G)]
        family: FamilyArg,
        #[arg(long)]
        verify: bool,
    },
}

/// What a command produced: exit code and the two output streams.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome { code: 0, stdout, stderr: String::new() }
    }

    fn error(e: &CliError) -> Self {
        Outcome { code: e.exit_code(), stdout: String::new(), stderr: format!("error: {e}\n") }
    }
}

fn pretty(v: &impl serde::Serialize) -> String {
    serde_json::to_string_pretty(v).expect("output serializes") + "\n"
}

fn read_graph(path: &Path) -> Result<Graph, CliError> {
    let text = fs::read_to_string(path)?;
    Ok(Graph::from_json(&text)?)
}

fn require(v: Option<usize>, name: &str) -> Result<usize, CliError> {
    v.ok_or_else(|| CliError::Usage(format!("--{name} is required for this family")))
}

fn build(family: BuildFamily, n: Option<usize>, t: Option<usize>, k: Option<usize>) -> Result<Graph, CliError> {
    Ok(match family {
        BuildFamily::Path => path_graph(require(k, "k")?),
        BuildFamily::Cycle => cycle_graph(require(k, "k")?)?,
        BuildFamily::Tiling => polygon_line_tiling(require(n, "n")?, require(t, "t")?)?,
        BuildFamily::G => tiling_line_graph(require(n, "n")?, require(t, "t")?)?,
        BuildFamily::H => extended_tiling_line_graph(require(n, "n")?, require(t, "t")?)?,
    })
}

fn parse_strategy(text: &str) -> Result<Vec<Rule>, CliError> {
    text.split(',')
        .map(|s| Rule::parse(s.trim()).ok_or_else(|| CliError::Usage(format!("unknown rule {s:?}"))))
        .collect()
}

fn execute(cli: Cli) -> Result<Outcome, CliError> {
    let budget = cli.budget;
    let complex_of = |g: &Graph, kind: ComplexKind| match kind {
        ComplexKind::Independence => independence_complex(g, budget),
        ComplexKind::Matching => matching_complex(g, budget),
    };
    match cli.command {
        Command::Build { family, n, t, k, out } => {
            let g = build(family, n, t, k)?;
            let text = g.to_json() + "\n";
            match out {
                Some(path) => {
                    fs::write(&path, &text)?;
                    Ok(Outcome::ok(String::new()))
                }
                None => Ok(Outcome::ok(text)),
            }
        }
        Command::Complex { graph, kind } => {
            let k = complex_of(&read_graph(&graph)?, kind)?;
            let faces: Vec<&[u32]> = k.all_faces().collect();
            Ok(Outcome::ok(
                serde_json::to_string(&json!({
                    "vertex_count": k.vertex_count(),
                    "f_vector": k.f_vector(),
                    "faces": faces,
                }))
                .expect("complex serializes")
                    + "\n",
            ))
        }
        Command::Homology { graph, kind } => {
            let k = complex_of(&read_graph(&graph)?, kind)?;
            Ok(Outcome::ok(pretty(&complex_homology(&k))))
        }
        Command::Predict { n, t, family } => {
            let family = Family::from(family);
            let h = predict(family, n, t)?;
            let spheres: serde_json::Value = serde_json::to_value(&h).expect("type serializes")["spheres"].clone();
            Ok(Outcome::ok(pretty(&json!({
                "family": family,
                "n": n,
                "t": t,
                "type": serde_json::to_value(&h).expect("type serializes")["type"],
                "spheres": spheres,
                "connectivity": h.connectivity(),
            }))))
        }
        Command::Verify { n, t, family } => {
            let report = verify::verify(family.into(), n, t, budget, cli.cache_dir.as_deref())?;
            let mut out = Outcome::ok(pretty(&report));
            out.code = report.exit_code();
            if out.code == 1 {
                out.stderr = format!("mismatch: predicted {}, computed {:?}\n", report.predicted, report.computed);
            } else if out.code == 3 {
                out.stderr = format!("face budget of {budget} exceeded\n");
            }
            Ok(out)
        }
        Command::Reduce { graph, strategy } => {
            let g = read_graph(&graph)?;
            let strategy = match strategy {
                Some(s) => parse_strategy(&s)?,
                None => DEFAULT_STRATEGY.to_vec(),
            };
            let (expr, trace) = reduce(&g, &strategy);
            let (status, result) = match evaluate(&expr) {
                Ok(h) => ("closed", Some(h)),
                Err(TheoryError::UnresolvedLeaf { .. }) => ("UNRESOLVED_LEAF", None),
                Err(e) => return Err(e.into()),
            };
            Ok(Outcome::ok(pretty(&json!({
                "trace": trace,
                "expression": expr,
                "status": status,
                "type": result,
            }))))
        }
        Command::Table { n, t, family, verify } => {
            let ns = table::parse_range(&n)?;
            let ts = table::parse_range(&t)?;
            let rows = table::rows(family.into(), &ns, &ts, verify, budget, cli.cache_dir.as_deref())?;
            let mut out = Outcome::ok(table::render(&rows, cli.format));
            if rows.iter().any(|r| r.status == "mismatch") {
                out.code = 1;
            }
            Ok(out)
        }
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Outcome::ok(text)
            } else {
                Outcome { code, stdout: String::new(), stderr: text }
            };
        }
    };
    execute(cli).unwrap_or_else(|e| Outcome::error(&e))
}
