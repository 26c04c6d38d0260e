//! The `superwalk` command line.
//!
//! Every subcommand parses its inputs, calls into `superwalk-core`, and
//! formats the result. Exit codes:
//!
//! | code | meaning                                         |
//! |------|-------------------------------------------------|
//! | 0    | success                                         |
//! | 2    | unreadable or invalid input file                |
//! | 3    | invalid parameter or parameter combination      |
//! | 4    | matrix count and enumeration disagree           |

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use superwalk_core::counting::{self, TheoremMatrices};
use superwalk_core::oracle::{Oracle, OracleError, SignedCount, WalkKind, DEFAULT_LISTING_CAP};
use superwalk_core::spectral::{HeatEngine, SpectralError, DEFAULT_ORDER_CAP};
use superwalk_core::{BigInt, Graph, IntMatrix};

use crate::graph_io::{self, MatrixFormat};
use crate::random::random_graph;

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_PARAMETER: i32 = 3;
pub const EXIT_MISMATCH: i32 = 4;

/// Environment variable overriding the walk-listing length cap.
pub const ENUM_CAP_VAR: &str = "SUPERWALK_ENUM_CAP";

#[derive(Debug, Parser)]
#[command(
    name = "superwalk",
    version,
    about = "Exact signed walk counts on finite graphs"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print the adjacency, incidence or a Laplacian matrix, or a power of it.
    Matrix(MatrixArgs),
    /// Count walks between two vertices (or edges) of a given length.
    Count(CountArgs),
    /// Check matrix powers against enumeration for every entry and length.
    Verify(VerifyArgs),
    /// Heat kernels exp(-tΔ), their supertrace, or an evolved state.
    Heat(HeatArgs),
    /// Emit a seeded random oriented simple graph.
    RandomGraph(RandomGraphArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OutputFormat {
    Csv,
    Json,
    Text,
}

#[derive(Debug, Args)]
struct OutputArgs {
    /// Output format.
    #[arg(long, value_enum)]
    format: Option<OutputFormat>,
    /// Write to this file instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum MatrixKind {
    Adjacency,
    Incidence,
    EvenLaplacian,
    OddLaplacian,
}

#[derive(Debug, Args)]
struct MatrixArgs {
    #[arg(long)]
    graph: PathBuf,
    #[arg(long, value_enum)]
    kind: MatrixKind,
    /// Exponent (square matrices only).
    #[arg(long)]
    power: Option<u64>,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum CountKind {
    Walks,
    Super,
    EdgeSuper,
}

impl CountKind {
    fn walk_kind(self) -> WalkKind {
        match self {
            CountKind::Walks => WalkKind::Walk,
            CountKind::Super => WalkKind::Super,
            CountKind::EdgeSuper => WalkKind::EdgeSuper,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Method {
    Matrix,
    Enumerate,
    Both,
}

#[derive(Debug, Args)]
struct CountArgs {
    #[arg(value_enum)]
    kind: CountKind,
    #[arg(long)]
    graph: PathBuf,
    /// Start vertex label (edge label for edge-super).
    #[arg(long)]
    from: String,
    /// End vertex label (edge label for edge-super).
    #[arg(long)]
    to: String,
    #[arg(long)]
    length: u64,
    #[arg(long, value_enum, default_value = "matrix")]
    method: Method,
    /// Also print every enumerated walk as a JSON line.
    #[arg(long)]
    list: bool,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Fault {
    OddLaplacian,
}

#[derive(Debug, Args)]
struct VerifyArgs {
    #[arg(long)]
    graph: PathBuf,
    #[arg(long)]
    max_length: usize,
    /// Re-verify under every single-edge orientation flip.
    #[arg(long)]
    flip_sweep: bool,
    /// Test hook: corrupt a base matrix before powering it.
    #[arg(long, value_enum, hide = true)]
    inject_fault: Option<Fault>,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Debug, Args)]
struct HeatArgs {
    #[arg(long)]
    graph: PathBuf,
    /// Evolution time.
    #[arg(long = "t", allow_negative_numbers = true)]
    t: f64,
    /// Bound on the discarded series tail (max-entry norm).
    #[arg(long, default_value_t = 1e-12, allow_negative_numbers = true)]
    tol: f64,
    /// Largest Taylor order tried before giving up.
    #[arg(long, default_value_t = DEFAULT_ORDER_CAP)]
    order_cap: usize,
    /// Print tr exp(-tΔ⁺) - tr exp(-tΔ⁻).
    #[arg(long, conflicts_with = "state")]
    supertrace: bool,
    /// Evolve the state in this JSON file (vertex entries, then edge entries).
    #[arg(long)]
    state: Option<PathBuf>,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Debug, Args)]
struct RandomGraphArgs {
    #[arg(long)]
    vertices: usize,
    #[arg(long, allow_negative_numbers = true)]
    edge_prob: f64,
    #[arg(long)]
    seed: u64,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Debug)]
struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn input(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_INPUT,
            message: message.into(),
        }
    }

    fn parameter(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_PARAMETER,
            message: message.into(),
        }
    }
}

/// Text to emit and the exit code to return with it.
struct Outcome {
    text: String,
    code: i32,
    note: Option<String>,
}

impl Outcome {
    fn ok(text: String) -> Self {
        Outcome {
            text,
            code: EXIT_OK,
            note: None,
        }
    }
}

/// Runs the CLI on `args` (including the program name) and returns the exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let rendered = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = stdout.write_all(rendered.as_bytes());
                    EXIT_OK
                }
                _ => {
                    let _ = stderr.write_all(rendered.as_bytes());
                    EXIT_PARAMETER
                }
            };
        }
    };

    let (result, output) = match &cli.command {
        Command::Matrix(a) => (cmd_matrix(a), &a.output),
        Command::Count(a) => (cmd_count(a), &a.output),
        Command::Verify(a) => (cmd_verify(a), &a.output),
        Command::Heat(a) => (cmd_heat(a), &a.output),
        Command::RandomGraph(a) => (cmd_random_graph(a), &a.output),
    };

    match result {
        Ok(outcome) => {
            if let Err(f) = emit(&outcome.text, output.out.as_deref(), stdout) {
                let _ = writeln!(stderr, "error: {}", f.message);
                return f.code;
            }
            if let Some(note) = outcome.note {
                let _ = writeln!(stderr, "{note}");
            }
            outcome.code
        }
        Err(f) => {
            let _ = writeln!(stderr, "error: {}", f.message);
            f.code
        }
    }
}

fn emit(text: &str, out: Option<&Path>, stdout: &mut dyn Write) -> Result<(), Failure> {
    match out {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| Failure::input(format!("cannot write {}: {e}", path.display()))),
        None => stdout
            .write_all(text.as_bytes())
            .map_err(|e| Failure::input(format!("cannot write output: {e}"))),
    }
}

fn load_graph(path: &Path) -> Result<Graph, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::input(format!("cannot read {}: {e}", path.display())))?;
    graph_io::parse_graph(&text).map_err(|e| Failure::input(format!("{}: {e}", path.display())))
}

fn listing_cap() -> Result<usize, Failure> {
    match std::env::var(ENUM_CAP_VAR) {
        Ok(v) => v.trim().parse().map_err(|_| {
            Failure::parameter(format!(
                "{ENUM_CAP_VAR} must be a non-negative integer, got `{v}`"
            ))
        }),
        Err(_) => Ok(DEFAULT_LISTING_CAP),
    }
}

fn cmd_matrix(a: &MatrixArgs) -> Result<Outcome, Failure> {
    let g = load_graph(&a.graph)?;
    let base = match a.kind {
        MatrixKind::Adjacency => g.adjacency_matrix(),
        MatrixKind::Incidence => {
            if a.power.is_some() {
                return Err(Failure::parameter(
                    "--power needs a square matrix; the incidence matrix is not square",
                ));
            }
            g.incidence_matrix()
        }
        MatrixKind::EvenLaplacian => g.even_laplacian(),
        MatrixKind::OddLaplacian => g.odd_laplacian(),
    };
    let m = match a.power {
        Some(k) => base.pow(k).map_err(|e| Failure::parameter(e.to_string()))?,
        None => base,
    };
    Ok(Outcome::ok(render_int_matrix(
        &m,
        a.output.format.unwrap_or(OutputFormat::Csv),
    )))
}

fn render_int_matrix(m: &IntMatrix, format: OutputFormat) -> String {
    match format {
        OutputFormat::Csv => graph_io::write_matrix(m, MatrixFormat::Csv),
        OutputFormat::Json => graph_io::write_matrix(m, MatrixFormat::Json),
        OutputFormat::Text => m.to_string(),
    }
}

fn oracle_failure(e: OracleError) -> Failure {
    Failure::parameter(e.to_string())
}

fn cmd_count(a: &CountArgs) -> Result<Outcome, Failure> {
    let g = load_graph(&a.graph)?;
    let kind = a.kind.walk_kind();
    let resolve = |label: &str| -> Result<usize, Failure> {
        let found = if kind.on_edges() {
            g.edge_id(label).map(|e| e.index())
        } else {
            g.vertex_id(label).map(|v| v.index())
        };
        found.ok_or_else(|| {
            let what = if kind.on_edges() { "edge" } else { "vertex" };
            Failure::parameter(format!("unknown {what} label `{label}`"))
        })
    };
    let (from, to) = (resolve(&a.from)?, resolve(&a.to)?);
    if a.list && a.method == Method::Matrix {
        return Err(Failure::parameter(
            "--list needs --method enumerate or --method both",
        ));
    }
    let length = usize::try_from(a.length).map_err(|_| Failure::parameter("length too large"))?;
    let format = a.output.format.unwrap_or(OutputFormat::Text);

    let mut text = String::new();
    let matrix_value = match a.method {
        Method::Matrix | Method::Both => Some(
            counting::signed_count_by_matrix(&g, kind, from, to, a.length)
                .map_err(oracle_failure)?,
        ),
        Method::Enumerate => None,
    };
    let oracle_value = match a.method {
        Method::Matrix => None,
        Method::Enumerate | Method::Both => {
            let oracle = Oracle::new(&g).with_listing_cap(listing_cap()?);
            if a.list {
                let records = oracle
                    .list(kind, from, to, length)
                    .map_err(oracle_failure)?;
                for r in &records {
                    text.push_str(&graph_io::walk_record_json(&g, r));
                    text.push('\n');
                }
                Some(SignedCount::of(&records))
            } else {
                Some(
                    oracle
                        .signed_count(kind, from, to, length)
                        .map_err(oracle_failure)?,
                )
            }
        }
    };

    match format {
        OutputFormat::Json => {
            let summary = serde_json::json!({
                "kind": kind.name(),
                "from": a.from,
                "to": a.to,
                "length": a.length,
                "matrix": matrix_value.as_ref().map(ToString::to_string),
                "oracle": oracle_value.as_ref().map(ToString::to_string),
            });
            text.push_str(&summary.to_string());
        }
        OutputFormat::Csv => {
            text.push_str("matrix,oracle\n");
            let cell =
                |v: &Option<SignedCount>| v.as_ref().map(ToString::to_string).unwrap_or_default();
            text.push_str(&format!("{},{}", cell(&matrix_value), cell(&oracle_value)));
        }
        OutputFormat::Text => match (&matrix_value, &oracle_value) {
            (Some(m), Some(o)) => text.push_str(&format!("matrix: {m}, oracle: {o}")),
            (Some(v), None) | (None, Some(v)) => text.push_str(&v.to_string()),
            (None, None) => unreachable!("every method computes at least one value"),
        },
    }
    text.push('\n');

    let mut outcome = Outcome::ok(text);
    if let (Some(m), Some(o)) = (&matrix_value, &oracle_value) {
        if m != o {
            outcome.code = EXIT_MISMATCH;
            outcome.note = Some(format!(
                "mismatch: matrix count {m} differs from enumeration {o}"
            ));
        }
    }
    Ok(outcome)
}

fn cmd_verify(a: &VerifyArgs) -> Result<Outcome, Failure> {
    let g = load_graph(&a.graph)?;
    if a.max_length == 0 {
        return Err(Failure::parameter("--max-length must be at least 1"));
    }
    let fault = a.inject_fault;
    let adjust = move |m: &mut TheoremMatrices| {
        if fault == Some(Fault::OddLaplacian) && m.odd_laplacian.rows() > 0 {
            let bumped = m.odd_laplacian.get(0, 0) + BigInt::from(1);
            m.odd_laplacian.set(0, 0, bumped);
        }
    };
    let reports = if a.flip_sweep {
        counting::verify_flip_sweep_with(&g, a.max_length, adjust)
    } else {
        let mut m = TheoremMatrices::of(&g);
        adjust(&mut m);
        vec![counting::verify_with(&g, a.max_length, &m)]
    };
    let passed = reports.iter().all(|r| r.passed());

    let mut text = match a.output.format.unwrap_or(OutputFormat::Text) {
        OutputFormat::Json if a.flip_sweep => graph_io::reports_json(&reports),
        OutputFormat::Json => graph_io::report_json(&reports[0]),
        OutputFormat::Csv | OutputFormat::Text => {
            let mut t = reports
                .iter()
                .map(ToString::to_string)
                .collect::<Vec<_>>()
                .join("\n\n");
            if a.flip_sweep {
                t.push_str(&format!(
                    "\n\nsweep: {} over {} orientations",
                    if passed { "pass" } else { "FAIL" },
                    reports.len()
                ));
            }
            t
        }
    };
    text.push('\n');
    let mut outcome = Outcome::ok(text);
    if !passed {
        outcome.code = EXIT_MISMATCH;
        outcome.note = Some("verification failed: matrix powers disagree with enumeration".into());
    }
    Ok(outcome)
}

fn spectral_failure(e: SpectralError) -> Failure {
    match e {
        SpectralError::DimensionMismatch { .. } => Failure::input(e.to_string()),
        _ => Failure::parameter(e.to_string()),
    }
}

fn cmd_heat(a: &HeatArgs) -> Result<Outcome, Failure> {
    if !(a.t.is_finite() && a.t >= 0.0) {
        return Err(Failure::parameter(format!(
            "--t must be a finite value >= 0, got {}",
            a.t
        )));
    }
    if !(a.tol.is_finite() && a.tol > 0.0) {
        return Err(Failure::parameter(format!(
            "--tol must be a finite value > 0, got {}",
            a.tol
        )));
    }
    let g = load_graph(&a.graph)?;
    let engine = HeatEngine::with_order_cap(a.order_cap);
    let format = a.output.format.unwrap_or(OutputFormat::Text);
    let num =
        |x: f64| serde_json::Number::from_f64(x).map_or_else(|| x.to_string(), |n| n.to_string());

    let mut text = if let Some(path) = &a.state {
        let raw = std::fs::read_to_string(path)
            .map_err(|e| Failure::input(format!("cannot read {}: {e}", path.display())))?;
        let psi = graph_io::parse_state(&raw)
            .map_err(|e| Failure::input(format!("{}: {e}", path.display())))?;
        let evolved = engine
            .evolve(&g, &psi, a.t, a.tol)
            .map_err(spectral_failure)?;
        match format {
            OutputFormat::Json => graph_io::evolved_state_json(&g, &evolved),
            OutputFormat::Csv | OutputFormat::Text => graph_io::evolved_state_csv(&g, &evolved),
        }
    } else {
        let kernels = engine.kernels(&g, a.t, a.tol).map_err(spectral_failure)?;
        if a.supertrace {
            let value = kernels.supertrace();
            match format {
                OutputFormat::Json => serde_json::json!({
                    "t": a.t,
                    "supertrace": value,
                    "vertices": g.vertex_count(),
                    "edges": g.edge_count(),
                    "truncation_order": kernels.truncation_order(),
                    "remainder_bound": kernels.remainder_bound(),
                })
                .to_string(),
                OutputFormat::Csv => format!(
                    "t,supertrace,remainder_bound\n{},{},{}",
                    num(a.t),
                    num(value),
                    num(kernels.remainder_bound())
                ),
                OutputFormat::Text => num(value),
            }
        } else {
            match format {
                OutputFormat::Json => graph_io::kernel_json(&kernels),
                OutputFormat::Csv | OutputFormat::Text => graph_io::kernel_csv(&kernels),
            }
        }
    };
    if !text.ends_with('\n') {
        text.push('\n');
    }
    Ok(Outcome::ok(text))
}

fn cmd_random_graph(a: &RandomGraphArgs) -> Result<Outcome, Failure> {
    let g = random_graph(a.vertices, a.edge_prob, a.seed)
        .map_err(|e| Failure::parameter(e.to_string()))?;
    let text = match a.output.format.unwrap_or(OutputFormat::Text) {
        OutputFormat::Text => {
            graph_io::write_edge_list(&g).expect("generated labels are plain tokens")
        }
        OutputFormat::Json => graph_io::write_json_graph(&g),
        OutputFormat::Csv => {
            return Err(Failure::parameter(
                "random-graph writes text (edge list) or json",
            ))
        }
    };
    Ok(Outcome::ok(text))
}
