//! Command-line front end. Every command prints one JSON object on
//! standard output; short human-readable summaries go to standard error.

use std::ffi::OsString;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use crate::bound::{bce_log_failure_bound_precise, bce_probability_bound};
use crate::constructions::{bipartite_tk_min_order, build_gh, random_coloring, random_graph, Seed};
use crate::error::{Error, Result};
use crate::experiment::theorem_lb_experiment;
use crate::extract::pipeline::{bipartite_minor_pipeline, PipelineReport};
use crate::extract::topological::{rb_topological_clique, TopologicalModel};
use crate::graph::{is_bipartite, ColoredGraph};
use crate::io::{parse_colored, parse_edge_pairs, parse_graph, parse_model};
use crate::minor::{build_auxiliary, lift_subgraph, minimize_model, project_odd_cycle, MinorModel};
use crate::oracles::{hadwiger_oracle, max_bipartite_hadwiger, tcl_oracle};
use crate::rb::{rb_certify, rb_extract_half, RbCertificate};

#[derive(Parser, Debug)]
#[command(name = "rbminor", version, about = "RB-bipartite graphs and bipartite clique minors")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Certify a coloured graph as RB-bipartite or give an R-odd closed walk
    Certify { file: PathBuf },
    /// Keep an RB-bipartite subgraph with at least half the edges
    ExtractHalf {
        file: PathBuf,
        /// Vertex order for the greedy placement, comma separated
        #[arg(long, value_delimiter = ',')]
        order: Option<Vec<usize>>,
    },
    /// Minimise a model and print its auxiliary graph
    Aux { model: PathBuf },
    /// Lift a set of auxiliary pairs back to the host
    Lift { model: PathBuf, edges: PathBuf },
    /// Extract a bipartite clique minor; without part lines the model is
    /// the singleton model of a complete graph
    Pipeline {
        file: PathBuf,
        #[arg(long, default_value_t = 0.25)]
        epsilon: f64,
    },
    /// Build an RB-bipartite topological clique in a coloured complete graph
    TkBuild {
        file: PathBuf,
        #[arg(long)]
        t: usize,
    },
    /// Fewest vertices of a complete bipartite graph containing TK_t
    TkBound {
        #[arg(long)]
        t: u64,
    },
    /// Complete graph with the non-edges of the input subdivided once
    Gh { file: PathBuf },
    /// Exact graph parameters for small graphs
    Oracle {
        #[arg(value_enum)]
        kind: OracleKind,
        file: PathBuf,
    },
    /// Evaluate the counting bound for the maximal bipartite subgraphs
    Bound {
        #[arg(long)]
        n: u64,
    },
    /// Random trials of the subdivided-clique construction
    Experiment {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        trials: u64,
        #[arg(long)]
        seed: u64,
        /// Also write one JSON line per trial, with timings, to this file
        #[arg(long)]
        jsonl: Option<PathBuf>,
    },
    /// Sample a random graph, optionally with a random colouring
    Random {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        p: f64,
        #[arg(long)]
        seed: u64,
        /// Colour edges Red with this probability
        #[arg(long)]
        red: Option<f64>,
    },
    /// Check a saved report against its input
    Verify {
        #[arg(value_enum)]
        kind: VerifyKind,
        input: PathBuf,
        report: PathBuf,
        /// Clique order, for topological reports
        #[arg(long)]
        t: Option<usize>,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum OracleKind {
    Hadwiger,
    Tcl,
    BipHadwiger,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum VerifyKind {
    Pipeline,
    Tk,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Ok,
    Certificate,
    Error,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CommandResult {
    pub status: Status,
    pub elapsed_ms: u64,
    /// Wall-clock measurements kept out of the payload.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing: Option<Value>,
    pub payload: Value,
}

impl CommandResult {
    /// Process exit code: 0 for results, otherwise the error's code.
    pub fn exit_code(&self) -> i32 {
        match self.status {
            Status::Error => self.payload["code"].as_i64().unwrap_or(1) as i32,
            _ => 0,
        }
    }

    /// One line of JSON. The payload comes last so that it can be compared
    /// byte for byte across runs.
    pub fn render(&self) -> String {
        serde_json::to_string(self).expect("values serialise")
    }
}

pub fn error_code(e: &Error) -> i32 {
    match e {
        Error::Parse { .. } => 2,
        Error::InstanceTooLarge { .. } => 3,
        Error::BudgetExhausted { .. } | Error::PoolExhausted { .. } => 4,
        Error::Internal(_) => 5,
        _ => 1,
    }
}

fn error_kind(e: &Error) -> &'static str {
    match e {
        Error::Parse { .. } => "parse",
        Error::InvalidGraph(_) => "invalid_graph",
        Error::InstanceTooLarge { .. } => "instance_too_large",
        Error::NotAModel(_) => "not_a_model",
        Error::NotInLift(_) => "not_in_lift",
        Error::PoolExhausted { .. } => "pool_exhausted",
        Error::BudgetExhausted { .. } => "budget_exhausted",
        Error::HostTooSmall { .. } => "host_too_small",
        Error::FormulaUndefined { .. } => "formula_undefined",
        Error::InvalidArgument(_) => "invalid_argument",
        Error::Io { .. } => "io",
        Error::Internal(_) => "internal",
    }
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Io {
        path: path.display().to_string(),
        msg: e.to_string(),
    })
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("values serialise")
}

struct Output {
    status: Status,
    payload: Value,
    timing: Option<Value>,
    summary: String,
}

impl Output {
    fn ok(payload: Value, summary: impl Into<String>) -> Self {
        Output {
            status: Status::Ok,
            payload,
            timing: None,
            summary: summary.into(),
        }
    }
}

/// Parses `argv` (program name first) and runs the command.
pub fn run<I, T>(argv: I) -> std::result::Result<(CommandResult, String), clap::Error>
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = Cli::try_parse_from(argv)?;
    Ok(execute(&cli.command))
}

/// Runs a parsed command, returning the result and a one-line summary.
pub fn execute(command: &Command) -> (CommandResult, String) {
    let start = Instant::now();
    let outcome = dispatch(command);
    let elapsed_ms = start.elapsed().as_millis() as u64;
    match outcome {
        Ok(out) => (
            CommandResult {
                status: out.status,
                elapsed_ms,
                timing: out.timing,
                payload: out.payload,
            },
            out.summary,
        ),
        Err(e) => (
            CommandResult {
                status: Status::Error,
                elapsed_ms,
                timing: None,
                payload: json!({
                    "code": error_code(&e),
                    "kind": error_kind(&e),
                    "message": e.to_string(),
                }),
            },
            format!("error: {e}"),
        ),
    }
}

fn dispatch(command: &Command) -> Result<Output> {
    match command {
        Command::Certify { file } => certify(file),
        Command::ExtractHalf { file, order } => extract_half(file, order.as_deref()),
        Command::Aux { model } => aux(model),
        Command::Lift { model, edges } => lift(model, edges),
        Command::Pipeline { file, epsilon } => pipeline(file, *epsilon),
        Command::TkBuild { file, t } => tk_build(file, *t),
        Command::TkBound { t } => {
            let table = bipartite_tk_min_order(*t)?;
            let summary = format!("t = {t}: min order {}", table.min_order);
            Ok(Output::ok(to_value(&table), summary))
        }
        Command::Gh { file } => gh(file),
        Command::Oracle { kind, file } => oracle(*kind, file),
        Command::Bound { n } => bound(*n),
        Command::Experiment { n, trials, seed, jsonl } => experiment(*n, *trials, *seed, jsonl.as_deref()),
        Command::Random { n, p, seed, red } => random(*n, *p, *seed, *red),
        Command::Verify { kind, input, report, t } => verify(*kind, input, report, *t),
    }
}

fn certify(file: &Path) -> Result<Output> {
    let cg = parse_colored(&read(file)?)?;
    let cert = RbCertificate::from(rb_certify(&cg));
    let summary = match &cert {
        RbCertificate::Partition { .. } => "RB-bipartite".to_string(),
        RbCertificate::ROdd { walk, red_count } => {
            format!("not RB-bipartite: closed walk of length {} with {red_count} Red edges", walk.len())
        }
    };
    Ok(Output {
        status: Status::Certificate,
        payload: to_value(&cert),
        timing: None,
        summary,
    })
}

fn extract_half(file: &Path, order: Option<&[usize]>) -> Result<Output> {
    let cg = parse_colored(&read(file)?)?;
    let default: Vec<usize> = (0..cg.vertex_count()).collect();
    let half = rb_extract_half(&cg, order.unwrap_or(&default))?;
    let kept = half.subgraph.edge_count();
    let summary = format!("kept {kept} of {} edges, balance {}", cg.edge_count(), half.balance);
    Ok(Output::ok(
        json!({
            "edges": cg.edge_count(),
            "kept": kept,
            "balance": half.balance,
            "subgraph": half.subgraph,
            "partition": half.partition,
        }),
        summary,
    ))
}

fn load_model(path: &Path) -> Result<MinorModel> {
    let file = parse_model(&read(path)?)?;
    if file.parts.is_empty() {
        return MinorModel::singletons(file.graph);
    }
    match file.roots {
        Some(roots) => MinorModel::with_roots(file.graph, file.parts, roots),
        None => MinorModel::new(file.graph, file.parts),
    }
}

fn aux(path: &Path) -> Result<Output> {
    let model = load_model(path)?;
    let min = minimize_model(&model)?;
    let aux = build_auxiliary(&min.model)?;
    let summary = format!(
        "{} parts: {} Red and {} Blue pairs",
        min.model.part_count(),
        aux.colored.red_count(),
        aux.colored.blue_count()
    );
    Ok(Output::ok(
        json!({
            "minimized": min.model,
            "original": min.original,
            "auxiliary": aux,
        }),
        summary,
    ))
}

fn lift(model_path: &Path, edges_path: &Path) -> Result<Output> {
    let model = load_model(model_path)?;
    let sub = parse_edge_pairs(&read(edges_path)?)?;
    let min = minimize_model(&model)?;
    let aux = build_auxiliary(&min.model)?;
    let restricted = aux.restrict(&sub)?;
    let certificate = RbCertificate::from(rb_certify(&restricted));
    let lifted = lift_subgraph(&min.model, &aux, &sub)?;
    let (bipartite, summary) = match is_bipartite(&lifted) {
        Ok(bp) => (json!({ "bipartite": true, "partition": bp }), "lift is bipartite".to_string()),
        Err(odd) => {
            let circuit = project_odd_cycle(&min.model, &aux, &sub, &odd.cycle)?;
            (
                json!({ "bipartite": false, "odd_cycle": odd.cycle, "projected_circuit": circuit }),
                format!("lift has an odd cycle of length {}", odd.cycle.len()),
            )
        }
    };
    Ok(Output::ok(
        json!({
            "minimized": min.model,
            "original": min.original,
            "lifted": lifted,
            "auxiliary_certificate": certificate,
            "lift": bipartite,
        }),
        summary,
    ))
}

fn pipeline(path: &Path, epsilon: f64) -> Result<Output> {
    let model = load_model(path)?;
    let report = bipartite_minor_pipeline(model.host(), &model, epsilon)?;
    let checks = report.checks(model.host());
    if !checks.all() {
        return Err(Error::Internal(format!("pipeline report failed its checks: {checks:?}")));
    }
    let summary = format!(
        "bipartite K_{} minor from a K_{} model, {} reserved parts used",
        report.m_achieved,
        model.part_count(),
        report.budget.projector + report.budget.connector
    );
    Ok(Output::ok(json!({ "report": report, "checks": checks }), summary))
}

fn tk_build(path: &Path, t: usize) -> Result<Output> {
    let cg = parse_colored(&read(path)?)?;
    let model = rb_topological_clique(&cg, t)?;
    model.validate(&cg, t).map_err(Error::Internal)?;
    let used = model.vertices().len();
    let summary = format!("RB-bipartite TK_{t} on {used} vertices");
    Ok(Output::ok(json!({ "t": t, "vertices_used": used, "model": model }), summary))
}

fn gh(path: &Path) -> Result<Output> {
    let h = parse_graph(&read(path)?)?;
    let gh = build_gh(&h);
    let model = gh.model();
    let summary = format!("G(H) on {} vertices, {} edges", gh.graph.vertex_count(), gh.graph.edge_count());
    Ok(Output::ok(
        json!({ "construction": gh, "parts": model.parts(), "text": gh.graph.to_string() }),
        summary,
    ))
}

fn oracle(kind: OracleKind, path: &Path) -> Result<Output> {
    let g = parse_graph(&read(path)?)?;
    let (payload, summary) = match kind {
        OracleKind::Hadwiger => {
            let v = hadwiger_oracle(&g)?;
            (json!({ "oracle": "hadwiger", "value": v }), format!("h = {v}"))
        }
        OracleKind::Tcl => {
            let v = tcl_oracle(&g)?;
            (json!({ "oracle": "tcl", "value": v }), format!("tcl = {v}"))
        }
        OracleKind::BipHadwiger => {
            let best = max_bipartite_hadwiger(&g)?;
            let summary = format!("largest bipartite h = {}", best.value);
            (
                json!({ "oracle": "bip_hadwiger", "value": best.value, "witness": best.witness }),
                summary,
            )
        }
    };
    Ok(Output::ok(payload, summary))
}

fn bound(n: u64) -> Result<Output> {
    let eval = bce_probability_bound(n)?;
    let precise = bce_log_failure_bound_precise(n)?;
    let relative_error = ((eval.log_failure_bound - precise) / precise).abs();
    let summary = format!("n = {n}: ln bound = {:.6e}", eval.log_failure_bound);
    Ok(Output::ok(
        json!({
            "evaluation": eval,
            "precise_log_failure_bound": precise,
            "relative_error": relative_error,
        }),
        summary,
    ))
}

fn experiment(n: usize, trials: u64, seed: u64, jsonl: Option<&Path>) -> Result<Output> {
    let (report, runtimes) = theorem_lb_experiment(n, trials, Seed(seed))?;
    if let Some(path) = jsonl {
        let mut text = String::new();
        for (r, ms) in report.records.iter().zip(&runtimes) {
            let mut line = to_value(r);
            line["runtime_ms"] = json!(ms);
            text.push_str(&line.to_string());
            text.push('\n');
        }
        std::fs::write(path, text).map_err(|e| Error::Io {
            path: path.display().to_string(),
            msg: e.to_string(),
        })?;
    }
    let summary = format!("{trials} trials at n = {n}, gap counts {:?}", report.gap_counts);
    Ok(Output {
        status: Status::Ok,
        payload: to_value(&report),
        timing: Some(json!({ "runtime_ms": runtimes })),
        summary,
    })
}

fn random(n: usize, p: f64, seed: u64, red: Option<f64>) -> Result<Output> {
    if !(0.0..=1.0).contains(&p) || red.is_some_and(|r| !(0.0..=1.0).contains(&r)) {
        return Err(Error::InvalidArgument("probabilities must lie in [0, 1]".into()));
    }
    let g = random_graph(n, p, Seed(seed));
    let payload = match red {
        Some(r) => {
            let cg = random_coloring(&g, r, Seed(seed));
            json!({ "graph": cg, "text": cg.to_string() })
        }
        None => json!({ "graph": g, "text": g.to_string() }),
    };
    Ok(Output::ok(payload, format!("{n} vertices, {} edges", g.edge_count())))
}

fn verify(kind: VerifyKind, input: &Path, report_path: &Path, t: Option<usize>) -> Result<Output> {
    let text = read(report_path)?;
    let value: Value = serde_json::from_str(&text)
        .map_err(|e| Error::InvalidArgument(format!("report is not JSON: {e}")))?;
    // accept either a bare report or a full command envelope
    let payload = value.get("payload").cloned().unwrap_or(value);
    let invalid = |msg: String| Error::InvalidArgument(format!("report does not verify: {msg}"));
    match kind {
        VerifyKind::Pipeline => {
            let model = load_model(input)?;
            let report: PipelineReport = serde_json::from_value(payload.get("report").cloned().unwrap_or(payload))
                .map_err(|e| invalid(e.to_string()))?;
            let checks = report.checks(model.host());
            if !checks.all() {
                return Err(invalid(format!("{checks:?}")));
            }
            Ok(Output::ok(json!({ "valid": true, "checks": checks }), "pipeline report verified"))
        }
        VerifyKind::Tk => {
            let cg: ColoredGraph = parse_colored(&read(input)?)?;
            let model: TopologicalModel = serde_json::from_value(payload.get("model").cloned().unwrap_or(payload.clone()))
                .map_err(|e| invalid(e.to_string()))?;
            let t = t
                .or_else(|| payload.get("t").and_then(Value::as_u64).map(|t| t as usize))
                .unwrap_or(model.branch.len());
            model.validate(&cg, t).map_err(invalid)?;
            Ok(Output::ok(json!({ "valid": true, "t": t }), "topological model verified"))
        }
    }
}
