//! Command-line front end: graph generation, forcing traces, resilience
//! verification, the three-failure-model equivalence audit, leader
//! selection, controllability spot checks, and the benchmark harness.
//!
//! Exit codes: 0 when the requested operation succeeds or the checked
//! property holds, 1 when a verdict fails (a failing verification,
//! disagreeing models, or a rank-deficient sample), 2 on usage errors, and
//! 3 when a search exhausts its budget.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use thiserror::Error;
use zforce::controllability::{ssc_spot_check, SscVerdict};
use zforce::resilience::{Scenario, Verdict, Witness};
use zforce::{
    apply_forcing, equivalence_audit, exact_min_l_lfs, exact_min_zfs, greedy_l_lfs, greedy_zfs,
    is_l_efs, is_l_fsr, is_l_lfs, Budget, BudgetExceeded, Constraints, Edge, EdgeSet, Graph,
    GreedyOptions, LfsMethod, NodeSet, SelectionError,
};
use zforce_cli::bench::{self, BenchConfig, Family, Method};

#[derive(Parser)]
#[command(
    name = "zforce",
    version,
    about = "Zero forcing, leak- and edge-resilient forcing, leader selection, \
             and controllability spot checks on undirected graphs"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a random graph and write it as an edge list
    Gen(GenArgs),
    /// Run the forcing process and print the trace and derived set
    Force(ForceArgs),
    /// Verify a leader set: plain forcing or a resilient variant
    Verify(VerifyArgs),
    /// Check that the three failure models agree on a leader set
    Equiv(EquivArgs),
    /// Find a leader set, greedily or exactly
    Find(FindArgs),
    /// Spot-check controllability-matrix ranks for a leader set
    Rank(RankArgs),
    /// Benchmark greedy vs exact selection over a parameter grid
    Bench(BenchArgs),
}

#[derive(Args)]
struct GenArgs {
    /// Erdős–Rényi G(n, p)
    #[arg(long, conflicts_with = "ba")]
    er: bool,
    /// Barabási–Albert preferential attachment
    #[arg(long)]
    ba: bool,
    /// Number of nodes
    #[arg(long)]
    n: usize,
    /// Edge probability (with --er)
    #[arg(long)]
    p: Option<f64>,
    /// Edges added per arriving node (with --ba)
    #[arg(long)]
    m: Option<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Output file (standard output when omitted)
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct ForceArgs {
    /// Edge-list file
    graph: PathBuf,
    /// Comma-separated input node ids, e.g. 0,3
    #[arg(long)]
    leaders: String,
    /// Comma-separated leaking node ids
    #[arg(long)]
    leaks: Option<String>,
    /// Comma-separated disabled edges, e.g. 0-1,2-4
    #[arg(long)]
    nonforcing: Option<String>,
    /// Print the structured record as JSON instead of a trace
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct VerifyArgs {
    /// Edge-list file
    graph: PathBuf,
    /// Comma-separated leader node ids
    #[arg(long)]
    leaders: String,
    /// Tolerated leak count: check an l-leak-resilient forcing set
    #[arg(long, group = "mode")]
    lfs: Option<usize>,
    /// Tolerated disabled-edge count
    #[arg(long, group = "mode")]
    efs: Option<usize>,
    /// Tolerated removed-edge count
    #[arg(long, group = "mode")]
    fsr: Option<usize>,
    /// Leak-check algorithm (applies to --lfs)
    #[arg(long, value_enum, default_value_t = MethodChoice::Brute)]
    method: MethodChoice,
    /// Print the verdict as JSON
    #[arg(long)]
    json: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum MethodChoice {
    Brute,
    Recursive,
}

#[derive(Args)]
struct EquivArgs {
    /// Edge-list file
    graph: PathBuf,
    /// Comma-separated leader node ids
    #[arg(long)]
    leaders: String,
    /// Failure budget checked in all three models
    #[arg(long, default_value_t = 1)]
    l: usize,
    /// Print the audit report as JSON
    #[arg(long)]
    json: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum FindMethod {
    Greedy,
    Exact,
}

#[derive(Args)]
struct FindArgs {
    /// Edge-list file
    graph: PathBuf,
    #[arg(long, value_enum, default_value_t = FindMethod::Greedy)]
    method: FindMethod,
    /// Tolerated leak count; plain zero forcing when omitted or 0
    #[arg(long)]
    lfs: Option<usize>,
    /// Score every non-member as a greedy candidate, not only deficient ones
    #[arg(long)]
    widen_pool: bool,
    /// Wall-clock cap in seconds
    #[arg(long)]
    budget_secs: Option<f64>,
    /// Cap on scenario checks / candidate evaluations
    #[arg(long)]
    budget_checks: Option<u64>,
    /// Print the selection as JSON
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct RankArgs {
    /// Edge-list file
    graph: PathBuf,
    /// Comma-separated leader node ids
    #[arg(long)]
    leaders: String,
    /// Random system matrices to sample
    #[arg(long, default_value_t = 20)]
    samples: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Print the rank report as JSON
    #[arg(long)]
    json: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum FamilyChoice {
    Er,
    Ba,
}

#[derive(Args)]
struct BenchArgs {
    /// Graph family: er or ba
    #[arg(long, value_enum)]
    family: FamilyChoice,
    #[arg(long, default_value_t = 20)]
    n: usize,
    /// Comma-separated grid values (family default when omitted:
    /// p = 0.2..0.7 step 0.05 for ER, m = 2..10 for BA)
    #[arg(long)]
    grid: Option<String>,
    /// Instances per grid point
    #[arg(long, default_value_t = 15)]
    instances: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Comma-separated subset of greedy,exact
    #[arg(long, default_value = "greedy,exact")]
    methods: String,
    /// Per-instance, per-method wall-clock cap in seconds
    #[arg(long, default_value_t = 600.0)]
    budget_secs: f64,
    /// CSV output file (standard output when omitted)
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Debug, Error)]
enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Budget(BudgetExceeded),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Budget(_) => 3,
        }
    }
}

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode, CliError> {
    match cli.command {
        Command::Gen(a) => cmd_gen(a),
        Command::Force(a) => cmd_force(a),
        Command::Verify(a) => cmd_verify(a),
        Command::Equiv(a) => cmd_equiv(a),
        Command::Find(a) => cmd_find(a),
        Command::Rank(a) => cmd_rank(a),
        Command::Bench(a) => cmd_bench(a),
    }
}

fn load_graph(path: &Path) -> Result<Graph, CliError> {
    let text = fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))?;
    Graph::from_edge_list(&text).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn parse_ids(g: &Graph, what: &str, text: &str) -> Result<NodeSet, CliError> {
    let mut set = NodeSet::new(g.n());
    for part in text.split(',') {
        let part = part.trim();
        let id: usize = part
            .parse()
            .map_err(|_| usage(format!("{what}: {part:?} is not a node id")))?;
        if id >= g.n() {
            return Err(usage(format!(
                "{what}: node {id} out of range for a graph on {} nodes",
                g.n()
            )));
        }
        set.insert(id);
    }
    Ok(set)
}

fn parse_edges(g: &Graph, what: &str, text: &str) -> Result<Vec<Edge>, CliError> {
    let mut edges = Vec::new();
    for part in text.split(',') {
        let part = part.trim();
        let (a, b) = part
            .split_once('-')
            .ok_or_else(|| usage(format!("{what}: expected u-v, got {part:?}")))?;
        let a: usize = a
            .trim()
            .parse()
            .map_err(|_| usage(format!("{what}: {part:?} has a bad endpoint")))?;
        let b: usize = b
            .trim()
            .parse()
            .map_err(|_| usage(format!("{what}: {part:?} has a bad endpoint")))?;
        if a == b {
            return Err(usage(format!("{what}: {a}-{b} is a self-loop")));
        }
        if a >= g.n() || b >= g.n() {
            return Err(usage(format!(
                "{what}: {a}-{b} out of range for a graph on {} nodes",
                g.n()
            )));
        }
        if !g.has_edge(a, b) {
            return Err(usage(format!(
                "{what}: {a}-{b} is not an edge of the graph"
            )));
        }
        edges.push(Edge::new(a, b));
    }
    Ok(edges)
}

fn cmd_gen(a: GenArgs) -> Result<ExitCode, CliError> {
    let g = match (a.er, a.ba) {
        (true, false) => {
            let p = a.p.ok_or_else(|| usage("--er requires --p"))?;
            Graph::gen_erdos_renyi(a.n, p, a.seed).map_err(|e| usage(e.to_string()))?
        }
        (false, true) => {
            let m = a.m.ok_or_else(|| usage("--ba requires --m"))?;
            Graph::gen_barabasi_albert(a.n, m, a.seed).map_err(|e| usage(e.to_string()))?
        }
        _ => return Err(usage("choose exactly one of --er or --ba")),
    };
    let text = g.to_edge_list();
    match &a.output {
        Some(path) => {
            fs::write(path, text).map_err(|e| usage(format!("{}: {e}", path.display())))?
        }
        None => print!("{text}"),
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_force(a: ForceArgs) -> Result<ExitCode, CliError> {
    let g = load_graph(&a.graph)?;
    let input = parse_ids(&g, "--leaders", &a.leaders)?;
    let leaks = match &a.leaks {
        Some(text) => parse_ids(&g, "--leaks", text)?,
        None => NodeSet::new(g.n()),
    };
    let non_forcing: EdgeSet = match &a.nonforcing {
        Some(text) => parse_edges(&g, "--nonforcing", text)?.into_iter().collect(),
        None => EdgeSet::new(),
    };
    let constraints = Constraints { leaks, non_forcing };
    let record = apply_forcing(&g, &input, &constraints);
    if a.json {
        println!("{}", to_json(&record));
    } else {
        for f in &record.forces {
            println!("{f}");
        }
        println!(
            "derived set: {} ({} of {} nodes)",
            record.final_black,
            record.final_black.len(),
            g.n()
        );
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_verify(a: VerifyArgs) -> Result<ExitCode, CliError> {
    let g = load_graph(&a.graph)?;
    let leaders = parse_ids(&g, "--leaders", &a.leaders)?;
    let started = Instant::now();
    let (kind, l, verdict) = match (a.lfs, a.efs, a.fsr) {
        (Some(l), None, None) => {
            let method = match a.method {
                MethodChoice::Brute => LfsMethod::Brute,
                MethodChoice::Recursive => LfsMethod::Recursive,
            };
            ("LFS", Some(l), is_l_lfs(&g, &leaders, l, method))
        }
        (None, Some(l), None) => ("EFS", Some(l), is_l_efs(&g, &leaders, l)),
        (None, None, Some(l)) => ("FSR", Some(l), is_l_fsr(&g, &leaders, l)),
        // Plain zero forcing is the zero-leak check; the verdict shape
        // (including the stalled derived set on failure) carries over.
        (None, None, None) => ("ZFS", None, is_l_lfs(&g, &leaders, 0, LfsMethod::Brute)),
        _ => return Err(usage("choose at most one of --lfs, --efs, --fsr")),
    };
    let elapsed = started.elapsed().as_secs_f64();
    if a.json {
        #[derive(Serialize)]
        struct Report<'a> {
            kind: &'a str,
            #[serde(skip_serializing_if = "Option::is_none")]
            l: Option<usize>,
            holds: bool,
            witness: &'a Option<Witness>,
            scenarios_checked: u64,
            elapsed: f64,
        }
        println!(
            "{}",
            to_json(&Report {
                kind,
                l,
                holds: verdict.holds,
                witness: &verdict.witness,
                scenarios_checked: verdict.scenarios_checked,
                elapsed,
            })
        );
    } else {
        let label = match l {
            Some(l) => format!("{l}-{kind}"),
            None => kind.to_string(),
        };
        if verdict.holds && l.is_none() {
            println!("{label} holds");
        } else if verdict.holds {
            println!(
                "{label} holds ({} scenarios checked)",
                verdict.scenarios_checked
            );
        } else {
            let w = verdict
                .witness
                .as_ref()
                .expect("failing verdicts carry a witness");
            if l.is_none() {
                println!(
                    "{label} fails: derived set {} ({} of {} nodes)",
                    w.derived,
                    w.derived.len(),
                    g.n()
                );
            } else {
                println!(
                    "{label} fails: witness {}; stalled derived set {} ({} of {} nodes)",
                    human_scenario(&w.scenario),
                    w.derived,
                    w.derived.len(),
                    g.n()
                );
            }
        }
    }
    Ok(verdict_exit(verdict.holds))
}

fn cmd_equiv(a: EquivArgs) -> Result<ExitCode, CliError> {
    let g = load_graph(&a.graph)?;
    let leaders = parse_ids(&g, "--leaders", &a.leaders)?;
    let started = Instant::now();
    let report = equivalence_audit(&g, &leaders, a.l);
    let elapsed = started.elapsed().as_secs_f64();
    let agree = report.agree();
    if a.json {
        #[derive(Serialize)]
        struct Report<'a> {
            kind: &'a str,
            l: usize,
            agree: bool,
            lfs: &'a Verdict,
            efs: &'a Verdict,
            fsr: &'a Verdict,
            elapsed: f64,
        }
        println!(
            "{}",
            to_json(&Report {
                kind: "EQUIVALENCE",
                l: report.l,
                agree,
                lfs: &report.lfs,
                efs: &report.efs,
                fsr: &report.fsr,
                elapsed,
            })
        );
    } else {
        let word = |v: &Verdict| if v.holds { "holds" } else { "fails" };
        println!("{}-LFS: {}", report.l, word(&report.lfs));
        println!("{}-EFS: {}", report.l, word(&report.efs));
        println!("{}-FSR: {}", report.l, word(&report.fsr));
        println!(
            "{}",
            if agree {
                "models agree"
            } else {
                "models disagree"
            }
        );
    }
    Ok(verdict_exit(agree))
}

fn cmd_find(a: FindArgs) -> Result<ExitCode, CliError> {
    let g = load_graph(&a.graph)?;
    let mut budget = Budget::default();
    if let Some(secs) = a.budget_secs {
        if !(secs.is_finite() && secs > 0.0) {
            return Err(usage("--budget-secs must be positive"));
        }
        budget = Budget {
            max_time: Some(Duration::from_secs_f64(secs)),
            ..budget
        };
    }
    if let Some(checks) = a.budget_checks {
        budget = Budget {
            max_checks: Some(checks),
            ..budget
        };
    }
    let started = Instant::now();
    let (leaders, evaluations) = match (a.method, a.lfs) {
        (FindMethod::Greedy, None | Some(0)) => (greedy_zfs(&g), None),
        (FindMethod::Exact, None | Some(0)) => {
            (exact_min_zfs(&g, &budget).map_err(CliError::Budget)?, None)
        }
        (FindMethod::Greedy, Some(l)) => {
            let opts = GreedyOptions {
                widen_candidate_pool: a.widen_pool,
                budget,
            };
            let result = greedy_l_lfs(&g, l, &opts).map_err(|e| match e {
                SelectionError::Budget(b) => CliError::Budget(b),
                other => usage(other.to_string()),
            })?;
            (result.leaders, Some(result.stats.candidate_evaluations))
        }
        (FindMethod::Exact, Some(l)) => (
            exact_min_l_lfs(&g, l, &budget).map_err(CliError::Budget)?,
            None,
        ),
    };
    let seconds = started.elapsed().as_secs_f64();
    let problem = match a.lfs {
        None | Some(0) => "ZFS".to_string(),
        Some(l) => format!("{l}-LFS"),
    };
    let method = match a.method {
        FindMethod::Greedy => "greedy",
        FindMethod::Exact => "exact",
    };
    if a.json {
        #[derive(Serialize)]
        struct Report<'a> {
            problem: &'a str,
            method: &'a str,
            leaders: &'a NodeSet,
            size: usize,
            #[serde(skip_serializing_if = "Option::is_none")]
            candidate_evaluations: Option<u64>,
            seconds: f64,
        }
        println!(
            "{}",
            to_json(&Report {
                problem: &problem,
                method,
                leaders: &leaders,
                size: leaders.len(),
                candidate_evaluations: evaluations,
                seconds,
            })
        );
    } else {
        println!("leaders: {} (size {})", leaders, leaders.len());
        let mut line = format!("method: {method}; problem: {problem}");
        if let Some(evals) = evaluations {
            line.push_str(&format!("; candidate evaluations: {evals}"));
        }
        line.push_str(&format!("; seconds: {seconds:.6}"));
        println!("{line}");
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_rank(a: RankArgs) -> Result<ExitCode, CliError> {
    let g = load_graph(&a.graph)?;
    let leaders = parse_ids(&g, "--leaders", &a.leaders)?;
    if a.samples == 0 {
        return Err(usage("--samples must be at least 1"));
    }
    let report = ssc_spot_check(&g, &leaders, a.samples, a.seed);
    let ok = report.verdict == SscVerdict::ConsistentWithSsc;
    if a.json {
        println!("{}", to_json(&report));
    } else {
        println!("samples: {}; node count: {}", report.samples, g.n());
        println!("ranks: {:?}", report.ranks);
        if ok {
            println!(
                "verdict: every sampled controllability matrix has full rank {}",
                g.n()
            );
        } else {
            let min_rank = report.ranks.iter().copied().min().unwrap_or(0);
            println!(
                "verdict: rank-deficient sample found (minimum rank {min_rank} < {})",
                g.n()
            );
        }
    }
    Ok(verdict_exit(ok))
}

fn cmd_bench(a: BenchArgs) -> Result<ExitCode, CliError> {
    let family = match a.family {
        FamilyChoice::Er => Family::Er,
        FamilyChoice::Ba => Family::Ba,
    };
    let grid = match &a.grid {
        Some(text) => parse_grid(text)?,
        None => family.default_grid(),
    };
    if !(a.budget_secs.is_finite() && a.budget_secs > 0.0) {
        return Err(usage("--budget-secs must be positive"));
    }
    let cfg = BenchConfig {
        family,
        n: a.n,
        grid,
        instances: a.instances,
        seed: a.seed,
        methods: parse_methods(&a.methods)?,
        budget: Budget::with_max_time(Duration::from_secs_f64(a.budget_secs)),
    };
    let outcome = bench::run_bench(&cfg).map_err(usage)?;
    let csv = outcome.to_csv();
    match &a.output {
        Some(path) => {
            fs::write(path, csv).map_err(|e| usage(format!("{}: {e}", path.display())))?
        }
        None => print!("{csv}"),
    }
    for point in &outcome.summary {
        eprintln!("{point}");
    }
    Ok(ExitCode::SUCCESS)
}

fn parse_grid(text: &str) -> Result<Vec<f64>, CliError> {
    text.split(',')
        .map(|part| {
            let part = part.trim();
            part.parse::<f64>()
                .map_err(|_| usage(format!("--grid: {part:?} is not a number")))
        })
        .collect()
}

fn parse_methods(text: &str) -> Result<Vec<Method>, CliError> {
    let mut methods = Vec::new();
    for part in text.split(',') {
        let method = match part.trim().to_ascii_lowercase().as_str() {
            "greedy" => Method::Greedy,
            "exact" => Method::Exact,
            other => return Err(usage(format!("--methods: unknown method {other:?}"))),
        };
        if !methods.contains(&method) {
            methods.push(method);
        }
    }
    Ok(methods)
}

fn human_scenario(s: &Scenario) -> String {
    match s {
        Scenario::Leaks(set) => {
            let ids: Vec<String> = set.iter().map(|v| v.to_string()).collect();
            format!("leaks=[{}]", ids.join(","))
        }
        Scenario::NonForcingEdges(edges) => format!("nonforcing=[{}]", fmt_edges(edges)),
        Scenario::RemovedEdges(edges) => format!("removed=[{}]", fmt_edges(edges)),
    }
}

fn fmt_edges(edges: &[Edge]) -> String {
    let parts: Vec<String> = edges
        .iter()
        .map(|e| format!("{}-{}", e.u(), e.v()))
        .collect();
    parts.join(",")
}

fn verdict_exit(ok: bool) -> ExitCode {
    if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn to_json<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("reports contain no non-serializable values")
}
