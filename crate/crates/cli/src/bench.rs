//! Benchmark harness comparing greedy and exact single-leak leader
//! selection on random graph families.
//!
//! For every grid point (an edge probability for Erdős–Rényi graphs, an
//! attachment count for Barabási–Albert graphs) the harness generates a
//! deterministic stream of instances, runs the requested methods, re-checks
//! every returned leader set, and emits one CSV row per (instance, method)
//! plus a per-point summary. Exact runs that exhaust their budget become
//! `timeout` rows, which are counted but excluded from the means so that
//! summaries are never silently biased by censored measurements.

use std::fmt;
use std::time::Instant;

use serde::Serialize;
use zforce::{
    exact_min_l_lfs, greedy_l_lfs, is_l_lfs, Budget, Graph, GreedyOptions, LfsMethod, NodeSet,
    SelectionError,
};

/// Random graph family to benchmark.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Family {
    /// Erdős–Rényi G(n, p); the grid parameter is the edge probability.
    Er,
    /// Barabási–Albert preferential attachment; the grid parameter is the
    /// per-arrival attachment count m.
    Ba,
}

impl Family {
    pub fn label(self) -> &'static str {
        match self {
            Family::Er => "ER",
            Family::Ba => "BA",
        }
    }

    /// Name of the grid parameter, for summaries.
    pub fn param_name(self) -> &'static str {
        match self {
            Family::Er => "p",
            Family::Ba => "m",
        }
    }

    /// The grid used when the caller does not supply one: the attachment
    /// counts 2..=10 for BA, edge probabilities 0.2..=0.7 in steps of 0.05
    /// for ER.
    pub fn default_grid(self) -> Vec<f64> {
        match self {
            Family::Er => (4..=14).map(|k| k as f64 * 0.05).collect(),
            Family::Ba => (2..=10).map(|m| m as f64).collect(),
        }
    }
}

/// Leader-selection method under measurement.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Method {
    Greedy,
    Exact,
}

impl Method {
    pub fn label(self) -> &'static str {
        match self {
            Method::Greedy => "greedy",
            Method::Exact => "exact",
        }
    }
}

/// A full benchmark request.
#[derive(Clone, Debug)]
pub struct BenchConfig {
    pub family: Family,
    pub n: usize,
    /// Grid of family parameters (p values or m values).
    pub grid: Vec<f64>,
    /// Instances generated per grid point.
    pub instances: usize,
    /// Base seed; instance `i` at grid point `g` uses
    /// `seed + g * instances + i`, so runs are reproducible and grid points
    /// draw disjoint graph streams.
    pub seed: u64,
    pub methods: Vec<Method>,
    /// Per-instance cap applied to each method run.
    pub budget: Budget,
}

impl BenchConfig {
    /// Rejects empty or out-of-range configurations with a usage message.
    pub fn validate(&self) -> Result<(), String> {
        if self.grid.is_empty() {
            return Err("parameter grid must be non-empty".into());
        }
        if self.instances == 0 {
            return Err("instances must be at least 1".into());
        }
        if self.methods.is_empty() {
            return Err("at least one method is required".into());
        }
        for &param in &self.grid {
            match self.family {
                Family::Er => {
                    if !(0.0..=1.0).contains(&param) {
                        return Err(format!("edge probability {param} outside [0, 1]"));
                    }
                }
                Family::Ba => {
                    if param.fract() != 0.0 || param < 1.0 || param as usize >= self.n {
                        return Err(format!(
                            "attachment count {param} must be an integer in 1..{}",
                            self.n
                        ));
                    }
                }
            }
        }
        Ok(())
    }
}

/// Outcome of one method on one instance.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RowStatus {
    Ok,
    Timeout,
}

impl RowStatus {
    pub fn label(self) -> &'static str {
        match self {
            RowStatus::Ok => "ok",
            RowStatus::Timeout => "timeout",
        }
    }
}

/// One measurement: a (grid point, instance, method) triple.
#[derive(Clone, Debug, Serialize)]
pub struct BenchRow {
    pub family: Family,
    pub param: f64,
    pub instance: usize,
    pub seed: u64,
    pub method: Method,
    /// Verified leader-set size; absent when the run timed out.
    pub size: Option<usize>,
    pub seconds: f64,
    pub status: RowStatus,
}

pub const CSV_HEADER: &str = "family,param,instance,seed,method,size,seconds,status";

impl BenchRow {
    pub fn csv_line(&self) -> String {
        let size = self.size.map(|s| s.to_string()).unwrap_or_default();
        format!(
            "{},{},{},{},{},{},{:.6},{}",
            self.family.label(),
            format_param(self.param),
            self.instance,
            self.seed,
            self.method.label(),
            size,
            self.seconds,
            self.status.label()
        )
    }
}

/// Renders a grid parameter compactly: integers without a decimal point,
/// fractions without trailing zeros (so `0.25`, not `0.250000`).
pub fn format_param(param: f64) -> String {
    if param == param.trunc() {
        format!("{}", param as i64)
    } else {
        let text = format!("{param:.6}");
        text.trim_end_matches('0').trim_end_matches('.').to_string()
    }
}

/// Per-(grid point, method) aggregate over the completed rows.
#[derive(Clone, Debug, Serialize)]
pub struct SummaryPoint {
    pub family: Family,
    pub param: f64,
    pub method: Method,
    pub completed: usize,
    pub timeouts: usize,
    /// Mean over completed rows only; absent when everything timed out.
    pub mean_size: Option<f64>,
    pub mean_seconds: Option<f64>,
}

impl fmt::Display for SummaryPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} {}={} {:>6}: {} completed, {} timed out",
            self.family.label(),
            self.family.param_name(),
            format_param(self.param),
            self.method.label(),
            self.completed,
            self.timeouts
        )?;
        if let (Some(size), Some(seconds)) = (self.mean_size, self.mean_seconds) {
            write!(f, ", mean size {size:.2}, mean seconds {seconds:.6}")?;
        }
        Ok(())
    }
}

/// All rows plus the per-point summaries, in grid order.
#[derive(Clone, Debug)]
pub struct BenchOutcome {
    pub rows: Vec<BenchRow>,
    pub summary: Vec<SummaryPoint>,
}

impl BenchOutcome {
    /// The stable CSV: header plus one line per row. Identical configs and
    /// seeds produce identical output apart from the seconds column.
    pub fn to_csv(&self) -> String {
        let mut out = String::with_capacity(64 * (self.rows.len() + 1));
        out.push_str(CSV_HEADER);
        out.push('\n');
        for row in &self.rows {
            out.push_str(&row.csv_line());
            out.push('\n');
        }
        out
    }
}

/// Runs the full grid. Every returned leader set is re-verified before its
/// row is emitted (brute-force check up to 12 nodes, the characterization
/// check beyond); a verification failure would be a library bug and panics.
pub fn run_bench(cfg: &BenchConfig) -> Result<BenchOutcome, String> {
    cfg.validate()?;
    let mut rows = Vec::new();
    for (grid_idx, &param) in cfg.grid.iter().enumerate() {
        for instance in 0..cfg.instances {
            let seed = cfg.seed + (grid_idx * cfg.instances + instance) as u64;
            let g = generate(cfg.family, cfg.n, param, seed).map_err(|e| e.to_string())?;
            for &method in &cfg.methods {
                rows.push(run_one(&g, cfg, param, instance, seed, method));
            }
        }
    }
    // Rows are produced in order already; the sort keeps the output
    // schedule-independent if instances ever run concurrently.
    rows.sort_by(|a, b| {
        a.param
            .total_cmp(&b.param)
            .then(a.instance.cmp(&b.instance))
            .then(a.method.label().cmp(b.method.label()))
    });
    let summary = summarize(cfg, &rows);
    Ok(BenchOutcome { rows, summary })
}

fn generate(family: Family, n: usize, param: f64, seed: u64) -> Result<Graph, zforce::GraphError> {
    match family {
        Family::Er => Graph::gen_erdos_renyi(n, param, seed),
        Family::Ba => Graph::gen_barabasi_albert(n, param as usize, seed),
    }
}

fn run_one(
    g: &Graph,
    cfg: &BenchConfig,
    param: f64,
    instance: usize,
    seed: u64,
    method: Method,
) -> BenchRow {
    let started = Instant::now();
    let outcome: Result<NodeSet, ()> = match method {
        Method::Greedy => {
            let opts = GreedyOptions {
                widen_candidate_pool: false,
                budget: cfg.budget,
            };
            match greedy_l_lfs(g, 1, &opts) {
                Ok(result) => Ok(result.leaders),
                Err(SelectionError::Budget(_)) => Err(()),
                Err(e @ SelectionError::VerificationFailed { .. }) => {
                    panic!("greedy selection returned an unverified set: {e}")
                }
            }
        }
        Method::Exact => exact_min_l_lfs(g, 1, &cfg.budget).map_err(|_| ()),
    };
    let seconds = started.elapsed().as_secs_f64();
    let (size, status) = match outcome {
        Ok(leaders) => {
            let check = if g.n() <= 12 {
                LfsMethod::Brute
            } else {
                LfsMethod::Recursive
            };
            assert!(
                is_l_lfs(g, &leaders, 1, check).holds,
                "benchmark row failed re-verification: {} on {} nodes",
                method.label(),
                g.n()
            );
            (Some(leaders.len()), RowStatus::Ok)
        }
        Err(()) => (None, RowStatus::Timeout),
    };
    BenchRow {
        family: cfg.family,
        param,
        instance,
        seed,
        method,
        size,
        seconds,
        status,
    }
}

fn summarize(cfg: &BenchConfig, rows: &[BenchRow]) -> Vec<SummaryPoint> {
    let mut summary = Vec::new();
    for &param in &cfg.grid {
        for &method in &cfg.methods {
            let group: Vec<&BenchRow> = rows
                .iter()
                .filter(|r| r.param == param && r.method == method)
                .collect();
            let completed: Vec<&&BenchRow> =
                group.iter().filter(|r| r.status == RowStatus::Ok).collect();
            let timeouts = group.len() - completed.len();
            let (mean_size, mean_seconds) = if completed.is_empty() {
                (None, None)
            } else {
                let count = completed.len() as f64;
                let sizes: usize = completed.iter().map(|r| r.size.unwrap()).sum();
                let secs: f64 = completed.iter().map(|r| r.seconds).sum();
                (Some(sizes as f64 / count), Some(secs / count))
            };
            summary.push(SummaryPoint {
                family: cfg.family,
                param,
                method,
                completed: completed.len(),
                timeouts,
                mean_size,
                mean_seconds,
            });
        }
    }
    summary
}

#[cfg(test)]
mod tests {
    use super::*;

    fn config(family: Family, n: usize, grid: Vec<f64>, methods: Vec<Method>) -> BenchConfig {
        BenchConfig {
            family,
            n,
            grid,
            instances: 2,
            seed: 7,
            methods,
            budget: Budget::UNLIMITED,
        }
    }

    #[test]
    fn smoke_run_emits_verified_rows_in_order() {
        let cfg = config(
            Family::Er,
            8,
            vec![0.3, 0.5],
            vec![Method::Greedy, Method::Exact],
        );
        let outcome = run_bench(&cfg).unwrap();
        assert_eq!(outcome.rows.len(), 8);
        assert!(outcome.rows.iter().all(|r| r.status == RowStatus::Ok));
        // Greedy is never smaller than exact on the same instance.
        for pair in outcome.rows.chunks(2) {
            assert_eq!(pair[0].method, Method::Exact);
            assert_eq!(pair[1].method, Method::Greedy);
            assert_eq!(pair[0].instance, pair[1].instance);
            assert!(pair[0].size.unwrap() <= pair[1].size.unwrap());
        }
        let csv = outcome.to_csv();
        assert!(csv.starts_with("family,param,instance,seed,method,size,seconds,status\n"));
        assert_eq!(csv.lines().count(), 9);
        assert!(csv.contains("ER,0.3,0,7,exact,"));
    }

    #[test]
    fn identical_configs_give_identical_rows_apart_from_timing() {
        let cfg = config(Family::Ba, 10, vec![2.0], vec![Method::Greedy]);
        let a = run_bench(&cfg).unwrap();
        let b = run_bench(&cfg).unwrap();
        let strip = |rows: &[BenchRow]| {
            rows.iter()
                .map(|r| (r.param.to_bits(), r.instance, r.seed, r.method, r.size))
                .collect::<Vec<_>>()
        };
        assert_eq!(strip(&a.rows), strip(&b.rows));
    }

    #[test]
    fn exhausted_budget_becomes_a_timeout_row_excluded_from_means() {
        let mut cfg = config(
            Family::Er,
            10,
            vec![0.4],
            vec![Method::Greedy, Method::Exact],
        );
        cfg.budget = Budget::with_max_checks(1);
        let outcome = run_bench(&cfg).unwrap();
        let exact: Vec<&BenchRow> = outcome
            .rows
            .iter()
            .filter(|r| r.method == Method::Exact)
            .collect();
        assert!(exact.iter().all(|r| r.status == RowStatus::Timeout));
        assert!(exact.iter().all(|r| r.size.is_none()));
        let point = outcome
            .summary
            .iter()
            .find(|s| s.method == Method::Exact)
            .unwrap();
        assert_eq!(point.completed, 0);
        assert_eq!(point.timeouts, 2);
        assert!(point.mean_size.is_none());
        // The CSV leaves the size column empty on timeout.
        assert!(outcome.to_csv().contains(",exact,,"));
    }

    #[test]
    fn config_validation_rejects_bad_grids() {
        let cfg = config(Family::Ba, 10, vec![2.5], vec![Method::Greedy]);
        assert!(cfg.validate().is_err());
        let cfg = config(Family::Ba, 10, vec![10.0], vec![Method::Greedy]);
        assert!(cfg.validate().is_err());
        let cfg = config(Family::Er, 10, vec![1.2], vec![Method::Greedy]);
        assert!(cfg.validate().is_err());
        let cfg = config(Family::Er, 10, vec![], vec![Method::Greedy]);
        assert!(cfg.validate().is_err());
        let mut cfg = config(Family::Er, 10, vec![0.5], vec![]);
        assert!(cfg.validate().is_err());
        cfg.methods = vec![Method::Greedy];
        cfg.instances = 0;
        assert!(cfg.validate().is_err());
    }

    #[test]
    fn parameters_format_compactly() {
        assert_eq!(format_param(2.0), "2");
        assert_eq!(format_param(0.25), "0.25");
        assert_eq!(format_param(4.0 * 0.05), "0.2");
        assert_eq!(format_param(0.30000000000000004), "0.3");
    }

    #[test]
    fn default_grids_match_the_experiment_layout() {
        assert_eq!(Family::Ba.default_grid().len(), 9);
        let er = Family::Er.default_grid();
        assert_eq!(er.len(), 11);
        assert_eq!(format_param(er[0]), "0.2");
        assert_eq!(format_param(er[10]), "0.7");
        assert_eq!(format_param(er[1]), "0.25");
    }
}
