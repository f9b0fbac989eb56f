//! Leader-set construction: greedy and exact zero forcing sets, and greedy
//! and exact leak-resilient leader sets.
//!
//! The greedy resilient search seeds itself with a greedy zero forcing set,
//! then repeatedly adds the candidate that minimizes the number of remaining
//! deficiencies — pairs `(L, v)` of a leak set `L` (size `l-1`) and a
//! non-member `v` that does not yet have two distinct possible forcers under
//! `L`. For `l = 1` this is exactly "add the candidate maximizing `|Q|`".
//! A final pruning pass drops any member whose removal keeps the resilience
//! property, and the result is re-verified before being returned.

use std::time::{Duration, Instant};

use serde::ser::Serializer;
use serde::Serialize;
use thiserror::Error;

use crate::bitset::NodeSet;
use crate::budget::{Budget, BudgetExceeded};
use crate::combo::Combinations;
use crate::forcing::{fixpoint, q_set};
use crate::graph::Graph;
use crate::resilience::{is_l_lfs, LfsMethod, ResilienceKind};

/// What a [`SelectionResult`] was verified against.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Certification {
    pub kind: ResilienceKind,
    pub l: usize,
}

/// Work accounting for a selection run.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct SelectionStats {
    /// Candidate scenario evaluations (`q_set` computations and resilience
    /// re-checks) performed.
    pub candidate_evaluations: u64,
    #[serde(serialize_with = "duration_secs")]
    pub elapsed: Duration,
}

fn duration_secs<S: Serializer>(d: &Duration, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_f64(d.as_secs_f64())
}

/// A verified leader set with its certification and work stats.
#[derive(Clone, Debug, Serialize)]
pub struct SelectionResult {
    /// Leader ids; serializes in ascending order.
    pub leaders: NodeSet,
    pub certified: Certification,
    pub stats: SelectionStats,
}

#[derive(Debug, Error)]
pub enum SelectionError {
    #[error(transparent)]
    Budget(#[from] BudgetExceeded),
    #[error("constructed leader set {leaders} failed {l}-leak verification (implementation bug)")]
    VerificationFailed { leaders: NodeSet, l: usize },
}

/// Options for [`greedy_l_lfs`].
#[derive(Clone, Copy, Debug, Default)]
pub struct GreedyOptions {
    /// Score every non-member as a candidate instead of only the still
    /// deficient ones. The narrow pool is the algorithm as designed;
    /// widening is exposed for experimentation and changes tie-breaking
    /// only in rare cases.
    pub widen_candidate_pool: bool,
    /// Cap on candidate evaluations / time. Greedy runs are polynomial, so
    /// the default unlimited budget is almost always fine.
    pub budget: Budget,
}

/// Builds a zero forcing set greedily: starting empty, repeatedly add the
/// node whose addition maximizes the derived set (ties to the smallest id)
/// until everything is forced. The result is a verified ZFS, generally not
/// a minimum one.
pub fn greedy_zfs(g: &Graph) -> NodeSet {
    let n = g.n();
    let mut leaders = NodeSet::new(n);
    let mut derived = NodeSet::new(n);
    while derived.len() < n {
        let mut best: Option<(usize, usize, NodeSet)> = None;
        for v in 0..n {
            if leaders.contains(v) {
                continue;
            }
            // D(V' ∪ {v}) = D(D(V') ∪ {v}): grow from the current closure.
            let mut trial = derived.clone();
            trial.insert(v);
            fixpoint(g, &mut trial);
            let gain = trial.len();
            if best.as_ref().is_none_or(|(sz, _, _)| gain > *sz) {
                best = Some((gain, v, trial));
            }
        }
        let (_, v, closure) = best.expect("some node is always addable");
        leaders.insert(v);
        derived = closure;
    }
    leaders
}

/// Minimum-cardinality zero forcing set by increasing-cardinality subset
/// enumeration; returns the lexicographically first minimum.
pub fn exact_min_zfs(g: &Graph, budget: &Budget) -> Result<NodeSet, BudgetExceeded> {
    let n = g.n();
    let mut meter = budget.start();
    let mut buf = NodeSet::new(n);
    for size in 0..=n {
        let mut combos = Combinations::new(n, size);
        while let Some(c) = combos.next() {
            meter
                .tick()
                .map_err(|stop| BudgetExceeded::from_stop(stop, Some(size)))?;
            buf.clear();
            for &v in c {
                buf.insert(v);
            }
            fixpoint(g, &mut buf);
            if buf.len() == n {
                return Ok(NodeSet::from_ids(n, c.iter().copied()));
            }
        }
    }
    unreachable!("the full node set forces trivially");
}

/// Greedy leader set tolerating any single leak; see [`greedy_l_lfs`].
pub fn greedy_1lfs(g: &Graph) -> Result<SelectionResult, SelectionError> {
    greedy_l_lfs(g, 1, &GreedyOptions::default())
}

/// Greedy leader set tolerating any `l` leaks (`l >= 1`; panics on 0 — use
/// [`greedy_zfs`] for plain forcing).
///
/// Loop: while the recursive `l`-leak check fails, score each candidate by
/// the total deficiency count of `leaders ∪ {candidate}` over all leak sets
/// of size `l-1`, and add the minimizer (ties to smallest id). Then prune:
/// drop members, in ascending id order, whose removal preserves the
/// property. The final set is re-verified before returning.
pub fn greedy_l_lfs(
    g: &Graph,
    l: usize,
    opts: &GreedyOptions,
) -> Result<SelectionResult, SelectionError> {
    assert!(l >= 1, "use greedy_zfs for the leak-free problem");
    let started = Instant::now();
    let n = g.n();
    let mut meter = opts.budget.start();
    if n == 0 {
        return Ok(SelectionResult {
            leaders: NodeSet::new(0),
            certified: Certification {
                kind: ResilienceKind::Leak,
                l,
            },
            stats: SelectionStats {
                candidate_evaluations: 0,
                elapsed: started.elapsed(),
            },
        });
    }
    let l = l.min(n);
    let mut leaders = greedy_zfs(g);

    while !is_l_lfs(g, &leaders, l, LfsMethod::Recursive).holds {
        let pool = if opts.widen_candidate_pool {
            leaders.complement()
        } else {
            deficient_nodes(g, &leaders, l, &mut meter)?
        };
        let mut best: Option<(u64, usize)> = None;
        for cand in pool.iter() {
            let mut trial = leaders.clone();
            trial.insert(cand);
            let score = deficiency_count(g, &trial, l, &mut meter)?;
            if best.is_none_or(|(s, _)| score < s) {
                best = Some((score, cand));
            }
        }
        let (_, cand) = best.expect("a deficient instance always has candidates");
        leaders.insert(cand);
    }

    // Pruning: a member may have become redundant once later additions
    // covered its targets.
    for v in leaders.to_vec() {
        let mut trial = leaders.clone();
        trial.remove(v);
        meter
            .tick()
            .map_err(|stop| BudgetExceeded::from_stop(stop, None))?;
        if is_l_lfs(g, &trial, l, LfsMethod::Recursive).holds {
            leaders = trial;
        }
    }

    if !is_l_lfs(g, &leaders, l, LfsMethod::Recursive).holds {
        return Err(SelectionError::VerificationFailed { leaders, l });
    }
    Ok(SelectionResult {
        leaders,
        certified: Certification {
            kind: ResilienceKind::Leak,
            l,
        },
        stats: SelectionStats {
            candidate_evaluations: meter.checks(),
            elapsed: started.elapsed(),
        },
    })
}

/// Non-members that still lack two distinct forcers under some leak set of
/// size `l-1` — the candidate pool of the greedy step.
fn deficient_nodes(
    g: &Graph,
    leaders: &NodeSet,
    l: usize,
    meter: &mut crate::budget::BudgetMeter,
) -> Result<NodeSet, SelectionError> {
    let n = g.n();
    let mut deficient = NodeSet::new(n);
    let mut combos = Combinations::new(n, l - 1);
    while let Some(c) = combos.next() {
        meter
            .tick()
            .map_err(|stop| BudgetExceeded::from_stop(stop, None))?;
        let leaks = NodeSet::from_ids(n, c.iter().copied());
        let q = q_set(g, leaders, &leaks);
        for v in leaders.complement().iter() {
            if !q.contains(v) {
                deficient.insert(v);
            }
        }
    }
    Ok(deficient)
}

/// Total number of unsatisfied `(leak set, node)` pairs for `leaders`.
fn deficiency_count(
    g: &Graph,
    leaders: &NodeSet,
    l: usize,
    meter: &mut crate::budget::BudgetMeter,
) -> Result<u64, SelectionError> {
    let n = g.n();
    let mut count = 0u64;
    let mut combos = Combinations::new(n, l - 1);
    while let Some(c) = combos.next() {
        meter
            .tick()
            .map_err(|stop| BudgetExceeded::from_stop(stop, None))?;
        let leaks = NodeSet::from_ids(n, c.iter().copied());
        let q = q_set(g, leaders, &leaks);
        count += (n - leaders.len() - q.len()) as u64;
    }
    Ok(count)
}

/// Minimum-cardinality leader set tolerating any `l` leaks, by
/// increasing-cardinality enumeration with the recursive verifier;
/// lexicographically first winner. `l = 0` degenerates to
/// [`exact_min_zfs`].
pub fn exact_min_l_lfs(g: &Graph, l: usize, budget: &Budget) -> Result<NodeSet, BudgetExceeded> {
    let n = g.n();
    let mut meter = budget.start();
    let mut buf = NodeSet::new(n);
    for size in 0..=n {
        let mut combos = Combinations::new(n, size);
        while let Some(c) = combos.next() {
            meter
                .tick()
                .map_err(|stop| BudgetExceeded::from_stop(stop, Some(size)))?;
            // Cheap pre-filter: resilient sets are in particular zero
            // forcing sets (leaks only remove forces).
            buf.clear();
            for &v in c {
                buf.insert(v);
            }
            fixpoint(g, &mut buf);
            if buf.len() != n {
                continue;
            }
            let input = NodeSet::from_ids(n, c.iter().copied());
            if is_l_lfs(g, &input, l, LfsMethod::Recursive).holds {
                return Ok(input);
            }
        }
    }
    unreachable!("the full node set tolerates any leaks");
}
