//! Verifiers for the three resilient forcing-set notions, with
//! counterexample witnesses, plus resilient forcing numbers and an
//! equivalence auditor.
//!
//! The three notions — tolerate any `l` leaks, tolerate any `l` disabled
//! edges, remain a forcing set under any deletion of up to `l` edges — are
//! provably equivalent; the auditor makes that executable so the test suite
//! can falsify the implementation on random instances.
//!
//! Scenario enumeration scope differs by notion, and deliberately so:
//! adding a leak or disabling an extra edge can only suppress forces, so
//! checking exactly `l`-sized scenarios covers all smaller ones; deleting
//! an edge, by contrast, can *help* (it can reduce a node to a unique white
//! neighbor), so the subgraph check must cover every removal size from 0 to
//! `l`.

use serde::Serialize;

use crate::bitset::NodeSet;
use crate::budget::{Budget, BudgetExceeded};
use crate::combo::Combinations;
use crate::forcing::{derived_set, fixpoint_with, q_set, target_forcers};
use crate::graph::{Edge, Graph};

/// The three failure models a leader set can be hardened against.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum ResilienceKind {
    Leak,
    NonForcingEdge,
    RemovableEdge,
}

/// How to verify leak resilience: definitional enumeration of leak sets, or
/// the recursive two-distinct-forcers characterization. Both must agree.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LfsMethod {
    Brute,
    Recursive,
}

/// A concrete failing scenario for a negative verdict.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", content = "set", rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Scenario {
    Leaks(NodeSet),
    NonForcingEdges(Vec<Edge>),
    RemovedEdges(Vec<Edge>),
}

/// A failing scenario together with the stalled derived set it produces.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub scenario: Scenario,
    pub derived: NodeSet,
}

impl Witness {
    /// Re-runs the witness scenario and returns the resulting derived set;
    /// for a genuine witness this never covers all nodes.
    pub fn replay(&self, g: &Graph, input: &NodeSet) -> NodeSet {
        match &self.scenario {
            Scenario::Leaks(leaks) => {
                let mut black = input.clone();
                fixpoint_with(g, &mut black, |u, _| !leaks.contains(u));
                black
            }
            Scenario::NonForcingEdges(edges) => {
                let mut black = input.clone();
                fixpoint_with(g, &mut black, |u, v| {
                    edges.binary_search(&Edge::new(u, v)).is_err()
                });
                black
            }
            Scenario::RemovedEdges(edges) => {
                let g2 = g
                    .remove_edges(edges)
                    .expect("witness removes existing edges");
                derived_set(&g2, input)
            }
        }
    }
}

/// Outcome of a resilience check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub holds: bool,
    /// Present exactly when the check fails; the lexicographically first
    /// failing scenario in enumeration order.
    pub witness: Option<Witness>,
    /// Scenario evaluations performed (for the recursive method, the total
    /// across all recursion levels).
    pub scenarios_checked: u64,
}

impl Verdict {
    fn holds(scenarios_checked: u64) -> Verdict {
        Verdict {
            holds: true,
            witness: None,
            scenarios_checked,
        }
    }

    fn fails(witness: Witness, scenarios_checked: u64) -> Verdict {
        Verdict {
            holds: false,
            witness: Some(witness),
            scenarios_checked,
        }
    }
}

/// Whether `input` completes forcing under every leak set of size `l`
/// (clamped to `n`: a leak set cannot exceed the node set).
///
/// `Brute` enumerates exactly the size-`min(l, n)` leak sets — sufficient
/// because extra leaks only suppress forces, so any failure at a smaller
/// size survives padding to size `l`. `Recursive` applies the
/// characterization: an `l`-resilient set is an `(l-1)`-resilient set such
/// that under every leak set of size `l-1`, every non-input node still has
/// two distinct possible forcers (for `l = 0`, plain zero forcing).
pub fn is_l_lfs(g: &Graph, input: &NodeSet, l: usize, method: LfsMethod) -> Verdict {
    assert_eq!(
        input.universe(),
        g.n(),
        "input set universe must match the graph"
    );
    let k = l.min(g.n());
    match method {
        LfsMethod::Brute => brute_lfs(g, input, k),
        LfsMethod::Recursive => recursive_lfs(g, input, k),
    }
}

fn brute_lfs(g: &Graph, input: &NodeSet, k: usize) -> Verdict {
    let n = g.n();
    let mut checked = 0;
    let mut combos = Combinations::new(n, k);
    while let Some(c) = combos.next() {
        checked += 1;
        let leaks = NodeSet::from_ids(n, c.iter().copied());
        let mut black = input.clone();
        fixpoint_with(g, &mut black, |u, _| !leaks.contains(u));
        if black.len() != n {
            return Verdict::fails(
                Witness {
                    scenario: Scenario::Leaks(leaks),
                    derived: black,
                },
                checked,
            );
        }
    }
    Verdict::holds(checked)
}

fn recursive_lfs(g: &Graph, input: &NodeSet, k: usize) -> Verdict {
    let n = g.n();
    if k == 0 {
        let derived = derived_set(g, input);
        if derived.len() == n {
            return Verdict::holds(1);
        }
        return Verdict::fails(
            Witness {
                scenario: Scenario::Leaks(NodeSet::new(n)),
                derived,
            },
            1,
        );
    }

    let sub = recursive_lfs(g, input, k - 1);
    let mut checked = sub.scenarios_checked;
    if let Some(sub_witness) = sub.witness {
        let Scenario::Leaks(smaller) = sub_witness.scenario else {
            unreachable!("leak verdicts carry leak witnesses");
        };
        return Verdict::fails(leak_witness(g, input, smaller, k), checked);
    }

    let mut combos = Combinations::new(n, k - 1);
    while let Some(c) = combos.next() {
        checked += 1;
        let leaks = NodeSet::from_ids(n, c.iter().copied());
        let q = q_set(g, input, &leaks);
        for v in input.complement().iter() {
            if q.contains(v) {
                continue;
            }
            // v has at most one possible forcer under these leaks; leaking
            // that forcer (or any node at all, when there is none) yields a
            // size-k leak set under which v is never colored.
            let mut fatal = leaks.clone();
            if let Some(&forcer) = target_forcers(g, input, &leaks, v).first() {
                fatal.insert(forcer);
            }
            return Verdict::fails(leak_witness(g, input, fatal, k), checked);
        }
    }
    Verdict::holds(checked)
}

/// Pads a failing leak set up to size `k` (extra leaks keep it failing) and
/// replays it to capture the stalled derived set.
fn leak_witness(g: &Graph, input: &NodeSet, mut leaks: NodeSet, k: usize) -> Witness {
    let mut next = 0;
    while leaks.len() < k {
        if !leaks.contains(next) {
            leaks.insert(next);
        }
        next += 1;
    }
    let mut derived = input.clone();
    fixpoint_with(g, &mut derived, |u, _| !leaks.contains(u));
    debug_assert!(derived.len() < g.n(), "padded leak witness must still fail");
    Witness {
        scenario: Scenario::Leaks(leaks),
        derived,
    }
}

/// Whether `input` completes forcing with any `l` edges disabled. Disabled
/// edges keep contributing to white-neighbor counts, so — as with leaks —
/// larger scenarios dominate smaller ones and only exact size
/// `min(l, |E|)` needs checking.
pub fn is_l_efs(g: &Graph, input: &NodeSet, l: usize) -> Verdict {
    assert_eq!(
        input.universe(),
        g.n(),
        "input set universe must match the graph"
    );
    let edges = g.edges();
    let k = l.min(edges.len());
    let n = g.n();
    let mut checked = 0;
    let mut combos = Combinations::new(edges.len(), k);
    while let Some(c) = combos.next() {
        checked += 1;
        let disabled: Vec<Edge> = c.iter().map(|&i| edges[i]).collect();
        let mut black = input.clone();
        fixpoint_with(g, &mut black, |u, v| {
            disabled.binary_search(&Edge::new(u, v)).is_err()
        });
        if black.len() != n {
            return Verdict::fails(
                Witness {
                    scenario: Scenario::NonForcingEdges(disabled),
                    derived: black,
                },
                checked,
            );
        }
    }
    Verdict::holds(checked)
}

/// Whether `input` is a zero forcing set of every subgraph obtained by
/// deleting at most `l` edges. Removal is not monotone — deleting an edge
/// can enable a force — so every size from 0 through `min(l, |E|)` is
/// checked.
pub fn is_l_fsr(g: &Graph, input: &NodeSet, l: usize) -> Verdict {
    assert_eq!(
        input.universe(),
        g.n(),
        "input set universe must match the graph"
    );
    let edges = g.edges();
    let n = g.n();
    let mut checked = 0;
    for size in 0..=l.min(edges.len()) {
        let mut combos = Combinations::new(edges.len(), size);
        while let Some(c) = combos.next() {
            checked += 1;
            let removed: Vec<Edge> = c.iter().map(|&i| edges[i]).collect();
            let g2 = g.remove_edges(&removed).expect("removing known edges");
            let derived = derived_set(&g2, input);
            if derived.len() != n {
                return Verdict::fails(
                    Witness {
                        scenario: Scenario::RemovedEdges(removed),
                        derived,
                    },
                    checked,
                );
            }
        }
    }
    Verdict::holds(checked)
}

/// All three resilience verdicts for one instance. The three notions are
/// equivalent, so any disagreement falsifies the implementation — the
/// report keeps every witness for debugging.
#[derive(Clone, Debug, Serialize)]
pub struct EquivalenceReport {
    pub l: usize,
    pub lfs: Verdict,
    pub efs: Verdict,
    pub fsr: Verdict,
}

impl EquivalenceReport {
    pub fn agree(&self) -> bool {
        self.lfs.holds == self.efs.holds && self.efs.holds == self.fsr.holds
    }
}

/// Runs the three brute-force verifiers on one `(graph, input, l)` instance.
/// Intended for brute-force scale (roughly `n <= 12`, `l <= 2`).
pub fn equivalence_audit(g: &Graph, input: &NodeSet, l: usize) -> EquivalenceReport {
    EquivalenceReport {
        l,
        lfs: is_l_lfs(g, input, l, LfsMethod::Brute),
        efs: is_l_efs(g, input, l),
        fsr: is_l_fsr(g, input, l),
    }
}

/// A resilient forcing number together with a witnessing minimum set.
#[derive(Clone, Debug, Serialize)]
pub struct ForcingNumber {
    pub value: usize,
    /// Lexicographically first input set of minimum size that passes.
    pub witness: NodeSet,
    pub subsets_checked: u64,
}

/// The `l`-resilient forcing number: the minimum size of an input set that
/// tolerates any `l` leaks. Enumerates candidate sets in increasing
/// cardinality (lexicographic within each size) with the recursive
/// verifier. On budget exhaustion the error carries the cardinality lower
/// bound established so far.
pub fn leaky_forcing_number(
    g: &Graph,
    l: usize,
    budget: &Budget,
) -> Result<ForcingNumber, BudgetExceeded> {
    let n = g.n();
    let mut meter = budget.start();
    for size in 0..=n {
        let mut combos = Combinations::new(n, size);
        while let Some(c) = combos.next() {
            meter
                .tick()
                .map_err(|stop| BudgetExceeded::from_stop(stop, Some(size)))?;
            let input = NodeSet::from_ids(n, c.iter().copied());
            if is_l_lfs(g, &input, l, LfsMethod::Recursive).holds {
                return Ok(ForcingNumber {
                    value: size,
                    witness: input,
                    subsets_checked: meter.checks(),
                });
            }
        }
    }
    unreachable!("the full node set tolerates any leaks");
}

/// Convenience: the ordinary zero forcing number `z_0`.
pub fn zero_forcing_number(g: &Graph, budget: &Budget) -> Result<ForcingNumber, BudgetExceeded> {
    leaky_forcing_number(g, 0, budget)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::forcing::is_zfs;

    fn ids(n: usize, ids: impl IntoIterator<Item = usize>) -> NodeSet {
        NodeSet::from_ids(n, ids)
    }

    #[test]
    fn single_leak_on_short_path() {
        let p3 = Graph::path(3);
        for method in [LfsMethod::Brute, LfsMethod::Recursive] {
            let good = is_l_lfs(&p3, &ids(3, [0, 2]), 1, method);
            assert!(good.holds, "{:?}", method);
            assert!(good.witness.is_none());

            let bad = is_l_lfs(&p3, &ids(3, [0]), 1, method);
            assert!(!bad.holds);
            let witness = bad.witness.unwrap();
            assert_eq!(witness.scenario, Scenario::Leaks(ids(3, [0])));
            assert_eq!(witness.derived, ids(3, [0]));
        }
    }

    #[test]
    fn nearly_full_clique_leaders_survive_one_leak() {
        for n in 3..=6 {
            let g = Graph::complete(n);
            let input = ids(n, 0..n - 1);
            assert!(is_l_lfs(&g, &input, 1, LfsMethod::Brute).holds);
            assert!(is_l_lfs(&g, &input, 1, LfsMethod::Recursive).holds);
        }
    }

    #[test]
    fn l_clamps_to_node_count() {
        let g = Graph::path(3);
        let everything = NodeSet::full(3);
        for method in [LfsMethod::Brute, LfsMethod::Recursive] {
            assert!(is_l_lfs(&g, &everything, 5, method).holds);
            assert!(!is_l_lfs(&g, &ids(3, [0, 2]), 5, method).holds);
        }
    }

    #[test]
    fn witness_replay_reproduces_failure() {
        let g = Graph::path(4);
        let input = ids(4, [0]);
        for verdict in [
            is_l_lfs(&g, &input, 1, LfsMethod::Brute),
            is_l_lfs(&g, &input, 1, LfsMethod::Recursive),
            is_l_efs(&g, &input, 1),
            is_l_fsr(&g, &input, 1),
        ] {
            let witness = verdict.witness.expect("single leader on P4 is fragile");
            let replayed = witness.replay(&g, &input);
            assert_eq!(replayed, witness.derived);
            assert!(replayed.len() < 4);
        }
    }

    #[test]
    fn efs_on_cycle() {
        let c4 = Graph::cycle(4);
        assert!(is_l_efs(&c4, &ids(4, [0, 1]), 1).holds);
        // Disabling both edges out of node 0 strands the far side.
        let bad = is_l_efs(&c4, &ids(4, [0]), 2);
        assert!(!bad.holds);
    }

    #[test]
    fn fsr_checks_the_empty_removal() {
        let p4 = Graph::path(4);
        assert!(is_l_fsr(&p4, &ids(4, [0, 3]), 1).holds);
        // Not even a ZFS of the intact graph: the witness is the empty set.
        let c4 = Graph::cycle(4);
        let bad = is_l_fsr(&c4, &ids(4, [0]), 1);
        assert_eq!(
            bad.witness.unwrap().scenario,
            Scenario::RemovedEdges(vec![])
        );
    }

    #[test]
    fn full_input_tolerates_everything() {
        let g = Graph::cycle(5);
        let all = NodeSet::full(5);
        assert!(is_l_lfs(&g, &all, 3, LfsMethod::Brute).holds);
        assert!(is_l_efs(&g, &all, 3).holds);
        assert!(is_l_fsr(&g, &all, 3).holds);
    }

    #[test]
    fn audit_agrees_both_ways() {
        let c4 = Graph::cycle(4);
        let good = equivalence_audit(&c4, &ids(4, [0, 1]), 1);
        assert!(good.agree() && good.lfs.holds);

        let p3 = Graph::path(3);
        let bad = equivalence_audit(&p3, &ids(3, [0]), 1);
        assert!(bad.agree() && !bad.lfs.holds);
    }

    #[test]
    fn forcing_numbers_on_small_families() {
        let unlimited = Budget::UNLIMITED;
        let z0 = |g: &Graph| zero_forcing_number(g, &unlimited).unwrap().value;
        let z1 = |g: &Graph| leaky_forcing_number(g, 1, &unlimited).unwrap().value;
        assert_eq!(z0(&Graph::path(7)), 1);
        assert_eq!(z1(&Graph::path(4)), 2);
        assert_eq!(z1(&Graph::complete(4)), 3);
        assert_eq!(z0(&Graph::complete(4)), 3);
        let result = leaky_forcing_number(&Graph::path(4), 1, &unlimited).unwrap();
        assert_eq!(result.witness, ids(4, [0, 3]));
        assert!(is_zfs(&Graph::path(4), &result.witness));
    }

    #[test]
    fn forcing_number_budget_reports_lower_bound() {
        let g = Graph::complete(6);
        let err = leaky_forcing_number(&g, 1, &Budget::with_max_checks(8)).unwrap_err();
        // 1 + 6 = 7 subsets of size <= 1 are all checked before stopping
        // inside size 2, so the bound reached size 2.
        assert_eq!(err.lower_bound, Some(2));
        assert_eq!(err.checks, 9);
    }
}
