//! The zero forcing engine.
//!
//! Color rule: a black node with exactly one white neighbor forces that
//! neighbor black. Runs can be constrained by *leaks* (nodes that may be
//! forced but never force) and *non-forcing edges* (the force action across
//! the edge is disabled, but the white endpoint still counts toward its
//! neighbor's white-neighbor tally — a disabled edge is not a removed edge,
//! and the two behave differently).
//!
//! Besides the plain fixpoint this module computes the total forcing set
//! `F_L(V')` — every force that appears in *some* complete forcing process —
//! via a frozen-target construction: to decide which nodes can force `v`,
//! run forcing to fixpoint while `v` is barred from being colored, then read
//! off the neighbors of `v` that end black with no other white neighbor.
//! An explicit process enumerator is kept alongside as the brute-force
//! oracle for that construction.

use std::collections::{BTreeSet, HashSet};
use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::bitset::{DiffOne, NodeSet};
use crate::graph::{Edge, EdgeSet, Graph};

/// One application of the color-change rule: `forcer -> forcee`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Force {
    pub forcer: usize,
    pub forcee: usize,
}

impl fmt::Debug for Force {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}->{}", self.forcer, self.forcee)
    }
}

impl fmt::Display for Force {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}->{}", self.forcer, self.forcee)
    }
}

/// A chronological record of one forcing run.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ForcingRecord {
    pub input: NodeSet,
    pub forces: Vec<Force>,
    pub final_black: NodeSet,
}

/// Restrictions on who may force: leaky nodes and disabled edges.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Constraints {
    /// Nodes that never force (they may still be forced, and may be inputs).
    pub leaks: NodeSet,
    /// Edges across which no force may happen; adjacency is unaffected.
    pub non_forcing: EdgeSet,
}

impl Constraints {
    /// No leaks, no disabled edges, for a graph on `n` nodes.
    pub fn none(n: usize) -> Constraints {
        Constraints {
            leaks: NodeSet::new(n),
            non_forcing: EdgeSet::new(),
        }
    }

    /// Leaks only.
    pub fn leaks(leaks: NodeSet) -> Constraints {
        Constraints {
            leaks,
            non_forcing: EdgeSet::new(),
        }
    }

    /// Disabled edges only, for a graph on `n` nodes.
    pub fn non_forcing(n: usize, edges: impl IntoIterator<Item = Edge>) -> Constraints {
        Constraints {
            leaks: NodeSet::new(n),
            non_forcing: edges.into_iter().collect(),
        }
    }

    fn allows(&self, forcer: usize, forcee: usize) -> bool {
        !self.leaks.contains(forcer)
            && (self.non_forcing.is_empty()
                || !self.non_forcing.contains(&Edge::new(forcer, forcee)))
    }
}

#[derive(Debug, Error, PartialEq)]
pub enum ForcingError {
    #[error("force {force} at position {position} is invalid: {reason}")]
    InvalidForce {
        position: usize,
        force: Force,
        reason: &'static str,
    },
    #[error("recorded final_black does not match the replayed run")]
    FinalBlackMismatch,
    #[error("record is not maximal: force {0} is still valid at the end")]
    NotMaximal(Force),
    #[error("mid state is not reachable by a prefix of the base process")]
    UnreachableMid,
    #[error("node {0} appears as forcer more than once")]
    RepeatedForcer(usize),
    #[error("node {0} is forced more than once")]
    RepeatedForcee(usize),
}

impl ForcingRecord {
    /// The forcing trace as text, one `u->v` line per force.
    pub fn trace(&self) -> String {
        let mut out = String::new();
        for f in &self.forces {
            out.push_str(&format!("{}->{}\n", f.forcer, f.forcee));
        }
        out
    }

    /// Replays the record from `input`, checking every force is valid at its
    /// position under `c` and that `final_black` matches.
    pub fn validate(&self, g: &Graph, c: &Constraints) -> Result<(), ForcingError> {
        let mut black = self.input.clone();
        for (position, &force) in self.forces.iter().enumerate() {
            let fail = |reason| ForcingError::InvalidForce {
                position,
                force,
                reason,
            };
            if force.forcer >= g.n() || force.forcee >= g.n() {
                return Err(fail("node id out of range"));
            }
            if !g.has_edge(force.forcer, force.forcee) {
                return Err(fail("forcer and forcee are not adjacent"));
            }
            if !black.contains(force.forcer) {
                return Err(fail("forcer is not black"));
            }
            if black.contains(force.forcee) {
                return Err(fail("forcee is already black"));
            }
            if g.neighbors(force.forcer).diff_one(&black) != DiffOne::One(force.forcee) {
                return Err(fail("forcee is not the forcer's only white neighbor"));
            }
            if !c.allows(force.forcer, force.forcee) {
                return Err(fail("force is disabled by a leak or non-forcing edge"));
            }
            black.insert(force.forcee);
        }
        if black != self.final_black {
            return Err(ForcingError::FinalBlackMismatch);
        }
        Ok(())
    }

    /// [`validate`](Self::validate), plus the requirement that no valid
    /// force remains at the end — the record is a complete forcing process.
    pub fn validate_complete(&self, g: &Graph, c: &Constraints) -> Result<(), ForcingError> {
        self.validate(g, c)?;
        if let Some(force) = first_valid_force(g, &self.final_black, c) {
            return Err(ForcingError::NotMaximal(force));
        }
        Ok(())
    }
}

/// Smallest valid force at the given state under `c`, if any. Forcers are
/// scanned in ascending id order; the forcee of a forcer is determined, so
/// this is the lexicographically smallest `(forcer, forcee)`.
fn first_valid_force(g: &Graph, black: &NodeSet, c: &Constraints) -> Option<Force> {
    for forcer in black.iter() {
        if let DiffOne::One(forcee) = g.neighbors(forcer).diff_one(black) {
            if c.allows(forcer, forcee) {
                return Some(Force { forcer, forcee });
            }
        }
    }
    None
}

/// Runs constrained forcing to its fixpoint, recording forces in a
/// deterministic order: at each step the lexicographically smallest valid
/// `(forcer, forcee)` fires. The derived set is independent of this choice;
/// the order only pins down the record.
pub fn apply_forcing(g: &Graph, input: &NodeSet, c: &Constraints) -> ForcingRecord {
    assert_eq!(
        input.universe(),
        g.n(),
        "input set universe must match the graph"
    );
    let mut black = input.clone();
    let mut forces = Vec::new();
    while let Some(force) = first_valid_force(g, &black, c) {
        black.insert(force.forcee);
        forces.push(force);
    }
    ForcingRecord {
        input: input.clone(),
        forces,
        final_black: black,
    }
}

/// Grows `black` to the forcing fixpoint, admitting a force `u -> v` only
/// when `allowed(u, v)`. Single-sweep firing is sound because a valid force
/// stays valid until its forcee is colored, so the fixpoint is
/// order-independent.
pub(crate) fn fixpoint_with(
    g: &Graph,
    black: &mut NodeSet,
    mut allowed: impl FnMut(usize, usize) -> bool,
) {
    loop {
        let mut changed = false;
        for u in 0..g.n() {
            if !black.contains(u) {
                continue;
            }
            if let DiffOne::One(v) = g.neighbors(u).diff_one(black) {
                if allowed(u, v) {
                    black.insert(v);
                    changed = true;
                }
            }
        }
        if !changed {
            break;
        }
    }
}

/// Grows `black` to the unconstrained forcing fixpoint.
pub(crate) fn fixpoint(g: &Graph, black: &mut NodeSet) {
    fixpoint_with(g, black, |_, _| true);
}

/// The derived set `D(input)`: the unique fixpoint of unconstrained forcing.
pub fn derived_set(g: &Graph, input: &NodeSet) -> NodeSet {
    assert_eq!(
        input.universe(),
        g.n(),
        "input set universe must match the graph"
    );
    let mut black = input.clone();
    fixpoint(g, &mut black);
    black
}

/// Whether `input` is a zero forcing set: its derived set is all of `V`.
pub fn is_zfs(g: &Graph, input: &NodeSet) -> bool {
    derived_set(g, input).len() == g.n()
}

/// Fixpoint of forcing in which node `frozen` may never be colored and
/// `leaks` never force.
fn frozen_fixpoint(g: &Graph, input: &NodeSet, leaks: &NodeSet, frozen: usize) -> NodeSet {
    let mut black = input.clone();
    fixpoint_with(g, &mut black, |u, v| v != frozen && !leaks.contains(u));
    black
}

/// Nodes that can force `v` in some process, given the `v`-frozen fixpoint
/// `b_v`: neighbors of `v` that are black in `b_v`, are not leaks, and have
/// no white neighbor besides `v`.
fn forcers_of<'a>(
    g: &'a Graph,
    b_v: &'a NodeSet,
    leaks: &'a NodeSet,
    v: usize,
) -> impl Iterator<Item = usize> + 'a {
    g.neighbors(v).iter().filter(move |&x| {
        b_v.contains(x) && !leaks.contains(x) && g.neighbors(x).diff_one(b_v) == DiffOne::One(v)
    })
}

/// The total forcing set `F_L(input)`: every force `x -> v` that occurs in
/// at least one complete forcing process from `input` with leak set `leaks`
/// (`F(input)` when `leaks` is empty).
///
/// For each target `v ∉ input` this runs the `v`-frozen fixpoint `B_v` and
/// keeps `x -> v` iff `x ∈ B_v`, `x ∉ leaks`, `x ~ v`, and `N(x)\{v} ⊆ B_v`.
/// Soundness: such a state is reachable with `v` still white, at which point
/// `x` forces `v`. Completeness: any process forcing `x -> v` colors `x` and
/// `N(x)\{v}` before `v`, and a run that never colors `v` reaches a subset
/// of `B_v`. The process enumerator cross-validates this in the test suite.
pub fn total_forcing_set(g: &Graph, input: &NodeSet, leaks: &NodeSet) -> BTreeSet<Force> {
    let mut out = BTreeSet::new();
    for v in 0..g.n() {
        if input.contains(v) {
            continue;
        }
        let b_v = frozen_fixpoint(g, input, leaks, v);
        for forcer in forcers_of(g, &b_v, leaks, v) {
            out.insert(Force { forcer, forcee: v });
        }
    }
    out
}

/// All possible forcers of `v` from `input` under `leaks`: the nodes `x`
/// with `x -> v` in the total forcing set, ascending. Input nodes are never
/// forced, so they have no forcers.
pub fn target_forcers(g: &Graph, input: &NodeSet, leaks: &NodeSet, v: usize) -> Vec<usize> {
    let b_v = frozen_fixpoint(g, input, leaks, v);
    forcers_of(g, &b_v, leaks, v).collect()
}

/// `Q(input)` under the given leaks: the non-input nodes with at least two
/// distinct possible forcers in the total forcing set. An input set
/// tolerates any single leak exactly when `Q = V \ input`; with leaks `L`
/// fixed, the same two-forcer test drives the recursive multi-leak check.
pub fn q_set(g: &Graph, input: &NodeSet, leaks: &NodeSet) -> NodeSet {
    let mut q = NodeSet::new(g.n());
    for v in 0..g.n() {
        if input.contains(v) {
            continue;
        }
        let b_v = frozen_fixpoint(g, input, leaks, v);
        if forcers_of(g, &b_v, leaks, v).take(2).count() == 2 {
            q.insert(v);
        }
    }
    q
}

/// Splits a record's forces into maximal forcing chains.
///
/// Each chain is the trajectory of one head node: heads are the nodes never
/// forced by anyone (inputs, plus nodes the run left white), and the chain
/// follows successive forces from the head. Nodes that neither force nor
/// are forced come out as singleton chains. Chains are returned in
/// ascending head order and partition `0..n`.
pub fn forcing_chains(record: &ForcingRecord) -> Result<Vec<Vec<usize>>, ForcingError> {
    let n = record.input.universe();
    let mut next: Vec<Option<usize>> = vec![None; n];
    let mut forced: Vec<bool> = vec![false; n];
    for f in &record.forces {
        if f.forcer >= n || f.forcee >= n {
            return Err(ForcingError::InvalidForce {
                position: 0,
                force: *f,
                reason: "node id out of range",
            });
        }
        if next[f.forcer].is_some() {
            return Err(ForcingError::RepeatedForcer(f.forcer));
        }
        if forced[f.forcee] {
            return Err(ForcingError::RepeatedForcee(f.forcee));
        }
        next[f.forcer] = Some(f.forcee);
        forced[f.forcee] = true;
    }
    let mut chains = Vec::new();
    for (head, _) in forced
        .iter()
        .enumerate()
        .filter(|(_, was_forced)| !**was_forced)
    {
        let mut chain = vec![head];
        let mut cur = head;
        while let Some(successor) = next[cur] {
            chain.push(successor);
            cur = successor;
        }
        chains.push(chain);
    }
    Ok(chains)
}

/// Splices two complete forcing processes of the same `(graph, input)` pair
/// at an intermediate state `mid` reachable by a prefix of `base`.
///
/// The spliced sequence is `base`'s forces that land inside `mid` (exactly
/// its prefix up to `mid`), followed by `other`'s forces that land outside
/// `mid`, in `other`'s order. The result is revalidated chronologically and
/// for completeness; a revalidation failure signals an implementation bug,
/// not bad input.
pub fn splice_processes(
    g: &Graph,
    base: &ForcingRecord,
    other: &ForcingRecord,
    mid: &NodeSet,
) -> Result<ForcingRecord, ForcingError> {
    // Locate mid as a prefix state of base.
    let mut black = base.input.clone();
    let mut prefix_len = None;
    if black == *mid {
        prefix_len = Some(0);
    } else {
        for (i, f) in base.forces.iter().enumerate() {
            black.insert(f.forcee);
            if black == *mid {
                prefix_len = Some(i + 1);
                break;
            }
        }
    }
    let prefix_len = prefix_len.ok_or(ForcingError::UnreachableMid)?;

    let mut forces: Vec<Force> = base.forces[..prefix_len].to_vec();
    forces.extend(
        other
            .forces
            .iter()
            .filter(|f| !mid.contains(f.forcee))
            .copied(),
    );
    let mut final_black = base.input.clone();
    for f in &forces {
        final_black.insert(f.forcee);
    }
    let record = ForcingRecord {
        input: base.input.clone(),
        forces,
        final_black,
    };
    record.validate_complete(g, &Constraints::none(g.n()))?;
    Ok(record)
}

/// Result of [`enumerate_forcing_processes`].
#[derive(Clone, Debug)]
pub struct Enumeration {
    /// Complete processes, one per distinct force set, in DFS order.
    pub records: Vec<ForcingRecord>,
    /// True when the cap stopped the enumeration before it finished.
    pub truncated: bool,
}

/// Enumerates complete forcing processes from `input` by branching on every
/// valid force at every step, deduplicated by force *set* (two orderings of
/// the same forces are one process). Intended as a brute-force oracle for
/// small graphs; `cap` bounds the number of records returned, and hitting
/// it is reported via `truncated` rather than silently.
pub fn enumerate_forcing_processes(g: &Graph, input: &NodeSet, cap: usize) -> Enumeration {
    struct Dfs<'a> {
        g: &'a Graph,
        input: &'a NodeSet,
        cap: usize,
        seen: HashSet<Vec<Force>>,
        records: Vec<ForcingRecord>,
        truncated: bool,
    }

    impl Dfs<'_> {
        fn run(&mut self, black: &mut NodeSet, forces: &mut Vec<Force>) {
            if self.truncated {
                return;
            }
            let valid: Vec<Force> = black
                .iter()
                .filter_map(|forcer| match self.g.neighbors(forcer).diff_one(black) {
                    DiffOne::One(forcee) => Some(Force { forcer, forcee }),
                    _ => None,
                })
                .collect();
            if valid.is_empty() {
                if self.records.len() == self.cap {
                    self.truncated = true;
                    return;
                }
                self.records.push(ForcingRecord {
                    input: self.input.clone(),
                    forces: forces.clone(),
                    final_black: black.clone(),
                });
                return;
            }
            for force in valid {
                forces.push(force);
                let mut key = forces.clone();
                key.sort_unstable();
                if self.seen.insert(key) {
                    black.insert(force.forcee);
                    self.run(black, forces);
                    black.remove(force.forcee);
                }
                forces.pop();
                if self.truncated {
                    return;
                }
            }
        }
    }

    assert_eq!(
        input.universe(),
        g.n(),
        "input set universe must match the graph"
    );
    let mut dfs = Dfs {
        g,
        input,
        cap,
        seen: HashSet::new(),
        records: Vec::new(),
        truncated: false,
    };
    dfs.run(&mut input.clone(), &mut Vec::new());
    Enumeration {
        records: dfs.records,
        truncated: dfs.truncated,
    }
}
