//! Small hand-built graphs that exhibit the subtle behaviors of constrained
//! forcing. The test suite leans on them heavily; they are exported so
//! downstream code and documentation examples can use the same instances.

use crate::bitset::NodeSet;
use crate::forcing::{Force, ForcingRecord};
use crate::graph::Graph;

/// A 7-node graph where disabling one edge strands most of the graph.
///
/// `{0, 1}` is a zero forcing set, but with the single edge `(1, 2)`
/// disabled (not removed — node 2 still counts as node 1's white neighbor)
/// the run stalls at `{0, 1, 3}`. Adding node 6 repairs it: `{0, 1, 6}`
/// completes forcing no matter which single edge is disabled, and
/// equivalently tolerates any single leak or single edge removal.
pub fn blocking_gadget() -> Graph {
    Graph::new(
        7,
        [
            (0, 1),
            (0, 3),
            (1, 2),
            (2, 4),
            (3, 4),
            (3, 5),
            (4, 5),
            (5, 6),
        ],
    )
    .expect("fixture edges are valid")
}

/// A 7-node graph proving that edge *removal* can help forcing while
/// disabling the same edge does not.
///
/// `{0, 1}` is not a zero forcing set here (the run stalls at
/// `{0, 1, 2, 3}`), yet deleting the edge `(3, 6)` turns it into one.
/// Disabling `(3, 6)` instead leaves the same stall: node 3 still sees two
/// white neighbors. This asymmetry is why the subgraph-resilience check
/// must cover removal sets of every size down to zero.
pub fn removal_gadget() -> Graph {
    Graph::new(7, [(0, 2), (1, 2), (2, 3), (3, 4), (3, 6), (4, 5), (5, 6)])
        .expect("fixture edges are valid")
}

/// A 9-node graph whose leader set `{0, 1, 3, 5}` admits many distinct
/// forcing processes — every follower can be forced in at least two ways,
/// so the set tolerates any single leak (and, equivalently, any single
/// disabled or removed edge). Its plain forcing number is 3; the resilient
/// one is 4, witnessed by these leaders.
pub fn redundancy_gadget() -> Graph {
    Graph::new(
        9,
        [
            (0, 7),
            (1, 2),
            (1, 8),
            (2, 4),
            (2, 7),
            (3, 6),
            (4, 8),
            (5, 8),
            (6, 8),
        ],
    )
    .expect("fixture edges are valid")
}

/// The resilient leader set exhibited by [`redundancy_gadget`].
pub fn redundancy_gadget_leaders() -> NodeSet {
    NodeSet::from_ids(9, [0, 1, 3, 5])
}

/// Six hand-picked complete forcing processes of [`redundancy_gadget`]
/// from [`redundancy_gadget_leaders`], pairwise distinct as force sets.
/// They demonstrate forcing-order freedom: the same leaders complete via
/// different chronologies and even different force sets (node 2 may force
/// node 4 or the other way around).
pub fn redundancy_gadget_processes() -> Vec<ForcingRecord> {
    let input = redundancy_gadget_leaders();
    let force_lists: [&[(usize, usize)]; 6] = [
        &[(0, 7), (3, 6), (5, 8), (8, 4), (1, 2)],
        &[(0, 7), (7, 2), (3, 6), (5, 8), (8, 4)],
        &[(0, 7), (5, 8), (1, 2), (2, 4), (3, 6)],
        &[(5, 8), (0, 7), (1, 2), (2, 4), (8, 6)],
        &[(5, 8), (3, 6), (8, 4), (1, 2), (2, 7)],
        &[(0, 7), (7, 2), (2, 4), (1, 8), (3, 6)],
    ];
    force_lists
        .iter()
        .map(|forces| ForcingRecord {
            input: input.clone(),
            forces: forces
                .iter()
                .map(|&(forcer, forcee)| Force { forcer, forcee })
                .collect(),
            final_black: NodeSet::full(9),
        })
        .collect()
}
