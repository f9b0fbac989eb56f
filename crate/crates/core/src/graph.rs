//! Simple undirected graphs on contiguous node ids `0..n`, plus text I/O and
//! seeded random generators (Erdős–Rényi and Barabási–Albert).
//!
//! Graphs are immutable after construction; edit operations return new
//! values. Adjacency is stored as one [`NodeSet`] per node so the forcing
//! engine can run on word-level bit operations.

use std::collections::BTreeSet;
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::ser::{Serialize, SerializeTuple, Serializer};
use thiserror::Error;

use crate::bitset::NodeSet;

/// An undirected edge stored with canonical endpoint order `u < v`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Edge {
    u: usize,
    v: usize,
}

/// A set of canonical edges, ordered for deterministic iteration.
pub type EdgeSet = BTreeSet<Edge>;

impl Edge {
    /// Canonicalizes the endpoint order. Panics on a self-loop; graph
    /// construction rejects self-loops before edges are ever built.
    pub fn new(a: usize, b: usize) -> Edge {
        assert_ne!(a, b, "self-loop ({}, {}) is not a valid edge", a, b);
        Edge {
            u: a.min(b),
            v: a.max(b),
        }
    }

    pub fn u(&self) -> usize {
        self.u
    }

    pub fn v(&self) -> usize {
        self.v
    }

    pub fn endpoints(&self) -> (usize, usize) {
        (self.u, self.v)
    }
}

impl fmt::Debug for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.u, self.v)
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.u, self.v)
    }
}

impl Serialize for Edge {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut tup = serializer.serialize_tuple(2)?;
        tup.serialize_element(&self.u)?;
        tup.serialize_element(&self.v)?;
        tup.end()
    }
}

#[derive(Debug, Error, PartialEq)]
pub enum GraphError {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("self-loop at node {0}")]
    SelfLoop(usize),
    #[error("duplicate edge ({0}, {1})")]
    DuplicateEdge(usize, usize),
    #[error("node id {id} out of range for {n} nodes")]
    NodeOutOfRange { id: usize, n: usize },
    #[error("({0}, {1}) is not an edge of the graph")]
    NotAnEdge(usize, usize),
    #[error("edge probability must be in [0, 1], got {0}")]
    InvalidProbability(f64),
    #[error("attachment count m={m} must satisfy 1 <= m < n={n}")]
    InvalidAttachment { m: usize, n: usize },
}

/// A simple undirected graph.
#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    adj: Vec<NodeSet>,
    edges: Vec<Edge>,
}

impl Graph {
    /// Builds a graph on `n` nodes, validating that every pair is a
    /// non-loop edge inside `0..n` and appears at most once.
    pub fn new(
        n: usize,
        pairs: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Graph, GraphError> {
        let mut adj = vec![NodeSet::new(n); n];
        let mut edges = Vec::new();
        for (a, b) in pairs {
            if a == b {
                return Err(GraphError::SelfLoop(a));
            }
            for id in [a, b] {
                if id >= n {
                    return Err(GraphError::NodeOutOfRange { id, n });
                }
            }
            if adj[a].contains(b) {
                let e = Edge::new(a, b);
                return Err(GraphError::DuplicateEdge(e.u(), e.v()));
            }
            adj[a].insert(b);
            adj[b].insert(a);
            edges.push(Edge::new(a, b));
        }
        edges.sort();
        Ok(Graph { n, adj, edges })
    }

    /// The edgeless graph on `n` nodes.
    pub fn empty(n: usize) -> Graph {
        Graph::new(n, []).expect("empty graph is always valid")
    }

    /// The path `0 - 1 - .. - (n-1)`.
    pub fn path(n: usize) -> Graph {
        Graph::new(n, (1..n).map(|v| (v - 1, v))).expect("path is always valid")
    }

    /// The cycle `0 - 1 - .. - (n-1) - 0`. Panics if `n < 3`.
    pub fn cycle(n: usize) -> Graph {
        assert!(n >= 3, "a cycle needs at least 3 nodes");
        Graph::new(n, (1..n).map(|v| (v - 1, v)).chain([(0, n - 1)]))
            .expect("cycle is always valid")
    }

    /// The complete graph on `n` nodes.
    pub fn complete(n: usize) -> Graph {
        Graph::new(n, (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))))
            .expect("complete graph is always valid")
    }

    /// The star with center 0 and the given number of leaves.
    pub fn star(leaves: usize) -> Graph {
        Graph::new(leaves + 1, (1..=leaves).map(|v| (0, v))).expect("star is always valid")
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Edges in canonical ascending order.
    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    /// Neighborhood `N(v)` as a node set. Panics if `v >= n`.
    pub fn neighbors(&self, v: usize) -> &NodeSet {
        &self.adj[v]
    }

    /// Closed neighborhood `N[v] = N(v) ∪ {v}`. Panics if `v >= n`.
    pub fn closed_neighbors(&self, v: usize) -> NodeSet {
        let mut set = self.adj[v].clone();
        set.insert(v);
        set
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        a != b && a < self.n && b < self.n && self.adj[a].contains(b)
    }

    /// Shortest-path edge count between `u` and `v`, or `None` when they are
    /// in different components. Panics if either id is out of range.
    pub fn distance(&self, u: usize, v: usize) -> Option<usize> {
        assert!(u < self.n && v < self.n, "node id out of range");
        if u == v {
            return Some(0);
        }
        let mut dist = vec![usize::MAX; self.n];
        dist[u] = 0;
        let mut frontier = std::collections::VecDeque::from([u]);
        while let Some(x) = frontier.pop_front() {
            for y in self.adj[x].iter() {
                if dist[y] == usize::MAX {
                    dist[y] = dist[x] + 1;
                    if y == v {
                        return Some(dist[y]);
                    }
                    frontier.push_back(y);
                }
            }
        }
        None
    }

    /// Whether every node is reachable from every other (vacuously true for
    /// `n <= 1`).
    pub fn is_connected(&self) -> bool {
        if self.n <= 1 {
            return true;
        }
        let mut seen = NodeSet::new(self.n);
        seen.insert(0);
        let mut frontier = vec![0];
        while let Some(x) = frontier.pop() {
            for y in self.adj[x].iter() {
                if seen.insert(y) {
                    frontier.push(y);
                }
            }
        }
        seen.len() == self.n
    }

    /// Returns the subgraph with the given edges deleted; `self` is
    /// unchanged. Fails if any member of `removed` is not an edge.
    pub fn remove_edges(&self, removed: &[Edge]) -> Result<Graph, GraphError> {
        for e in removed {
            if !self.has_edge(e.u(), e.v()) {
                return Err(GraphError::NotAnEdge(e.u(), e.v()));
            }
        }
        let removed: BTreeSet<Edge> = removed.iter().copied().collect();
        Graph::new(
            self.n,
            self.edges
                .iter()
                .filter(|e| !removed.contains(e))
                .map(|e| e.endpoints()),
        )
    }

    /// Parses the edge-list text format: an optional leading `n=<int>` line,
    /// then one `<u> <v>` pair per line; blank lines and `#` comments are
    /// ignored. Without a header, `n` is one past the largest id mentioned.
    pub fn from_edge_list(text: &str) -> Result<Graph, GraphError> {
        let mut n_override: Option<usize> = None;
        let mut pairs: Vec<(usize, usize)> = Vec::new();
        let mut saw_edge_line = false;
        for (idx, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let lineno = idx + 1;
            if let Some(rest) = line.strip_prefix("n=") {
                if saw_edge_line || n_override.is_some() {
                    return Err(GraphError::Parse {
                        line: lineno,
                        msg: "n= header must be the first non-comment line".into(),
                    });
                }
                n_override = Some(rest.trim().parse().map_err(|_| GraphError::Parse {
                    line: lineno,
                    msg: format!("invalid node count {:?}", rest.trim()),
                })?);
                continue;
            }
            saw_edge_line = true;
            let mut tokens = line.split_whitespace();
            let (a, b) = match (tokens.next(), tokens.next(), tokens.next()) {
                (Some(a), Some(b), None) => (a, b),
                _ => {
                    return Err(GraphError::Parse {
                        line: lineno,
                        msg: format!("expected `<u> <v>`, got {:?}", line),
                    })
                }
            };
            let parse = |tok: &str| {
                tok.parse::<usize>().map_err(|_| GraphError::Parse {
                    line: lineno,
                    msg: format!("invalid node id {:?}", tok),
                })
            };
            pairs.push((parse(a)?, parse(b)?));
        }
        let n = n_override
            .unwrap_or_else(|| pairs.iter().map(|&(a, b)| a.max(b) + 1).max().unwrap_or(0));
        Graph::new(n, pairs)
    }

    /// Writes the edge-list text format with an explicit `n=` header and
    /// edges in canonical sorted order, so isolated nodes round-trip.
    pub fn to_edge_list(&self) -> String {
        let mut out = format!("n={}\n", self.n);
        for e in &self.edges {
            out.push_str(&format!("{} {}\n", e.u(), e.v()));
        }
        out
    }

    /// Erdős–Rényi `G(n, p)`: every unordered pair becomes an edge
    /// independently with probability `p`. Deterministic per seed.
    pub fn gen_erdos_renyi(n: usize, p: f64, seed: u64) -> Result<Graph, GraphError> {
        if !(0.0..=1.0).contains(&p) {
            return Err(GraphError::InvalidProbability(p));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut pairs = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                if rng.random::<f64>() < p {
                    pairs.push((u, v));
                }
            }
        }
        Graph::new(n, pairs)
    }

    /// Barabási–Albert preferential attachment: starts from the complete
    /// graph on `m + 1` nodes; each later node attaches to `m` distinct
    /// existing nodes drawn degree-proportionally without replacement, using
    /// the degrees as of the new node's arrival. Deterministic per seed.
    /// Total edge count is `C(m+1, 2) + m * (n - m - 1)`.
    pub fn gen_barabasi_albert(n: usize, m: usize, seed: u64) -> Result<Graph, GraphError> {
        if m == 0 || m >= n {
            return Err(GraphError::InvalidAttachment { m, n });
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut pairs: Vec<(usize, usize)> = (0..=m)
            .flat_map(|u| (u + 1..=m).map(move |v| (u, v)))
            .collect();
        let mut degree = vec![0usize; n];
        degree[..=m].fill(m);
        for newcomer in m + 1..n {
            let mut pool: Vec<usize> = (0..newcomer).collect();
            let mut chosen = Vec::with_capacity(m);
            for _ in 0..m {
                let total: u64 = pool.iter().map(|&x| degree[x] as u64).sum();
                let mut ticket = rng.random_range(0..total);
                let mut pick = pool.len() - 1;
                for (idx, &x) in pool.iter().enumerate() {
                    let weight = degree[x] as u64;
                    if ticket < weight {
                        pick = idx;
                        break;
                    }
                    ticket -= weight;
                }
                chosen.push(pool.remove(pick));
            }
            for x in chosen {
                pairs.push((x, newcomer));
                degree[x] += 1;
                degree[newcomer] += 1;
            }
        }
        Graph::new(n, pairs)
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.n, self.edges)
    }
}
