//! Numeric controllability checks for leader sets.
//!
//! A graph constrains a family of symmetric system matrices: entry `(i, j)`,
//! `i != j`, is nonzero exactly when `(i, j)` is an edge, and the diagonal
//! is free. A leader set is strongly structurally controllable when the
//! controllability matrix `[B, MB, .., M^(n-1)B]` has full rank for *every*
//! matrix in the family. Sampling can only gather evidence, never certify
//! the universal statement, and the report names its verdicts accordingly:
//! a forcing-complete leader set should pass every sampled matrix, while a
//! deficient sample is a definitive counterexample.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use std::fmt;
use thiserror::Error;

use crate::bitset::NodeSet;
use crate::graph::Graph;

/// Default relative tolerance for pivot acceptance in [`numeric_rank`].
pub const DEFAULT_RANK_TOL: f64 = 1e-8;

#[derive(Debug, Error, PartialEq)]
pub enum ControllabilityError {
    #[error("dimension mismatch: ({0} x {1}) * ({2} x {3})")]
    DimensionMismatch(usize, usize, usize, usize),
    #[error("non-finite entry at ({0}, {1})")]
    NonFinite(usize, usize),
    #[error("rank tolerance must be positive, got {0}")]
    InvalidTolerance(f64),
}

/// A dense row-major matrix of `f64`.
#[derive(Clone, PartialEq)]
pub struct DenseMatrix {
    rows: usize,
    cols: usize,
    data: Vec<f64>,
}

impl DenseMatrix {
    pub fn zeros(rows: usize, cols: usize) -> DenseMatrix {
        DenseMatrix {
            rows,
            cols,
            data: vec![0.0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> DenseMatrix {
        let mut m = DenseMatrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, 1.0);
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> f64 {
        assert!(r < self.rows && c < self.cols, "matrix index out of range");
        self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, value: f64) {
        assert!(r < self.rows && c < self.cols, "matrix index out of range");
        self.data[r * self.cols + c] = value;
    }

    /// Scales every entry in place.
    pub fn scale(&mut self, factor: f64) {
        for x in &mut self.data {
            *x *= factor;
        }
    }

    pub fn multiply(&self, other: &DenseMatrix) -> Result<DenseMatrix, ControllabilityError> {
        if self.cols != other.rows {
            return Err(ControllabilityError::DimensionMismatch(
                self.rows, self.cols, other.rows, other.cols,
            ));
        }
        let mut out = DenseMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.data[i * self.cols + k];
                if a == 0.0 {
                    continue;
                }
                for j in 0..other.cols {
                    out.data[i * other.cols + j] += a * other.data[k * other.cols + j];
                }
            }
        }
        Ok(out)
    }

    fn first_non_finite(&self) -> Option<(usize, usize)> {
        self.data
            .iter()
            .position(|x| !x.is_finite())
            .map(|i| (i / self.cols, i % self.cols))
    }
}

impl fmt::Debug for DenseMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "DenseMatrix({}x{})", self.rows, self.cols)
    }
}

impl fmt::Display for DenseMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.rows {
            for c in 0..self.cols {
                if c > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{:>12.6}", self.get(r, c))?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// The combinatorial Laplacian `D - A` — one concrete member of the
/// graph's matrix family.
pub fn laplacian(g: &Graph) -> DenseMatrix {
    let n = g.n();
    let mut m = DenseMatrix::zeros(n, n);
    for v in 0..n {
        m.set(v, v, g.degree(v) as f64);
        for u in g.neighbors(v).iter() {
            m.set(v, u, -1.0);
        }
    }
    m
}

/// Draws a random member of the graph's symmetric matrix family:
/// off-diagonal `(i, j)` is nonzero iff `(i, j)` is an edge, with magnitude
/// uniform in `[0.5, 2]` and random sign; the diagonal is uniform in
/// `[-1, 1]`. The matrix is then scaled by `1 / (1 + max absolute row sum)`
/// so its powers stay bounded — scaling changes no zero pattern and no
/// rank. Deterministic per seed: pairs are visited in lexicographic order,
/// then the diagonal in index order.
pub fn sample_system_matrix(g: &Graph, seed: u64) -> DenseMatrix {
    let n = g.n();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut m = DenseMatrix::zeros(n, n);
    for i in 0..n {
        for j in i + 1..n {
            if !g.has_edge(i, j) {
                continue;
            }
            let magnitude: f64 = rng.random_range(0.5..=2.0);
            let value = if rng.random::<bool>() {
                magnitude
            } else {
                -magnitude
            };
            m.set(i, j, value);
            m.set(j, i, value);
        }
    }
    for i in 0..n {
        m.set(i, i, rng.random_range(-1.0..=1.0));
    }
    let max_row_sum = (0..n)
        .map(|i| (0..n).map(|j| m.get(i, j).abs()).sum::<f64>())
        .fold(0.0, f64::max);
    m.scale(1.0 / (1.0 + max_row_sum));
    m
}

/// The `n x |leaders|` input matrix: column `j` is the indicator of the
/// `j`-th leader in ascending order.
pub fn input_matrix(leaders: &NodeSet, n: usize) -> DenseMatrix {
    let mut b = DenseMatrix::zeros(n, leaders.len());
    for (j, v) in leaders.iter().enumerate() {
        b.set(v, j, 1.0);
    }
    b
}

/// The controllability matrix `[B, MB, M^2 B, .., M^(n-1) B]`, built by
/// iterated multiplication; `n x (n * cols(B))`.
pub fn controllability_matrix(
    m: &DenseMatrix,
    b: &DenseMatrix,
) -> Result<DenseMatrix, ControllabilityError> {
    if m.rows != m.cols || m.rows != b.rows {
        return Err(ControllabilityError::DimensionMismatch(
            m.rows, m.cols, b.rows, b.cols,
        ));
    }
    let n = m.rows;
    let k = b.cols;
    let mut gamma = DenseMatrix::zeros(n, n * k);
    let mut block = b.clone();
    for power in 0..n {
        if power > 0 {
            block = m.multiply(&block)?;
        }
        for r in 0..n {
            for c in 0..k {
                gamma.set(r, power * k + c, block.get(r, c));
            }
        }
    }
    Ok(gamma)
}

/// Numeric rank by Gaussian elimination with partial pivoting. A pivot
/// counts when its magnitude exceeds `rel_tol` times the largest absolute
/// entry of the *initial* matrix.
pub fn numeric_rank(a: &DenseMatrix, rel_tol: f64) -> Result<usize, ControllabilityError> {
    if rel_tol.is_nan() || rel_tol <= 0.0 {
        return Err(ControllabilityError::InvalidTolerance(rel_tol));
    }
    if let Some((r, c)) = a.first_non_finite() {
        return Err(ControllabilityError::NonFinite(r, c));
    }
    let max_abs = a.data.iter().fold(0.0f64, |acc, x| acc.max(x.abs()));
    if max_abs == 0.0 {
        return Ok(0);
    }
    let threshold = rel_tol * max_abs;
    let mut m = a.clone();
    let (rows, cols) = (m.rows, m.cols);
    let mut rank = 0;
    for col in 0..cols {
        if rank == rows {
            break;
        }
        let pivot_row = (rank..rows)
            .max_by(|&r1, &r2| m.get(r1, col).abs().total_cmp(&m.get(r2, col).abs()))
            .expect("row range is non-empty");
        if m.get(pivot_row, col).abs() <= threshold {
            continue;
        }
        if pivot_row != rank {
            for c in 0..cols {
                let tmp = m.get(rank, c);
                m.set(rank, c, m.get(pivot_row, c));
                m.set(pivot_row, c, tmp);
            }
        }
        let pivot = m.get(rank, col);
        for r in rank + 1..rows {
            let factor = m.get(r, col) / pivot;
            if factor == 0.0 {
                continue;
            }
            for c in col..cols {
                let updated = m.get(r, c) - factor * m.get(rank, c);
                m.set(r, c, updated);
            }
        }
        rank += 1;
    }
    Ok(rank)
}

/// Verdict of a sampled controllability check. Full rank on samples is
/// evidence consistent with strong structural controllability, not a proof
/// of it; a rank-deficient sample is a definitive counterexample.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum SscVerdict {
    ConsistentWithSsc,
    RankDeficientSampleFound,
}

/// Result of [`ssc_spot_check`].
#[derive(Clone, Debug, Serialize)]
pub struct SscReport {
    pub leader_set: NodeSet,
    pub samples: usize,
    /// Rank of the controllability matrix per sample, in sample order.
    pub ranks: Vec<usize>,
    pub verdict: SscVerdict,
}

/// Samples `samples` matrices from the graph's family (sample `i` uses seed
/// `seed + i`, wrapping) and computes the controllability-matrix rank for
/// each with tolerance [`DEFAULT_RANK_TOL`].
pub fn ssc_spot_check(g: &Graph, leaders: &NodeSet, samples: usize, seed: u64) -> SscReport {
    let n = g.n();
    let b = input_matrix(leaders, n);
    let mut ranks = Vec::with_capacity(samples);
    for i in 0..samples {
        let m = sample_system_matrix(g, seed.wrapping_add(i as u64));
        let gamma =
            controllability_matrix(&m, &b).expect("sampled matrix dimensions always agree with B");
        let rank = numeric_rank(&gamma, DEFAULT_RANK_TOL)
            .expect("sampled matrices are finite and the default tolerance is positive");
        ranks.push(rank);
    }
    let verdict = if ranks.iter().all(|&r| r == n) {
        SscVerdict::ConsistentWithSsc
    } else {
        SscVerdict::RankDeficientSampleFound
    };
    SscReport {
        leader_set: leaders.clone(),
        samples,
        ranks,
        verdict,
    }
}
