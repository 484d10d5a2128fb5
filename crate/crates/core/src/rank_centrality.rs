//! Rank Centrality: a random walk over compared items whose stationary
//! distribution estimates the normalized BTL weights.
//!
//! From item `i` the walk moves to a compared partner `j` with probability
//! `(1/d_max) * ñ_ji / (ñ_ij + ñ_ji)`, the fraction of comparisons `j` won
//! (with `laplace` pseudo-counts added to both sides), and otherwise stays
//! put. `d_max` is the largest number of distinct partners of any item, so
//! every row sums to one and the chain is lazy. Mass accumulates on items
//! that win often, giving `π_i ≈ w_i / Σ w`.

use std::path::Path;

use crate::dataset::ComparisonDataset;
use crate::error::{Error, Result};
use crate::graph::strongly_connected_components;
use crate::io::write_atomic;

pub const DEFAULT_TOL: f64 = 1e-10;
pub const DEFAULT_MAX_ITER: usize = 100_000;

/// Row-stochastic transition matrix in sparse row form.
///
/// Only positive off-diagonal entries are stored; there is at most one per
/// compared pair and direction.
#[derive(Debug, Clone, PartialEq)]
pub struct TransitionMatrix {
    n: usize,
    d_max: usize,
    diag: Vec<f64>,
    rows: Vec<Vec<(usize, f64)>>,
}

impl TransitionMatrix {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn d_max(&self) -> usize {
        self.d_max
    }

    pub fn entry(&self, i: usize, j: usize) -> f64 {
        if i == j {
            return self.diag[i];
        }
        self.rows[i]
            .iter()
            .find(|&&(k, _)| k == j)
            .map_or(0.0, |&(_, p)| p)
    }

    /// Positive off-diagonal entries of row `i`.
    pub fn row(&self, i: usize) -> &[(usize, f64)] {
        &self.rows[i]
    }

    pub fn row_sum(&self, i: usize) -> f64 {
        self.diag[i] + self.rows[i].iter().map(|&(_, p)| p).sum::<f64>()
    }

    pub fn to_dense(&self) -> Vec<Vec<f64>> {
        let mut m = vec![vec![0.0; self.n]; self.n];
        for i in 0..self.n {
            m[i][i] = self.diag[i];
            for &(j, p) in &self.rows[i] {
                m[i][j] = p;
            }
        }
        m
    }

    /// `x Π`, a row vector times the matrix.
    pub fn left_multiply(&self, x: &[f64]) -> Vec<f64> {
        let mut out: Vec<f64> = x.iter().zip(&self.diag).map(|(a, d)| a * d).collect();
        for (i, row) in self.rows.iter().enumerate() {
            let xi = x[i];
            for &(j, p) in row {
                out[j] += xi * p;
            }
        }
        out
    }

    /// Strongly connected components of the positive-entry graph.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let edges = self
            .rows
            .iter()
            .enumerate()
            .flat_map(|(i, row)| row.iter().map(move |&(j, _)| (i, j)));
        strongly_connected_components(self.n, edges)
    }
}

pub fn build_transition(dataset: &ComparisonDataset, laplace: f64) -> Result<TransitionMatrix> {
    if !(laplace >= 0.0 && laplace.is_finite()) {
        return Err(Error::InvalidArgument(format!("laplace {laplace} must be finite and >= 0")));
    }
    if dataset.n_pairs() == 0 {
        return Err(Error::EmptyDataset("no compared pairs".into()));
    }
    let n = dataset.n_items();
    let d_max = dataset.degrees().into_iter().max().unwrap_or(0);
    let scale = 1.0 / d_max as f64;
    let mut rows = vec![Vec::new(); n];
    for pc in dataset.pairs() {
        let ni = pc.wins_i as f64 + laplace;
        let nj = pc.wins_j as f64 + laplace;
        let total = ni + nj;
        // i -> j with the share of comparisons j won, and vice versa
        if nj > 0.0 {
            rows[pc.i].push((pc.j, scale * nj / total));
        }
        if ni > 0.0 {
            rows[pc.j].push((pc.i, scale * ni / total));
        }
    }
    let diag = rows
        .iter()
        .map(|row| (1.0 - row.iter().map(|&(_, p)| p).sum::<f64>()).max(0.0))
        .collect();
    Ok(TransitionMatrix { n, d_max, diag, rows })
}

#[derive(Debug, Clone, PartialEq)]
pub struct StationaryDistribution {
    pub pi: Vec<f64>,
    /// L1 change of the final power-iteration step.
    pub residual: f64,
    pub iterations: usize,
}

/// Errors with the component structure if the chain is reducible; `name`
/// renders the first member of each component.
pub fn ensure_irreducible(matrix: &TransitionMatrix, name: impl Fn(usize) -> String) -> Result<()> {
    let comps = matrix.components();
    if comps.len() > 1 {
        return Err(Error::Reducible {
            count: comps.len(),
            sizes: comps.iter().map(Vec::len).collect(),
            heads: comps.iter().take(8).map(|c| name(c[0])).collect(),
        });
    }
    Ok(())
}

/// Power iteration from the uniform vector.
///
/// Fails if the positive-entry graph of `matrix` is not strongly connected,
/// or if the L1 change between successive iterates is still `>= tol` after
/// `max_iter` steps.
pub fn stationary_distribution(
    matrix: &TransitionMatrix,
    tol: f64,
    max_iter: usize,
) -> Result<StationaryDistribution> {
    if !(tol > 0.0) {
        return Err(Error::InvalidArgument(format!("tolerance {tol} must be positive")));
    }
    ensure_irreducible(matrix, |k| k.to_string())?;
    let n = matrix.n();
    let mut pi = vec![1.0 / n as f64; n];
    let mut residual = f64::INFINITY;
    for iter in 1..=max_iter {
        let mut next = matrix.left_multiply(&pi);
        let total: f64 = next.iter().sum();
        next.iter_mut().for_each(|x| *x /= total);
        residual = next.iter().zip(&pi).map(|(a, b)| (a - b).abs()).sum();
        pi = next;
        if residual < tol {
            return Ok(StationaryDistribution { pi, residual, iterations: iter });
        }
    }
    Err(Error::NotConverged { iterations: max_iter, residual })
}

/// β-smoothed preference of `i` over `j`: `π_i^β / (π_i^β + π_j^β)`.
///
/// `beta = 0` gives exactly 1/2 and `beta = 1` gives exactly `π_i / (π_i + π_j)`.
pub fn global_probability(pi: &[f64], beta: f64, i: usize, j: usize) -> f64 {
    let a = pi[i].powf(beta);
    let b = pi[j].powf(beta);
    let s = a + b;
    if s > 0.0 && s.is_finite() {
        a / s
    } else {
        // powers under/overflowed; fall back to the logistic form
        let d = beta * (pi[i].ln() - pi[j].ln());
        crate::loss::predicted_probability(d, 0.0)
    }
}

impl StationaryDistribution {
    pub fn global_probability(&self, beta: f64, i: usize, j: usize) -> f64 {
        global_probability(&self.pi, beta, i, j)
    }

    /// Item indices ordered by decreasing π (ties by index).
    pub fn ranking(&self) -> Vec<usize> {
        let mut order: Vec<usize> = (0..self.pi.len()).collect();
        order.sort_by(|&a, &b| self.pi[b].total_cmp(&self.pi[a]).then(a.cmp(&b)));
        order
    }

    /// Writes `item,pi,rank` sorted by decreasing π; rank starts at 1.
    pub fn save_ranking(&self, path: &Path, labels: &[String]) -> Result<()> {
        write_atomic(path, |w| {
            let mut out = csv::Writer::from_writer(w);
            out.write_record(["item", "pi", "rank"])?;
            for (rank, &k) in self.ranking().iter().enumerate() {
                out.write_record([labels[k].as_str(), &self.pi[k].to_string(), &(rank + 1).to_string()])?;
            }
            out.flush()?;
            Ok(())
        })
    }
}

/// Solver settings bundled for convenience.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RankCentrality {
    pub laplace: f64,
    pub tol: f64,
    pub max_iter: usize,
}

impl Default for RankCentrality {
    fn default() -> Self {
        Self { laplace: 0.0, tol: DEFAULT_TOL, max_iter: DEFAULT_MAX_ITER }
    }
}

impl RankCentrality {
    pub fn fit(&self, dataset: &ComparisonDataset) -> Result<StationaryDistribution> {
        let matrix = build_transition(dataset, self.laplace)?;
        ensure_irreducible(&matrix, |k| dataset.label(k).to_owned())?;
        stationary_distribution(&matrix, self.tol, self.max_iter)
    }
}
