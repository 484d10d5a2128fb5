//! Pairwise comparison outcomes.
//!
//! A [`ComparisonDataset`] holds a set of items and, for each compared
//! unordered pair, how many times each side was preferred. Everything
//! downstream (empirical probabilities, the Rank Centrality chain, training
//! targets) is derived from these counts.
//!
//! Items are identified by an opaque label and a dense index in `0..N`.
//! Labels are interned in first-appearance order, and pairs are kept in the
//! order they were first seen, so writing a loaded dataset back out and
//! reading it again reproduces it exactly.
//!
//! ```text
//! item_i,item_j,wins_i,wins_j
//! a,b,3,2
//! a,c,5,0
//! ```

use std::collections::HashMap;
use std::fs::File;
use std::io::{Read, Write};
use std::path::Path;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::strongly_connected_components;
use crate::io::write_atomic;

pub const CSV_HEADER: [&str; 4] = ["item_i", "item_j", "wins_i", "wins_j"];

/// Win counts for one unordered pair, stored with `i < j`.
///
/// `wins_i` is the number of times item `i` was preferred over item `j`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PairCounts {
    pub i: usize,
    pub j: usize,
    pub wins_i: u64,
    pub wins_j: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Majority {
    PreferI,
    PreferJ,
    Tie,
}

impl PairCounts {
    /// Builds canonical counts from an oriented observation: `a` won
    /// `wins_a` times against `b`, which won `wins_b` times.
    pub fn new(a: usize, b: usize, wins_a: u64, wins_b: u64) -> Result<Self> {
        if a == b {
            return Err(Error::InvalidArgument(format!(
                "item {a} compared with itself"
            )));
        }
        if wins_a + wins_b == 0 {
            return Err(Error::InvalidArgument(format!(
                "pair ({a}, {b}) has no votes"
            )));
        }
        Ok(if a < b {
            Self { i: a, j: b, wins_i: wins_a, wins_j: wins_b }
        } else {
            Self { i: b, j: a, wins_i: wins_b, wins_j: wins_a }
        })
    }

    pub fn total(&self) -> u64 {
        self.wins_i + self.wins_j
    }

    /// Empirical probability that `i` is preferred over `j`.
    pub fn p_local(&self) -> f64 {
        self.wins_i as f64 / self.total() as f64
    }

    /// Wins of `who` against the other member of the pair.
    pub fn wins_of(&self, who: usize) -> u64 {
        if who == self.i {
            self.wins_i
        } else {
            debug_assert_eq!(who, self.j);
            self.wins_j
        }
    }

    pub fn majority(&self) -> Majority {
        use std::cmp::Ordering::*;
        match self.wins_i.cmp(&self.wins_j) {
            Greater => Majority::PreferI,
            Less => Majority::PreferJ,
            Equal => Majority::Tie,
        }
    }
}

/// Free-function form of [`PairCounts::majority`].
pub fn majority_label(counts: &PairCounts) -> Majority {
    counts.majority()
}

/// Strongly connected components of the "who beats whom" walk graph.
///
/// Edge `i -> j` exists whenever the Rank Centrality walk can step from `i`
/// to `j`, i.e. when `j` beat `i` at least once (after adding `laplace`
/// pseudo-counts).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConnectivityReport {
    pub components: Vec<Vec<usize>>,
}

impl ConnectivityReport {
    pub fn is_irreducible(&self) -> bool {
        self.components.len() == 1
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComparisonDataset {
    labels: Vec<String>,
    lookup: HashMap<String, usize>,
    pairs: Vec<PairCounts>,
    pair_index: HashMap<(usize, usize), usize>,
    /// Pair `k` was first given as `(j, i)`; kept so files round-trip.
    reversed: Vec<bool>,
}

#[derive(Debug, Default)]
pub struct DatasetBuilder {
    labels: Vec<String>,
    lookup: HashMap<String, usize>,
    pairs: Vec<PairCounts>,
    pair_index: HashMap<(usize, usize), usize>,
    /// Pair `k` was first given as `(j, i)`; kept so files round-trip.
    reversed: Vec<bool>,
}

impl DatasetBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    /// Builder whose items are known up front, in index order.
    pub fn with_items<I, S>(labels: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let mut b = Self::new();
        for label in labels {
            let label = label.into();
            if b.lookup.contains_key(&label) {
                return Err(Error::InvalidArgument(format!("duplicate item label {label:?}")));
            }
            b.intern(&label);
        }
        Ok(b)
    }

    pub fn intern(&mut self, label: &str) -> usize {
        if let Some(&idx) = self.lookup.get(label) {
            return idx;
        }
        let idx = self.labels.len();
        self.labels.push(label.to_owned());
        self.lookup.insert(label.to_owned(), idx);
        idx
    }

    /// Records `wins_a` wins of `a` over `b` and `wins_b` the other way,
    /// merging with any counts already present for the pair.
    pub fn add(&mut self, a: usize, b: usize, wins_a: u64, wins_b: u64) -> Result<()> {
        let n = self.labels.len();
        if a >= n || b >= n {
            return Err(Error::InvalidArgument(format!(
                "pair ({a}, {b}) references an item outside 0..{n}"
            )));
        }
        let pc = PairCounts::new(a, b, wins_a, wins_b)?;
        match self.pair_index.get(&(pc.i, pc.j)) {
            Some(&k) => {
                let slot = &mut self.pairs[k];
                slot.wins_i += pc.wins_i;
                slot.wins_j += pc.wins_j;
            }
            None => {
                self.pair_index.insert((pc.i, pc.j), self.pairs.len());
                self.pairs.push(pc);
                self.reversed.push(a > b);
            }
        }
        Ok(())
    }

    pub fn add_labeled(&mut self, a: &str, b: &str, wins_a: u64, wins_b: u64) -> Result<()> {
        if a == b {
            return Err(Error::InvalidArgument(format!("item {a:?} compared with itself")));
        }
        let a = self.intern(a);
        let b = self.intern(b);
        self.add(a, b, wins_a, wins_b)
    }

    pub fn build(self) -> Result<ComparisonDataset> {
        if self.labels.len() < 2 {
            return Err(Error::EmptyDataset(format!("{} item(s), need at least 2", self.labels.len())));
        }
        if self.pairs.is_empty() {
            return Err(Error::EmptyDataset("no compared pairs".into()));
        }
        Ok(ComparisonDataset {
            labels: self.labels,
            lookup: self.lookup,
            pairs: self.pairs,
            pair_index: self.pair_index,
            reversed: self.reversed,
        })
    }
}

impl ComparisonDataset {
    pub fn builder() -> DatasetBuilder {
        DatasetBuilder::new()
    }

    pub fn n_items(&self) -> usize {
        self.labels.len()
    }

    pub fn n_pairs(&self) -> usize {
        self.pairs.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, index: usize) -> &str {
        &self.labels[index]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.lookup.get(label).copied()
    }

    pub fn pairs(&self) -> &[PairCounts] {
        &self.pairs
    }

    /// Counts for the unordered pair `{a, b}`, if it was compared.
    pub fn pair(&self, a: usize, b: usize) -> Option<&PairCounts> {
        let key = if a < b { (a, b) } else { (b, a) };
        self.pair_index.get(&key).map(|&k| &self.pairs[k])
    }

    /// Fraction of comparisons between `i` and `j` won by `i`.
    pub fn empirical_probability(&self, i: usize, j: usize) -> Result<f64> {
        let pc = self.pair(i, j).ok_or(Error::UnknownPair(i, j))?;
        if i == pc.i {
            Ok(pc.p_local())
        } else {
            Ok(pc.wins_j as f64 / pc.total() as f64)
        }
    }

    /// Number of distinct partners each item was compared with.
    pub fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.n_items()];
        for pc in &self.pairs {
            deg[pc.i] += 1;
            deg[pc.j] += 1;
        }
        deg
    }

    /// Same items, keeping only the pairs at positions `keep`.
    fn subset(&self, keep: impl Iterator<Item = usize>) -> Self {
        let keep: Vec<usize> = keep.collect();
        let pairs: Vec<PairCounts> = keep.iter().map(|&k| self.pairs[k]).collect();
        let pair_index = pairs.iter().enumerate().map(|(k, p)| ((p.i, p.j), k)).collect();
        Self {
            labels: self.labels.clone(),
            lookup: self.lookup.clone(),
            pairs,
            pair_index,
            reversed: keep.iter().map(|&k| self.reversed[k]).collect(),
        }
    }

    /// Partitions the compared pairs into a train and a test dataset.
    ///
    /// The train half receives `round(train_fraction * |pairs|)` pairs chosen
    /// uniformly at random by `seed`. Both halves keep the full item list and
    /// preserve the original pair order.
    pub fn split(&self, train_fraction: f64, seed: u64) -> Result<(Self, Self)> {
        let total = self.n_pairs();
        if !(train_fraction > 0.0 && train_fraction < 1.0) {
            return Err(Error::InvalidArgument(format!(
                "train fraction {train_fraction} not in (0, 1)"
            )));
        }
        let n_train = (train_fraction * total as f64).round() as usize;
        if n_train == 0 || n_train >= total {
            return Err(Error::EmptySplit { fraction: train_fraction, pairs: total });
        }
        let mut order: Vec<usize> = (0..total).collect();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        order.shuffle(&mut rng);
        let mut in_train = vec![false; total];
        for &k in &order[..n_train] {
            in_train[k] = true;
        }
        let train = self.subset((0..total).filter(|&k| in_train[k]));
        let test = self.subset((0..total).filter(|&k| !in_train[k]));
        Ok((train, test))
    }

    /// Strongly connected components of the walk graph with no pseudo-counts.
    pub fn connectivity_report(&self) -> ConnectivityReport {
        self.connectivity_with_laplace(0.0)
    }

    pub fn connectivity_with_laplace(&self, laplace: f64) -> ConnectivityReport {
        let mut edges = Vec::with_capacity(2 * self.pairs.len());
        for pc in &self.pairs {
            // walk steps from the loser toward the winner
            if pc.wins_j as f64 + laplace > 0.0 {
                edges.push((pc.i, pc.j));
            }
            if pc.wins_i as f64 + laplace > 0.0 {
                edges.push((pc.j, pc.i));
            }
        }
        ConnectivityReport {
            components: strongly_connected_components(self.n_items(), edges),
        }
    }

    pub fn load(path: &Path) -> Result<Self> {
        let file = File::open(path)?;
        Self::read_csv(file, path)
    }

    /// Parses the comparison CSV format. `source` is only used in messages.
    pub fn read_csv<R: Read>(reader: R, source: &Path) -> Result<Self> {
        let parse_err = |line: u64, message: String| Error::Parse {
            path: source.to_path_buf(),
            line,
            message,
        };
        let mut rdr = csv::ReaderBuilder::new()
            .has_headers(true)
            .flexible(true)
            .from_reader(reader);
        let header = rdr.headers()?.clone();
        if header.iter().map(str::trim).ne(CSV_HEADER) {
            return Err(parse_err(1, format!("expected header {}", CSV_HEADER.join(","))));
        }
        let mut builder = DatasetBuilder::new();
        for record in rdr.records() {
            let record = record?;
            let line = record.position().map_or(0, |p| p.line());
            if record.len() != 4 {
                return Err(parse_err(line, format!("expected 4 fields, found {}", record.len())));
            }
            let a = record[0].trim();
            let b = record[1].trim();
            if a.is_empty() || b.is_empty() {
                return Err(parse_err(line, "empty item label".into()));
            }
            if a == b {
                return Err(parse_err(line, format!("item {a:?} compared with itself")));
            }
            let count = |s: &str| -> Result<u64> {
                let s = s.trim();
                if s.starts_with('-') {
                    return Err(parse_err(line, format!("negative count {s:?}")));
                }
                s.parse::<u64>()
                    .map_err(|e| parse_err(line, format!("bad count {s:?}: {e}")))
            };
            let wins_a = count(&record[2])?;
            let wins_b = count(&record[3])?;
            if wins_a + wins_b == 0 {
                return Err(parse_err(line, format!("pair ({a}, {b}) has zero votes")));
            }
            builder.add_labeled(a, b, wins_a, wins_b)?;
        }
        builder.build()
    }

    /// Rows come out in insertion order, each oriented as it was first added.
    pub fn write_csv<W: Write>(&self, writer: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(writer);
        w.write_record(CSV_HEADER)?;
        for (pc, &rev) in self.pairs.iter().zip(&self.reversed) {
            let (a, b, wa, wb) = if rev {
                (pc.j, pc.i, pc.wins_j, pc.wins_i)
            } else {
                (pc.i, pc.j, pc.wins_i, pc.wins_j)
            };
            w.write_record([self.labels[a].as_str(), self.labels[b].as_str(), &wa.to_string(), &wb.to_string()])?;
        }
        w.flush()?;
        Ok(())
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        write_atomic(path, |w| self.write_csv(w))
    }
}
