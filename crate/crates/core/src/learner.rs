//! Per-item scores trained on the rank-smoothed loss.
//!
//! The scorer is a lookup table: item `i` has a free parameter `s_i`, which
//! is RankNet with one-hot inputs. Training is mini-batch gradient descent
//! with heavy-ball momentum and a per-epoch exponential learning-rate decay.

use std::cmp::Ordering;
use std::fs::File;
use std::path::Path;

use rand::seq::SliceRandom;

use crate::dataset::{ComparisonDataset, Majority};
use crate::error::{Error, Result};
use crate::io::write_atomic;
use crate::loss::{combined_loss, pair_targets, predicted_probability, BlendParams, PairTarget};
use crate::seeding;

/// Learnable scores, one per item. Only differences are meaningful.
#[derive(Debug, Clone, PartialEq)]
pub struct ScoreTable(Vec<f64>);

impl ScoreTable {
    pub fn zeros(n: usize) -> Self {
        Self(vec![0.0; n])
    }

    pub fn from_vec(scores: Vec<f64>) -> Result<Self> {
        if scores.iter().any(|s| !s.is_finite()) {
            return Err(Error::InvalidArgument("scores must be finite".into()));
        }
        Ok(Self(scores))
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Writes `item,score` rows in item-index order.
    pub fn save(&self, path: &Path, labels: &[String]) -> Result<()> {
        write_atomic(path, |w| {
            let mut out = csv::Writer::from_writer(w);
            out.write_record(["item", "score"])?;
            for (label, s) in labels.iter().zip(&self.0) {
                out.write_record([label.as_str(), &s.to_string()])?;
            }
            out.flush()?;
            Ok(())
        })
    }

    /// Reads an `item,score` file and aligns it with `dataset`'s item order.
    /// Every item of the dataset must have a score.
    pub fn load_for(path: &Path, dataset: &ComparisonDataset) -> Result<Self> {
        let mut rdr = csv::Reader::from_reader(File::open(path)?);
        let mut scores = vec![None; dataset.n_items()];
        for record in rdr.records() {
            let record = record?;
            let line = record.position().map_or(0, |p| p.line());
            let parse_err = |message: String| Error::Parse { path: path.to_path_buf(), line, message };
            if record.len() != 2 {
                return Err(parse_err(format!("expected 2 fields, found {}", record.len())));
            }
            let value: f64 = record[1]
                .trim()
                .parse()
                .map_err(|e| parse_err(format!("bad score {:?}: {e}", &record[1])))?;
            // scores for items absent from the dataset are ignored
            if let Some(k) = dataset.index_of(record[0].trim()) {
                scores[k] = Some(value);
            }
        }
        let scores = scores
            .into_iter()
            .enumerate()
            .map(|(k, s)| s.ok_or_else(|| Error::UnknownItem(dataset.label(k).to_owned())))
            .collect::<Result<Vec<_>>>()?;
        Self::from_vec(scores)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrainConfig {
    pub learning_rate: f64,
    pub momentum: f64,
    pub lr_decay_per_epoch: f64,
    pub batch_size: usize,
    pub epochs: usize,
    pub seed: u64,
}

impl Default for TrainConfig {
    fn default() -> Self {
        Self {
            learning_rate: 0.001,
            momentum: 0.9,
            lr_decay_per_epoch: 0.9,
            batch_size: 128,
            epochs: 10,
            seed: 0,
        }
    }
}

impl TrainConfig {
    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::InvalidArgument(m));
        if !(self.learning_rate > 0.0 && self.learning_rate.is_finite()) {
            return bad(format!("learning rate {} must be positive", self.learning_rate));
        }
        if !(0.0..1.0).contains(&self.momentum) {
            return bad(format!("momentum {} not in [0, 1)", self.momentum));
        }
        if !(self.lr_decay_per_epoch > 0.0 && self.lr_decay_per_epoch <= 1.0) {
            return bad(format!("decay {} not in (0, 1]", self.lr_decay_per_epoch));
        }
        if self.batch_size == 0 {
            return bad("batch size must be at least 1".into());
        }
        Ok(())
    }
}

/// Mean gradient of the rank-smoothed loss over `batch`.
///
/// Each pair contributes `q_ij - q*_ij` to item `i` and the negation to
/// item `j`, so the entries always sum to zero.
pub fn batch_gradient(batch: &[PairTarget], scores: &[f64]) -> Vec<f64> {
    let mut grad = vec![0.0; scores.len()];
    accumulate_gradient(batch, scores, &mut grad);
    grad
}

fn accumulate_gradient(batch: &[PairTarget], scores: &[f64], grad: &mut [f64]) {
    if batch.is_empty() {
        return;
    }
    let inv = 1.0 / batch.len() as f64;
    for t in batch {
        let r = (predicted_probability(scores[t.i], scores[t.j]) - t.q_star) * inv;
        grad[t.i] += r;
        grad[t.j] -= r;
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct TrainReport {
    pub scores: ScoreTable,
    /// Full-set rank-smoothed loss before training and after each epoch.
    pub epoch_losses: Vec<f64>,
}

impl TrainReport {
    pub fn final_loss(&self) -> f64 {
        *self.epoch_losses.last().expect("initial loss is always recorded")
    }
}

pub fn train(
    train_set: &ComparisonDataset,
    pi: &[f64],
    params: BlendParams,
    config: &TrainConfig,
) -> Result<ScoreTable> {
    train_with_history(train_set, pi, params, config).map(|r| r.scores)
}

/// Trains from all-zero scores and records the loss after every epoch.
pub fn train_with_history(
    train_set: &ComparisonDataset,
    pi: &[f64],
    params: BlendParams,
    config: &TrainConfig,
) -> Result<TrainReport> {
    config.validate()?;
    let n = train_set.n_items();
    if pi.len() != n {
        return Err(Error::InvalidArgument(format!(
            "stationary distribution has {} entries for {n} items",
            pi.len()
        )));
    }
    let targets = pair_targets(train_set, pi, params);
    let alpha = params.alpha();

    let mut scores = vec![0.0; n];
    let mut velocity = vec![0.0; n];
    let mut grad = vec![0.0; n];
    let mut order = targets.clone();
    let mut rng = seeding::rng(config.seed);
    let mut lr = config.learning_rate;
    let mut epoch_losses = Vec::with_capacity(config.epochs + 1);
    epoch_losses.push(combined_loss(train_set, &targets, &scores, alpha)?);

    for _ in 0..config.epochs {
        order.shuffle(&mut rng);
        for batch in order.chunks(config.batch_size) {
            grad.iter_mut().for_each(|g| *g = 0.0);
            accumulate_gradient(batch, &scores, &mut grad);
            for ((s, v), g) in scores.iter_mut().zip(&mut velocity).zip(&grad) {
                *v = config.momentum * *v - lr * g;
                *s += *v;
            }
        }
        lr *= config.lr_decay_per_epoch;
        epoch_losses.push(combined_loss(train_set, &targets, &scores, alpha)?);
    }
    Ok(TrainReport { scores: ScoreTable::from_vec(scores)?, epoch_losses })
}

/// Fraction of test pairs whose majority vote the scores order correctly.
///
/// Pairs with tied votes are skipped. Equal scores earn half credit.
pub fn evaluate_accuracy(scores: &ScoreTable, test_set: &ComparisonDataset) -> Result<f64> {
    let s = scores.as_slice();
    if s.len() != test_set.n_items() {
        return Err(Error::InvalidArgument(format!(
            "{} scores for {} items",
            s.len(),
            test_set.n_items()
        )));
    }
    let mut credit = 0.0;
    let mut counted = 0usize;
    for pc in test_set.pairs() {
        let want = match pc.majority() {
            Majority::Tie => continue,
            Majority::PreferI => Ordering::Greater,
            Majority::PreferJ => Ordering::Less,
        };
        counted += 1;
        credit += match s[pc.i].partial_cmp(&s[pc.j]) {
            Some(Ordering::Equal) | None => 0.5,
            Some(o) if o == want => 1.0,
            Some(_) => 0.0,
        };
    }
    if counted == 0 {
        return Err(Error::AllTied);
    }
    Ok(credit / counted as f64)
}
