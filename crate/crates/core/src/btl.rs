//! Bradley-Terry-Luce ground truth and simulated comparison data.
//!
//! Items carry positive weights `w`; item `i` is preferred over `j` with
//! probability `w_i / (w_i + w_j)`. Weights are drawn from a power law
//! `P(w) ∝ w^gamma` truncated to `[omega_min, omega_max]`, a random fraction
//! of all pairs is compared, and each compared pair is judged `n_t` times.

use std::path::Path;

use rand::seq::index;
use rand::Rng;

use crate::dataset::{ComparisonDataset, DatasetBuilder};
use crate::error::{Error, Result};
use crate::graph::is_connected;
use crate::io::write_atomic;
use crate::seeding::{self, TAG_OUTCOMES, TAG_PAIRS, TAG_WEIGHTS};

/// Attempts made to draw a connected pair graph before giving up.
pub const MAX_CONNECT_ATTEMPTS: usize = 100;

#[derive(Debug, Clone, PartialEq)]
pub struct BtlWeights(Vec<f64>);

impl BtlWeights {
    pub fn new(weights: Vec<f64>) -> Result<Self> {
        if let Some(w) = weights.iter().find(|w| !(w.is_finite() && **w > 0.0)) {
            return Err(Error::InvalidArgument(format!("BTL weight {w} must be positive and finite")));
        }
        Ok(Self(weights))
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

    /// Probability that `i` is preferred over `j`.
    pub fn true_probability(&self, i: usize, j: usize) -> f64 {
        true_probability(self, i, j)
    }

    /// Weights rescaled to sum to one.
    pub fn normalized(&self) -> Vec<f64> {
        let total: f64 = self.0.iter().sum();
        self.0.iter().map(|w| w / total).collect()
    }

    /// Writes the `item,weight` sidecar using the given item labels.
    pub fn save(&self, path: &Path, labels: &[String]) -> Result<()> {
        write_atomic(path, |w| {
            let mut out = csv::Writer::from_writer(w);
            out.write_record(["item", "weight"])?;
            for (label, weight) in labels.iter().zip(&self.0) {
                out.write_record([label.as_str(), &weight.to_string()])?;
            }
            out.flush()?;
            Ok(())
        })
    }
}

pub fn true_probability(weights: &BtlWeights, i: usize, j: usize) -> f64 {
    let (wi, wj) = (weights.0[i], weights.0[j]);
    wi / (wi + wj)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PowerLawConfig {
    pub gamma: f64,
    pub omega_min: f64,
    pub omega_max: f64,
}

impl Default for PowerLawConfig {
    fn default() -> Self {
        Self { gamma: 2.0, omega_min: 0.1, omega_max: 1.0 }
    }
}

impl PowerLawConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.omega_min > 0.0 && self.omega_min < self.omega_max && self.omega_max.is_finite()) {
            return Err(Error::InvalidArgument(format!(
                "power-law bounds must satisfy 0 < omega_min < omega_max, got [{}, {}]",
                self.omega_min, self.omega_max
            )));
        }
        if !self.gamma.is_finite() {
            return Err(Error::InvalidArgument(format!("gamma {} is not finite", self.gamma)));
        }
        if self.gamma == -1.0 {
            return Err(Error::InvalidArgument("gamma = -1 is not supported".into()));
        }
        Ok(())
    }

    /// Inverse CDF of the truncated density `∝ w^gamma`.
    pub fn quantile(&self, u: f64) -> f64 {
        let e = self.gamma + 1.0;
        let lo = self.omega_min.powf(e);
        let hi = self.omega_max.powf(e);
        (u * (hi - lo) + lo).powf(1.0 / e).clamp(self.omega_min, self.omega_max)
    }
}

/// Draws `n` i.i.d. weights by inverse-CDF sampling.
pub fn sample_weights(config: &PowerLawConfig, n: usize, seed: u64) -> Result<BtlWeights> {
    config.validate()?;
    let mut rng = seeding::rng(seed);
    let w = (0..n).map(|_| config.quantile(rng.random::<f64>())).collect();
    BtlWeights::new(w)
}

/// Number of pairs compared at ratio `r` among `n` items.
pub fn pair_budget(n_items: usize, ratio: f64) -> usize {
    let all = n_items * n_items.saturating_sub(1) / 2;
    (ratio * all as f64).round() as usize
}

#[cfg(test)]
fn decode_pair(n: usize, mut k: usize) -> (usize, usize) {
    // row i holds pairs (i, i+1..n), n - 1 - i of them
    let mut i = 0;
    loop {
        let row = n - 1 - i;
        if k < row {
            return (i, i + 1 + k);
        }
        k -= row;
        i += 1;
    }
}

/// Uniform random subset of the unordered pairs of `0..n_items`, of size
/// `round(ratio * n(n-1)/2)`, sorted lexicographically.
pub fn sample_pair_set(n_items: usize, ratio: f64, seed: u64) -> Result<Vec<(usize, usize)>> {
    if !(ratio > 0.0 && ratio <= 1.0) {
        return Err(Error::InvalidArgument(format!("pair ratio {ratio} not in (0, 1]")));
    }
    let all = n_items * n_items.saturating_sub(1) / 2;
    let k = pair_budget(n_items, ratio);
    if k == 0 {
        return Err(Error::InvalidArgument(format!(
            "ratio {ratio} of {all} pairs rounds to an empty pair set"
        )));
    }
    let mut rng = seeding::rng(seed);
    let mut chosen: Vec<usize> = index::sample(&mut rng, all, k).into_vec();
    chosen.sort_unstable();
    // decode in one sweep since indices are sorted
    let mut pairs = Vec::with_capacity(k);
    let (mut row, mut row_start) = (0usize, 0usize);
    for idx in chosen {
        while idx >= row_start + (n_items - 1 - row) {
            row_start += n_items - 1 - row;
            row += 1;
        }
        pairs.push((row, row + 1 + idx - row_start));
    }
    Ok(pairs)
}

pub fn item_labels(n: usize) -> Vec<String> {
    (0..n).map(|k| format!("item{k}")).collect()
}

/// Judges each pair `n_t` times under the BTL model.
///
/// Each judgment is an independent Bernoulli draw, so `wins_i` follows
/// `Binomial(n_t, p_ij)`. Items are labelled `item0..item{N-1}` in weight
/// order.
pub fn simulate_comparisons(
    weights: &BtlWeights,
    pairs: &[(usize, usize)],
    n_t: u64,
    seed: u64,
) -> Result<ComparisonDataset> {
    if n_t == 0 {
        return Err(Error::InvalidArgument("trials per pair must be at least 1".into()));
    }
    let mut rng = seeding::rng(seed);
    let mut b = DatasetBuilder::with_items(item_labels(weights.len()))?;
    for &(i, j) in pairs {
        let p = weights.true_probability(i, j);
        let wins_i = (0..n_t).filter(|_| rng.random_bool(p)).count() as u64;
        b.add(i, j, wins_i, n_t - wins_i)?;
    }
    b.build()
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SimulationConfig {
    pub n_items: usize,
    pub pair_ratio: f64,
    pub trials_per_pair: u64,
    pub seed: u64,
}

#[derive(Debug, Clone)]
pub struct Synthetic {
    pub weights: BtlWeights,
    pub pairs: Vec<(usize, usize)>,
    pub dataset: ComparisonDataset,
    /// Index of the pair-set draw that produced a connected graph.
    pub attempt: usize,
}

impl SimulationConfig {
    /// Draws a connected pair set, resampling with the next derived seed up
    /// to [`MAX_CONNECT_ATTEMPTS`] times.
    pub fn connected_pairs(&self) -> Result<(Vec<(usize, usize)>, usize)> {
        if self.n_items < 2 {
            return Err(Error::InvalidArgument("need at least 2 items".into()));
        }
        for attempt in 0..MAX_CONNECT_ATTEMPTS {
            let seed = seeding::derive(self.seed, &[TAG_PAIRS, attempt as u64]);
            let pairs = sample_pair_set(self.n_items, self.pair_ratio, seed)?;
            if is_connected(self.n_items, pairs.iter().copied()) {
                return Ok((pairs, attempt));
            }
        }
        Err(Error::Disconnected { attempts: MAX_CONNECT_ATTEMPTS })
    }

    /// Weights, a connected pair set and simulated outcomes, all derived from
    /// `self.seed`.
    pub fn generate(&self, power: &PowerLawConfig) -> Result<Synthetic> {
        let weights = sample_weights(power, self.n_items, seeding::derive(self.seed, &[TAG_WEIGHTS]))?;
        self.generate_with(weights)
    }

    pub fn generate_with(&self, weights: BtlWeights) -> Result<Synthetic> {
        if weights.len() != self.n_items {
            return Err(Error::InvalidArgument(format!(
                "{} weights for {} items",
                weights.len(),
                self.n_items
            )));
        }
        let (pairs, attempt) = self.connected_pairs()?;
        let dataset = simulate_comparisons(
            &weights,
            &pairs,
            self.trials_per_pair,
            seeding::derive(self.seed, &[TAG_OUTCOMES]),
        )?;
        Ok(Synthetic { weights, pairs, dataset, attempt })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn pair_decoding_matches_enumeration() {
        let n = 7;
        let mut k = 0;
        for i in 0..n {
            for j in (i + 1)..n {
                assert_eq!(decode_pair(n, k), (i, j));
                k += 1;
            }
        }
        let all = sample_pair_set(n, 1.0, 3).unwrap();
        assert_eq!(all.len(), 21);
        assert_eq!(all, (0..21).map(|k| decode_pair(n, k)).collect::<Vec<_>>());
    }

    #[test]
    fn full_scale_pair_count() {
        assert_eq!(pair_budget(500, 0.15), 18_713);
        let pairs = sample_pair_set(500, 0.15, 1).unwrap();
        assert_eq!(pairs.len(), 18_713);
        let mut dedup = pairs.clone();
        dedup.dedup();
        assert_eq!(dedup.len(), pairs.len());
        assert!(pairs.iter().all(|&(i, j)| i < j && j < 500));
    }

    #[test]
    fn empty_pair_set_is_rejected() {
        assert!(sample_pair_set(3, 0.1, 0).is_err());
        assert!(sample_pair_set(3, 0.0, 0).is_err());
        assert!(sample_pair_set(3, 1.5, 0).is_err());
    }

    #[test]
    fn probability_examples() {
        let w = BtlWeights::new(vec![3.0, 1.0, 1.0]).unwrap();
        assert_eq!(w.true_probability(0, 1), 0.75);
        assert_eq!(w.true_probability(1, 2), 0.5);
        assert!(BtlWeights::new(vec![1.0, 0.0]).is_err());
        assert!(BtlWeights::new(vec![1.0, f64::NAN]).is_err());
    }

    #[test]
    fn rejects_reciprocal_exponent() {
        let cfg = PowerLawConfig { gamma: -1.0, ..Default::default() };
        assert!(sample_weights(&cfg, 10, 0).is_err());
        let cfg = PowerLawConfig { omega_min: 1.0, omega_max: 0.5, ..Default::default() };
        assert!(sample_weights(&cfg, 10, 0).is_err());
    }

    #[test]
    fn simulation_conserves_votes() {
        let w = sample_weights(&PowerLawConfig::default(), 30, 5).unwrap();
        let pairs = sample_pair_set(30, 0.5, 6).unwrap();
        let d = simulate_comparisons(&w, &pairs, 7, 8).unwrap();
        assert_eq!(d.n_pairs(), pairs.len());
        assert!(d.pairs().iter().all(|pc| pc.total() == 7));
        assert_eq!(d, simulate_comparisons(&w, &pairs, 7, 8).unwrap());
        assert_ne!(d, simulate_comparisons(&w, &pairs, 7, 9).unwrap());
    }

    #[test]
    fn dominant_item_wins_every_trial() {
        let w = BtlWeights::new(vec![1e6, 1.0]).unwrap();
        let d = simulate_comparisons(&w, &[(0, 1)], 50, 1).unwrap();
        assert_eq!(d.pairs()[0].wins_i, 50);
    }

    #[test]
    fn resamples_until_connected() {
        // 6 items, 5 pairs: only spanning trees qualify
        let cfg = SimulationConfig { n_items: 6, pair_ratio: 5.0 / 15.0, trials_per_pair: 3, seed: 4 };
        let syn = cfg.generate(&PowerLawConfig::default()).unwrap();
        assert!(is_connected(6, syn.pairs.iter().copied()));
        // 5 items, 3 pairs can never connect
        let cfg = SimulationConfig { n_items: 5, pair_ratio: 0.3, trials_per_pair: 3, seed: 4 };
        assert!(matches!(
            cfg.generate(&PowerLawConfig::default()),
            Err(Error::Disconnected { attempts: MAX_CONNECT_ATTEMPTS })
        ));
    }

    proptest! {
        #[test]
        fn weights_stay_in_bounds(gamma in -3.0f64..4.0, lo in 0.01f64..1.0, span in 0.01f64..5.0, seed: u64) {
            prop_assume!((gamma + 1.0).abs() > 1e-3);
            let cfg = PowerLawConfig { gamma, omega_min: lo, omega_max: lo + span };
            let w = sample_weights(&cfg, 200, seed).unwrap();
            prop_assert!(w.as_slice().iter().all(|&x| x >= cfg.omega_min && x <= cfg.omega_max));
        }

        #[test]
        fn probabilities_are_scale_invariant(ws in prop::collection::vec(0.01f64..10.0, 2..8), c in 0.01f64..100.0) {
            let a = BtlWeights::new(ws.clone()).unwrap();
            let b = BtlWeights::new(ws.iter().map(|w| w * c).collect()).unwrap();
            for i in 0..ws.len() {
                for j in 0..ws.len() {
                    if i == j { continue; }
                    let p = a.true_probability(i, j);
                    prop_assert!((p + a.true_probability(j, i) - 1.0).abs() < 1e-15);
                    prop_assert!((p - b.true_probability(i, j)).abs() < 1e-14);
                    prop_assert_eq!(p > 0.5, ws[i] > ws[j]);
                }
            }
        }
    }
}
