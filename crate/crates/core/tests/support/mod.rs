//! Independent oracles shared by the integration tests.
#![allow(dead_code)]

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use ranksmooth::btl::simulate_comparisons;
use ranksmooth::{BtlWeights, ComparisonDataset, DatasetBuilder};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Closed-form CDF of the density `∝ w^gamma` on `[lo, hi]`.
pub fn power_law_cdf(w: f64, gamma: f64, lo: f64, hi: f64) -> f64 {
    let e = gamma + 1.0;
    ((w.powf(e) - lo.powf(e)) / (hi.powf(e) - lo.powf(e))).clamp(0.0, 1.0)
}

/// Two-sided one-sample Kolmogorov-Smirnov statistic.
pub fn ks_statistic(samples: &[f64], cdf: impl Fn(f64) -> f64) -> f64 {
    let mut xs = samples.to_vec();
    xs.sort_by(f64::total_cmp);
    let n = xs.len() as f64;
    xs.iter()
        .enumerate()
        .map(|(k, &x)| {
            let f = cdf(x);
            (f - k as f64 / n).max((k + 1) as f64 / n - f)
        })
        .fold(0.0, f64::max)
}

/// Asymptotic KS critical value at level 0.01.
pub fn ks_critical_001(n: usize) -> f64 {
    1.628 / (n as f64).sqrt()
}

/// Two items with `P(0 beats 1) = p`.
pub fn two_item_weights(p: f64) -> BtlWeights {
    BtlWeights::new(vec![p, 1.0 - p]).unwrap()
}

/// Mean of `p_local` over `replicates` independent simulations of one pair.
pub fn mean_p_local(p: f64, n_t: u64, replicates: u64, seed: u64) -> f64 {
    let w = two_item_weights(p);
    let total: f64 = (0..replicates)
        .map(|k| {
            let d = simulate_comparisons(&w, &[(0, 1)], n_t, seed.wrapping_add(k)).unwrap();
            d.empirical_probability(0, 1).unwrap()
        })
        .sum();
    total / replicates as f64
}

pub fn mean(xs: &[f64]) -> f64 {
    xs.iter().sum::<f64>() / xs.len() as f64
}

pub fn sample_std(xs: &[f64]) -> f64 {
    let m = mean(xs);
    (xs.iter().map(|x| (x - m).powi(2)).sum::<f64>() / (xs.len() - 1) as f64).sqrt()
}

/// Central finite-difference gradient.
pub fn numeric_gradient(f: impl Fn(&[f64]) -> f64, x: &[f64], h: f64) -> Vec<f64> {
    let mut probe = x.to_vec();
    (0..x.len())
        .map(|k| {
            probe[k] = x[k] + h;
            let up = f(&probe);
            probe[k] = x[k] - h;
            let down = f(&probe);
            probe[k] = x[k];
            (up - down) / (2.0 * h)
        })
        .collect()
}

/// Random dataset on `n` items: a spanning path plus extra random pairs,
/// every pair with at least one vote each way.
pub fn random_dataset(n: usize, extra: usize, rng: &mut impl Rng) -> ComparisonDataset {
    let mut b = DatasetBuilder::with_items((0..n).map(|k| format!("i{k}"))).unwrap();
    for k in 1..n {
        b.add(k - 1, k, rng.random_range(1..6), rng.random_range(1..6)).unwrap();
    }
    for _ in 0..extra {
        let a = rng.random_range(0..n);
        let c = rng.random_range(0..n);
        if a != c {
            b.add(a, c, rng.random_range(0..6), rng.random_range(1..6)).unwrap();
        }
    }
    b.build().unwrap()
}

/// A random probability vector with entries bounded away from zero.
pub fn random_simplex(n: usize, rng: &mut impl Rng) -> Vec<f64> {
    let raw: Vec<f64> = (0..n).map(|_| rng.random_range(0.05..1.0)).collect();
    let s: f64 = raw.iter().sum();
    raw.into_iter().map(|x| x / s).collect()
}
