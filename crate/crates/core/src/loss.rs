//! Pairwise probabilities, cross-entropy losses and the generalized KL metric.
//!
//! For scores `s_i, s_j` the predicted preference is the logistic
//! `q_ij = σ(s_i - s_j)`. Each compared pair carries two targets: the
//! empirical win fraction `p_local` and the rank-derived `p_global`. The
//! rank-smoothed loss for a pair is
//!
//! ```text
//! α · CE(p_local, q) + (1 - α) · CE(p_global, q)
//! ```
//!
//! Cross-entropy is linear in its target, so this equals `CE(q*, q)` with
//! `q* = α p_local + (1 - α) p_global`; it is minimized at `q = q*` and its
//! derivative with respect to `s_i` is `q - q*`.

use std::collections::HashMap;

use crate::dataset::ComparisonDataset;
use crate::error::{Error, Result};
use crate::rank_centrality::global_probability;

/// Predicted probabilities are clamped to `[PROB_CLAMP, 1 - PROB_CLAMP]`
/// before taking logarithms.
pub const PROB_CLAMP: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BlendParams {
    alpha: f64,
    beta: f64,
}

impl BlendParams {
    pub fn new(alpha: f64, beta: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&alpha) {
            return Err(Error::InvalidArgument(format!("alpha {alpha} not in [0, 1]")));
        }
        if !(beta >= 0.0 && beta.is_finite()) {
            return Err(Error::InvalidArgument(format!("beta {beta} must be finite and >= 0")));
        }
        Ok(Self { alpha, beta })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }
}

/// Training targets for the pair `(i, j)`, `i < j`, oriented as "i over j".
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PairTarget {
    pub i: usize,
    pub j: usize,
    pub p_local: f64,
    pub p_global: f64,
    pub q_star: f64,
}

/// Logistic preference of `i` over `j` from their scores.
pub fn predicted_probability(s_i: f64, s_j: f64) -> f64 {
    let d = s_i - s_j;
    if d >= 0.0 {
        1.0 / (1.0 + (-d).exp())
    } else {
        let e = d.exp();
        e / (1.0 + e)
    }
}

pub fn clamp_probability(q: f64) -> f64 {
    q.clamp(PROB_CLAMP, 1.0 - PROB_CLAMP)
}

/// Binary cross-entropy `-p ln q - (1 - p) ln(1 - q)`.
///
/// `q` must lie strictly inside (0, 1).
pub fn cross_entropy(p: f64, q: f64) -> Result<f64> {
    if !(q > 0.0 && q < 1.0) {
        return Err(Error::DegenerateProbability(q));
    }
    Ok(-p * q.ln() - (1.0 - p) * (-q).ln_1p())
}

pub fn blended_target(p_local: f64, p_global: f64, alpha: f64) -> f64 {
    alpha * p_local + (1.0 - alpha) * p_global
}

/// One target per stored pair of `dataset`, in dataset order.
pub fn pair_targets(dataset: &ComparisonDataset, pi: &[f64], params: BlendParams) -> Vec<PairTarget> {
    dataset
        .pairs()
        .iter()
        .map(|pc| {
            let p_local = pc.p_local();
            let p_global = global_probability(pi, params.beta(), pc.i, pc.j);
            PairTarget {
                i: pc.i,
                j: pc.j,
                p_local,
                p_global,
                q_star: blended_target(p_local, p_global, params.alpha()),
            }
        })
        .collect()
}

/// Looks up targets for dataset pairs; fast path when they line up.
fn aligned_targets<'a>(
    dataset: &ComparisonDataset,
    targets: &'a [PairTarget],
) -> Result<Vec<&'a PairTarget>> {
    let pairs = dataset.pairs();
    if targets.len() == pairs.len() && pairs.iter().zip(targets).all(|(p, t)| (p.i, p.j) == (t.i, t.j)) {
        return Ok(targets.iter().collect());
    }
    let by_key: HashMap<(usize, usize), &PairTarget> = targets.iter().map(|t| ((t.i, t.j), t)).collect();
    pairs
        .iter()
        .map(|p| by_key.get(&(p.i, p.j)).copied().ok_or(Error::MissingTarget(p.i, p.j)))
        .collect()
}

/// Rank-smoothed loss summed over the pairs of `dataset`.
pub fn combined_loss(
    dataset: &ComparisonDataset,
    targets: &[PairTarget],
    scores: &[f64],
    alpha: f64,
) -> Result<f64> {
    let mut total = 0.0;
    for t in aligned_targets(dataset, targets)? {
        let q = clamp_probability(predicted_probability(scores[t.i], scores[t.j]));
        total += alpha * cross_entropy(t.p_local, q)? + (1.0 - alpha) * cross_entropy(t.p_global, q)?;
    }
    Ok(total)
}

/// Plain pairwise loss against empirical probabilities only.
pub fn pairwise_loss(dataset: &ComparisonDataset, scores: &[f64]) -> Result<f64> {
    let mut total = 0.0;
    for pc in dataset.pairs() {
        let q = clamp_probability(predicted_probability(scores[pc.i], scores[pc.j]));
        total += cross_entropy(pc.p_local(), q)?;
    }
    Ok(total)
}

/// One term of the generalized KL divergence, `+∞` when `q = 0 < p`.
pub fn generalized_kl_term(p: f64, q: f64) -> f64 {
    if p == 0.0 {
        q
    } else if q == 0.0 {
        f64::INFINITY
    } else {
        p * (p / q).ln() - p + q
    }
}

/// `Σ p log(p/q) - p + q` over paired entries, with `0 log 0 = 0`.
pub fn generalized_kl_error(p_true: &[f64], q_star: &[f64]) -> Result<f64> {
    if p_true.len() != q_star.len() {
        return Err(Error::InvalidArgument(format!(
            "{} true probabilities vs {} predictions",
            p_true.len(),
            q_star.len()
        )));
    }
    let mut total = 0.0;
    for (index, (&p, &q)) in p_true.iter().zip(q_star).enumerate() {
        if q == 0.0 && p > 0.0 {
            return Err(Error::InfiniteDivergence { index, p });
        }
        total += generalized_kl_term(p, q);
    }
    Ok(total)
}
