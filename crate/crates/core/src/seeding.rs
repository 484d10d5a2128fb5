//! Seed derivation.
//!
//! Every random stream in the crate is a `ChaCha8Rng` seeded from a `u64`.
//! Independent streams are derived from a base seed by folding extra words
//! through the SplitMix64 finalizer:
//!
//! ```text
//! h = mix(base)
//! for w in words: h = mix(h ^ w) ... with mix(x) = splitmix64(x + 0x9E3779B97F4A7C15)
//! ```
//!
//! The result is a pure function of `(base, words)`, independent of thread
//! scheduling or the order in which cells are evaluated.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const GOLDEN: u64 = 0x9E37_79B9_7F4A_7C15;

fn mix(x: u64) -> u64 {
    let mut z = x.wrapping_add(GOLDEN);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Derives a child seed from `base` and a sequence of words.
pub fn derive(base: u64, words: &[u64]) -> u64 {
    words.iter().fold(mix(base), |h, &w| mix(h ^ w))
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

// stream tags
pub(crate) const TAG_WEIGHTS: u64 = 1;
pub(crate) const TAG_PAIRS: u64 = 2;
pub(crate) const TAG_OUTCOMES: u64 = 3;
pub(crate) const TAG_SPLIT: u64 = 4;

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn derivation_is_stable_and_order_sensitive() {
        assert_eq!(derive(7, &[1, 2]), derive(7, &[1, 2]));
        assert_ne!(derive(7, &[1, 2]), derive(7, &[2, 1]));
        assert_ne!(derive(7, &[]), derive(8, &[]));
        // frozen value: changing the mixer silently would change every sweep
        assert_eq!(derive(0, &[]), 0xE220_A839_7B1D_CDAF);
    }
}
