//! Seed derivation.
//!
//! Every random choice in the crate is driven by a `ChaCha8Rng` seeded from a
//! 64-bit value. Sub-seeds are derived from a master seed and a list of labels
//! by folding each label through the SplitMix64 finaliser:
//!
//! ```text
//! s0 = master
//! s(i+1) = mix(s(i) ^ mix(label(i) + 0x9E37_79B9_7F4A_7C15))
//! ```
//!
//! so `split_seed(m, &[k, trial])` is a pure function of its inputs and no
//! global RNG state exists anywhere.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const GOLDEN: u64 = 0x9E37_79B9_7F4A_7C15;

fn mix(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

pub fn split_seed(master: u64, labels: &[u64]) -> u64 {
    labels
        .iter()
        .fold(mix(master), |s, &label| mix(s ^ mix(label.wrapping_add(GOLDEN))))
}

pub fn rng_from(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}
