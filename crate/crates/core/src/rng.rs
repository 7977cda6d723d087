//! Seed handling. Every random draw in the crate goes through a
//! [`ChaCha8Rng`] seeded from an explicit `u64`, so results depend only on
//! the seed and never on thread scheduling.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub type SeededRng = ChaCha8Rng;

pub fn rng_from_seed(seed: u64) -> SeededRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// SplitMix64 finalizer.
fn mix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Stable seed for replicate `replicate` of design `design` under `master`.
pub fn derive_seed(master: u64, design: u64, replicate: u64) -> u64 {
    mix64(mix64(mix64(master) ^ design) ^ replicate.rotate_left(32))
}
