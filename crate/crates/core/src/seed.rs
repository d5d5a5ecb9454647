//! Seed derivation and the crate-wide random number generator.
//!
//! Every random draw in the crate comes from [`Rng64`], which is ChaCha8
//! (`rand_chacha`) seeded through `SeedableRng::seed_from_u64`. ChaCha8 output
//! is specified bit-for-bit and independent of platform and word size.
//!
//! Independent streams are obtained with [`derive_seed`]: the master seed,
//! a scope string and an index are mixed with FNV-1a over the scope bytes
//! followed by SplitMix64 finalization. Re-running any subset of a job with
//! the same master seed therefore reproduces the same per-item streams,
//! independent of scheduling or thread count.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub type Rng64 = ChaCha8Rng;

const FNV_OFFSET: u64 = 0xcbf2_9ce4_8422_2325;
const FNV_PRIME: u64 = 0x0000_0100_0000_01b3;

/// SplitMix64 finalizer.
pub fn mix64(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Seed for item `index` of `scope` under `master`.
pub fn derive_seed(master: u64, scope: &str, index: u64) -> u64 {
    let mut h = FNV_OFFSET;
    for b in scope.as_bytes() {
        h ^= u64::from(*b);
        h = h.wrapping_mul(FNV_PRIME);
    }
    let a = mix64(master ^ h);
    mix64(
        a.wrapping_add(0x9e37_79b9_7f4a_7c15)
            .wrapping_add(mix64(index)),
    )
}

pub fn rng_from_seed(seed: u64) -> Rng64 {
    ChaCha8Rng::seed_from_u64(seed)
}
